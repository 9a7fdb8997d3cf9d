#pragma once

#include <cstddef>
#include <vector>

#include "tmsns/errors.hpp"
#include "tmsns/schmidt.hpp"

namespace tmsns {

enum class Mode { A, B };

/// Two-mode state truncated at `cutoff` photons per mode.
/// amp(i, j) = <i, j | psi>, stored dense; amplitudes are real for real
/// squeezing. norm_deficit carries 1 - sum(amp^2): the builders set it
/// analytically where the truncated mass has a closed form (tmsv) and from
/// the compensated residual otherwise. dropped_mass accumulates the squared
/// amplitude pushed past the cutoff by operator applications.
struct TruncatedTwoModeState {
  int cutoff = 0;
  std::vector<double> amp;  // (cutoff+1)^2 row-major
  double norm_deficit = 0.0;
  double dropped_mass = 0.0;

  double& at(int i, int j) { return amp[static_cast<std::size_t>(i) * (cutoff + 1) + j]; }
  double at(int i, int j) const { return amp[static_cast<std::size_t>(i) * (cutoff + 1) + j]; }

  double norm_squared() const;
  /// 1 - sum(amp^2) measured from the stored amplitudes (compensated).
  double measured_deficit() const;
};

/// Two-mode squeezed vacuum: amp(n, n) = sqrt(1-l^2) l^n.
TruncatedTwoModeState tmsv(Squeezing lambda, int cutoff);

/// Applies the coupled creation operator
///   A^dag = (a^dag - lambda b) / sqrt(1-lambda^2)   (Mode::A)
///   B^dag = (b^dag - lambda a) / sqrt(1-lambda^2)   (Mode::B)
/// as a sparse map on the amplitude matrix. The result is not renormalized;
/// amplitude pushed past the cutoff is dropped and added to dropped_mass.
TruncatedTwoModeState apply_coupled_creation(const TruncatedTwoModeState& state, Mode which,
                                             Squeezing lambda);

/// Coupled annihilation A = (a - lambda b^dag)/sqrt(1-lambda^2), likewise B.
TruncatedTwoModeState apply_coupled_annihilation(const TruncatedTwoModeState& state, Mode which,
                                                 Squeezing lambda);

struct OracleOptions {
  double deficit_bound = 1e-10;  // refuse states leaking more than this
};

/// Brute-force TMSNS: (A^dag)^{N_A} (B^dag)^{N_B} |psi_00> / sqrt(N_A! N_B!),
/// built by operator application on the truncated vacuum. The label is used
/// as given (no canonicalization), so swapped labels exercise the spectrum
/// symmetry. Throws CutoffTooSmall when the truncation leaks too much.
TruncatedTwoModeState oracle_state(StateLabel label, Squeezing lambda, int cutoff,
                                   OracleOptions opts = {});

}  // namespace tmsns
