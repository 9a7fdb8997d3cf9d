#pragma once

#include <cstddef>
#include <vector>

#include "tmsns/errors.hpp"

namespace tmsns {

/// Excitation numbers (N_A, N_B) of a two-mode squeezed number state.
///
/// The closed-form Schmidt coefficients assume N_A >= N_B; canonicalized()
/// swaps the labels when needed (the Schmidt spectrum is invariant under the
/// swap) and swapped() reports whether it did.
struct StateLabel {
  int n_a = 0;
  int n_b = 0;

  StateLabel() = default;
  StateLabel(int na, int nb);

  bool canonical() const { return n_a >= n_b; }
  StateLabel canonicalized() const { return canonical() ? *this : StateLabel(n_b, n_a); }
  bool swapped() const { return !canonical(); }

  bool operator==(const StateLabel&) const = default;
};

/// Squeezing parameter, validated to [0, 1). lambda = 0 is the product-state
/// limit; lambda = 1 is excluded (infinite squeezing).
class Squeezing {
 public:
  explicit Squeezing(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Prefix of the signed Schmidt coefficients C_0..C_{M-1} plus the exact
/// residual 1 - sum(C_m^2).
struct SchmidtSpectrum {
  StateLabel label;
  double lambda = 0.0;
  std::vector<double> amplitudes;
  double tail_mass = 0.0;
};

/// Prefix of the Schmidt-basis probability sequence |C_m|^2 in natural index
/// order, with exact tail mass and a monotone-tail certificate.
///
/// tail_certified means the prefix reaches past the last local maximum of the
/// sequence and ends in a strictly decreasing run, so the omitted terms
/// continue the decay and the sorted prefix heads the sorted infinite
/// sequence (up to reorderings among entries below tail_mass, which the
/// majorization slack model absorbs).
struct Distribution {
  StateLabel label;
  double lambda = 0.0;
  std::vector<double> probs;
  double tail_mass = 0.0;
  bool tail_certified = false;
};

struct TruncationOptions {
  std::size_t max_terms = 100000;  // hard cap on the prefix length
  std::size_t min_terms = 0;       // extend at least this far (0 = automatic)
};

/// Schmidt coefficient C_m(N_A, N_B, lambda); signed, |C_m| <= 1.
double schmidt_coefficient(StateLabel label, int m, Squeezing lambda);

/// First `count` coefficients plus exact residual.
SchmidtSpectrum schmidt_spectrum(StateLabel label, Squeezing lambda, std::size_t count);

/// Probability prefix long enough that tail_mass <= eps_tail and the
/// monotone-tail certificate holds. Throws TruncationOverflow when the
/// required length exceeds opts.max_terms.
Distribution distribution(StateLabel label, Squeezing lambda, double eps_tail,
                          TruncationOptions opts = {});

/// Max over m < count of |p_{n,0}(m) - (1-l^2)^{n+1} binom(n+m,m) l^{2m}|.
/// The N_B = 0 family is exactly negative-binomial; this measures the
/// deviation of the general-formula evaluation from that closed form.
double negative_binomial_check(int n, Squeezing lambda, int count);

}  // namespace tmsns
