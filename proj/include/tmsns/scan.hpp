#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tmsns/majorization.hpp"
#include "tmsns/witness.hpp"

namespace tmsns {

enum class WitnessFamily { D, A1011, A0011, APrime };
enum class ScanMethod { WitnessNonnegativity, EmpiricalMajorization };

enum class SampleVerdict { Stochastic, NotStochastic, Majorizes, DoesNotMajorize, Undecided };

const char* to_string(SampleVerdict v);
const char* to_string(WitnessFamily f);

struct ScanSample {
  double lambda = 0.0;
  SampleVerdict verdict = SampleVerdict::Undecided;
};

/// Bracket [boundary_low, boundary_high] around a lambda threshold, plus the
/// evaluated samples in evaluation order (grid first, then bisection points).
struct ScanResult {
  std::optional<std::pair<StateLabel, StateLabel>> pair;
  ScanMethod method = ScanMethod::WitnessNonnegativity;
  double boundary_low = 0.0;
  double boundary_high = 0.0;
  std::vector<ScanSample> samples;
};

struct WitnessScanOptions {
  std::size_t size = 64;  // truncation for the stochasticity checks
  StochTolerances tol;
};

/// Bisects for the smallest lambda where the family stops being
/// column-stochastic; bracket width <= tol on exit. Throws NoSignChange when
/// the family is stochastic throughout [0, lambda_max].
ScanResult witness_threshold(WitnessFamily family, double lambda_max, double tol,
                             WitnessScanOptions opts = {});

/// Algebraic nonnegativity thresholds: sqrt((2-sqrt2)/2), 1/sqrt(3),
/// sqrt((9-sqrt21)/10). Throws NoSignChange for the D family (stochastic on
/// all of [0, 1)).
double closed_form_threshold(WitnessFamily family);

/// Same thresholds found independently as roots of the gating entry
/// polynomials (bisection to ~1e-15); cross-checks the closed forms.
double polynomial_threshold(WitnessFamily family);

struct EmpiricalScanOptions {
  double bisect_tol = 1e-6;
  TruncationOptions truncation;
};

/// Grid scan of the majorization verdict over [0, lambda_max] followed by a
/// bisection between the last Majorizes and the first DoesNotMajorize.
/// Undecided grid points are retried once with eps_tail * 1e-3 and reported;
/// an Undecided-only transition region leaves the bracket wide.
ScanResult empirical_boundary(StateLabel p, StateLabel q, double lambda_max, int grid,
                              double eps_tail, EmpiricalScanOptions opts = {});

}  // namespace tmsns
