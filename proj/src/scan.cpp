#include "tmsns/scan.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tmsns {

const char* to_string(SampleVerdict v) {
  switch (v) {
    case SampleVerdict::Stochastic: return "stochastic";
    case SampleVerdict::NotStochastic: return "not-stochastic";
    case SampleVerdict::Majorizes: return "Majorizes";
    case SampleVerdict::DoesNotMajorize: return "DoesNotMajorize";
    case SampleVerdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

const char* to_string(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::D: return "d";
    case WitnessFamily::A1011: return "a10-11";
    case WitnessFamily::A0011: return "a00-11";
    case WitnessFamily::APrime: return "a-prime";
  }
  return "d";
}

namespace {

bool family_stochastic(WitnessFamily family, double lambda, const WitnessScanOptions& opts) {
  const Squeezing l(lambda);
  switch (family) {
    case WitnessFamily::D:
      return is_column_stochastic(build_D(l, opts.size), opts.tol).is_column_stochastic;
    case WitnessFamily::A1011:
      return is_column_stochastic(build_A_10_11(l, opts.size), opts.tol).is_column_stochastic;
    case WitnessFamily::A0011:
      return is_column_stochastic(build_A_00_11(l, opts.size), opts.tol).is_column_stochastic;
    case WitnessFamily::APrime:
      return is_column_stochastic(build_A_prime(l, opts.size), opts.tol).is_column_stochastic;
  }
  return false;
}

}  // namespace

ScanResult witness_threshold(WitnessFamily family, double lambda_max, double tol,
                             WitnessScanOptions opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("witness_threshold: tol must be positive");
  if (!(lambda_max > 0.0 && lambda_max < 1.0)) {
    throw std::invalid_argument("witness_threshold: lambda_max must lie in (0, 1)");
  }
  ScanResult result;
  result.method = ScanMethod::WitnessNonnegativity;

  auto probe = [&](double lambda) {
    const bool ok = family_stochastic(family, lambda, opts);
    result.samples.push_back(
        {lambda, ok ? SampleVerdict::Stochastic : SampleVerdict::NotStochastic});
    return ok;
  };

  if (!probe(0.0)) {
    throw NoSignChange("witness_threshold: family not stochastic at lambda = 0");
  }
  if (probe(lambda_max)) {
    throw NoSignChange("witness_threshold: family stochastic throughout [0, " +
                       std::to_string(lambda_max) + "]");
  }
  double lo = 0.0;
  double hi = lambda_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.boundary_low = lo;
  result.boundary_high = hi;
  return result;
}

double closed_form_threshold(WitnessFamily family) {
  switch (family) {
    case WitnessFamily::D:
      throw NoSignChange("closed_form_threshold: D is stochastic on all of [0, 1)");
    case WitnessFamily::A1011:
      return std::sqrt((2.0 - std::sqrt(2.0)) / 2.0);
    case WitnessFamily::A0011:
      return 1.0 / std::sqrt(3.0);
    case WitnessFamily::APrime:
      return std::sqrt((9.0 - std::sqrt(21.0)) / 10.0);
  }
  throw std::invalid_argument("closed_form_threshold: unknown family");
}

double polynomial_threshold(WitnessFamily family) {
  // Gating entries: the first coefficient to lose nonnegativity as lambda
  // grows, as a polynomial in x = lambda^2.
  auto gate = [family](double x) {
    switch (family) {
      case WitnessFamily::A1011: return 2.0 * x * x - 4.0 * x + 1.0;
      case WitnessFamily::A0011: return 3.0 * x * x - 4.0 * x + 1.0;
      case WitnessFamily::APrime: return 5.0 * x * x - 9.0 * x + 3.0;
      default: throw NoSignChange("polynomial_threshold: no gate polynomial for D");
    }
  };
  double lo = 0.0;
  double hi = 0.999 * 0.999;
  if (!(gate(lo) > 0.0 && gate(hi) < 0.0)) {
    throw NoSignChange("polynomial_threshold: gate polynomial does not change sign");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gate(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(0.5 * (lo + hi));
}

namespace {

SampleVerdict verdict_of(Outcome o) {
  switch (o) {
    case Outcome::Majorizes: return SampleVerdict::Majorizes;
    case Outcome::DoesNotMajorize: return SampleVerdict::DoesNotMajorize;
    case Outcome::Undecided: return SampleVerdict::Undecided;
  }
  return SampleVerdict::Undecided;
}

}  // namespace

ScanResult empirical_boundary(StateLabel p, StateLabel q, double lambda_max, int grid,
                              double eps_tail, EmpiricalScanOptions opts) {
  if (grid < 2) throw std::invalid_argument("empirical_boundary: grid must be >= 2");
  if (!(lambda_max > 0.0 && lambda_max < 1.0)) {
    throw std::invalid_argument("empirical_boundary: lambda_max must lie in (0, 1)");
  }
  ScanResult result;
  result.pair = std::make_pair(p, q);
  result.method = ScanMethod::EmpiricalMajorization;

  auto evaluate = [&](double lambda) {
    auto [dp, dq] = matched_distributions(p, q, Squeezing(lambda), eps_tail, opts.truncation);
    Outcome o = majorizes(dp, dq).outcome;
    if (o == Outcome::Undecided) {
      // One cheap retry with a much tighter tail usually resolves boundary noise.
      auto [rp, rq] =
          matched_distributions(p, q, Squeezing(lambda), eps_tail * 1e-3, opts.truncation);
      o = majorizes(rp, rq).outcome;
    }
    const SampleVerdict v = verdict_of(o);
    result.samples.push_back({lambda, v});
    return v;
  };

  double last_majorizes = -1.0;
  double first_failure = -1.0;
  for (int i = 0; i < grid; ++i) {
    const double lambda = lambda_max * static_cast<double>(i) / static_cast<double>(grid - 1);
    const SampleVerdict v = evaluate(lambda);
    if (v == SampleVerdict::Majorizes && first_failure < 0.0) last_majorizes = lambda;
    if (v == SampleVerdict::DoesNotMajorize && first_failure < 0.0) first_failure = lambda;
    // Non-monotone verdicts stay visible in samples; the bracket tracks the
    // first transition only.
  }

  if (first_failure < 0.0) {
    result.boundary_low = last_majorizes >= 0.0 ? last_majorizes : 0.0;
    result.boundary_high = lambda_max;
    return result;
  }

  double lo = last_majorizes >= 0.0 ? last_majorizes : 0.0;
  double hi = first_failure;
  while (hi - lo > opts.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    const SampleVerdict v = evaluate(mid);
    if (v == SampleVerdict::Majorizes) {
      lo = mid;
    } else if (v == SampleVerdict::DoesNotMajorize) {
      hi = mid;
    } else {
      break;  // persistent Undecided: report the wide bracket honestly
    }
  }
  result.boundary_low = lo;
  result.boundary_high = hi;
  return result;
}

}  // namespace tmsns
