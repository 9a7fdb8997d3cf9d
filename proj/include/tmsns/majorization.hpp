#pragma once

#include <optional>
#include <utility>

#include "tmsns/schmidt.hpp"

namespace tmsns {

enum class Outcome { Majorizes, DoesNotMajorize, Undecided };

/// Three-valued majorization verdict.
///
/// margin is the minimum over m of (sum of m largest of p) - (sum of m
/// largest of q); slack bounds the uncertainty from both tail masses plus a
/// rounding allowance. Outcomes:
///   margin >= 0           -> Majorizes (holds after slack correction)
///   margin <  -slack      -> DoesNotMajorize, witness_index = first such m
///   otherwise             -> Undecided (|margin| <= slack)
struct MajorizationVerdict {
  Outcome outcome = Outcome::Undecided;
  std::optional<std::size_t> witness_index;  // 1-based partial-sum length m
  double margin = 0.0;
  double slack = 0.0;
};

const char* to_string(Outcome o);

/// Descending stable sort of the probability prefix (ties keep natural index
/// order). Requires the tail certificate. Tail mass is unchanged.
Distribution sort_descending(const Distribution& d);

/// Partial-sum comparison of two certified distributions. The distributions
/// may come from different lambdas (general-purpose comparator).
MajorizationVerdict majorizes(const Distribution& p, const Distribution& q);

/// Verdict for p_{n,0} > p_{n+m,0} at the given squeezing.
MajorizationVerdict chain_check(int n, int m, Squeezing lambda, double eps_tail = 1e-12);

/// Builds both distributions with a common prefix length (the longer of the
/// two automatic lengths), so the end-of-prefix margin compares tails at the
/// same truncation depth.
std::pair<Distribution, Distribution> matched_distributions(StateLabel a, StateLabel b,
                                                            Squeezing lambda, double eps_tail,
                                                            TruncationOptions opts = {});

}  // namespace tmsns
