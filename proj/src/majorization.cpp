#include "tmsns/majorization.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "tmsns/numeric.hpp"

namespace tmsns {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Majorizes: return "Majorizes";
    case Outcome::DoesNotMajorize: return "DoesNotMajorize";
    case Outcome::Undecided: return "Undecided";
  }
  return "Undecided";
}

Distribution sort_descending(const Distribution& d) {
  if (!d.tail_certified) {
    throw UncertifiedTail("sort_descending: distribution lacks a tail certificate");
  }
  Distribution out = d;
  std::stable_sort(out.probs.begin(), out.probs.end(), std::greater<double>());
  return out;
}

MajorizationVerdict majorizes(const Distribution& p, const Distribution& q) {
  if (!p.tail_certified || !q.tail_certified) {
    throw UncertifiedTail("majorizes: both distributions must be tail-certified");
  }
  std::vector<double> ps = p.probs;
  std::vector<double> qs = q.probs;
  std::stable_sort(ps.begin(), ps.end(), std::greater<double>());
  std::stable_sort(qs.begin(), qs.end(), std::greater<double>());

  const std::size_t len = std::max(ps.size(), qs.size());
  auto get = [](const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? v[i] : 0.0;
  };

  // Crossover: past the last index where a sorted p entry still exceeds the
  // matching q entry, the summand q_i - p_i is nonnegative, so the partial-sum
  // difference P_m - Q_m can only shrink toward its limit tail_q - tail_p >=
  // -tail_p; that whole region sits within the slack by construction. Every
  // decidable violation therefore lives in the head, where forward compensated
  // sums of the entry differences resolve it at full precision.
  std::size_t cross = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (get(ps, i) > get(qs, i)) cross = i + 1;
  }

  MajorizationVerdict verdict;
  verdict.slack =
      p.tail_mass + q.tail_mass + 8.0 * static_cast<double>(len) * DBL_EPSILON;
  verdict.margin = std::numeric_limits<double>::infinity();
  double head_min = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> first_violation;

  NeumaierSum fwd;
  for (std::size_t m = 1; m <= cross; ++m) {
    fwd.add(get(ps, m - 1) - get(qs, m - 1));
    const double d = fwd.value();
    head_min = std::min(head_min, d);
    verdict.margin = std::min(verdict.margin, d);
    if (!first_violation && d < -verdict.slack) first_violation = m;
  }
  // Tail region, evaluated backward so the small terms are not drowned by
  // the two partial sums approaching one: P_m - Q_m = tail_diff + suffix.
  const double tail_diff = q.tail_mass - p.tail_mass;
  NeumaierSum suffix;
  double tail_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = len; i-- > cross;) {
    suffix.add(get(qs, i) - get(ps, i));
    tail_min = std::min(tail_min, tail_diff + suffix.value());
  }
  if (cross < len) {
    tail_min = std::min(tail_min, tail_diff);  // m = len endpoint
    verdict.margin = std::min(verdict.margin, tail_min);
  }

  if (verdict.margin < -verdict.slack) {
    verdict.outcome = Outcome::DoesNotMajorize;
    if (!first_violation) {
      // violation reported by the tail scan; locate the first offending m
      NeumaierSum again;
      std::vector<double> ds(len + 1, 0.0);
      for (std::size_t i = len; i-- > cross;) {
        again.add(get(qs, i) - get(ps, i));
        ds[i] = again.value();
      }
      for (std::size_t m = cross; m <= len && !first_violation; ++m) {
        if (tail_diff + ds[m] < -verdict.slack) first_violation = m == 0 ? 1 : m;
      }
    }
    verdict.witness_index = first_violation;
  } else if (head_min >= 0.0) {  // vacuously true when the head is empty
    verdict.outcome = Outcome::Majorizes;
  } else {
    verdict.outcome = Outcome::Undecided;
  }
  if (!std::isfinite(verdict.margin)) verdict.margin = 0.0;  // len == 0 edge
  return verdict;
}

std::pair<Distribution, Distribution> matched_distributions(StateLabel a, StateLabel b,
                                                            Squeezing lambda, double eps_tail,
                                                            TruncationOptions opts) {
  Distribution p = distribution(a, lambda, eps_tail, opts);
  Distribution q = distribution(b, lambda, eps_tail, opts);
  const std::size_t len = std::max(p.probs.size(), q.probs.size());
  TruncationOptions ext = opts;
  ext.min_terms = len;
  if (p.probs.size() < len) p = distribution(a, lambda, eps_tail, ext);
  if (q.probs.size() < len) q = distribution(b, lambda, eps_tail, ext);
  return {std::move(p), std::move(q)};
}

MajorizationVerdict chain_check(int n, int m, Squeezing lambda, double eps_tail) {
  auto [p, q] = matched_distributions(StateLabel(n, 0), StateLabel(n + m, 0), lambda, eps_tail);
  return majorizes(p, q);
}

}  // namespace tmsns
