#include "tmsns/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tmsns/numeric.hpp"

namespace tmsns {

StateLabel::StateLabel(int na, int nb) : n_a(na), n_b(nb) {
  if (na < 0 || nb < 0) {
    throw std::invalid_argument("StateLabel: excitation numbers must be nonnegative");
  }
}

Squeezing::Squeezing(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw std::invalid_argument("Squeezing: lambda must lie in [0, 1)");
  }
}

double schmidt_coefficient(StateLabel label, int m, Squeezing lambda) {
  if (m < 0) throw std::invalid_argument("schmidt_coefficient: m must be nonnegative");
  const StateLabel lc = label.canonicalized();
  const int na = lc.n_a;
  const int nb = lc.n_b;
  const int dn = na - nb;
  const double l = lambda.value();

  if (l == 0.0) return m == nb ? 1.0 : 0.0;  // point mass at m = N_B

  const double log_l = std::log(l);
  const double log_one_minus_l2 = std::log1p(-l * l);
  const double log_pref = 0.5 * (dn + 1) * log_one_minus_l2;
  const double log_num =
      0.5 * (log_factorial(na) + log_factorial(nb) + log_factorial(dn + m) + log_factorial(m));

  // Alternating k-sum with compensated accumulation; each term is evaluated
  // in log magnitude with an explicit sign to dodge factorial overflow.
  NeumaierSum sum;
  const int kmax = std::min(m, nb);
  for (int k = 0; k <= kmax; ++k) {
    const double log_mag = log_pref + k * log_one_minus_l2 + (m + nb - 2 * k) * log_l + log_num -
                           (log_factorial(k) + log_factorial(m - k) + log_factorial(dn + k) +
                            log_factorial(nb - k));
    const double sign = ((nb - k) % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * std::exp(log_mag));
  }
  return sum.value();
}

SchmidtSpectrum schmidt_spectrum(StateLabel label, Squeezing lambda, std::size_t count) {
  SchmidtSpectrum spec;
  spec.label = label;
  spec.lambda = lambda.value();
  spec.amplitudes.reserve(count);
  NeumaierSum norm;
  for (std::size_t m = 0; m < count; ++m) {
    const double c = schmidt_coefficient(label, static_cast<int>(m), lambda);
    spec.amplitudes.push_back(c);
    norm.add(c * c);
  }
  spec.tail_mass = std::max(0.0, (1.0 - norm.sum_raw()) - norm.compensation());
  return spec;
}

namespace {

// Index beyond which the sequence l^{2m} * poly(m) cannot rise again; a
// coarse over-estimate of where the polynomial growth loses to the geometric
// decay for the TMSNS families at desk scale.
std::size_t last_rise_bound(int na, int nb, double l2) {
  const double d = static_cast<double>(na + 2 * nb + 2);
  return static_cast<std::size_t>(std::ceil(d / (1.0 - l2))) + 16;
}

}  // namespace

Distribution distribution(StateLabel label, Squeezing lambda, double eps_tail,
                          TruncationOptions opts) {
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) {
    throw std::invalid_argument("distribution: eps_tail must lie in (0, 1)");
  }
  const StateLabel lc = label.canonicalized();
  Distribution d;
  d.label = label;
  d.lambda = lambda.value();

  const double l = lambda.value();
  if (l == 0.0) {
    // Point mass at m = N_B; exact, trivially certified.
    d.probs.assign(std::max<std::size_t>(static_cast<std::size_t>(lc.n_b) + 1, opts.min_terms),
                   0.0);
    d.probs[static_cast<std::size_t>(lc.n_b)] = 1.0;
    d.tail_mass = 0.0;
    d.tail_certified = true;
    return d;
  }

  const double l2 = l * l;
  const std::size_t window = std::max<std::size_t>(12, static_cast<std::size_t>(lc.n_a + lc.n_b) + 8);
  const std::size_t heuristic =
      static_cast<std::size_t>(std::ceil(std::log(eps_tail) / std::log(l2))) +
      static_cast<std::size_t>(lc.n_a + lc.n_b) + 16;
  std::size_t target = std::max({heuristic, last_rise_bound(lc.n_a, lc.n_b, l2) + window,
                                 opts.min_terms, static_cast<std::size_t>(lc.n_b) + 2});
  if (target > opts.max_terms) {
    throw TruncationOverflow("distribution: required prefix length " + std::to_string(target) +
                             " exceeds cap " + std::to_string(opts.max_terms));
  }

  for (;;) {
    d.probs.resize(target);
    NeumaierSum total;
    for (std::size_t m = 0; m < target; ++m) {
      const double c = schmidt_coefficient(lc, static_cast<int>(m), lambda);
      d.probs[m] = c * c;
      total.add(d.probs[m]);
    }
    d.tail_mass = std::max(0.0, (1.0 - total.sum_raw()) - total.compensation());

    // Certificate: small tail, and the final window is past the last observed
    // rise with strictly decreasing positive terms (trailing zeros allowed).
    bool monotone = d.tail_mass <= eps_tail;
    std::size_t last_rise = 0;
    for (std::size_t m = 0; m + 1 < target; ++m) {
      if (d.probs[m + 1] > d.probs[m]) last_rise = m + 1;
      if (m + 1 + window >= target && d.probs[m + 1] >= d.probs[m] && d.probs[m] > 0.0) {
        monotone = false;  // rise or positive plateau inside the final window
      }
    }
    if (monotone && last_rise + window < target) {
      d.tail_certified = true;
      return d;
    }
    if (target >= opts.max_terms) {
      throw TruncationOverflow("distribution: no certified prefix within cap " +
                               std::to_string(opts.max_terms));
    }
    target = std::min(target * 2, opts.max_terms);
  }
}

double negative_binomial_check(int n, Squeezing lambda, int count) {
  if (count < 1) throw std::invalid_argument("negative_binomial_check: count must be >= 1");
  const double l = lambda.value();
  const double l2 = l * l;
  double worst = 0.0;
  for (int m = 0; m < count; ++m) {
    const double c = schmidt_coefficient(StateLabel(n, 0), m, lambda);
    double ref;
    if (l == 0.0) {
      ref = m == 0 ? 1.0 : 0.0;
    } else {
      const double log_binom = log_factorial(n + m) - log_factorial(n) - log_factorial(m);
      ref = std::exp((n + 1) * std::log1p(-l2) + log_binom + 2.0 * m * std::log(l));
    }
    worst = std::max(worst, std::fabs(c * c - ref));
  }
  return worst;
}

}  // namespace tmsns
