#include "tmsns/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tmsns/numeric.hpp"

namespace tmsns {

double ToeplitzWitness::entry(std::size_t i, std::size_t j) const {
  if (i < j) return 0.0;
  return coeffs.at(i - j);
}

namespace {

// A_00_11 coefficient a_n; also the shared tail of the modified matrix.
double chain_coeff(double l2, std::size_t n) {
  if (n == 0) return l2;
  const double one = 1.0 - l2;
  return std::pow(l2, static_cast<double>(n - 1)) *
         (l2 * l2 + 2.0 * static_cast<double>(n) * one * one - 1.0);
}

}  // namespace

ToeplitzWitness build_D(Squeezing lambda, std::size_t size) {
  if (size < 1) throw std::invalid_argument("build_D: size must be >= 1");
  const double l2 = lambda.value() * lambda.value();
  ToeplitzWitness w;
  w.lambda = lambda.value();
  w.kind = WitnessKind::DChain;
  w.coeffs.resize(size);
  double a = 1.0 - l2;
  for (std::size_t n = 0; n < size; ++n) {
    w.coeffs[n] = a;
    a *= l2;
  }
  return w;
}

ToeplitzWitness build_A_10_11(Squeezing lambda, std::size_t size) {
  if (size < 1) throw std::invalid_argument("build_A_10_11: size must be >= 1");
  const double l2 = lambda.value() * lambda.value();
  const double one = 1.0 - l2;
  ToeplitzWitness w;
  w.lambda = lambda.value();
  w.kind = WitnessKind::A1011;
  w.coeffs.resize(size);
  w.coeffs[0] = l2 / one;
  if (size > 1) w.coeffs[1] = (2.0 * one * one - 1.0) / one;
  double g = 2.0 * l2 * one;  // 2 l^{2(n-1)} (1-l^2)^2 / (1-l^2) at n = 2
  for (std::size_t n = 2; n < size; ++n) {
    w.coeffs[n] = g;
    g *= l2;
  }
  return w;
}

ToeplitzWitness build_A_00_11(Squeezing lambda, std::size_t size) {
  if (size < 1) throw std::invalid_argument("build_A_00_11: size must be >= 1");
  const double l2 = lambda.value() * lambda.value();
  ToeplitzWitness w;
  w.lambda = lambda.value();
  w.kind = WitnessKind::A0011;
  w.coeffs.resize(size);
  for (std::size_t n = 0; n < size; ++n) w.coeffs[n] = chain_coeff(l2, n);
  return w;
}

DenseWitness build_A_prime(Squeezing lambda, std::size_t size) {
  if (size < 6) throw std::invalid_argument("build_A_prime: size must be >= 6");
  DenseWitness w;
  w.lambda = lambda.value();
  w.size = size;
  return w;
}

double DenseWitness::entry(std::size_t i, std::size_t j) const {
  const double l2 = lambda * lambda;
  const double head = (1.0 - 2.0 * l2) * (1.0 - 2.0 * l2);       // 4l^4 - 4l^2 + 1
  const double head_late = 4.0 * l2 * l2 - 3.0 * l2 + 1.0;       // modified diagonal head
  const double wiggle = l2 * (5.0 * l2 * l2 - 9.0 * l2 + 3.0);   // 5l^6 - 9l^4 + 3l^2
  if (j == 0) {
    if (i == 0) return l2 * (1.0 - l2);
    if (i == 1) return head;
    return chain_coeff(l2, i);
  }
  if (j == 1) {
    if (i == 0) return l2 * (1.0 - l2);
    if (i == 1) return 0.0;
    if (i == 2) return head;
    return chain_coeff(l2, i - 1);
  }
  if (j == 2) {
    if (i == 0) return l2;
    if (i <= 2) return 0.0;
    if (i == 3) return head;
    if (i == 4) return wiggle;
    return chain_coeff(l2, i - 2);
  }
  if (i <= j) return 0.0;
  if (i == j + 1) return head_late;
  if (i == j + 2) return wiggle;
  return chain_coeff(l2, i - j);
}

ToeplitzWitness compose(const ToeplitzWitness& lhs, const ToeplitzWitness& rhs) {
  const std::size_t size = std::min(lhs.size(), rhs.size());
  ToeplitzWitness w;
  w.lambda = lhs.lambda;
  w.kind = WitnessKind::Deconvolved;
  w.coeffs.assign(size, 0.0);
  for (std::size_t n = 0; n < size; ++n) {
    NeumaierSum s;
    for (std::size_t j = 0; j <= n; ++j) s.add(lhs.coeffs[j] * rhs.coeffs[n - j]);
    w.coeffs[n] = s.value();
  }
  return w;
}

ToeplitzWitness toeplitz_power(const ToeplitzWitness& w, int exponent) {
  if (exponent < 0) throw std::invalid_argument("toeplitz_power: exponent must be >= 0");
  ToeplitzWitness acc;
  acc.lambda = w.lambda;
  acc.kind = WitnessKind::Deconvolved;
  acc.coeffs.assign(w.size(), 0.0);
  if (!acc.coeffs.empty()) acc.coeffs[0] = 1.0;  // identity
  for (int k = 0; k < exponent; ++k) acc = compose(acc, w);
  return acc;
}

namespace {

struct ColumnCheck {
  bool ok = false;
  double residual = 0.0;  // part of the deficit not explained by the tail
};

// Accepts 1 - sum(entries) when it is within tolerance, or when it is
// positive and covered by a geometric tail bound: the families decay with
// non-increasing term ratios, so sum_{n>=K} a_n <= a_{K-1} r / (1 - r) with
// r the last observed ratio.
ColumnCheck check_column_sum(const std::vector<double>& entries, double col_tol) {
  NeumaierSum s;
  for (double e : entries) s.add(e);
  const double residual = (1.0 - s.sum_raw()) - s.compensation();
  if (std::fabs(residual) <= col_tol) return {true, 0.0};
  if (residual < 0.0) return {false, -residual};  // overshoot past 1

  const std::size_t n = entries.size();
  const std::size_t pairs = std::min<std::size_t>(6, n >= 2 ? n - 1 : 0);
  if (pairs < 2) return {false, residual};
  double prev_ratio = 2.0;
  double ratio = 0.0;
  for (std::size_t k = n - pairs; k < n; ++k) {
    const double lo = entries[k - 1];
    const double hi = entries[k];
    if (!(lo > 0.0) || !(hi > 0.0)) return {false, residual};
    ratio = hi / lo;
    if (!(ratio < 1.0) || ratio > prev_ratio * (1.0 + 1e-9)) return {false, residual};
    prev_ratio = ratio;
  }
  const double bound = entries.back() * ratio / (1.0 - ratio);
  const double unexplained = residual - bound * (1.0 + 1e-6);
  return {unexplained <= col_tol, std::max(0.0, unexplained)};
}

}  // namespace

StochasticityReport is_column_stochastic(const ToeplitzWitness& w, StochTolerances tol) {
  StochasticityReport rep;
  bool nonneg = true;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w.coeffs[n] < -tol.nonneg) {
      rep.first_negative = FirstNegative{n, 0, w.coeffs[n]};
      nonneg = false;
      break;
    }
  }
  // Row i of the truncation sums the first i+1 coefficients; every row is
  // complete for a lower-triangular Toeplitz matrix.
  NeumaierSum prefix;
  rep.max_row_sum = 0.0;
  for (double a : w.coeffs) {
    prefix.add(a);
    rep.max_row_sum = std::max(rep.max_row_sum, prefix.value());
  }
  const ColumnCheck col = check_column_sum(w.coeffs, tol.col_sum);
  rep.max_col_residual = col.residual;
  rep.judged_columns = 1;  // all columns of the infinite matrix share the coefficients
  rep.is_column_stochastic = nonneg && col.ok && rep.max_row_sum <= 1.0 + tol.col_sum;
  return rep;
}

StochasticityReport is_column_stochastic(const DenseWitness& w, StochTolerances tol) {
  StochasticityReport rep;
  const std::size_t size = w.size;

  bool nonneg = true;
  for (std::size_t i = 0; i < size && nonneg; ++i) {
    const std::size_t jmax = std::min(w.row_support(i), size - 1);
    for (std::size_t j = 0; j <= jmax; ++j) {
      const double v = w.entry(i, j);
      if (v < -tol.nonneg) {
        rep.first_negative = FirstNegative{i, j, v};
        nonneg = false;
        break;
      }
    }
  }

  // Row sums over complete rows (rows whose full support fits the truncation).
  rep.max_row_sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    if (w.row_support(i) >= size) break;
    NeumaierSum s;
    for (std::size_t j = 0; j <= w.row_support(i); ++j) s.add(w.entry(i, j));
    rep.max_row_sum = std::max(rep.max_row_sum, s.value());
  }

  // Column sums where the truncation retains enough of the column to judge
  // the tail. Right-edge columns are skipped: their ratio window would touch
  // the irregular head entries instead of the geometric tail.
  bool cols_ok = true;
  std::size_t judged = 0;
  rep.max_col_residual = 0.0;
  for (std::size_t j = 0; j < size; ++j) {
    std::vector<double> entries;
    entries.reserve(size);
    for (std::size_t i = (j < 3 ? 0 : j + 1); i < size; ++i) entries.push_back(w.entry(i, j));
    if (entries.size() < 12) continue;
    ++judged;
    const ColumnCheck col = check_column_sum(entries, tol.col_sum);
    rep.max_col_residual = std::max(rep.max_col_residual, col.residual);
    if (!col.ok) cols_ok = false;
  }

  rep.judged_columns = judged;
  rep.is_column_stochastic =
      nonneg && cols_ok && judged > 0 && rep.max_row_sum <= 1.0 + tol.col_sum;
  return rep;
}

namespace {

void require_certified(const Distribution& p, const Distribution& q) {
  if (!p.tail_certified || !q.tail_certified) {
    throw UncertifiedTail("verify_witness: distributions must be tail-certified");
  }
}

}  // namespace

double verify_witness(const ToeplitzWitness& w, const Distribution& p, const Distribution& q) {
  require_certified(p, q);
  const std::size_t rows = std::min({w.size(), p.probs.size(), q.probs.size()});
  if (rows == 0) {
    throw IncompatibleTruncation("verify_witness: no fully determined rows");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    NeumaierSum s;
    for (std::size_t n = 0; n <= i; ++n) s.add(w.coeffs[n] * p.probs[i - n]);
    worst = std::max(worst, std::fabs(q.probs[i] - s.value()));
  }
  return worst;
}

double verify_witness(const DenseWitness& w, const Distribution& p, const Distribution& q) {
  require_certified(p, q);
  std::size_t rows = 0;
  while (rows < w.size && rows < q.probs.size() && w.row_support(rows) < p.probs.size()) ++rows;
  if (rows == 0) {
    throw IncompatibleTruncation("verify_witness: no fully determined rows");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    NeumaierSum s;
    for (std::size_t j = 0; j <= w.row_support(i); ++j) s.add(w.entry(i, j) * p.probs[j]);
    worst = std::max(worst, std::fabs(q.probs[i] - s.value()));
  }
  return worst;
}

ToeplitzWitness toeplitz_deconvolve(const Distribution& p, const Distribution& q,
                                    std::size_t size) {
  require_certified(p, q);
  if (size < 1 || size > std::min(p.probs.size(), q.probs.size())) {
    throw IncompatibleTruncation("toeplitz_deconvolve: size must fit both prefixes");
  }
  if (!(p.probs[0] > 0.0)) {
    throw DivisionByZeroMass("toeplitz_deconvolve: p_0 must be positive");
  }
  ToeplitzWitness w;
  w.lambda = p.lambda;
  w.kind = WitnessKind::Deconvolved;
  w.coeffs.resize(size);
  w.coeffs[0] = q.probs[0] / p.probs[0];
  for (std::size_t n = 1; n < size; ++n) {
    NeumaierSum s;
    s.add(q.probs[n]);
    for (std::size_t j = 1; j <= n; ++j) s.add(-w.coeffs[n - j] * p.probs[j]);
    w.coeffs[n] = s.value() / p.probs[0];
  }
  return w;
}

}  // namespace tmsns
