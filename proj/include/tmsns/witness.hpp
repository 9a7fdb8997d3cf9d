#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tmsns/schmidt.hpp"

namespace tmsns {

enum class WitnessKind { DChain, A1011, A0011, Deconvolved };

/// Lower-triangular Toeplitz matrix represented by its first column
/// a_0..a_{K-1}; entry(i, j) = a_{i-j} for i >= j. Acting on a sequence in
/// natural index order it is a discrete convolution.
struct ToeplitzWitness {
  double lambda = 0.0;
  WitnessKind kind = WitnessKind::Deconvolved;
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
  double entry(std::size_t i, std::size_t j) const;
};

/// Lower-banded non-Toeplitz witness given by a generator rule (the modified
/// chain matrix mapping p00 to p11). Entries are computed on demand for any
/// index; `size` is the nominal truncation used by the checks.
struct DenseWitness {
  double lambda = 0.0;
  std::size_t size = 0;

  double entry(std::size_t i, std::size_t j) const;
  /// Rightmost column that can be nonzero in row i.
  std::size_t row_support(std::size_t i) const { return i >= 3 ? i - 1 : 2; }
};

struct FirstNegative {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct StochasticityReport {
  bool is_column_stochastic = false;
  std::optional<FirstNegative> first_negative;
  double max_row_sum = 0.0;
  /// Worst column-sum residual not explained by the truncated tail.
  double max_col_residual = 0.0;
  /// Columns deep enough to judge; 0 means the truncation was too small to
  /// certify anything and the verdict defaults to false.
  std::size_t judged_columns = 0;
};

struct StochTolerances {
  double nonneg = 1e-12;   // entry nonnegativity
  double col_sum = 1e-10;  // column-sum defect
};

/// Chain witness D: a_n = (1-l^2) l^{2n}; maps p_{n,0} to p_{n+1,0}.
ToeplitzWitness build_D(Squeezing lambda, std::size_t size);

/// Witness mapping p10 to p11. Coefficients (before the common 1/(1-l^2)
/// factor): a_0 = l^2, a_1 = 2l^4 - 4l^2 + 1, a_n = 2 l^{2(n-1)} (1-l^2)^2
/// for n >= 2. Loses nonnegativity at lambda = sqrt((2-sqrt(2))/2).
ToeplitzWitness build_A_10_11(Squeezing lambda, std::size_t size);

/// Witness mapping p00 to p11: a_0 = l^2,
/// a_n = l^{2(n-1)} (l^4 + 2n(1-l^2)^2 - 1) for n >= 1.
/// Loses nonnegativity at lambda = 1/sqrt(3).
ToeplitzWitness build_A_00_11(Squeezing lambda, std::size_t size);

/// Modified p00 -> p11 witness with a wider stochastic range, up to
/// lambda = sqrt((9-sqrt(21))/10). Requires size >= 6.
DenseWitness build_A_prime(Squeezing lambda, std::size_t size);

/// Toeplitz product (coefficient convolution), truncated to the smaller size.
ToeplitzWitness compose(const ToeplitzWitness& lhs, const ToeplitzWitness& rhs);
ToeplitzWitness toeplitz_power(const ToeplitzWitness& w, int exponent);

/// Checks entry nonnegativity, unit column sums and row sums <= 1 on the
/// truncation. A positive column-sum residual is accepted when it is covered
/// by a geometric bound on the truncated tail (the coefficient families decay
/// with non-increasing ratios, so tail <= a_{K-1} r / (1-r) with r the last
/// observed ratio). Row sums are evaluated over complete rows only.
StochasticityReport is_column_stochastic(const ToeplitzWitness& w, StochTolerances tol = {});
StochasticityReport is_column_stochastic(const DenseWitness& w, StochTolerances tol = {});

/// Max |q_i - (W p)_i| over rows whose convolution window lies inside both
/// prefixes. Natural index order on both sides. Throws IncompatibleTruncation
/// when no row is fully determined.
double verify_witness(const ToeplitzWitness& w, const Distribution& p, const Distribution& q);
double verify_witness(const DenseWitness& w, const Distribution& p, const Distribution& q);

/// Triangular solve for the Toeplitz coefficients with q = W p on the first
/// `size` rows: a_0 = q_0/p_0, a_n = (q_n - sum_{j=1..n} a_{n-j} p_j) / p_0.
/// Operates on natural (unsorted) index order.
ToeplitzWitness toeplitz_deconvolve(const Distribution& p, const Distribution& q,
                                    std::size_t size);

}  // namespace tmsns
