#include "tmsns/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tmsns/numeric.hpp"

namespace tmsns {

double TruncatedTwoModeState::norm_squared() const {
  NeumaierSum s;
  for (double a : amp) s.add(a * a);
  return s.value();
}

double TruncatedTwoModeState::measured_deficit() const {
  NeumaierSum s;
  for (double a : amp) s.add(a * a);
  return (1.0 - s.sum_raw()) - s.compensation();
}

TruncatedTwoModeState tmsv(Squeezing lambda, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("tmsv: cutoff must be nonnegative");
  const double l = lambda.value();
  TruncatedTwoModeState s;
  s.cutoff = cutoff;
  s.amp.assign(static_cast<std::size_t>(cutoff + 1) * (cutoff + 1), 0.0);
  double a = std::sqrt(1.0 - l * l);
  for (int n = 0; n <= cutoff; ++n) {
    s.at(n, n) = a;
    a *= l;
  }
  // Truncated mass has a closed form: sum_{n>c} (1-l^2) l^{2n} = l^{2(c+1)}.
  s.norm_deficit = std::pow(l * l, cutoff + 1);
  return s;
}

TruncatedTwoModeState apply_coupled_creation(const TruncatedTwoModeState& state, Mode which,
                                             Squeezing lambda) {
  if (state.cutoff < 1) throw std::invalid_argument("apply_coupled_creation: cutoff must be >= 1");
  const int c = state.cutoff;
  const double l = lambda.value();
  const double inv = 1.0 / std::sqrt(1.0 - l * l);

  TruncatedTwoModeState out;
  out.cutoff = c;
  out.amp.assign(state.amp.size(), 0.0);
  out.dropped_mass = state.dropped_mass;

  for (int i = 0; i <= c; ++i) {
    for (int j = 0; j <= c; ++j) {
      double v = 0.0;
      if (which == Mode::A) {
        // A^dag = (a^dag - l b) / sqrt(1-l^2)
        if (i > 0) v += std::sqrt(static_cast<double>(i)) * state.at(i - 1, j);
        if (j < c) v -= l * std::sqrt(static_cast<double>(j + 1)) * state.at(i, j + 1);
      } else {
        // B^dag = (b^dag - l a) / sqrt(1-l^2)
        if (j > 0) v += std::sqrt(static_cast<double>(j)) * state.at(i, j - 1);
        if (i < c) v -= l * std::sqrt(static_cast<double>(i + 1)) * state.at(i + 1, j);
      }
      out.at(i, j) = inv * v;
    }
  }
  // Raising part pushed off row (column) c+1; account the leaked mass.
  const double root = std::sqrt(static_cast<double>(c + 1));
  for (int k = 0; k <= c; ++k) {
    const double leak = which == Mode::A ? inv * root * state.at(c, k) : inv * root * state.at(k, c);
    out.dropped_mass += leak * leak;
  }
  out.norm_deficit = out.measured_deficit();
  return out;
}

TruncatedTwoModeState apply_coupled_annihilation(const TruncatedTwoModeState& state, Mode which,
                                                 Squeezing lambda) {
  if (state.cutoff < 1) {
    throw std::invalid_argument("apply_coupled_annihilation: cutoff must be >= 1");
  }
  const int c = state.cutoff;
  const double l = lambda.value();
  const double inv = 1.0 / std::sqrt(1.0 - l * l);

  TruncatedTwoModeState out;
  out.cutoff = c;
  out.amp.assign(state.amp.size(), 0.0);
  out.dropped_mass = state.dropped_mass;

  for (int i = 0; i <= c; ++i) {
    for (int j = 0; j <= c; ++j) {
      double v = 0.0;
      if (which == Mode::A) {
        // A = (a - l b^dag) / sqrt(1-l^2)
        if (i < c) v += std::sqrt(static_cast<double>(i + 1)) * state.at(i + 1, j);
        if (j > 0) v -= l * std::sqrt(static_cast<double>(j)) * state.at(i, j - 1);
      } else {
        // B = (b - l a^dag) / sqrt(1-l^2)
        if (j < c) v += std::sqrt(static_cast<double>(j + 1)) * state.at(i, j + 1);
        if (i > 0) v -= l * std::sqrt(static_cast<double>(i)) * state.at(i - 1, j);
      }
      out.at(i, j) = inv * v;
    }
  }
  // The b^dag (a^dag) part leaks past the cutoff as well.
  const double root = std::sqrt(static_cast<double>(c + 1));
  for (int k = 0; k <= c; ++k) {
    const double leak =
        which == Mode::A ? inv * l * root * state.at(k, c) : inv * l * root * state.at(c, k);
    out.dropped_mass += leak * leak;
  }
  out.norm_deficit = out.measured_deficit();
  return out;
}

TruncatedTwoModeState oracle_state(StateLabel label, Squeezing lambda, int cutoff,
                                   OracleOptions opts) {
  if (cutoff < label.n_a + label.n_b + 1) {
    throw std::invalid_argument("oracle_state: cutoff must be >= n_a + n_b + 1");
  }
  TruncatedTwoModeState s = tmsv(lambda, cutoff);
  for (int k = 0; k < label.n_b; ++k) s = apply_coupled_creation(s, Mode::B, lambda);
  for (int k = 0; k < label.n_a; ++k) s = apply_coupled_creation(s, Mode::A, lambda);

  double norm = 1.0;
  for (int k = 2; k <= label.n_a; ++k) norm *= k;
  for (int k = 2; k <= label.n_b; ++k) norm *= k;
  const double scale = 1.0 / std::sqrt(norm);
  for (double& a : s.amp) a *= scale;
  s.dropped_mass *= scale * scale;

  s.norm_deficit = s.measured_deficit();
  if (s.norm_deficit > opts.deficit_bound || s.dropped_mass > opts.deficit_bound) {
    throw CutoffTooSmall("oracle_state: truncation deficit " + std::to_string(s.norm_deficit) +
                         " (dropped " + std::to_string(s.dropped_mass) + ") exceeds bound " +
                         std::to_string(opts.deficit_bound));
  }
  return s;
}

}  // namespace tmsns
