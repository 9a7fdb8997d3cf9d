#include "tmsns/numeric.hpp"

#include <array>
#include <cmath>

namespace tmsns {

double neumaier_total(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

namespace {

constexpr int kTableSize = 4096;

std::array<double, kTableSize> build_log_factorial_table() {
  std::array<double, kTableSize> t{};
  t[0] = 0.0;
  // Exact long-double products up to 170!, lgammal beyond.
  long double running = 1.0L;
  for (int n = 1; n < kTableSize; ++n) {
    if (n <= 170) {
      running *= static_cast<long double>(n);
      t[n] = static_cast<double>(std::log(running));
    } else {
      t[n] = static_cast<double>(std::lgamma(static_cast<long double>(n) + 1.0L));
    }
  }
  return t;
}

}  // namespace

double log_factorial(int n) {
  static const std::array<double, kTableSize> table = build_log_factorial_table();
  if (n < kTableSize) return table[static_cast<std::size_t>(n)];
  return static_cast<double>(std::lgamma(static_cast<long double>(n) + 1.0L));
}

}  // namespace tmsns
