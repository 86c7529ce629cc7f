#pragma once

#include <cstddef>
#include <span>

namespace renyi {

struct SWResult {
  double w;
  double p_value;
  std::size_t n;
};

/// Shapiro–Wilk test using Royston's approximations for the coefficients and
/// for the null distribution of W (valid for 3 <= n <= 5000).
/// p-values are clamped to [1e-300, 1].
///
/// Throws NTooSmall / NTooLarge outside that range and DegenerateSample when
/// every value is equal.
SWResult shapiro_wilk(std::span<const double> x);

}  // namespace renyi
