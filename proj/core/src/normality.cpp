#include "renyi/normality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "renyi/error.hpp"
#include "renyi/special.hpp"

namespace renyi {
namespace {

// c[0] + c[1] x + c[2] x² + ...
template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

constexpr std::array<double, 6> kC1 = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr std::array<double, 6> kC2 = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr std::array<double, 4> kC3 = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr std::array<double, 4> kC4 = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr std::array<double, 4> kC5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr std::array<double, 3> kC6 = {-0.4803, -0.082676, 0.0030302};
constexpr std::array<double, 2> kG = {-2.273, 0.459};

constexpr double kMinP = 1e-300;

// Coefficients a_1..a_{n/2} for the largest order statistics; the lower half
// is the mirror image with opposite sign.
std::vector<double> sw_coefficients(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }
  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

  std::size_t first;
  double fac;
  if (n > 5) {
    first = 2;
    const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    first = 1;
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

}  // namespace

SWResult shapiro_wilk(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n < 3) throw NTooSmall("Shapiro-Wilk needs n >= 3, got " + std::to_string(n));
  if (n > 5000) throw NTooLarge("Shapiro-Wilk supports n <= 5000, got " + std::to_string(n));

  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0.0) || !std::isfinite(range))
    throw DegenerateSample("Shapiro-Wilk sample has zero range");

  const std::vector<double> a = sw_coefficients(n);
  const std::size_t half = n / 2;

  // Data are scaled by the range for conditioning; W is scale invariant.
  double mean = 0.0;
  for (double v : x) mean += v / range;
  mean /= static_cast<double>(n);
  double ssx = 0.0;
  for (double v : x) {
    const double d = v / range - mean;
    ssx += d * d;
  }
  double sax = 0.0;
  for (std::size_t i = 0; i < half; ++i) sax += a[i] * (x[n - 1 - i] - x[i]) / range;
  // The coefficient vector has unit norm and zero mean, so W = sax² / ssx.
  // 1 - W is formed directly for accuracy when W is close to 1.
  double ssa = 0.0;
  for (double v : a) ssa += 2.0 * v * v;
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = std::min(1.0, 1.0 - w1);

  SWResult r{w, 1.0, n};
  if (n == 3) {
    constexpr double pi6 = 6.0 / std::numbers::pi;
    constexpr double stqr = std::numbers::pi / 3.0;
    r.p_value = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), kMinP, 1.0);
    return r;
  }

  const double an = static_cast<double>(n);
  double y = std::log(w1);
  double mu;
  double sigma;
  if (n <= 11) {
    const double gamma = poly(kG, an);
    if (y >= gamma) {
      r.p_value = kMinP;
      return r;
    }
    y = -std::log(gamma - y);
    mu = poly(kC3, an);
    sigma = std::exp(poly(kC4, an));
  } else {
    const double ln = std::log(an);
    mu = poly(kC5, ln);
    sigma = std::exp(poly(kC6, ln));
  }
  r.p_value = std::clamp(normal_sf((y - mu) / sigma), kMinP, 1.0);
  return r;
}

}  // namespace renyi
