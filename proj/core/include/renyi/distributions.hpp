#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "renyi/linalg.hpp"
#include "renyi/random.hpp"

namespace renyi {

enum class Family { Gaussian, Student, PearsonII };

std::string_view family_name(Family f) noexcept;
/// Accepts "gaussian", "student" and "pearson2" (also "pearsonii").
std::optional<Family> parse_family(std::string_view name) noexcept;

/// Elliptical distribution with location a and scale Σ.
/// `shape` is ν for Student, γ for Pearson II, unused for Gaussian.
class DistributionSpec {
 public:
  static DistributionSpec gaussian(std::vector<double> location, SymMatrix scale);
  static DistributionSpec student(double nu, std::vector<double> location, SymMatrix scale);
  static DistributionSpec pearson2(double gamma, std::vector<double> location, SymMatrix scale);
  /// a = 0, Σ = I_m.
  static DistributionSpec standard(Family family, double shape, int m);

  Family family() const noexcept { return family_; }
  double shape() const noexcept { return shape_; }
  int dim() const noexcept { return static_cast<int>(location_.size()); }
  const std::vector<double>& location() const noexcept { return location_; }
  const SymMatrix& scale() const noexcept { return scale_; }

 private:
  DistributionSpec(Family f, double shape, std::vector<double> location, SymMatrix scale);

  Family family_;
  double shape_;
  std::vector<double> location_;
  SymMatrix scale_;
};

/// log f(x); returns -inf outside the Pearson II support.
double log_density(const DistributionSpec& spec, std::span<const double> x);

/// Family constants of the closed-form Rényi entropy, H_q = ½ log|Σ| + constant.
double gaussian_entropy_constant(int m, double q);
double student_entropy_constant(int m, double q, double nu);
double pearson_entropy_constant(int m, double q, double gamma);

/// Exact H_q(f) for q > 0, q ≠ 1. Throws DomainError outside the family's range.
double renyi_entropy_exact(const DistributionSpec& spec, double q);

/// n i.i.d. draws, one per row.
SampleMatrix sample(const DistributionSpec& spec, std::size_t n, Seed seed);
SampleMatrix sample(const DistributionSpec& spec, std::size_t n, Rng& rng);

/// Uniform direction on the unit sphere S^{m-1}.
std::vector<double> sample_uniform_sphere(int m, Seed seed);
void sample_uniform_sphere(Rng& rng, std::span<double> out);

}  // namespace renyi
