#include "renyi/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "renyi/error.hpp"
#include "renyi/special.hpp"

namespace renyi {

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Gaussian:
      return "gaussian";
    case Family::Student:
      return "student";
    case Family::PearsonII:
      return "pearson2";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  if (name == "gaussian" || name == "normal") return Family::Gaussian;
  if (name == "student") return Family::Student;
  if (name == "pearson2" || name == "pearsonii") return Family::PearsonII;
  return std::nullopt;
}

DistributionSpec::DistributionSpec(Family f, double shape, std::vector<double> location,
                                   SymMatrix scale)
    : family_(f), shape_(shape), location_(std::move(location)), scale_(std::move(scale)) {
  if (location_.empty()) throw DomainError("distribution dimension must be >= 1");
  if (scale_.dim() != location_.size()) throw DomainError("location and scale dimensions differ");
  if (f == Family::Student && !(shape > 0.0 && std::isfinite(shape)))
    throw DomainError("Student nu must be > 0");
  if (f == Family::PearsonII && !(shape > 0.0 && std::isfinite(shape)))
    throw DomainError("Pearson II gamma must be > 0");
}

DistributionSpec DistributionSpec::gaussian(std::vector<double> location, SymMatrix scale) {
  return {Family::Gaussian, 0.0, std::move(location), std::move(scale)};
}

DistributionSpec DistributionSpec::student(double nu, std::vector<double> location,
                                           SymMatrix scale) {
  return {Family::Student, nu, std::move(location), std::move(scale)};
}

DistributionSpec DistributionSpec::pearson2(double gamma, std::vector<double> location,
                                            SymMatrix scale) {
  return {Family::PearsonII, gamma, std::move(location), std::move(scale)};
}

DistributionSpec DistributionSpec::standard(Family family, double shape, int m) {
  if (m < 1) throw DomainError("dimension must be >= 1");
  const auto dim = static_cast<std::size_t>(m);
  return {family, family == Family::Gaussian ? 0.0 : shape, std::vector<double>(dim, 0.0),
          SymMatrix::identity(dim)};
}

double log_density(const DistributionSpec& spec, std::span<const double> x) {
  const int m = spec.dim();
  if (x.size() != static_cast<std::size_t>(m)) throw DomainError("point dimension mismatch");
  const Cholesky chol = cholesky(spec.scale());
  std::vector<double> d(x.begin(), x.end());
  for (int j = 0; j < m; ++j) d[j] -= spec.location()[j];
  const double quad = chol.quadratic_form(d);
  const double half_logdet = 0.5 * log_det(chol);

  switch (spec.family()) {
    case Family::Gaussian:
      return -0.5 * m * std::log(2.0 * std::numbers::pi) - half_logdet - 0.5 * quad;
    case Family::Student: {
      const double nu = spec.shape();
      const double log_cs = log_gamma(0.5 * (nu + m)) - 0.5 * m * std::log(std::numbers::pi * nu) -
                            log_gamma(0.5 * nu);
      return log_cs - half_logdet - 0.5 * (nu + m) * std::log1p(quad / nu);
    }
    case Family::PearsonII: {
      if (!(quad < 1.0)) return -std::numeric_limits<double>::infinity();
      const double g = spec.shape();
      const double log_cp = log_gamma(0.5 * m + g + 1.0) - 0.5 * m * std::log(std::numbers::pi) -
                            log_gamma(g + 1.0);
      return log_cp - half_logdet + g * std::log1p(-quad);
    }
  }
  throw DomainError("unknown family");
}

namespace {

void check_order(double q) {
  if (!(q > 0.0) || q == 1.0 || !std::isfinite(q))
    throw DomainError("Renyi order must satisfy q > 0, q != 1");
}

}  // namespace

double gaussian_entropy_constant(int m, double q) {
  check_order(q);
  return 0.5 * m * std::log(2.0 * std::numbers::pi) - m / (2.0 * (1.0 - q)) * std::log(q);
}

double student_entropy_constant(int m, double q, double nu) {
  check_order(q);
  if (!(nu > 0.0)) throw DomainError("Student nu must be > 0");
  const double half_m = 0.5 * m;
  const double first = q * 0.5 * (nu + m) - half_m;
  if (!(first > 0.0)) {
    throw DomainError("Student Renyi entropy diverges: q(nu+m)/2 - m/2 must be positive");
  }
  return (log_beta(first, half_m) - q * log_beta(0.5 * nu, half_m)) / (1.0 - q) +
         half_m * std::log(std::numbers::pi * nu) - log_gamma(half_m);
}

double pearson_entropy_constant(int m, double q, double gamma) {
  check_order(q);
  if (!(gamma > 0.0)) throw DomainError("Pearson II gamma must be > 0");
  const double half_m = 0.5 * m;
  const double first = q * gamma + 1.0;
  if (!(first > 0.0)) throw DomainError("Pearson II Renyi entropy needs q*gamma + 1 > 0");
  return (log_beta(first, half_m) - q * log_beta(gamma + 1.0, half_m)) / (1.0 - q) +
         half_m * std::log(std::numbers::pi) - log_gamma(half_m);
}

double renyi_entropy_exact(const DistributionSpec& spec, double q) {
  const double half_logdet = 0.5 * log_det(cholesky(spec.scale()));
  switch (spec.family()) {
    case Family::Gaussian:
      return half_logdet + gaussian_entropy_constant(spec.dim(), q);
    case Family::Student:
      return half_logdet + student_entropy_constant(spec.dim(), q, spec.shape());
    case Family::PearsonII:
      return half_logdet + pearson_entropy_constant(spec.dim(), q, spec.shape());
  }
  throw DomainError("unknown family");
}

void sample_uniform_sphere(Rng& rng, std::span<double> out) {
  if (out.size() == 1) {
    out[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return;
  }
  double norm2;
  do {
    rng.normal_vector(out);
    norm2 = 0.0;
    for (double v : out) norm2 += v * v;
  } while (norm2 < 1e-300);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= inv;
}

std::vector<double> sample_uniform_sphere(int m, Seed seed) {
  if (m < 1) throw DomainError("dimension must be >= 1");
  Rng rng(seed);
  std::vector<double> u(static_cast<std::size_t>(m));
  sample_uniform_sphere(rng, u);
  return u;
}

SampleMatrix sample(const DistributionSpec& spec, std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("sample size must be >= 1");
  const auto m = static_cast<std::size_t>(spec.dim());
  const Cholesky chol = cholesky(spec.scale());
  SampleMatrix x(n, m);
  std::vector<double> z(m);

  for (std::size_t i = 0; i < n; ++i) {
    switch (spec.family()) {
      case Family::Gaussian:
        rng.normal_vector(z);
        break;
      case Family::Student: {
        rng.normal_vector(z);
        const double w = rng.chi_squared(spec.shape());
        const double s = std::sqrt(spec.shape() / w);
        for (double& v : z) v *= s;
        break;
      }
      case Family::PearsonII: {
        const double r2 = rng.beta(0.5 * static_cast<double>(m), spec.shape() + 1.0);
        sample_uniform_sphere(rng, z);
        const double r = std::sqrt(r2);
        for (double& v : z) v *= r;
        break;
      }
    }
    auto row = x.row(i);
    chol.multiply_lower(z, row);
    for (std::size_t j = 0; j < m; ++j) row[j] += spec.location()[j];
  }
  return x;
}

SampleMatrix sample(const DistributionSpec& spec, std::size_t n, Seed seed) {
  Rng rng(seed);
  return sample(spec, n, rng);
}

}  // namespace renyi
