#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace renyi {

/// Identifies an independent random stream. Identical (root, stream)
/// pairs always reproduce the same bitstream.
struct Seed {
  std::uint64_t root = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Random source built on mt19937_64 with hand-written variate generators,
/// so the output depends only on the seed and not on the standard library.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  /// Gamma(shape, scale = 1), shape > 0.
  double gamma(double shape);
  double beta(double a, double b);
  double chi_squared(double dof);

  /// Fills `out` with i.i.d. standard normals.
  void normal_vector(std::span<double> out);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace renyi
