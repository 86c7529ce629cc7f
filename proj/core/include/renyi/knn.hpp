#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "renyi/linalg.hpp"

namespace renyi {

/// rho(i, k) is the distance from point i to its k-th nearest other point,
/// k = 1..k_max. Rows are nondecreasing.
class KnnDistances {
 public:
  KnnDistances(std::size_t n, int k_max) : n_(n), k_max_(k_max), rho_(n * k_max) {}

  std::size_t n() const noexcept { return n_; }
  int k_max() const noexcept { return k_max_; }

  double operator()(std::size_t i, int k) const noexcept {
    return rho_[i * k_max_ + static_cast<std::size_t>(k - 1)];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {rho_.data() + i * k_max_, static_cast<std::size_t>(k_max_)};
  }
  std::span<double> row(std::size_t i) noexcept {
    return {rho_.data() + i * k_max_, static_cast<std::size_t>(k_max_)};
  }

  friend bool operator==(const KnnDistances&, const KnnDistances&) = default;

 private:
  std::size_t n_;
  int k_max_;
  std::vector<double> rho_;
};

/// Squared Euclidean distance accumulated in coordinate order. Both search
/// paths use it, which is what makes their outputs bitwise comparable.
inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

/// Static exact kd-tree over the rows of a sample. Splits at the median of
/// the coordinate with the widest spread; leaves hold at most 16 points.
/// The sample must outlive the tree.
class KdTree {
 public:
  static constexpr std::size_t kLeafSize = 16;

  explicit KdTree(const SampleMatrix& points);

  /// Squared distances to the k nearest points other than `self`, ascending.
  void nearest_excluding(std::size_t self, int k, std::span<double> out_sq) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    std::size_t begin;
    std::size_t end;
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t dim = 0;
    double split = 0.0;
    bool leaf = true;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  void search(std::size_t node, std::span<const double> query, std::size_t self, int k,
              double* best, int& count) const;

  const SampleMatrix* points_;
  std::vector<std::size_t> index_;
  std::vector<Node> nodes_;
};

/// Exact k-NN distances for every point via the kd-tree.
/// Throws KTooLarge unless 1 <= k_max <= N-1.
KnnDistances knn_all(const SampleMatrix& x, int k_max, unsigned threads = 1);

/// O(N² m) reference implementation with the same contract as knn_all.
KnnDistances knn_brute(const SampleMatrix& x, int k_max);

}  // namespace renyi
