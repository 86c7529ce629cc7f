#include "renyi/knn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "renyi/error.hpp"
#include "renyi/parallel.hpp"

namespace renyi {
namespace {

void check_k(const SampleMatrix& x, int k_max) {
  if (x.cols() == 0) throw DomainError("sample has no columns");
  if (k_max < 1 || static_cast<std::size_t>(k_max) + 1 > x.rows()) {
    throw KTooLarge("k_max = " + std::to_string(k_max) + " needs 1 <= k_max <= N-1 with N = " +
                    std::to_string(x.rows()));
  }
}

// Inserts d2 into the ascending array best[0..count), capped at k entries.
inline void offer(double d2, int k, double* best, int& count) {
  if (count == k) {
    if (!(d2 < best[k - 1])) return;
    --count;
  }
  int pos = count;
  while (pos > 0 && best[pos - 1] > d2) {
    best[pos] = best[pos - 1];
    --pos;
  }
  best[pos] = d2;
  ++count;
}

}  // namespace

KdTree::KdTree(const SampleMatrix& points) : points_(&points), index_(points.rows()) {
  for (std::size_t i = 0; i < index_.size(); ++i) index_[i] = i;
  nodes_.reserve(2 * (index_.size() / kLeafSize + 1));
  if (!index_.empty()) build(0, index_.size());
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{begin, end});
  if (end - begin <= kLeafSize) return id;

  const SampleMatrix& x = *points_;
  std::size_t best_dim = 0;
  double best_spread = -1.0;
  for (std::size_t d = 0; d < x.cols(); ++d) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = x(index_[i], d);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      best_dim = d;
    }
  }
  if (!(best_spread > 0.0)) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                   index_.begin() + static_cast<std::ptrdiff_t>(mid),
                   index_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return x(a, best_dim) < x(b, best_dim); });
  const double split = x(index_[mid], best_dim);

  // [begin, mid) <= split <= [mid, end) after nth_element.
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  Node& node = nodes_[id];
  node.leaf = false;
  node.dim = best_dim;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

void KdTree::search(std::size_t node_id, std::span<const double> query, std::size_t self, int k,
                    double* best, int& count) const {
  const Node& node = nodes_[node_id];
  if (node.leaf) {
    const SampleMatrix& x = *points_;
    for (std::size_t p = node.begin; p < node.end; ++p) {
      const std::size_t j = index_[p];
      if (j == self) continue;
      offer(squared_distance(query, x.row(j)), k, best, count);
    }
    return;
  }
  const double diff = query[node.dim] - node.split;
  const std::size_t near = diff < 0.0 ? node.left : node.right;
  const std::size_t far = diff < 0.0 ? node.right : node.left;
  search(near, query, self, k, best, count);
  if (count < k || diff * diff < best[k - 1]) search(far, query, self, k, best, count);
}

void KdTree::nearest_excluding(std::size_t self, int k, std::span<double> out_sq) const {
  int count = 0;
  search(0, points_->row(self), self, k, out_sq.data(), count);
}

KnnDistances knn_all(const SampleMatrix& x, int k_max, unsigned threads) {
  check_k(x, k_max);
  const KdTree tree(x);
  KnnDistances out(x.rows(), k_max);
  parallel_for(x.rows(), threads, [&](std::size_t i) {
    auto row = out.row(i);
    tree.nearest_excluding(i, k_max, row);
    for (double& v : row) v = std::sqrt(v);
  });
  return out;
}

KnnDistances knn_brute(const SampleMatrix& x, int k_max) {
  check_k(x, k_max);
  const std::size_t n = x.rows();
  KnnDistances out(n, k_max);
  std::vector<double> d2(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d2[c++] = squared_distance(x.row(i), x.row(j));
    std::partial_sort(d2.begin(), d2.begin() + k_max, d2.end());
    auto row = out.row(i);
    for (int k = 0; k < k_max; ++k) row[k] = std::sqrt(d2[k]);
  }
  return out;
}

}  // namespace renyi
