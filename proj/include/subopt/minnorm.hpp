#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "subopt/vecmath.hpp"

namespace subopt {

/// Working set of subgradients whose convex hull approximates the local
/// subdifferential. Members are stored flat, row-major, in insertion order.
class Bundle {
 public:
  explicit Bundle(std::size_t dim, std::size_t capacity_hint = 0) : dim_(dim) {
    if (capacity_hint > 0) data_.reserve(capacity_hint * dim);
  }

  Bundle(std::size_t dim, std::initializer_list<Vec> members) : dim_(dim) {
    for (const auto& m : members) push_back(m);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const double> member(std::size_t j) const {
    return {data_.data() + j * dim_, dim_};
  }

  void push_back(std::span<const double> xi) {
    if (xi.size() != dim_) throw std::invalid_argument("Bundle: member dimension mismatch");
    data_.insert(data_.end(), xi.begin(), xi.end());
  }

  void clear() { data_.clear(); }

  /// Drop everything and keep a single member.
  void reset_to(std::span<const double> xi) {
    if (xi.size() != dim_) throw std::invalid_argument("Bundle: member dimension mismatch");
    data_.assign(xi.begin(), xi.end());
  }

 private:
  std::size_t dim_;
  Vec data_;
};

/// Solution of min{ ||g|| : g in conv(bundle) }.
struct MinNormSolution {
  Vec g_star;          // the least-norm hull point
  Vec weights;         // simplex weights over all bundle members, in order
  double norm = 0.0;   // ||g_star||
  double opt_residual = 0.0;  // max_j (||g*||^2 - xi_j' g*), <= tol on success
};

struct MinNormError : std::runtime_error {
  MinNormError(const std::string& what, double residual)
      : std::runtime_error(what), best_residual(residual) {}
  double best_residual;
};

/// Least-norm point in the convex hull of the bundle members, computed by
/// Wolfe's active-set iteration over affinely independent corrals.
///
/// tol_opt bounds the squared-norm optimality residual
///   max_j (||g*||^2 - xi_j' g*).
/// Internally the acceptance threshold tightens to a small fraction of
/// ||g*||^2 when that is below tol_opt (so tiny solutions still certify the
/// normal-cone condition) and never drops below the dot-product roundoff
/// level at the bundle's scale.
/// Deterministic for identical member order; ties broken by lowest index.
/// Throws std::invalid_argument on non-finite input and MinNormError when
/// the residual cannot be driven to the acceptance threshold.
MinNormSolution min_norm_point(const Bundle& bundle, double tol_opt = 1e-12);

/// Brute-force reference for min_norm_point: exhaustive simplex-grid search
/// at resolution grid_step followed by local pairwise weight-transfer
/// refinement. Independent of the active-set path. Bundles of size > 5 are
/// rejected (combinatorial grid).
Vec min_norm_oracle(const Bundle& bundle, double grid_step);

/// Euclidean distance from a point to conv(bundle), via min_norm_point on
/// the translated bundle { xi_j - point }.
double distance_to_hull(std::span<const double> point, const Bundle& bundle);

}  // namespace subopt
