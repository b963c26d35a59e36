#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "subopt/core.hpp"

namespace subopt {

/// Point set to be clustered; flat row-major storage.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dim, Vec flat) : dim_(dim), data_(std::move(flat)) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }

  std::span<const double> point(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  void push_back(std::span<const double> p) { data_.insert(data_.end(), p.begin(), p.end()); }

 private:
  std::size_t dim_ = 0;
  Vec data_;
};

/// kappa centers in R^dim, flattened to one decision vector for the solver.
struct CenterMatrix {
  std::size_t dim = 0;
  std::size_t kappa = 0;
  Vec flat;  // length dim * kappa, center j at [j*dim, (j+1)*dim)

  std::span<const double> center(std::size_t j) const { return {flat.data() + j * dim, dim}; }
  std::span<double> center(std::size_t j) { return {flat.data() + j * dim, dim}; }

  static CenterMatrix from_flat(std::span<const double> x, std::size_t dim, std::size_t kappa);
};

struct ClusterEval {
  double value = 0.0;
  Vec subgradient;  // length dim * kappa
};

/// Mean of per-point minimum squared distances to the centers plus the
/// matching subgradient (argmin ties to the lowest center index).
/// Deterministic blocked reduction over the points; OpenMP-parallel when
/// enabled at build time, bitwise identical for any thread count.
ClusterEval cluster_eval(const Dataset& data, const CenterMatrix& centers);

/// Plain serial loop kept as the reference implementation for testing and
/// the kernel benchmark.
ClusterEval cluster_eval_reference(const Dataset& data, const CenterMatrix& centers);

/// Oracle over the flattened center matrix, backed by cluster_eval.
ObjectiveOracle cluster_objective(const Dataset& data, std::size_t kappa);

/// Nearest-center labels (squared Euclidean, lowest index on ties).
std::vector<std::size_t> assign_clusters(const CenterMatrix& centers, const Dataset& data);

struct CsvParseError : std::runtime_error {
  CsvParseError(const std::string& what, std::size_t row)
      : std::runtime_error(what), row(row) {}
  std::size_t row;
};

/// Reads comma-separated real rows of uniform arity, in file order.
Dataset load_points_csv(const std::string& path);

/// Seeded mixture of isotropic Gaussian blobs; stands in for external data
/// in tests and examples.
Dataset make_blobs(const std::vector<Vec>& blob_centers, std::size_t points_per_blob,
                   double stddev, std::uint64_t seed);

/// Initial centers drawn as kappa distinct data points (seeded).
CenterMatrix initial_centers(const Dataset& data, std::size_t kappa, std::uint64_t seed);

}  // namespace subopt
