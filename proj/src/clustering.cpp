#include "subopt/clustering.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "subopt/blocked_reduce.hpp"
#include "subopt/rng.hpp"

namespace subopt {

CenterMatrix CenterMatrix::from_flat(std::span<const double> x, std::size_t dim,
                                     std::size_t kappa) {
  if (x.size() != dim * kappa)
    throw std::invalid_argument("CenterMatrix: decision vector length != dim * kappa");
  CenterMatrix cm;
  cm.dim = dim;
  cm.kappa = kappa;
  cm.flat.assign(x.begin(), x.end());
  return cm;
}

namespace {

double sqdist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::size_t nearest_center(const CenterMatrix& centers, std::span<const double> p,
                           double* dist_out = nullptr) {
  std::size_t best_j = 0;
  double best = sqdist(p, centers.center(0));
  for (std::size_t j = 1; j < centers.kappa; ++j) {
    const double d = sqdist(p, centers.center(j));
    if (d < best) {
      best = d;
      best_j = j;
    }
  }
  if (dist_out) *dist_out = best;
  return best_j;
}

struct ClusterPartial {
  double dist_sum = 0.0;
  Vec point_sums;               // per-center sums of assigned points
  std::vector<long long> counts;
};

}  // namespace

ClusterEval cluster_eval(const Dataset& data, const CenterMatrix& centers) {
  const std::size_t m = data.size();
  const std::size_t dim = centers.dim;
  const std::size_t kappa = centers.kappa;

  ClusterPartial identity;
  identity.point_sums.assign(dim * kappa, 0.0);
  identity.counts.assign(kappa, 0);

  const ClusterPartial total = blocked_reduce(
      m, identity,
      [&](std::size_t lo, std::size_t hi) {
        ClusterPartial p;
        p.point_sums.assign(dim * kappa, 0.0);
        p.counts.assign(kappa, 0);
        for (std::size_t i = lo; i < hi; ++i) {
          const auto a = data.point(i);
          double d = 0.0;
          const std::size_t j = nearest_center(centers, a, &d);
          p.dist_sum += d;
          ++p.counts[j];
          for (std::size_t c = 0; c < dim; ++c) p.point_sums[j * dim + c] += a[c];
        }
        return p;
      },
      [](ClusterPartial& acc, const ClusterPartial& p) {
        acc.dist_sum += p.dist_sum;
        for (std::size_t i = 0; i < acc.point_sums.size(); ++i)
          acc.point_sums[i] += p.point_sums[i];
        for (std::size_t j = 0; j < acc.counts.size(); ++j) acc.counts[j] += p.counts[j];
      });

  ClusterEval out;
  const double inv_m = 1.0 / static_cast<double>(m);
  out.value = total.dist_sum * inv_m;
  out.subgradient.assign(dim * kappa, 0.0);
  for (std::size_t j = 0; j < kappa; ++j) {
    const double cj = static_cast<double>(total.counts[j]);
    for (std::size_t c = 0; c < dim; ++c) {
      out.subgradient[j * dim + c] =
          2.0 * inv_m * (cj * centers.flat[j * dim + c] - total.point_sums[j * dim + c]);
    }
  }
  return out;
}

ClusterEval cluster_eval_reference(const Dataset& data, const CenterMatrix& centers) {
  const std::size_t m = data.size();
  const std::size_t dim = centers.dim;
  const std::size_t kappa = centers.kappa;

  double dist_sum = 0.0;
  Vec point_sums(dim * kappa, 0.0);
  std::vector<long long> counts(kappa, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = data.point(i);
    double d = 0.0;
    const std::size_t j = nearest_center(centers, a, &d);
    dist_sum += d;
    ++counts[j];
    for (std::size_t c = 0; c < dim; ++c) point_sums[j * dim + c] += a[c];
  }

  ClusterEval out;
  const double inv_m = 1.0 / static_cast<double>(m);
  out.value = dist_sum * inv_m;
  out.subgradient.assign(dim * kappa, 0.0);
  for (std::size_t j = 0; j < kappa; ++j) {
    for (std::size_t c = 0; c < dim; ++c) {
      out.subgradient[j * dim + c] =
          2.0 * inv_m *
          (static_cast<double>(counts[j]) * centers.flat[j * dim + c] -
           point_sums[j * dim + c]);
    }
  }
  return out;
}

ObjectiveOracle cluster_objective(const Dataset& data, std::size_t kappa) {
  if (kappa < 1) throw std::invalid_argument("cluster_objective: kappa must be >= 1");
  if (data.size() == 0) throw std::invalid_argument("cluster_objective: empty dataset");
  const std::size_t dim = data.dim();
  const int decision_dim = static_cast<int>(dim * kappa);
  // the Dataset is shared by both closures
  auto shared = std::make_shared<Dataset>(data);
  return ObjectiveOracle(
      decision_dim,
      [shared, dim, kappa](std::span<const double> x) {
        return cluster_eval(*shared, CenterMatrix::from_flat(x, dim, kappa)).value;
      },
      [shared, dim, kappa](std::span<const double> x) {
        return cluster_eval(*shared, CenterMatrix::from_flat(x, dim, kappa)).subgradient;
      });
}

std::vector<std::size_t> assign_clusters(const CenterMatrix& centers, const Dataset& data) {
  std::vector<std::size_t> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    labels[i] = nearest_center(centers, data.point(i));
  return labels;
}

Dataset load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open " + path, 0);

  Vec flat;
  std::size_t dim = 0;
  std::size_t row = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t fields = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      const char* comma = p;
      while (comma != end && *comma != ',') ++comma;
      double v = 0.0;
      // std::from_chars skips nothing, so trim surrounding spaces first
      const char* lo = p;
      const char* hi = comma;
      while (lo != hi && std::isspace(static_cast<unsigned char>(*lo))) ++lo;
      while (hi != lo && std::isspace(static_cast<unsigned char>(hi[-1]))) --hi;
      const auto res = std::from_chars(lo, hi, v);
      if (res.ec != std::errc{} || res.ptr != hi)
        throw CsvParseError("non-numeric field at row " + std::to_string(row), row);
      flat.push_back(v);
      ++fields;
      if (comma == end) break;
      p = comma + 1;
    }
    if (dim == 0) {
      dim = fields;
    } else if (fields != dim) {
      throw CsvParseError("ragged row at row " + std::to_string(row) + ": expected " +
                              std::to_string(dim) + " fields, got " + std::to_string(fields),
                          row);
    }
  }
  if (flat.empty()) throw CsvParseError("empty file: " + path, 0);
  return Dataset(dim, std::move(flat));
}

Dataset make_blobs(const std::vector<Vec>& blob_centers, std::size_t points_per_blob,
                   double stddev, std::uint64_t seed) {
  if (blob_centers.empty()) throw std::invalid_argument("make_blobs: no centers");
  const std::size_t dim = blob_centers.front().size();
  Rng rng(mix_seed(seed, 0xb10b5ULL));
  Dataset data(dim, {});
  Vec p(dim);
  for (const Vec& c : blob_centers) {
    if (c.size() != dim) throw std::invalid_argument("make_blobs: center dimension mismatch");
    for (std::size_t i = 0; i < points_per_blob; ++i) {
      for (std::size_t k = 0; k < dim; ++k) p[k] = c[k] + stddev * rng.gaussian();
      data.push_back(p);
    }
  }
  return data;
}

CenterMatrix initial_centers(const Dataset& data, std::size_t kappa, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x1c3a75ULL));
  CenterMatrix cm;
  cm.dim = data.dim();
  cm.kappa = kappa;
  cm.flat.reserve(cm.dim * kappa);
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < kappa; ++j) {
    std::size_t pick = 0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      pick = static_cast<std::size_t>(rng.next_u64() % data.size());
      if (std::find(used.begin(), used.end(), pick) == used.end()) break;
    }
    used.push_back(pick);
    const auto p = data.point(pick);
    cm.flat.insert(cm.flat.end(), p.begin(), p.end());
  }
  return cm;
}

}  // namespace subopt
