#include "subopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subopt/rng.hpp"

namespace subopt {

namespace {

double sign_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }  // sign(0) := +1

// ---- MAXL: max_i |x_i| ----------------------------------------------------

double maxl_value(std::span<const double> x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::fabs(v));
  return best;
}

Vec maxl_subgrad(std::span<const double> x) {
  std::size_t best_i = 0;
  double best = std::fabs(x[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = std::fabs(x[i]);
    if (a > best) {
      best = a;
      best_i = i;
    }
  }
  Vec g(x.size(), 0.0);
  g[best_i] = sign_plus(x[best_i]);
  return g;
}

// ---- Hilbert residuals, shared by L1HILB and MXHILB -----------------------

Vec hilbert_residuals(std::span<const double> x) {
  const std::size_t n = x.size();
  Vec r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += x[j] / static_cast<double>(i + j + 1);
    r[i] = s;
  }
  return r;
}

double l1hilb_value(std::span<const double> x) {
  double s = 0.0;
  for (double v : hilbert_residuals(x)) s += std::fabs(v);
  return s;
}

Vec l1hilb_subgrad(std::span<const double> x) {
  const Vec r = hilbert_residuals(x);
  const std::size_t n = x.size();
  Vec g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sign_plus(r[i]);
    for (std::size_t j = 0; j < n; ++j) g[j] += s / static_cast<double>(i + j + 1);
  }
  return g;
}

double mxhilb_value(std::span<const double> x) {
  double best = 0.0;
  for (double v : hilbert_residuals(x)) best = std::max(best, std::fabs(v));
  return best;
}

Vec mxhilb_subgrad(std::span<const double> x) {
  const Vec r = hilbert_residuals(x);
  std::size_t best_i = 0;
  double best = std::fabs(r[0]);
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double a = std::fabs(r[i]);
    if (a > best) {
      best = a;
      best_i = i;
    }
  }
  const double s = sign_plus(r[best_i]);
  Vec g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    g[j] = s / static_cast<double>(best_i + j + 1);
  return g;
}

// ---- MAXQ: max_i x_i^2 -----------------------------------------------------

double maxq_value(std::span<const double> x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, v * v);
  return best;
}

Vec maxq_subgrad(std::span<const double> x) {
  std::size_t best_i = 0;
  double best = x[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = x[i] * x[i];
    if (a > best) {
      best = a;
      best_i = i;
    }
  }
  Vec g(x.size(), 0.0);
  g[best_i] = 2.0 * x[best_i];
  return g;
}

// ---- Chained CB3 II: max of three chained sums -----------------------------

void cb3_terms(std::span<const double> x, double out[3]) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double u = x[i], v = x[i + 1];
    a += u * u * u * u + v * v;
    b += (2.0 - u) * (2.0 - u) + (2.0 - v) * (2.0 - v);
    c += 2.0 * std::exp(-u + v);
  }
  out[0] = a;
  out[1] = b;
  out[2] = c;
}

double cb3ii_value(std::span<const double> x) {
  double t[3];
  cb3_terms(x, t);
  return std::max({t[0], t[1], t[2]});
}

Vec cb3ii_subgrad(std::span<const double> x) {
  double t[3];
  cb3_terms(x, t);
  int w = 0;
  if (t[1] > t[w]) w = 1;
  if (t[2] > t[w]) w = 2;
  Vec g(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double u = x[i], v = x[i + 1];
    switch (w) {
      case 0:
        g[i] += 4.0 * u * u * u;
        g[i + 1] += 2.0 * v;
        break;
      case 1:
        g[i] += -2.0 * (2.0 - u);
        g[i + 1] += -2.0 * (2.0 - v);
        break;
      default: {
        const double e = 2.0 * std::exp(-u + v);
        g[i] += -e;
        g[i + 1] += e;
      }
    }
  }
  return g;
}

// ---- Active faces: max{ g(-sum x), g(x_i) }, g(y) = ln(|y|+1) --------------

double af_g(double y) { return std::log(std::fabs(y) + 1.0); }
double af_gprime(double y) { return sign_plus(y) / (std::fabs(y) + 1.0); }

double activefaces_value(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  double best = af_g(-sum);
  for (double v : x) best = std::max(best, af_g(v));
  return best;
}

Vec activefaces_subgrad(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  double best = af_g(-sum);
  std::ptrdiff_t best_i = -1;  // -1 marks the aggregate term
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (af_g(x[i]) > best) {
      best = af_g(x[i]);
      best_i = static_cast<std::ptrdiff_t>(i);
    }
  }
  Vec g(x.size(), 0.0);
  if (best_i < 0) {
    const double d = -af_gprime(-sum);
    for (auto& v : g) v = d;
  } else {
    g[best_i] = af_gprime(x[best_i]);
  }
  return g;
}

// ---- Brown function 2 ------------------------------------------------------

double brown2_value(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double u = std::fabs(x[i]), v = std::fabs(x[i + 1]);
    s += std::pow(u, x[i + 1] * x[i + 1] + 1.0) + std::pow(v, x[i] * x[i] + 1.0);
  }
  return s;
}

Vec brown2_subgrad(std::span<const double> x) {
  Vec g(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double u = x[i], v = x[i + 1];
    const double au = std::fabs(u), av = std::fabs(v);
    const double pu = v * v + 1.0;  // exponent on |u|
    const double pv = u * u + 1.0;  // exponent on |v|
    // d/du |u|^pu
    if (au > 0.0)
      g[i] += pu * std::pow(au, pu - 1.0) * sign_plus(u);
    else if (pu == 1.0)
      g[i] += 1.0;  // |u| at 0; any element of [-1,1] works
    // d/du |v|^pv = |v|^pv * ln|v| * 2u
    if (av > 0.0) g[i] += std::pow(av, pv) * std::log(av) * 2.0 * u;
    // symmetric contributions for v
    if (av > 0.0)
      g[i + 1] += pv * std::pow(av, pv - 1.0) * sign_plus(v);
    else if (pv == 1.0)
      g[i + 1] += 1.0;
    if (au > 0.0) g[i + 1] += std::pow(au, pu) * std::log(au) * 2.0 * v;
  }
  return g;
}

// ---- Chained Mifflin 2 -----------------------------------------------------

double mifflin2_value(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double w = x[i] * x[i] + x[i + 1] * x[i + 1] - 1.0;
    s += -x[i] + 2.0 * w + 1.75 * std::fabs(w);
  }
  return s;
}

Vec mifflin2_subgrad(std::span<const double> x) {
  Vec g(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double w = x[i] * x[i] + x[i + 1] * x[i + 1] - 1.0;
    const double c = 4.0 + 3.5 * sign_plus(w);
    g[i] += -1.0 + c * x[i];
    g[i + 1] += c * x[i + 1];
  }
  return g;
}

// ---- Chained Crescent I and II ---------------------------------------------

void crescent_pieces(double u, double v, double& a, double& b) {
  a = u * u + (v - 1.0) * (v - 1.0) + v - 1.0;
  b = -u * u - (v - 1.0) * (v - 1.0) + v + 1.0;
}

double crescent1_value(std::span<const double> x) {
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double ai, bi;
    crescent_pieces(x[i], x[i + 1], ai, bi);
    a += ai;
    b += bi;
  }
  return std::max(a, b);
}

Vec crescent1_subgrad(std::span<const double> x) {
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double ai, bi;
    crescent_pieces(x[i], x[i + 1], ai, bi);
    a += ai;
    b += bi;
  }
  Vec g(x.size(), 0.0);
  const bool first = a >= b;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double u = x[i], v = x[i + 1];
    if (first) {
      g[i] += 2.0 * u;
      g[i + 1] += 2.0 * (v - 1.0) + 1.0;
    } else {
      g[i] += -2.0 * u;
      g[i + 1] += -2.0 * (v - 1.0) + 1.0;
    }
  }
  return g;
}

double crescent2_value(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double ai, bi;
    crescent_pieces(x[i], x[i + 1], ai, bi);
    s += std::max(ai, bi);
  }
  return s;
}

Vec crescent2_subgrad(std::span<const double> x) {
  Vec g(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double u = x[i], v = x[i + 1];
    double ai, bi;
    crescent_pieces(u, v, ai, bi);
    if (ai >= bi) {
      g[i] += 2.0 * u;
      g[i + 1] += 2.0 * (v - 1.0) + 1.0;
    } else {
      g[i] += -2.0 * u;
      g[i + 1] += -2.0 * (v - 1.0) + 1.0;
    }
  }
  return g;
}

// Reference minima for Chained Mifflin 2, recorded from long bounded runs
// (eta = 1e-8, tight iteration budgets) from the standard start; runs from
// nearby random starts agree to ~1e-7. Dimensions without an entry report
// f_star as unknown.
double mifflin2_reference(int n, bool& known) {
  known = true;
  switch (n) {
    case 10: return -6.5146142;
    case 50: return -34.7951813;
    default: known = false; return 0.0;
  }
}

Vec default_start_for(const std::string& name, int n) {
  Vec x(static_cast<std::size_t>(n), 0.0);
  if (name == "MAXL") {
    for (int i = 0; i < n; ++i)
      x[i] = ((i % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(i + 1) / n;
  } else if (name == "L1HILB" || name == "MXHILB" || name == "ActiveFaces") {
    std::fill(x.begin(), x.end(), 1.0);
  } else if (name == "MAXQ") {
    for (int i = 0; i < n; ++i)
      x[i] = (i + 1 <= n / 2) ? static_cast<double>(i + 1) : -static_cast<double>(i + 1);
  } else if (name == "ChainedCB3II") {
    // all zeros
  } else if (name == "Brown2") {
    for (int i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? -1.0 : 1.0;
  } else if (name == "ChainedMifflin2") {
    std::fill(x.begin(), x.end(), -1.0);
  } else {  // crescents
    for (int i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? -1.5 : 2.0;
  }
  return x;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "MAXL",        "L1HILB",          "MAXQ",
      "MXHILB",      "ChainedCB3II",    "ActiveFaces",
      "Brown2",      "ChainedMifflin2", "ChainedCrescentI",
      "ChainedCrescentII"};
  return names;
}

bool is_problem_name(const std::string& name) {
  const auto& names = problem_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::pair<ObjectiveOracle, ProblemSpec> make_problem(const std::string& name, int n) {
  if (n < 2) throw std::invalid_argument("make_problem: n must be at least 2");
  if (!is_problem_name(name)) throw std::invalid_argument("make_problem: unknown problem " + name);

  ProblemSpec spec;
  spec.name = name;
  spec.dimension = n;
  spec.default_start = default_start_for(name, n);

  ObjectiveOracle::ValueFn value;
  ObjectiveOracle::SubgradFn subgrad;

  if (name == "MAXL") {
    spec.convex = true;
    value = maxl_value;
    subgrad = maxl_subgrad;
  } else if (name == "L1HILB") {
    spec.convex = true;
    value = l1hilb_value;
    subgrad = l1hilb_subgrad;
  } else if (name == "MAXQ") {
    spec.convex = true;
    value = maxq_value;
    subgrad = maxq_subgrad;
  } else if (name == "MXHILB") {
    spec.convex = true;
    value = mxhilb_value;
    subgrad = mxhilb_subgrad;
  } else if (name == "ChainedCB3II") {
    spec.convex = true;
    spec.f_star = 2.0 * (n - 1);
    value = cb3ii_value;
    subgrad = cb3ii_subgrad;
  } else if (name == "ActiveFaces") {
    value = activefaces_value;
    subgrad = activefaces_subgrad;
  } else if (name == "Brown2") {
    value = brown2_value;
    subgrad = brown2_subgrad;
  } else if (name == "ChainedMifflin2") {
    spec.f_star = mifflin2_reference(n, spec.f_star_known);
    value = mifflin2_value;
    subgrad = mifflin2_subgrad;
  } else if (name == "ChainedCrescentI") {
    value = crescent1_value;
    subgrad = crescent1_subgrad;
  } else {
    value = crescent2_value;
    subgrad = crescent2_subgrad;
  }

  return {ObjectiveOracle(n, std::move(value), std::move(subgrad)), std::move(spec)};
}

Vec random_start(std::span<const double> default_start, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_start: n must be positive");
  Rng rng(mix_seed(seed, 0x5eedba11ULL));
  const double radius = (norm(default_start) + 1.0) / static_cast<double>(n);
  return sample_in_ball(default_start, radius, rng);
}

double relative_error(double f_val, double f_star) {
  if (!std::isfinite(f_star)) throw std::invalid_argument("relative_error: f_star must be finite");
  return std::fabs(f_val - f_star) / (std::fabs(f_star) + 1.0);
}

}  // namespace subopt
