#include "subopt/core.hpp"

#include <stdexcept>

namespace subopt {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SolverParams validate_params(const SolverParams& params) {
  require(params.beta1 > 0.0 && params.beta1 < 1.0, "beta1 must lie in (0,1)");
  require(params.beta2 > 0.0 && params.beta2 < 1.0, "beta2 must lie in (0,1)");
  require(params.beta1 < params.beta2, "beta1 < beta2 violated");
  require(params.zeta > 0.0 && params.zeta < 0.5, "zeta must lie in (0,0.5)");
  require(params.p >= 1, "p must be a positive integer");
  require(params.eps0 > 0.0 && params.eps0 < 1.0, "eps0 must lie in (0,1)");
  require(params.delta0 > 0.0, "delta0 must be positive");
  require(params.reduce_eps > 0.0 && params.reduce_eps < 1.0, "reduce_eps must lie in (0,1)");
  require(params.reduce_delta > 0.0 && params.reduce_delta < 1.0,
          "reduce_delta must lie in (0,1)");
  require(params.eta >= 0.0, "eta must be nonnegative");
  require(params.tbar_fraction > 0.0 && params.tbar_fraction < 1.0,
          "tbar_fraction must lie in (0,1)");
  require(params.max_inner_iters >= 1, "max_inner_iters must be positive");
  require(params.max_linesearch_iters >= 1, "max_linesearch_iters must be positive");
  require(params.reset_M > 2, "reset_M must exceed 2");
  require(params.reset_theta > 0.0 && params.reset_theta <= 1.0,
          "reset_theta must lie in (0,1]");
  return params;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::IterCapReached: return "IterCapReached";
    case Status::LineSearchStalled: return "LineSearchStalled";
  }
  return "Unknown";
}

}  // namespace subopt
