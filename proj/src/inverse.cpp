#include "lavrentiev/inverse.hpp"

#include <memory>

#include "lavrentiev/prox.hpp"

namespace lavrentiev {

SolverParams default_params(const GammaGrid& gamma, const SpaceGrid& g, double cocoercivity, int power_iters,
                            std::uint64_t power_seed) {
  SolverParams p;
  p.alpha = cocoercivity;
  const double nrm = estimate_opnorm_dgamma(gamma, g, power_iters, power_seed);
  p.beta = 0.95 / (nrm * nrm);
  return p;
}

ProblemBindings build_bindings(const InverseProblemSpec& spec) {
  if (!(spec.weights.lambda > 0.0) || !(spec.weights.mu > 0.0))
    throw ConfigError("regularization weights lambda and mu must be positive");
  if (spec.gamma.intervals() < 2) throw ConfigError("the inverse problem needs at least two Gamma intervals");
  const SpaceGrid g = spec.cfg.space;
  const TimeGrid tg = spec.cfg.time;
  if (spec.y_delta.rows() != tg.size() || spec.y_delta.cols() != g.size())
    throw ConfigError("data does not match the space-time grid");
  spec.gamma.node_indices(tg);
  const double opnorm = estimate_opnorm_dgamma(spec.gamma, g, spec.power_iters, spec.power_seed);
  spec.params.validate(spec.cocoercivity, opnorm);

  // Shared immutable state captured by every binding.
  struct Context {
    ForwardConfig cfg;
    GammaGrid gamma;
    TrajectoryField y_delta;
    RegularizerWeights weights;
    HelmholtzSolver helmholtz;
  };
  auto ctx = std::make_shared<const Context>(Context{spec.cfg, spec.gamma, spec.y_delta, spec.weights,
                                                     HelmholtzSolver(spec.params.alpha * spec.weights.mu, g)});

  ProblemBindings b;
  b.T = [ctx](const PrimalField& u) { return apply_T(u, ctx->y_delta, ctx->cfg, ctx->gamma); };
  b.L = [ctx](const PrimalField& u) { return d_gamma(u, ctx->gamma); };
  b.L_adjoint = [ctx](const DualField& v) { return d_gamma_adjoint(v, ctx->gamma); };
  b.prox_g = [ctx](const PrimalField& w, double alpha) {
    const double coeff = alpha * ctx->weights.mu;
    if (coeff == ctx->helmholtz.coeff()) {
      PrimalField u = w;
      ctx->helmholtz.apply_in_place(u);
      return u;
    }
    return prox_sobolev(w, coeff, ctx->gamma, ctx->cfg.space);
  };
  // (lambda R)^* is an indicator, so its prox ignores the step.
  b.prox_fstar = [ctx](const DualField& v, double) { return prox_tv_dual(v, ctx->weights.lambda, ctx->cfg.space); };
  b.primal_inner = [ctx](const PrimalField& a, const PrimalField& c) {
    return inner_primal(a, c, ctx->gamma, ctx->cfg.space);
  };
  b.dual_inner = [ctx](const DualField& a, const DualField& c) { return inner_dual(a, c, ctx->cfg.space); };
  b.tv_monitor = [ctx](const PrimalField& u) { return tv_value(u, ctx->gamma, ctx->cfg.space); };
  b.sobolev_monitor = [ctx](const PrimalField& u) { return sobolev_value(u, ctx->gamma, ctx->cfg.space); };
  return b;
}

InverseSolution solve_inverse(const InverseProblemSpec& spec) {
  const ProblemBindings b = build_bindings(spec);
  Solution s = run(b, spec.params, make_primal(spec.gamma, spec.cfg.space), make_dual(spec.gamma, spec.cfg.space));
  InverseSolution out;
  out.fixed_point_residual = check_fixed_point(s.u, s.v, b, spec.params);
  out.u = std::move(s.u);
  out.v = std::move(s.v);
  out.trace = std::move(s.trace);
  out.iterations = s.iterations;
  out.converged = s.converged;
  return out;
}

} // namespace lavrentiev
