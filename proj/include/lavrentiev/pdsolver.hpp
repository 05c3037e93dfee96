#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "lavrentiev/field.hpp"

namespace lavrentiev {

/// Nested inertial primal-dual iteration for
///
///   0 in T(u) + L^* df(L u) + dg(u),
///
/// with T cocoercive, L linear, and f, g convex with cheap proxes. Every outer
/// iteration evaluates T once at the extrapolated point
/// ubar = u_n + gamma_n (u_n - u_{n-1}) and then runs k_max primal-dual sweeps
///
///   u^k     = prox_{alpha g}(ubar - alpha (T(ubar) + L^* v^k))
///   v^{k+1} = prox_{(beta/alpha) f^*}(v^k + (beta/alpha) L u^k)
///
/// followed by a closing primal update with v^{k_max}. The new iterate is the
/// mean of u^1..u^{k_max}; the dual is carried over as the next warm start.
struct ProblemBindings {
  std::function<PrimalField(const PrimalField&)> T;
  std::function<DualField(const PrimalField&)> L;
  std::function<PrimalField(const DualField&)> L_adjoint;
  /// prox of alpha*g
  std::function<PrimalField(const PrimalField&, double alpha)> prox_g;
  /// prox of step*f^*
  std::function<DualField(const DualField&, double step)> prox_fstar;
  std::function<double(const PrimalField&, const PrimalField&)> primal_inner;
  std::function<double(const DualField&, const DualField&)> dual_inner;

  // Optional trace columns and instrumentation.
  std::function<double(const PrimalField&)> tv_monitor;
  std::function<double(const PrimalField&)> sobolev_monitor;
  std::function<void(int k, const PrimalField& u_k, const DualField& v_k)> on_inner;

  double primal_norm(const PrimalField& u) const;
  double dual_norm(const DualField& v) const;
};

struct SolverParams {
  double alpha = 0.0;
  double beta = 0.0;
  int k_max = 5;
  double sigma = 1.0;
  /// Summable safeguard sequence, evaluated for n >= 1.
  std::function<double(int)> rho = [](int n) { return 1.0 / (static_cast<double>(n) * n); };
  int max_outer = 1000;
  double tol_update = 1e-6;
  /// false forces gamma_n = 0 (plain nested primal-dual).
  bool inertia = true;
  /// Abort once ||u_n|| exceeds this multiple of the initial scale.
  double divergence_factor = 1e6;

  /// Checks 0 < alpha < 2C, 0 < beta * opnorm^2 < 1 and k_max >= 1.
  void validate(double cocoercivity, double opnorm_estimate) const;
};

struct IterateState {
  PrimalField u;
  PrimalField u_prev;
  DualField v;
  double t_fista = 1.0;
  int n = 0;
  double gamma_sum = 0.0;

  /// u_{-1} := u_0.
  static IterateState start(PrimalField u0, DualField v0);
};

struct StepReport {
  double update_norm = 0.0;
  double gamma = 0.0;
  double residual = 0.0; ///< ||T(ubar_n)||
  std::vector<double> dual_increments;
};

/// Next FISTA parameter (1 + sqrt(1 + 4 t^2)) / 2.
double fista_next(double t);

/// gamma_n: 0 for n = 0, otherwise min(gamma_fista, sigma rho_n / step_norm)
/// with gamma_fista = (t_n - 1) / t_{n+1}; the safeguard is skipped when
/// step_norm = ||u_n - u_{n-1}|| is zero.
double inertial_gamma(int n, double t_n, double step_norm, const SolverParams& params);

/// One outer iteration; updates state in place.
StepReport outer_step(IterateState& state, const ProblemBindings& b, const SolverParams& params);

struct TraceRow {
  int iter = 0;
  double update_norm = 0.0;
  double residual = 0.0;
  double tv = 0.0;
  double sobolev = 0.0;
  double gamma_n = 0.0;
  double gamma_sum = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;

  /// Columns: iter,update_norm,residual,tv,sobolev,gamma_n,gamma_sum
  void write_csv(std::ostream& os) const;
};

struct Solution {
  PrimalField u;
  DualField v;
  int iterations = 0;
  bool converged = false;
  ConvergenceTrace trace;
};

Solution run(const ProblemBindings& b, const SolverParams& params, PrimalField init_u, DualField init_v);

/// max( ||u - prox_{alpha g}(u - alpha (T u + L^* v))||,
///      ||v - prox_{(beta/alpha) f^*}(v + (beta/alpha) L u)|| )
double check_fixed_point(const PrimalField& u, const DualField& v, const ProblemBindings& b,
                         const SolverParams& params);

} // namespace lavrentiev
