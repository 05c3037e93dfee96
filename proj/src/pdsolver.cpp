#include "lavrentiev/pdsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lavrentiev/csv.hpp"

namespace lavrentiev {

double ProblemBindings::primal_norm(const PrimalField& u) const { return std::sqrt(std::max(0.0, primal_inner(u, u))); }

double ProblemBindings::dual_norm(const DualField& v) const { return std::sqrt(std::max(0.0, dual_inner(v, v))); }

void SolverParams::validate(double cocoercivity, double opnorm_estimate) const {
  if (!(alpha > 0.0 && alpha < 2.0 * cocoercivity))
    throw ConfigError("step size alpha must lie in (0, 2C); alpha=" + format_double(alpha) +
                      " C=" + format_double(cocoercivity));
  if (!(beta > 0.0 && beta * opnorm_estimate * opnorm_estimate < 1.0))
    throw ConfigError("dual step beta must lie in (0, 1/||L||^2); beta=" + format_double(beta) +
                      " ||L||=" + format_double(opnorm_estimate));
  if (k_max < 1) throw ConfigError("k_max must be at least 1");
  if (!(sigma > 0.0)) throw ConfigError("safeguard constant sigma must be positive");
  if (max_outer < 0) throw ConfigError("max_outer must be nonnegative");
  if (!(tol_update >= 0.0)) throw ConfigError("tol_update must be nonnegative");
}

IterateState IterateState::start(PrimalField u0, DualField v0) {
  IterateState s;
  s.u_prev = u0;
  s.u = std::move(u0);
  s.v = std::move(v0);
  return s;
}

double fista_next(double t) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)); }

double inertial_gamma(int n, double t_n, double step_norm, const SolverParams& params) {
  if (n <= 0 || !params.inertia) return 0.0;
  const double g_fista = (t_n - 1.0) / fista_next(t_n);
  if (!(step_norm > 0.0)) return g_fista;
  return std::min(g_fista, params.sigma * params.rho(n) / step_norm);
}

StepReport outer_step(IterateState& state, const ProblemBindings& b, const SolverParams& params) {
  StepReport report;
  const double alpha = params.alpha;
  const double dual_step = params.beta / alpha;

  const PrimalField diff = state.u - state.u_prev;
  const double step_norm = b.primal_norm(diff);
  report.gamma = inertial_gamma(state.n, state.t_fista, step_norm, params);

  PrimalField ubar = state.u;
  if (report.gamma != 0.0) ubar.axpy(report.gamma, diff);

  const PrimalField t_bar = b.T(ubar);
  report.residual = b.primal_norm(t_bar);
  PrimalField forward_point = ubar;
  forward_point.axpy(-alpha, t_bar);

  auto primal_update = [&](const DualField& v) {
    PrimalField arg = forward_point;
    arg.axpy(-alpha, b.L_adjoint(v));
    return b.prox_g(arg, alpha);
  };

  DualField v = state.v;
  PrimalField sum = PrimalField::zeros(state.u.rows(), state.u.cols());
  report.dual_increments.reserve(static_cast<std::size_t>(params.k_max));
  for (int k = 0; k < params.k_max; ++k) {
    PrimalField uk = primal_update(v);
    if (k > 0) sum += uk;
    if (b.on_inner) b.on_inner(k, uk, v);
    DualField arg = v;
    arg.axpy(dual_step, b.L(uk));
    DualField v_next = b.prox_fstar(arg, dual_step);
    report.dual_increments.push_back(b.dual_norm(v_next - v));
    v = std::move(v_next);
  }
  PrimalField u_last = primal_update(v);
  if (b.on_inner) b.on_inner(params.k_max, u_last, v);
  sum += u_last;
  sum *= 1.0 / static_cast<double>(params.k_max);

  if (!sum.all_finite() || !v.all_finite())
    throw DivergenceError("non-finite iterate at outer iteration " + std::to_string(state.n) +
                          " (gamma=" + format_double(report.gamma) + ", ||T(ubar)||=" +
                          format_double(report.residual) + ")");

  state.gamma_sum += report.gamma * step_norm;
  report.update_norm = b.primal_norm(sum - state.u);
  state.u_prev = std::move(state.u);
  state.u = std::move(sum);
  state.v = std::move(v);
  state.t_fista = fista_next(state.t_fista);
  ++state.n;
  return report;
}

void ConvergenceTrace::write_csv(std::ostream& os) const {
  os << "iter,update_norm,residual,tv,sobolev,gamma_n,gamma_sum\n";
  for (const TraceRow& r : rows) {
    os << r.iter << ',' << format_double(r.update_norm) << ',' << format_double(r.residual) << ','
       << format_double(r.tv) << ',' << format_double(r.sobolev) << ',' << format_double(r.gamma_n) << ','
       << format_double(r.gamma_sum) << '\n';
  }
}

Solution run(const ProblemBindings& b, const SolverParams& params, PrimalField init_u, DualField init_v) {
  IterateState state = IterateState::start(std::move(init_u), std::move(init_v));
  Solution sol;
  double scale = b.primal_norm(state.u);
  while (state.n < params.max_outer) {
    const StepReport rep = outer_step(state, b, params);
    TraceRow row;
    row.iter = state.n;
    row.update_norm = rep.update_norm;
    row.residual = rep.residual;
    row.tv = b.tv_monitor ? b.tv_monitor(state.u) : 0.0;
    row.sobolev = b.sobolev_monitor ? b.sobolev_monitor(state.u) : 0.0;
    row.gamma_n = rep.gamma;
    row.gamma_sum = state.gamma_sum;
    sol.trace.rows.push_back(row);

    const double un = b.primal_norm(state.u);
    if (state.n == 1) scale = std::max(scale, un);
    if (scale > 0.0 && un > params.divergence_factor * scale) {
      std::ostringstream msg;
      msg << "iterates diverge: ||u_" << state.n << "|| = " << format_double(un) << " exceeds "
          << format_double(params.divergence_factor) << " x initial scale " << format_double(scale)
          << "; last update " << format_double(rep.update_norm) << ", ||T(ubar)|| " << format_double(rep.residual)
          << " (check alpha and beta)";
      throw DivergenceError(msg.str());
    }
    if (rep.update_norm <= params.tol_update) {
      sol.converged = true;
      break;
    }
  }
  sol.iterations = state.n;
  sol.u = std::move(state.u);
  sol.v = std::move(state.v);
  return sol;
}

double check_fixed_point(const PrimalField& u, const DualField& v, const ProblemBindings& b,
                         const SolverParams& params) {
  const double alpha = params.alpha;
  const double dual_step = params.beta / alpha;
  PrimalField arg = u;
  arg.axpy(-alpha, b.T(u));
  arg.axpy(-alpha, b.L_adjoint(v));
  const double r_primal = b.primal_norm(u - b.prox_g(arg, alpha));
  DualField darg = v;
  darg.axpy(dual_step, b.L(u));
  const double r_dual = b.dual_norm(v - b.prox_fstar(darg, dual_step));
  return std::max(r_primal, r_dual);
}

} // namespace lavrentiev
