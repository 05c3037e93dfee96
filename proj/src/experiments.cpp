#include "lavrentiev/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

#include "lavrentiev/csv.hpp"
#include "lavrentiev/rng.hpp"

namespace lavrentiev {

namespace {

constexpr double kPi = std::numbers::pi;

double u1_piece(double t, double x) {
  if (t < 0.25) return 4.0 * std::sin(kPi * x);
  if (t < 2.0 / 3.0) return 2.0 * std::cos(7.0 * kPi * x);
  if (t < 0.75) return 5.0 * x - std::cos(kPi * x);
  return 5.0 - 4.0 * std::sin(kPi * x);
}

// Antiderivative of sin(2 pi t)^5.
double sin5_primitive(double t) {
  const double c = std::cos(2.0 * kPi * t);
  const double c3 = c * c * c;
  return (-c + 2.0 * c3 / 3.0 - c3 * c * c / 5.0) / (2.0 * kPi);
}

} // namespace

PrimalField phantom_u1(const GammaGrid& gamma, const SpaceGrid& g) {
  PrimalField u = make_primal(gamma, g);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const double t = gamma.midpoint(i);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = u1_piece(t, g.node(j));
  }
  return u;
}

PrimalField phantom_u2(const GammaGrid& gamma, const SpaceGrid& g) {
  PrimalField u = make_primal(gamma, g);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const double mean = (sin5_primitive(gamma.knot(i + 1)) - sin5_primitive(gamma.knot(i))) / gamma.width(i);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = mean * std::cos(2.0 * kPi * g.node(j));
  }
  return u;
}

PrimalField make_phantom(const std::string& name, const GammaGrid& gamma, const SpaceGrid& g) {
  if (name == "u1") return phantom_u1(gamma, g);
  if (name == "u2") return phantom_u2(gamma, g);
  if (name == "zero") return make_primal(gamma, g);
  throw ConfigError("unknown phantom '" + name + "' (expected u1, u2 or zero)");
}

TrajectoryField add_noise(const TrajectoryField& y, const NoiseSpec& noise, const TimeGrid& tg, const SpaceGrid& g) {
  if (!(noise.delta >= 0.0)) throw DomainError("noise level must be nonnegative");
  if (noise.delta == 0.0) return y;
  PortableRng rng(noise.seed);
  TrajectoryField n(y.rows(), y.cols());
  for (double& e : n.values()) e = rng.gaussian();
  const double y_norm = norm_trajectory(y, tg, g);
  double scale = 0.0;
  if (noise.mode == NoiseMode::relative) {
    const double n_norm = norm_trajectory(n, tg, g);
    if (n_norm > 0.0) scale = noise.delta * y_norm / n_norm;
  } else {
    scale = noise.delta * y_norm;
  }
  n *= scale;
  return y + n;
}

double rel_error(const PrimalField& u, const PrimalField& u_true, const GammaGrid& gamma, const SpaceGrid& g) {
  const double d = norm_primal(u_true, gamma, g);
  if (!(d > 0.0)) throw DomainError("rel_error: reference field is zero");
  return norm_primal(u - u_true, gamma, g) / d;
}

double rel_residual(const TrajectoryField& y, const TrajectoryField& y_ref, const TimeGrid& tg, const SpaceGrid& g) {
  const double d = norm_trajectory(y_ref, tg, g);
  if (!(d > 0.0)) throw DomainError("rel_residual: reference trajectory is zero");
  return norm_trajectory(y - y_ref, tg, g) / d;
}

ExperimentProblem build_problem(const ExperimentConfig& c) {
  const SpaceGrid g(c.nx);
  const TimeGrid tg(c.nt);
  ForwardConfig cfg(g, tg);
  GammaGrid gamma = GammaGrid::aligned(c.intervals, tg, c.breakpoints);
  PrimalField u_true = make_phantom(c.phantom, gamma, g);
  TrajectoryField y = forward(u_true, gamma, cfg);
  return {std::move(cfg), std::move(gamma), std::move(u_true), std::move(y)};
}

SolverParams resolve_params(const ExperimentConfig& c, const GammaGrid& gamma, const SpaceGrid& g) {
  SolverParams p = default_params(gamma, g, c.cocoercivity, c.power_iters, c.power_seed);
  if (c.alpha > 0.0) p.alpha = c.alpha;
  if (c.beta > 0.0) p.beta = c.beta;
  p.k_max = c.k_max;
  p.sigma = c.sigma;
  p.max_outer = c.max_outer;
  p.tol_update = c.tol_update;
  p.inertia = c.inertia;
  return p;
}

ReconstructionResult reconstruct(const ExperimentConfig& c, const ExperimentProblem& problem) {
  const SpaceGrid& g = problem.cfg.space;
  const TimeGrid& tg = problem.cfg.time;
  InverseProblemSpec spec{problem.cfg,
                          problem.gamma,
                          c.weights,
                          add_noise(problem.y_clean, c.noise, tg, g),
                          c.cocoercivity,
                          resolve_params(c, problem.gamma, g),
                          c.power_iters,
                          c.power_seed};
  ReconstructionResult r;
  r.solution = solve_inverse(spec);
  r.rel_error = rel_error(r.solution.u, problem.u_true, problem.gamma, g);
  r.rel_residual = rel_residual(forward(r.solution.u, problem.gamma, problem.cfg), problem.y_clean, tg, g);
  return r;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("fit_loglog: length mismatch");
  if (x.size() < 2) throw DomainError("fit_loglog: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw DomainError("fit_loglog: values must be positive");
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double cxx = sxx - sx * sx / n;
  const double cxy = sxy - sx * sy / n;
  const double cyy = syy - sy * sy / n;
  if (!(cxx > 0.0)) throw DomainError("fit_loglog: abscissae are all equal");
  SlopeFit f;
  f.slope = cxy / cxx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r_squared = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  f.points = static_cast<int>(x.size());
  return f;
}

void RateTable::write_csv(std::ostream& os) const {
  os << "level,delta,lambda,mu,rel_error,rel_residual,iterations,wall_seconds\n";
  for (const RateRow& r : rows) {
    os << r.level << ',' << format_double(r.delta) << ',' << format_double(r.lambda) << ',' << format_double(r.mu)
       << ',' << format_double(r.rel_error) << ',' << format_double(r.rel_residual) << ',' << r.iterations << ','
       << format_double(r.wall_seconds) << '\n';
  }
}

void RateTable::write_slopes_csv(std::ostream& os) const {
  os << "quantity,slope,intercept,r_squared,points\n";
  auto line = [&os](const char* name, const std::optional<SlopeFit>& f) {
    if (!f) return;
    os << name << ',' << format_double(f->slope) << ',' << format_double(f->intercept) << ','
       << format_double(f->r_squared) << ',' << f->points << '\n';
  };
  line("rel_error", error_slope);
  line("rel_residual", residual_slope);
}

RateTable run_rate_study(const RateStudySpec& spec, const ExperimentConfig& c) {
  if (spec.levels < 1) throw DomainError("rate study needs at least one level");
  if (!(spec.lambda0 > 0.0 && spec.mu0 > 0.0 && spec.delta0 > 0.0))
    throw DomainError("rate study start values must be positive");
  const ExperimentProblem problem = build_problem(c);
  RateTable table;
  std::vector<double> deltas, errors, residuals;
  for (int i = 0; i < spec.levels; ++i) {
    const double factor = std::ldexp(1.0, -i);
    ExperimentConfig level = c;
    level.weights = {spec.lambda0 * factor, spec.mu0 * factor};
    level.noise.delta = spec.delta0 * factor;
    const auto start = std::chrono::steady_clock::now();
    const ReconstructionResult r = reconstruct(level, problem);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    table.rows.push_back({i, level.noise.delta, level.weights.lambda, level.weights.mu, r.rel_error, r.rel_residual,
                          r.solution.iterations, wall.count()});
    deltas.push_back(level.noise.delta);
    errors.push_back(r.rel_error);
    residuals.push_back(r.rel_residual);
  }
  if (spec.levels >= 2) {
    table.error_slope = fit_loglog(deltas, errors);
    table.residual_slope = fit_loglog(deltas, residuals);
  }
  return table;
}

} // namespace lavrentiev
