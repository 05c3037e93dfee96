#include "lavrentiev/forward.hpp"

#include <algorithm>
#include <cmath>

#include "lavrentiev/tridiag.hpp"

namespace lavrentiev {

ForwardConfig::ForwardConfig(SpaceGrid s, TimeGrid t) : ForwardConfig(s, t, std::vector<double>(s.size(), 0.0)) {}

ForwardConfig::ForwardConfig(SpaceGrid s, TimeGrid t, std::vector<double> initial)
    : space(s), time(t), y0(std::move(initial)) {
  if (y0.size() != space.size()) throw ShapeError("initial condition does not match the space grid");
  if (y0.front() != 0.0 || y0.back() != 0.0) throw ConfigError("initial condition must vanish at x=0 and x=1");
}

TrajectoryField forward(const TrajectoryField& source, const ForwardConfig& cfg) {
  const std::size_t nt = cfg.time.size();
  const std::size_t nx = cfg.space.size();
  if (source.rows() != nt || source.cols() != nx) throw ShapeError("forward: source does not match the grids");
  if (!source.all_finite()) throw NumericError("forward: non-finite source");

  const double tau = cfg.time.spacing();
  const double h = cfg.space.spacing();
  const double half = 0.5 * tau / (h * h);
  const std::size_t n = nx - 2;

  TrajectoryField y(nt, nx);
  std::copy(cfg.y0.begin(), cfg.y0.end(), y.row(0).begin());

  const TridiagMatrix base = assemble_dirichlet_diffusion(0.5 * tau, cfg.space);
  TridiagMatrix step = base;
  std::vector<double> rhs(n);
  std::vector<double> q(n);
  std::vector<double> scratch;

  // One CN step from row m given the squared midpoint estimate q.
  auto cn_step = [&](std::size_t m) {
    const auto cur = y.row(m);
    const auto src0 = source.row(m);
    const auto src1 = source.row(m + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = k + 1;
      const double lap = cur[j - 1] - 2.0 * cur[j] + cur[j + 1];
      rhs[k] = cur[j] + half * lap - 0.5 * tau * q[k] * cur[j] + 0.5 * tau * (src0[j] + src1[j]);
      step.diag[k] = base.diag[k] + 0.5 * tau * q[k];
    }
    solve_tridiag_in_place(step, rhs, scratch);
    auto next = y.row(m + 1);
    next[0] = 0.0;
    next[nx - 1] = 0.0;
    for (std::size_t k = 0; k < n; ++k) next[k + 1] = rhs[k];
  };

  for (std::size_t m = 0; m + 1 < nt; ++m) {
    if (m == 0) {
      // No history yet: predict with q = (y^0)^2, then redo the step with the
      // predicted midpoint.
      for (std::size_t k = 0; k < n; ++k) q[k] = y(0, k + 1) * y(0, k + 1);
      cn_step(0);
      for (std::size_t k = 0; k < n; ++k) {
        const double mid = 0.5 * (y(0, k + 1) + y(1, k + 1));
        q[k] = mid * mid;
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const double mid = 1.5 * y(m, k + 1) - 0.5 * y(m - 1, k + 1);
        q[k] = mid * mid;
      }
    }
    cn_step(m);
  }
  if (!y.all_finite()) throw NumericError("forward: solution blew up");
  return y;
}

TrajectoryField forward(const PrimalField& u, const GammaGrid& gamma, const ForwardConfig& cfg) {
  return forward(prolong_from_gamma(u, gamma, cfg.time), cfg);
}

PrimalField apply_T(const PrimalField& u, const TrajectoryField& y_delta, const ForwardConfig& cfg,
                    const GammaGrid& gamma) {
  TrajectoryField r = forward(u, gamma, cfg);
  r -= y_delta;
  return restrict_to_gamma(r, gamma, cfg.time);
}

double cocoercivity_ratio(const PrimalField& u, const PrimalField& v, const ForwardConfig& cfg,
                          const GammaGrid& gamma) {
  const TrajectoryField diff = forward(u, gamma, cfg) - forward(v, gamma, cfg);
  const double denom = inner_trajectory(diff, diff, cfg.time, cfg.space);
  if (!(denom > 0.0)) throw NumericError("cocoercivity_ratio: A(u) == A(v)");
  const TrajectoryField du = prolong_from_gamma(u - v, gamma, cfg.time);
  return inner_trajectory(diff, du, cfg.time, cfg.space) / denom;
}

} // namespace lavrentiev
