#pragma once

#include <vector>

#include "lavrentiev/grids.hpp"

namespace lavrentiev {

/// Setup of the semilinear heat equation y_t + y^3 - y_xx = u on (0,1)x(0,1),
/// y = 0 at x in {0,1}, y(0,.) = y0.
struct ForwardConfig {
  SpaceGrid space;
  TimeGrid time;
  std::vector<double> y0;

  /// Zero initial state.
  ForwardConfig(SpaceGrid s, TimeGrid t);
  ForwardConfig(SpaceGrid s, TimeGrid t, std::vector<double> initial);
};

/// Semi-implicit Crank-Nicolson solve. Diffusion is averaged over the step,
/// the cubic is linearised as q*(y^m + y^{m+1})/2 with q the square of the
/// extrapolated midpoint state (3y^m - y^{m-1})/2, and the source is the mean
/// of its two end-point samples. One tridiagonal solve per step (two on the
/// first step, which predicts its own midpoint).
TrajectoryField forward(const TrajectoryField& source, const ForwardConfig& cfg);

/// Prolongs u to the time grid first.
TrajectoryField forward(const PrimalField& u, const GammaGrid& gamma, const ForwardConfig& cfg);

/// Interval averages of forward(u) - y_delta.
PrimalField apply_T(const PrimalField& u, const TrajectoryField& y_delta, const ForwardConfig& cfg,
                    const GammaGrid& gamma);

/// <A(u) - A(v), u - v> / ||A(u) - A(v)||^2 in the space-time inner product.
double cocoercivity_ratio(const PrimalField& u, const PrimalField& v, const ForwardConfig& cfg,
                          const GammaGrid& gamma);

} // namespace lavrentiev
