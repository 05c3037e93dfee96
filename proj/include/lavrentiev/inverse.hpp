#pragma once

#include <cstdint>
#include <numbers>

#include "lavrentiev/forward.hpp"
#include "lavrentiev/pdsolver.hpp"
#include "lavrentiev/temporal.hpp"

namespace lavrentiev {

/// Poincare constant of (0,1); cocoercivity constant of the forward operator.
inline constexpr double kPoincareUnitInterval = std::numbers::pi * std::numbers::pi;

/// Everything needed to solve A(u) + d(lambda R_Gamma o D_Gamma + mu S_Gamma)(u) ∋ y_delta.
struct InverseProblemSpec {
  ForwardConfig cfg;
  GammaGrid gamma;
  RegularizerWeights weights;
  TrajectoryField y_delta;
  double cocoercivity = kPoincareUnitInterval;
  SolverParams params;
  int power_iters = 100;
  std::uint64_t power_seed = 7;
};

/// alpha = C, beta = 0.95 / ||D_Gamma||^2 (power-iteration estimate).
SolverParams default_params(const GammaGrid& gamma, const SpaceGrid& g, double cocoercivity = kPoincareUnitInterval,
                            int power_iters = 100, std::uint64_t power_seed = 7);

/// T = averaged residual of the forward model, L = D_Gamma, prox_g = Helmholtz
/// solve with coefficient alpha*mu, prox_fstar = lambda-ball projection.
/// Throws ConfigError when the weights or step sizes are inadmissible.
ProblemBindings build_bindings(const InverseProblemSpec& spec);

struct InverseSolution {
  PrimalField u;
  DualField v;
  ConvergenceTrace trace;
  int iterations = 0;
  bool converged = false;
  double fixed_point_residual = 0.0;
};

/// Runs the nested primal-dual solver from u = 0, v = 0.
InverseSolution solve_inverse(const InverseProblemSpec& spec);

} // namespace lavrentiev
