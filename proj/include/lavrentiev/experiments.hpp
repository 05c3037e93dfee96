#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lavrentiev/inverse.hpp"

namespace lavrentiev {

/// Four time pieces 4 sin(pi x), 2 cos(7 pi x), 5x - cos(pi x), 5 - 4 sin(pi x)
/// switching at t = 1/4, 2/3, 3/4. Each interval takes the piece active at its midpoint.
PrimalField phantom_u1(const GammaGrid& gamma, const SpaceGrid& g);

/// Interval means of sin(2 pi t)^5 times cos(2 pi x).
PrimalField phantom_u2(const GammaGrid& gamma, const SpaceGrid& g);

/// "u1", "u2" or "zero".
PrimalField make_phantom(const std::string& name, const GammaGrid& gamma, const SpaceGrid& g);

enum class NoiseMode {
  /// i.i.d. Gaussian rescaled so that ||n|| = delta ||y|| exactly
  relative,
  /// i.i.d. Gaussian with per-sample standard deviation delta ||y||
  literal,
};

struct NoiseSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
  NoiseMode mode = NoiseMode::relative;
};

TrajectoryField add_noise(const TrajectoryField& y, const NoiseSpec& noise, const TimeGrid& tg, const SpaceGrid& g);

/// ||u - u_true|| / ||u_true|| in L2_Gamma.
double rel_error(const PrimalField& u, const PrimalField& u_true, const GammaGrid& gamma, const SpaceGrid& g);

/// ||y - y_ref|| / ||y_ref|| in the space-time norm.
double rel_residual(const TrajectoryField& y, const TrajectoryField& y_ref, const TimeGrid& tg, const SpaceGrid& g);

/// Complete description of one experiment; filled from the configuration files.
struct ExperimentConfig {
  std::size_t nx = 65;
  std::size_t nt = 257;
  std::size_t intervals = 16;
  std::vector<double> breakpoints;
  std::string phantom = "u1";
  RegularizerWeights weights{1e-4, 1e-5};
  NoiseSpec noise{1e-2, 20240101, NoiseMode::relative};
  double cocoercivity = kPoincareUnitInterval;
  double alpha = 0.0; ///< 0 selects alpha = C
  double beta = 0.0;  ///< 0 selects 0.95 / ||D_Gamma||^2
  int k_max = 5;
  double sigma = 1.0;
  int max_outer = 20000;
  double tol_update = 1e-6;
  bool inertia = true;
  int power_iters = 100;
  std::uint64_t power_seed = 7;
  int rate_levels = 5;
};

/// Grids, true source and noise-free data of an experiment.
struct ExperimentProblem {
  ForwardConfig cfg;
  GammaGrid gamma;
  PrimalField u_true;
  TrajectoryField y_clean;
};

ExperimentProblem build_problem(const ExperimentConfig& c);

/// Solver parameters implied by the configuration (defaults resolved).
SolverParams resolve_params(const ExperimentConfig& c, const GammaGrid& gamma, const SpaceGrid& g);

struct ReconstructionResult {
  InverseSolution solution;
  double rel_error = 0.0;
  double rel_residual = 0.0; ///< against the noise-free data
};

/// Noisy data, inversion and error metrics for one (lambda, mu, delta).
ReconstructionResult reconstruct(const ExperimentConfig& c, const ExperimentProblem& problem);

struct RateStudySpec {
  double lambda0;
  double mu0;
  double delta0;
  int levels;
};

struct RateRow {
  int level = 0;
  double delta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double rel_error = 0.0;
  double rel_residual = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
};

/// Least-squares line log(y) = slope * log(delta) + intercept.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct RateTable {
  std::vector<RateRow> rows;
  std::optional<SlopeFit> error_slope;
  std::optional<SlopeFit> residual_slope;

  /// Columns: level,delta,lambda,mu,rel_error,rel_residual,iterations,wall_seconds
  void write_csv(std::ostream& os) const;
  /// Columns: quantity,slope,intercept,r_squared,points
  void write_slopes_csv(std::ostream& os) const;
};

/// Level i uses lambda0/2^i, mu0/2^i, delta0/2^i and the noise seed of c.
RateTable run_rate_study(const RateStudySpec& spec, const ExperimentConfig& c);

} // namespace lavrentiev
