#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lavrentiev/experiments.hpp"
#include "lavrentiev/inverse.hpp"

using namespace lavrentiev;

namespace {

// Reduced grids keep these runs well below a second.
InverseProblemSpec small_spec(double lambda, double mu, const std::string& phantom = "u1") {
  const SpaceGrid g(17);
  const TimeGrid tg(65);
  const GammaGrid gamma = GammaGrid::uniform(8);
  const ForwardConfig cfg(g, tg);
  const PrimalField u = make_phantom(phantom, gamma, g);
  const TrajectoryField y = add_noise(forward(u, gamma, cfg), NoiseSpec{1e-2, 5, NoiseMode::relative}, tg, g);
  InverseProblemSpec spec{cfg, gamma, {lambda, mu}, y, kPoincareUnitInterval, default_params(gamma, g)};
  spec.params.max_outer = 5000;
  spec.params.tol_update = 1e-6;
  return spec;
}

} // namespace

TEST(DefaultParams, StepSizes) {
  const SpaceGrid g(17);
  const GammaGrid gamma = GammaGrid::uniform(8);
  const SolverParams p = default_params(gamma, g);
  EXPECT_EQ(p.alpha, std::numbers::pi * std::numbers::pi);
  const double nrm = estimate_opnorm_dgamma(gamma, g, 100, 7);
  EXPECT_NEAR(p.beta * nrm * nrm, 0.95, 1e-14);
  EXPECT_NO_THROW(p.validate(kPoincareUnitInterval, nrm));
}

TEST(BuildBindings, RejectsInadmissibleSpecs) {
  InverseProblemSpec spec = small_spec(1e-3, 1e-4);
  EXPECT_NO_THROW(build_bindings(spec));

  InverseProblemSpec s1 = spec;
  s1.params.alpha = 2.0 * kPoincareUnitInterval;
  EXPECT_THROW(build_bindings(s1), ConfigError);

  InverseProblemSpec s2 = spec;
  s2.params.beta = 2.0 * spec.params.beta;
  EXPECT_THROW(build_bindings(s2), ConfigError);

  InverseProblemSpec s3 = spec;
  s3.weights.lambda = 0.0;
  EXPECT_THROW(build_bindings(s3), ConfigError);

  InverseProblemSpec s4 = spec;
  s4.y_delta = TrajectoryField(64, 17);
  EXPECT_THROW(build_bindings(s4), ConfigError);

  InverseProblemSpec s5 = spec;
  s5.gamma = GammaGrid({0.0, 0.3, 1.0});
  EXPECT_THROW(build_bindings(s5), ConfigError);
}

TEST(SolveInverse, ZeroDataGivesZeroSolution) {
  InverseProblemSpec spec = small_spec(1e-3, 1e-4);
  spec.y_delta = TrajectoryField(65, 17);
  const InverseSolution sol = solve_inverse(spec);
  EXPECT_TRUE(sol.converged);
  EXPECT_LE(norm_primal(sol.u, spec.gamma, spec.cfg.space), 1e-12);
  EXPECT_LE(sol.fixed_point_residual, 1e-12);
}

TEST(SolveInverse, HugeLambdaMakesProjectionInactive) {
  // once the ball contains every dual iterate, the value of lambda no longer matters
  const InverseSolution a = solve_inverse(small_spec(1e6, 1e-4));
  const InverseSolution b = solve_inverse(small_spec(1e8, 1e-4));
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SolveInverse, TinyMuApproachesTvOnly) {
  InverseProblemSpec s1 = small_spec(1e-3, 1e-16);
  InverseProblemSpec s2 = small_spec(1e-3, 1e-14);
  s1.params.tol_update = s2.params.tol_update = 1e-9;
  s1.params.max_outer = s2.params.max_outer = 20000;
  const InverseSolution a = solve_inverse(s1);
  const InverseSolution b = solve_inverse(s2);
  const double scale = norm_primal(a.u, s1.gamma, s1.cfg.space);
  EXPECT_LE(norm_primal(a.u - b.u, s1.gamma, s1.cfg.space), 1e-5 * scale);
}

TEST(SolveInverse, CertificateHoldsAcrossParameterSweep) {
  for (double lambda : {1e-2, 1e-3, 1e-4})
    for (double mu : {1e-3, 1e-5}) {
      const InverseProblemSpec spec = small_spec(lambda, mu);
      const InverseSolution sol = solve_inverse(spec);
      EXPECT_TRUE(sol.converged) << lambda << ' ' << mu;
      EXPECT_LE(sol.fixed_point_residual, 10.0 * spec.params.tol_update) << lambda << ' ' << mu;
      EXPECT_EQ(sol.trace.rows.size(), static_cast<std::size_t>(sol.iterations));
      EXPECT_GT(sol.trace.rows.back().tv, 0.0);
      EXPECT_GT(sol.trace.rows.back().sobolev, 0.0);
    }
}

TEST(SolveInverse, RecoversShapeOfSmoothPhantom) {
  const InverseProblemSpec spec = small_spec(2e-6, 1e-5, "u2");
  const InverseSolution sol = solve_inverse(spec);
  const PrimalField truth = make_phantom("u2", spec.gamma, spec.cfg.space);
  EXPECT_LT(rel_error(sol.u, truth, spec.gamma, spec.cfg.space), 0.5);
}
