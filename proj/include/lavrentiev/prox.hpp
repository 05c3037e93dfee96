#pragma once

#include <memory>

#include "lavrentiev/tridiag.hpp"

namespace lavrentiev {

/// Factorised (I - c*Laplacian) with Neumann closure for one coefficient and grid.
class HelmholtzSolver {
public:
  HelmholtzSolver(double coeff, const SpaceGrid& g);

  double coeff() const { return coeff_; }
  const SpaceGrid& grid() const { return grid_; }

  /// Solves every row of w in place.
  void apply_in_place(PrimalField& w) const;

private:
  double coeff_;
  SpaceGrid grid_;
  std::shared_ptr<const TridiagFactorization> factor_;
};

/// Prox of coeff * S_Gamma: one Neumann Helmholtz solve per interval.
PrimalField prox_sobolev(const PrimalField& w, double coeff, const GammaGrid& gamma, const SpaceGrid& g);

/// Projection of each component onto the L2(Omega) ball of radius lambda,
/// i.e. the prox of any positive multiple of (lambda R_Gamma)^*.
DualField prox_tv_dual(const DualField& v, double lambda, const SpaceGrid& g);

/// Block soft-thresholding w_i * max(0, 1 - lambda/||w_i||), the prox of lambda R_Gamma.
DualField prox_tv_primal(const DualField& w, double lambda, const SpaceGrid& g);

} // namespace lavrentiev
