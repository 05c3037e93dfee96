#include "lavrentiev/prox.hpp"

#include <algorithm>
#include <cmath>

namespace lavrentiev {

HelmholtzSolver::HelmholtzSolver(double coeff, const SpaceGrid& g)
    : coeff_(coeff), grid_(g),
      factor_(std::make_shared<const TridiagFactorization>(assemble_helmholtz_neumann(coeff, g))) {}

void HelmholtzSolver::apply_in_place(PrimalField& w) const {
  if (w.cols() != grid_.size()) throw ShapeError("Helmholtz solve: field does not match grid");
  if (coeff_ == 0.0) return;
  for (std::size_t i = 0; i < w.rows(); ++i) factor_->solve_in_place(w.row(i));
}

PrimalField prox_sobolev(const PrimalField& w, double coeff, const GammaGrid& gamma, const SpaceGrid& g) {
  if (!(coeff >= 0.0)) throw DomainError("prox_sobolev: coefficient must be nonnegative");
  if (w.rows() != gamma.intervals()) throw ShapeError("prox_sobolev: field does not match Gamma grid");
  PrimalField u = w;
  HelmholtzSolver(coeff, g).apply_in_place(u);
  return u;
}

DualField prox_tv_dual(const DualField& v, double lambda, const SpaceGrid& g) {
  if (!(lambda > 0.0)) throw DomainError("prox_tv_dual: lambda must be positive");
  DualField out = v;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    const double nrm = norm_space(r, g);
    if (nrm > lambda) {
      const double s = lambda / nrm;
      for (double& x : r) x *= s;
    }
  }
  return out;
}

DualField prox_tv_primal(const DualField& w, double lambda, const SpaceGrid& g) {
  if (!(lambda > 0.0)) throw DomainError("prox_tv_primal: lambda must be positive");
  DualField out = w;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    const double nrm = norm_space(r, g);
    const double s = nrm > lambda ? 1.0 - lambda / nrm : 0.0;
    for (double& x : r) x *= s;
  }
  return out;
}

} // namespace lavrentiev
