#pragma once

#include <span>
#include <vector>

#include "lavrentiev/grids.hpp"

namespace lavrentiev {

/// Tridiagonal matrix; lower[j] couples row j+1 to column j, upper[j] couples row j to column j+1.
struct TridiagMatrix {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Thomas algorithm. Throws SingularMatrixError on a zero pivot.
std::vector<double> solve_tridiag(const TridiagMatrix& m, std::span<const double> rhs);

/// Same as solve_tridiag, overwriting x; scratch is resized as needed.
void solve_tridiag_in_place(const TridiagMatrix& m, std::span<double> x, std::vector<double>& scratch);

/// LU factors of a tridiagonal matrix, reusable for many right-hand sides.
/// Immutable after construction, so concurrent solve() calls are safe.
class TridiagFactorization {
public:
  explicit TridiagFactorization(const TridiagMatrix& m);

  std::size_t size() const { return inv_pivot_.size(); }
  void solve_in_place(std::span<double> x) const;
  std::vector<double> solve(std::span<const double> rhs) const;

private:
  std::vector<double> lower_;
  std::vector<double> upper_scaled_;
  std::vector<double> inv_pivot_;
};

/// I - c*Laplacian on all n_x nodes, homogeneous Neumann closure through a
/// mirrored ghost node (boundary rows: 1 + 2c/h^2, -2c/h^2).
TridiagMatrix assemble_helmholtz_neumann(double c, const SpaceGrid& g);

/// I - c*Laplacian on the n_x - 2 interior nodes with homogeneous Dirichlet ends.
TridiagMatrix assemble_dirichlet_diffusion(double c, const SpaceGrid& g);

} // namespace lavrentiev
