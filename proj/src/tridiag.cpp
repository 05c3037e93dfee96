#include "lavrentiev/tridiag.hpp"

#include <cmath>
#include <string>

namespace lavrentiev {

namespace {

void check_layout(const TridiagMatrix& m) {
  const std::size_t n = m.diag.size();
  if (n == 0) throw ShapeError("tridiagonal matrix is empty");
  if (m.lower.size() != n - 1 || m.upper.size() != n - 1)
    throw ShapeError("tridiagonal off-diagonals must have length n-1");
}

} // namespace

std::vector<double> TridiagMatrix::multiply(std::span<const double> x) const {
  check_layout(*this);
  const std::size_t n = diag.size();
  if (x.size() != n) throw ShapeError("tridiagonal multiply: length mismatch");
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = diag[j] * x[j];
    if (j > 0) s += lower[j - 1] * x[j - 1];
    if (j + 1 < n) s += upper[j] * x[j + 1];
    y[j] = s;
  }
  return y;
}

TridiagFactorization::TridiagFactorization(const TridiagMatrix& m) {
  check_layout(m);
  const std::size_t n = m.diag.size();
  lower_ = m.lower;
  upper_scaled_.resize(n > 0 ? n - 1 : 0);
  inv_pivot_.resize(n);
  double pivot = m.diag[0];
  for (std::size_t j = 0;; ++j) {
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw SingularMatrixError("zero pivot in tridiagonal solve at row " + std::to_string(j));
    inv_pivot_[j] = 1.0 / pivot;
    if (j + 1 == n) break;
    upper_scaled_[j] = m.upper[j] * inv_pivot_[j];
    pivot = m.diag[j + 1] - m.lower[j] * upper_scaled_[j];
  }
}

void TridiagFactorization::solve_in_place(std::span<double> x) const {
  const std::size_t n = inv_pivot_.size();
  if (x.size() != n) throw ShapeError("tridiagonal solve: rhs length mismatch");
  x[0] *= inv_pivot_[0];
  for (std::size_t j = 1; j < n; ++j) x[j] = (x[j] - lower_[j - 1] * x[j - 1]) * inv_pivot_[j];
  for (std::size_t j = n - 1; j-- > 0;) x[j] -= upper_scaled_[j] * x[j + 1];
}

std::vector<double> TridiagFactorization::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

std::vector<double> solve_tridiag(const TridiagMatrix& m, std::span<const double> rhs) {
  std::vector<double> x(rhs.begin(), rhs.end());
  std::vector<double> scratch;
  solve_tridiag_in_place(m, x, scratch);
  return x;
}

void solve_tridiag_in_place(const TridiagMatrix& m, std::span<double> x, std::vector<double>& scratch) {
  check_layout(m);
  const std::size_t n = m.diag.size();
  if (x.size() != n) throw ShapeError("tridiagonal solve: rhs length mismatch");
  scratch.resize(n);
  double pivot = m.diag[0];
  for (std::size_t j = 0;; ++j) {
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw SingularMatrixError("zero pivot in tridiagonal solve at row " + std::to_string(j));
    x[j] = (j == 0 ? x[0] : x[j] - m.lower[j - 1] * x[j - 1]) / pivot;
    if (j + 1 == n) break;
    scratch[j] = m.upper[j] / pivot;
    pivot = m.diag[j + 1] - m.lower[j] * scratch[j];
  }
  for (std::size_t j = n - 1; j-- > 0;) x[j] -= scratch[j] * x[j + 1];
}

TridiagMatrix assemble_helmholtz_neumann(double c, const SpaceGrid& g) {
  if (!(c >= 0.0)) throw DomainError("Helmholtz coefficient must be nonnegative");
  const std::size_t n = g.size();
  const double s = c / (g.spacing() * g.spacing());
  TridiagMatrix m{std::vector<double>(n - 1, -s), std::vector<double>(n, 1.0 + 2.0 * s),
                  std::vector<double>(n - 1, -s)};
  m.upper.front() = -2.0 * s;
  m.lower.back() = -2.0 * s;
  return m;
}

TridiagMatrix assemble_dirichlet_diffusion(double c, const SpaceGrid& g) {
  if (!(c >= 0.0)) throw DomainError("diffusion coefficient must be nonnegative");
  const std::size_t n = g.size() - 2;
  const double s = c / (g.spacing() * g.spacing());
  return TridiagMatrix{std::vector<double>(n - 1, -s), std::vector<double>(n, 1.0 + 2.0 * s),
                       std::vector<double>(n - 1, -s)};
}

} // namespace lavrentiev
