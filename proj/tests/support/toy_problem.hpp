#pragma once

// Small monotone inclusion 0 in A u - b + L^T d(lambda |.|_1)(L u) used to
// exercise the generic primal-dual solver, together with an independent
// Condat-Vu reference written directly in Eigen.

#include <memory>
#include <random>

#include <Eigen/Dense>

#include "lavrentiev/pdsolver.hpp"

namespace toy {

using lavrentiev::DualField;
using lavrentiev::PrimalField;

struct Problem {
  Eigen::MatrixXd A; // symmetric positive definite
  Eigen::VectorXd b;
  Eigen::MatrixXd L; // first differences, (n-1) x n
  double lambda = 0.0;

  int n() const { return static_cast<int>(A.rows()); }
  /// Cocoercivity constant of u -> A u - b.
  double cocoercivity() const { return 1.0 / Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().maxCoeff(); }
  double opnorm_sq() const { return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(L * L.transpose()).eigenvalues().maxCoeff(); }
};

inline Eigen::MatrixXd first_differences(int n) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n - 1, n);
  for (int i = 0; i < n - 1; ++i) {
    L(i, i) = -1.0;
    L(i, i + 1) = 1.0;
  }
  return L;
}

inline Problem make(int n, unsigned seed, double lambda) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = dist(eng);
  Problem p;
  p.A = M * M.transpose() + Eigen::MatrixXd::Identity(n, n);
  p.b.resize(n);
  for (int i = 0; i < n; ++i) p.b(i) = 3.0 * dist(eng);
  p.L = first_differences(n);
  p.lambda = lambda;
  return p;
}

inline Eigen::VectorXd vec(const PrimalField& u) {
  return Eigen::Map<const Eigen::VectorXd>(u.values().data(), static_cast<Eigen::Index>(u.size()));
}
inline Eigen::VectorXd vec(const DualField& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.values().data(), static_cast<Eigen::Index>(v.size()));
}
inline PrimalField primal(const Eigen::VectorXd& x) {
  PrimalField u(1, static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) u(0, static_cast<std::size_t>(i)) = x(i);
  return u;
}
inline DualField dual(const Eigen::VectorXd& x) {
  DualField v(1, static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) v(0, static_cast<std::size_t>(i)) = x(i);
  return v;
}

inline Eigen::VectorXd clip(Eigen::VectorXd y, double r) { return y.cwiseMax(-r).cwiseMin(r); }

/// Bindings with plain Euclidean inner products. If counter is given it is
/// incremented on every T evaluation.
inline lavrentiev::ProblemBindings bindings(const Problem& p, std::shared_ptr<int> counter = nullptr) {
  lavrentiev::ProblemBindings b;
  b.T = [p, counter](const PrimalField& u) {
    if (counter) ++*counter;
    return primal(p.A * vec(u) - p.b);
  };
  b.L = [p](const PrimalField& u) { return dual(p.L * vec(u)); };
  b.L_adjoint = [p](const DualField& v) { return primal(p.L.transpose() * vec(v)); };
  b.prox_g = [](const PrimalField& x, double) { return x; };
  b.prox_fstar = [lam = p.lambda](const DualField& v, double) { return dual(clip(vec(v), lam)); };
  b.primal_inner = [](const PrimalField& a, const PrimalField& c) { return vec(a).dot(vec(c)); };
  b.dual_inner = [](const DualField& a, const DualField& c) { return vec(a).dot(vec(c)); };
  return b;
}

struct Reference {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

/// Condat-Vu iteration
///   x+ = x - tau (A x - b + L^T y),   y+ = clip(y + s L (2 x+ - x), lambda)
/// with 1/tau - s ||L||^2 > ||A|| / 2.
inline Reference condat_vu(const Problem& p, long iterations) {
  const double s = 0.2;
  const double lip = 1.0 / p.cocoercivity();
  const double tau = 1.0 / (s * p.opnorm_sq() + 0.5 * lip + 0.1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.n());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(p.n() - 1);
  for (long k = 0; k < iterations; ++k) {
    const Eigen::VectorXd xn = x - tau * (p.A * x - p.b + p.L.transpose() * y);
    y = clip(y + s * p.L * (2.0 * xn - x), p.lambda);
    x = xn;
  }
  return {x, y};
}

} // namespace toy
