#include "lavrentiev/temporal.hpp"

#include <cmath>

#include "lavrentiev/rng.hpp"

namespace lavrentiev {

void RegularizerWeights::validate() const {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw DomainError("regularization weights must be positive");
}

DualField d_gamma(const PrimalField& u, const GammaGrid& gamma) {
  const std::size_t n = gamma.intervals();
  if (n < 2) throw DomainError("d_gamma needs at least two intervals");
  if (u.rows() != n) throw ShapeError("d_gamma: field does not match Gamma grid");
  DualField v(n - 1, u.cols());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto a = u.row(i);
    const auto b = u.row(i + 1);
    auto out = v.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = b[j] - a[j];
  }
  return v;
}

PrimalField d_gamma_adjoint(const DualField& v, const GammaGrid& gamma) {
  const std::size_t n = gamma.intervals();
  if (n < 2) throw DomainError("d_gamma_adjoint needs at least two intervals");
  if (v.rows() != n - 1) throw ShapeError("d_gamma_adjoint: field does not match Gamma grid");
  PrimalField u(n, v.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 1.0 / gamma.width(i);
    auto out = u.row(i);
    if (i > 0) {
      const auto prev = v.row(i - 1);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += w * prev[j];
    }
    if (i + 1 < n) {
      const auto cur = v.row(i);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] -= w * cur[j];
    }
  }
  return u;
}

double tv_value(const PrimalField& u, const GammaGrid& gamma, const SpaceGrid& g) {
  if (gamma.intervals() < 2) return 0.0;
  const DualField jumps = d_gamma(u, gamma);
  double s = 0.0;
  for (std::size_t i = 0; i < jumps.rows(); ++i) s += norm_space(jumps.row(i), g);
  return s;
}

double sobolev_value(const PrimalField& u, const GammaGrid& gamma, const SpaceGrid& g) {
  if (u.rows() != gamma.intervals() || u.cols() != g.size()) throw ShapeError("sobolev_value: shape mismatch");
  const double h = g.spacing();
  double s = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const auto r = u.row(i);
    double seminorm = 0.0;
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
      const double d = (r[j + 1] - r[j]) / h;
      seminorm += h * d * d;
    }
    s += gamma.width(i) * seminorm;
  }
  return 0.5 * s;
}

double estimate_opnorm_dgamma(const GammaGrid& gamma, const SpaceGrid& g, int iters, std::uint64_t seed) {
  if (iters < 1) throw DomainError("power iteration needs at least one step");
  PortableRng rng(seed);
  PrimalField x = make_primal(gamma, g);
  for (double& e : x.values()) e = rng.uniform(-1.0, 1.0);
  double rayleigh = 0.0;
  for (int k = 0; k < iters; ++k) {
    const double nx = norm_primal(x, gamma, g);
    if (!(nx > 0.0)) return 0.0;
    x *= 1.0 / nx;
    PrimalField y = d_gamma_adjoint(d_gamma(x, gamma), gamma);
    rayleigh = inner_primal(x, y, gamma, g);
    x = std::move(y);
  }
  return std::sqrt(rayleigh);
}

} // namespace lavrentiev
