#include "lavrentiev/grids.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lavrentiev {

namespace {

constexpr double kAlignTol = 1e-10;

void require_cols(std::size_t cols, const SpaceGrid& g, const char* what) {
  if (cols != g.size())
    throw ShapeError(std::string(what) + ": expected " + std::to_string(g.size()) + " spatial nodes, got " +
                     std::to_string(cols));
}

} // namespace

SpaceGrid::SpaceGrid(std::size_t n_x) : n_(n_x), h_(0.0) {
  if (n_x < 3) throw DomainError("SpaceGrid needs at least 3 nodes");
  h_ = 1.0 / static_cast<double>(n_x - 1);
}

std::vector<double> SpaceGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  x.back() = 1.0;
  return x;
}

TimeGrid::TimeGrid(std::size_t n_t) : n_(n_t), tau_(0.0) {
  if (n_t < 3) throw DomainError("TimeGrid needs at least 3 nodes");
  tau_ = 1.0 / static_cast<double>(n_t - 1);
}

std::size_t TimeGrid::nearest_index(double t) const {
  const double m = std::round(t / tau_);
  if (m <= 0.0) return 0;
  if (m >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(m);
}

std::size_t TimeGrid::index_of(double t) const {
  const std::size_t m = nearest_index(t);
  if (std::abs(node(m) - t) > kAlignTol)
    throw ConfigError("knot t=" + std::to_string(t) + " is not a node of the time grid (n_t=" + std::to_string(n_) +
                      ")");
  return m;
}

GammaGrid::GammaGrid(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw ConfigError("Gamma grid needs at least two knots");
  if (knots_.front() != 0.0 || std::abs(knots_.back() - 1.0) > kAlignTol)
    throw ConfigError("Gamma grid must start at 0 and end at 1");
  knots_.back() = 1.0;
  for (std::size_t k = 1; k < knots_.size(); ++k)
    if (!(knots_[k] > knots_[k - 1])) throw ConfigError("Gamma knots must be strictly increasing");
}

GammaGrid GammaGrid::uniform(std::size_t intervals) {
  if (intervals == 0) throw ConfigError("Gamma grid needs at least one interval");
  std::vector<double> k(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) k[i] = static_cast<double>(i) / static_cast<double>(intervals);
  return GammaGrid(std::move(k));
}

GammaGrid GammaGrid::aligned(std::size_t intervals, const TimeGrid& tg, std::span<const double> breakpoints) {
  if (intervals == 0) throw ConfigError("Gamma grid needs at least one interval");
  if (intervals > tg.size() - 1) throw ConfigError("more Gamma intervals than time steps");
  std::vector<std::size_t> idx(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    idx[i] = tg.nearest_index(static_cast<double>(i) / static_cast<double>(intervals));
  for (double b : breakpoints) {
    if (!(b > 0.0 && b < 1.0)) throw ConfigError("breakpoints must lie strictly inside (0,1)");
    if (intervals < 2) throw ConfigError("a single interval cannot hold a breakpoint");
    const std::size_t m = tg.nearest_index(b);
    std::size_t best = 1;
    for (std::size_t i = 1; i < intervals; ++i)
      if (std::abs(tg.node(idx[i]) - b) < std::abs(tg.node(idx[best]) - b)) best = i;
    idx[best] = m;
  }
  std::vector<double> k(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) k[i] = tg.node(idx[i]);
  k.back() = 1.0;
  return GammaGrid(std::move(k));
}

std::vector<std::size_t> GammaGrid::node_indices(const TimeGrid& tg) const {
  std::vector<std::size_t> idx(knots_.size());
  for (std::size_t k = 0; k < knots_.size(); ++k) idx[k] = tg.index_of(knots_[k]);
  return idx;
}

std::size_t GammaGrid::interval_of(double t) const {
  const std::size_t n = intervals();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (t < knots_[i + 1]) return i;
  return n - 1;
}

PrimalField make_primal(const GammaGrid& gamma, const SpaceGrid& g) { return {gamma.intervals(), g.size()}; }

TrajectoryField make_trajectory(const TimeGrid& tg, const SpaceGrid& g) { return {tg.size(), g.size()}; }

DualField make_dual(const GammaGrid& gamma, const SpaceGrid& g) {
  if (gamma.intervals() < 2) throw DomainError("dual field needs N >= 2");
  return {gamma.intervals() - 1, g.size()};
}

double inner_product_space(std::span<const double> a, std::span<const double> b, const SpaceGrid& g) {
  if (a.size() != b.size() || a.size() != g.size()) throw ShapeError("inner_product_space: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return g.spacing() * s;
}

double norm_space(std::span<const double> a, const SpaceGrid& g) { return std::sqrt(inner_product_space(a, a, g)); }

double inner_primal(const PrimalField& u, const PrimalField& w, const GammaGrid& gamma, const SpaceGrid& g) {
  if (!u.same_shape(w) || u.rows() != gamma.intervals()) throw ShapeError("inner_primal: shape mismatch");
  require_cols(u.cols(), g, "inner_primal");
  double s = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) s += gamma.width(i) * inner_product_space(u.row(i), w.row(i), g);
  return s;
}

double norm_primal(const PrimalField& u, const GammaGrid& gamma, const SpaceGrid& g) {
  return std::sqrt(inner_primal(u, u, gamma, g));
}

double inner_dual(const DualField& v, const DualField& w, const SpaceGrid& g) {
  if (!v.same_shape(w)) throw ShapeError("inner_dual: shape mismatch");
  require_cols(v.cols(), g, "inner_dual");
  double s = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) s += inner_product_space(v.row(i), w.row(i), g);
  return s;
}

double norm_dual(const DualField& v, const SpaceGrid& g) { return std::sqrt(inner_dual(v, v, g)); }

double inner_trajectory(const TrajectoryField& y, const TrajectoryField& z, const TimeGrid& tg, const SpaceGrid& g) {
  if (!y.same_shape(z) || y.rows() != tg.size()) throw ShapeError("inner_trajectory: shape mismatch");
  require_cols(y.cols(), g, "inner_trajectory");
  double s = 0.0;
  const auto a = y.values();
  const auto b = z.values();
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return tg.spacing() * g.spacing() * s;
}

double norm_trajectory(const TrajectoryField& y, const TimeGrid& tg, const SpaceGrid& g) {
  return std::sqrt(inner_trajectory(y, y, tg, g));
}

PrimalField restrict_to_gamma(const TrajectoryField& y, const GammaGrid& gamma, const TimeGrid& tg) {
  if (y.rows() != tg.size()) throw ShapeError("restrict_to_gamma: trajectory does not match time grid");
  const auto idx = gamma.node_indices(tg);
  const std::size_t n = gamma.intervals();
  PrimalField u(n, y.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first = idx[i];
    const std::size_t last = (i + 1 == n) ? idx[i + 1] : idx[i + 1] - 1;
    auto out = u.row(i);
    for (std::size_t m = first; m <= last; ++m) {
      const auto in = y.row(m);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += in[j];
    }
    const double inv = 1.0 / static_cast<double>(last - first + 1);
    for (double& x : out) x *= inv;
  }
  return u;
}

TrajectoryField prolong_from_gamma(const PrimalField& u, const GammaGrid& gamma, const TimeGrid& tg) {
  if (u.rows() != gamma.intervals()) throw ShapeError("prolong_from_gamma: field does not match Gamma grid");
  const auto idx = gamma.node_indices(tg);
  const std::size_t n = gamma.intervals();
  TrajectoryField y(tg.size(), u.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t last = (i + 1 == n) ? idx[i + 1] : idx[i + 1] - 1;
    const auto src = u.row(i);
    for (std::size_t m = idx[i]; m <= last; ++m) std::copy(src.begin(), src.end(), y.row(m).begin());
  }
  return y;
}

} // namespace lavrentiev
