#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lavrentiev/field.hpp"

namespace lavrentiev {

/// Uniform nodes x_j = j*h on [0,1], both end points included.
class SpaceGrid {
public:
  explicit SpaceGrid(std::size_t n_x);

  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  double node(std::size_t j) const { return static_cast<double>(j) * h_; }
  std::vector<double> nodes() const;

  friend bool operator==(const SpaceGrid&, const SpaceGrid&) = default;

private:
  std::size_t n_;
  double h_;
};

/// Uniform nodes t_m = m*tau on [0,1].
class TimeGrid {
public:
  explicit TimeGrid(std::size_t n_t);

  std::size_t size() const { return n_; }
  double spacing() const { return tau_; }
  double node(std::size_t m) const { return static_cast<double>(m) * tau_; }

  /// Index of the node equal to t; throws ConfigError if t is not a node.
  std::size_t index_of(double t) const;
  std::size_t nearest_index(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
  std::size_t n_;
  double tau_;
};

/// Knots 0 = t_0 < t_1 < ... < t_N = 1. Interval i (0-based) is [t_i, t_{i+1}),
/// the last one closed at t = 1.
class GammaGrid {
public:
  explicit GammaGrid(std::vector<double> knots);

  static GammaGrid uniform(std::size_t intervals);

  /// Uniform knots on the time grid with each breakpoint snapped to its nearest
  /// time node and replacing the nearest interior knot.
  static GammaGrid aligned(std::size_t intervals, const TimeGrid& tg, std::span<const double> breakpoints = {});

  std::size_t intervals() const { return knots_.size() - 1; }
  double knot(std::size_t k) const { return knots_[k]; }
  double width(std::size_t i) const { return knots_[i + 1] - knots_[i]; }
  double midpoint(std::size_t i) const { return 0.5 * (knots_[i] + knots_[i + 1]); }
  std::span<const double> knots() const { return knots_; }

  /// Time-node index of every knot; ConfigError when some knot is off-grid.
  std::vector<std::size_t> node_indices(const TimeGrid& tg) const;

  /// Interval containing t under the right-open convention.
  std::size_t interval_of(double t) const;

  friend bool operator==(const GammaGrid&, const GammaGrid&) = default;

private:
  std::vector<double> knots_;
};

PrimalField make_primal(const GammaGrid& gamma, const SpaceGrid& g);
TrajectoryField make_trajectory(const TimeGrid& tg, const SpaceGrid& g);
DualField make_dual(const GammaGrid& gamma, const SpaceGrid& g);

/// h * sum_j a_j b_j
double inner_product_space(std::span<const double> a, std::span<const double> b, const SpaceGrid& g);
double norm_space(std::span<const double> a, const SpaceGrid& g);

/// sum_i (t_{i+1} - t_i) <u_i, w_i>_{L2(Omega)}
double inner_primal(const PrimalField& u, const PrimalField& w, const GammaGrid& gamma, const SpaceGrid& g);
double norm_primal(const PrimalField& u, const GammaGrid& gamma, const SpaceGrid& g);

/// sum_i <v_i, w_i>_{L2(Omega)}
double inner_dual(const DualField& v, const DualField& w, const SpaceGrid& g);
double norm_dual(const DualField& v, const SpaceGrid& g);

/// tau * h * sum_{m,j} y_mj z_mj
double inner_trajectory(const TrajectoryField& y, const TrajectoryField& z, const TimeGrid& tg, const SpaceGrid& g);
double norm_trajectory(const TrajectoryField& y, const TimeGrid& tg, const SpaceGrid& g);

/// Mean over the time nodes of each Gamma interval.
PrimalField restrict_to_gamma(const TrajectoryField& y, const GammaGrid& gamma, const TimeGrid& tg);

/// Piecewise-constant extension: node t_m takes the value of the interval containing it.
TrajectoryField prolong_from_gamma(const PrimalField& u, const GammaGrid& gamma, const TimeGrid& tg);

} // namespace lavrentiev
