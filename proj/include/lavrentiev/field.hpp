#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lavrentiev/errors.hpp"

namespace lavrentiev {

/// Dense row-major 2D array of doubles. Row index is time (or interval),
/// column index is the spatial node. The tag keeps primal, trajectory and
/// dual fields from being mixed up by accident.
template <class Tag>
class Array2D {
public:
  Array2D() = default;
  Array2D(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Array2D zeros(std::size_t rows, std::size_t cols) { return Array2D(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const Array2D& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
  }

  Array2D& operator+=(const Array2D& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Array2D& operator-=(const Array2D& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Array2D& operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
  }

  /// this += s * o
  Array2D& axpy(double s, const Array2D& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
    return *this;
  }

  friend Array2D operator+(Array2D a, const Array2D& b) { return a += b; }
  friend Array2D operator-(Array2D a, const Array2D& b) { return a -= b; }
  friend Array2D operator*(double s, Array2D a) { return a *= s; }
  friend Array2D operator*(Array2D a, double s) { return a *= s; }
  friend bool operator==(const Array2D&, const Array2D&) = default;

private:
  void check_shape(const Array2D& o) const {
    if (!same_shape(o))
      throw ShapeError("array shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                       " vs " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct PrimalTag;
struct TrajectoryTag;
struct DualTag;

/// u in L2_Gamma: one spatial profile per Gamma interval (N x n_x).
using PrimalField = Array2D<PrimalTag>;
/// y on the fine time mesh (n_t x n_x).
using TrajectoryField = Array2D<TrajectoryTag>;
/// v in L2(Omega)^{N-1}: one profile per interior knot.
using DualField = Array2D<DualTag>;

} // namespace lavrentiev
