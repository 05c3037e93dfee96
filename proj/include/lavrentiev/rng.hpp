#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lavrentiev {

/// Reproducible random source: std::mt19937_64 (its output sequence is fixed
/// by the standard) with hand-written transforms, because the standard
/// distributions are implementation-defined.
///
/// uniform():  (x >> 11) * 2^-53, in [0, 1).
/// gaussian(): Box-Muller, cosine branch only; one normal per two uniforms,
///             r = sqrt(-2 ln(1 - u1)), z = r cos(2 pi u2).
class PortableRng {
public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace lavrentiev
