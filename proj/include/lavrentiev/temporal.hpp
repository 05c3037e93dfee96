#pragma once

#include <cstdint>

#include "lavrentiev/grids.hpp"

namespace lavrentiev {

struct RegularizerWeights {
  double lambda; ///< weight of the temporal total variation
  double mu;     ///< weight of the spatial H1 seminorm

  void validate() const;
};

/// Jumps between consecutive interval profiles: (D u)_i = u_{i+1} - u_i.
DualField d_gamma(const PrimalField& u, const GammaGrid& gamma);

/// Adjoint of d_gamma under the interval-width weighted primal inner product:
/// (D* v)_i = (v_{i-1} - v_i) / (t_{i+1} - t_i) with v_{-1} = v_{N-1} = 0.
PrimalField d_gamma_adjoint(const DualField& v, const GammaGrid& gamma);

/// sum_i ||u_{i+1} - u_i||_{L2(Omega)}
double tv_value(const PrimalField& u, const GammaGrid& gamma, const SpaceGrid& g);

/// 1/2 sum_i |t_i| * sum_j h ((u_{i,j+1} - u_{i,j}) / h)^2
double sobolev_value(const PrimalField& u, const GammaGrid& gamma, const SpaceGrid& g);

/// Power iteration on D*D; returns sqrt of the final Rayleigh quotient.
double estimate_opnorm_dgamma(const GammaGrid& gamma, const SpaceGrid& g, int iters, std::uint64_t seed);

} // namespace lavrentiev
