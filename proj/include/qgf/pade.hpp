#pragma once

#include <vector>

#include "qgf/pauli.hpp"

namespace qgf {

/// Rational representation A(z)/B(z) of the damped time series' power series
/// sum_k g_k z^k with z = exp(i w dt); b[0] is normalized to 1.
struct PadeSpectrum {
  std::vector<cplx> a;
  std::vector<cplx> b;
  double dt = 0;
  double zeta = 0;
  int source_len = 0;
};

/// Applies exp(-zeta t_k) damping to a uniformly sampled series.
std::vector<cplx> apply_damping(const std::vector<cplx>& series, double dt, double zeta);

/// Fits the diagonal [order/order] Pade approximant to the damped series.
/// Requires series.size() >= 2*order + 1; order <= 0 selects the default
/// (len-1)/2 that consumes every sample. The denominator is obtained from a
/// Toeplitz system solved by rank-revealing least squares.
PadeSpectrum pade_fit(const std::vector<cplx>& damped_series, double dt, double zeta,
                      int order = 0);

/// Evaluates the transform dt * (A(z)/B(z) - g0/2) on the frequency grid
/// (the g0/2 term is the half-weight of the first quadrature node). Points
/// with |B(z)| < 1e-12 are reported through `pole_flags` when provided.
std::vector<cplx> pade_eval(const PadeSpectrum& spec, const std::vector<double>& omega,
                            std::vector<bool>* pole_flags = nullptr);

/// Trapezoid-rule damped transform int_0^T exp(i w t - zeta t) g(t) dt; the
/// non-accelerated baseline the rational fit is compared against.
std::vector<cplx> damped_dft(const std::vector<cplx>& series, double dt, double zeta,
                             const std::vector<double>& omega);

/// Uniform grid helper [lo, hi] with the given step, endpoint included.
std::vector<double> linspace_step(double lo, double hi, double step);

}  // namespace qgf
