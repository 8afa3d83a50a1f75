#pragma once

#include <complex>
#include <vector>

#include "mmwpt/quadrature.hpp"

namespace mmwpt::beam {

struct AnglePair {
  double beam_rad;    // angle the beam is steered to
  double actual_rad;  // actual departure/arrival angle of the link
};

struct GainKernelParams {
  int m_bs;
  int n_ue;
  double spacing_ratio;
};

/// ULA response vector: element i = exp(-j 2pi (d/lambda) i sin(theta)).
std::vector<std::complex<double>> ula_response(int n_elems, double spacing_ratio,
                                               double theta_rad);

/// (1 - cos(n w)) / (1 - cos w), the squared magnitude of the n-term
/// geometric phase sum. Removable singularities at w = 2 pi k give n^2.
double fejer_gain(int n_elems, double omega);

/// Phase offset 2pi (d/lambda) (sin(actual) - sin(beam)).
double phase_offset(double spacing_ratio, const AnglePair& p);

/// Misaligned-link gain: receive-side kernel times transmit-side kernel.
double interference_gain(const AnglePair& rx, const AnglePair& tx,
                         const GainKernelParams& kp);

/// One-sided mean kernel gain over independent uniform angles on [0,2pi)^2.
double mean_kernel_gain(int n_elems, double spacing_ratio, double rel_tol = 1e-7);

/// Mean interference gain over all four independent uniform angles:
/// factorizes into the receive-side and transmit-side 2-D integrals.
/// Memoized per (M, N, d/lambda); call once before any parallel region.
double mean_interference_gain(const GainKernelParams& kp, double rel_tol = 1e-7);

}  // namespace mmwpt::beam
