#include "mmwpt/beamforming.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace mmwpt::beam {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<std::complex<double>> ula_response(int n_elems, double spacing_ratio,
                                               double theta_rad) {
  std::vector<std::complex<double>> a(static_cast<size_t>(n_elems));
  const double phase = -kTwoPi * spacing_ratio * std::sin(theta_rad);
  for (int i = 0; i < n_elems; ++i)
    a[static_cast<size_t>(i)] = std::polar(1.0, phase * i);
  return a;
}

double fejer_gain(int n_elems, double omega) {
  const double n = static_cast<double>(n_elems);
  // Two-term reduction to (-pi, pi]: reducing modulo the double rounding of
  // 2*pi alone shifts the angle by ~2.4e-16 per removed period, and the
  // kernel slope grows like n^3, which turns that shift into ~4e-9 errors at
  // n = 256. Subtracting the residual of 2*pi below its double value keeps
  // the reduced angle accurate to ~half an ulp.
  constexpr double kTwoPiLo = 2.4492935982947064e-16;  // 2*pi - double(2*pi)
  double w = std::remainder(omega, kTwoPi);
  const double periods = std::nearbyint((omega - w) / kTwoPi);
  w -= periods * kTwoPiLo;
  if (1.0 - std::cos(w) < 1e-12) {
    // series at the peak: n^2 (1 - (n^2-1) w^2 / 12)
    return n * n * (1.0 - (n * n - 1.0) * w * w / 12.0);
  }
  const double s = std::sin(0.5 * w);
  const double sn = std::sin(0.5 * n * w);
  const double r = sn / s;
  return r * r;
}

double phase_offset(double spacing_ratio, const AnglePair& p) {
  return kTwoPi * spacing_ratio * (std::sin(p.actual_rad) - std::sin(p.beam_rad));
}

double interference_gain(const AnglePair& rx, const AnglePair& tx,
                         const GainKernelParams& kp) {
  return fejer_gain(kp.n_ue, phase_offset(kp.spacing_ratio, rx)) *
         fejer_gain(kp.m_bs, phase_offset(kp.spacing_ratio, tx));
}

double mean_kernel_gain(int n_elems, double spacing_ratio, double rel_tol) {
  if (n_elems == 1) return 1.0;
  quad::QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 0.0;
  spec.max_subdivisions = 20000;
  auto f = [n_elems, spacing_ratio](double beam, double actual) {
    return fejer_gain(n_elems,
                      kTwoPi * spacing_ratio * (std::sin(actual) - std::sin(beam)));
  };
  quad::QuadResult r = quad::integrate_2d(f, 0.0, kTwoPi, 0.0, kTwoPi, spec);
  if (!r.converged)
    throw std::runtime_error("mean_kernel_gain: quadrature did not converge");
  return r.value / (kTwoPi * kTwoPi);
}

namespace {
std::map<std::tuple<int, int, long long>, double> g_hbar_cache;
std::mutex g_hbar_mutex;
}  // namespace

double mean_interference_gain(const GainKernelParams& kp, double rel_tol) {
  const auto key = std::make_tuple(
      kp.m_bs, kp.n_ue, static_cast<long long>(kp.spacing_ratio * 1e12));
  {
    std::lock_guard<std::mutex> lock(g_hbar_mutex);
    auto it = g_hbar_cache.find(key);
    if (it != g_hbar_cache.end()) return it->second;
  }
  const double v = mean_kernel_gain(kp.n_ue, kp.spacing_ratio, rel_tol) *
                   mean_kernel_gain(kp.m_bs, kp.spacing_ratio, rel_tol);
  std::lock_guard<std::mutex> lock(g_hbar_mutex);
  g_hbar_cache.emplace(key, v);
  return v;
}

}  // namespace mmwpt::beam
