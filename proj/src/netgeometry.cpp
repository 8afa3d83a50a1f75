#include "mmwpt/netgeometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mmwpt/rng.hpp"

namespace mmwpt::geo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double los_probability(double r, const SystemParams& p) {
  if (r < 0.0) throw std::domain_error("los_probability: negative distance");
  return std::exp(-r / p.blockage_decay_m);
}

double theta_fn(double x, const SystemParams& p) {
  if (x < 0.0) throw std::domain_error("theta_fn: negative distance");
  const double q = p.blockage_decay_m;
  const double u = x / q;
  // integral_0^x t e^{-t/q} dt = q^2 (1 - e^{-u}(1+u)); use the series for
  // small u where the closed form cancels
  if (u < 1e-3) {
    const double u2 = u * u;
    return q * q * u2 *
           (0.5 - u / 3.0 + u2 / 8.0 - u2 * u / 30.0 + u2 * u2 / 144.0);
  }
  return q * q * (1.0 - std::exp(-u) * (1.0 + u));
}

double xi_fn(double x, const SystemParams& p) {
  if (x < 0.0) throw std::domain_error("xi_fn: negative distance");
  return 0.5 * x * x - theta_fn(x, p);
}

double boundary_los_to_nlos(double x, const SystemParams& p) {
  if (x < 0.0) throw std::domain_error("boundary_los_to_nlos: negative distance");
  return std::pow(p.beta_nlos / p.beta_los, 1.0 / p.alpha_nlos) *
         std::pow(x, p.alpha_los / p.alpha_nlos);
}

double boundary_nlos_to_los(double x, const SystemParams& p) {
  if (x < 0.0) throw std::domain_error("boundary_nlos_to_los: negative distance");
  return std::pow(p.beta_los / p.beta_nlos, 1.0 / p.alpha_los) *
         std::pow(x, p.alpha_nlos / p.alpha_los);
}

double assoc_pdf_los(double x, const SystemParams& p) {
  if (x < 0.0) throw std::domain_error("assoc_pdf_los: negative distance");
  const double rho = p.bs_density;
  const double expo = theta_fn(x, p) + xi_fn(boundary_los_to_nlos(x, p), p);
  return kTwoPi * rho * x * los_probability(x, p) *
         std::exp(-kTwoPi * rho * expo);
}

double assoc_pdf_nlos(double x, const SystemParams& p) {
  if (x < 0.0) throw std::domain_error("assoc_pdf_nlos: negative distance");
  const double rho = p.bs_density;
  const double expo = theta_fn(boundary_nlos_to_los(x, p), p) + xi_fn(x, p);
  return kTwoPi * rho * x * (1.0 - los_probability(x, p)) *
         std::exp(-kTwoPi * rho * expo);
}

double los_assoc_probability(const SystemParams& p, const quad::QuadSpec& spec) {
  quad::QuadResult r = quad::integrate_semi_inf(
      [&p](double x) { return assoc_pdf_los(x, p); }, 0.0, spec);
  if (!r.converged)
    throw std::runtime_error("los_assoc_probability: quadrature did not converge");
  return r.value;
}

double default_sim_radius(const SystemParams& p) {
  // P(empty) = exp(-rho pi R^2) < 1e-6  =>  R^2 > ln(1e6)/(pi rho)
  const double r_poisson =
      std::sqrt(std::log(1e6) / (std::numbers::pi * p.bs_density));
  const double r_blockage = 6.0 * p.blockage_decay_m;
  return std::max(r_poisson, r_blockage);
}

NetworkRealization sample_realization(const SystemParams& p, double sim_radius_m,
                                      std::uint64_t rng_seed,
                                      std::uint64_t rng_stream) {
  Rng rng(rng_seed, rng_stream);
  return sample_realization(p, sim_radius_m, rng);
}

NetworkRealization sample_realization(const SystemParams& p, double sim_radius_m,
                                      Rng& rng) {
  if (sim_radius_m <= 0.0)
    throw std::domain_error("sample_realization: sim_radius_m must be positive");
  NetworkRealization net;
  net.sim_radius_m = sim_radius_m;
  const double mean =
      p.bs_density * std::numbers::pi * sim_radius_m * sim_radius_m;
  const int n = rng.poisson(mean);
  net.bss.reserve(static_cast<size_t>(n));
  double best_gain = -1.0;
  for (int i = 0; i < n; ++i) {
    BsPoint bs;
    bs.radius_m = sim_radius_m * std::sqrt(rng.uniform());
    bs.azimuth_rad = rng.uniform(0.0, kTwoPi);
    bs.link = rng.uniform() < los_probability(bs.radius_m, p) ? LinkClass::LoS
                                                              : LinkClass::NLoS;
    net.bss.push_back(bs);
    // smallest path loss == largest attenuation factor; ties keep the
    // earlier index
    const double gain = p.path_loss(bs.radius_m, bs.link == LinkClass::LoS);
    if (gain > best_gain) {
      best_gain = gain;
      net.serving_idx = i;
    }
  }
  return net;
}

}  // namespace mmwpt::geo
