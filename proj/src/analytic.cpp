#include "mmwpt/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mmwpt/beamforming.hpp"
#include "mmwpt/netgeometry.hpp"

namespace mmwpt::analytic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double require(const quad::QuadResult& r, const char* what) {
  if (!r.converged)
    throw std::runtime_error(std::string("quadrature did not converge in ") +
                             what);
  return r.value;
}

/// integral_{lo}^inf max{t,D}^{-alpha} w(t) t dt with w the LoS (or NLoS)
/// retention probability.
double interferer_tail(double lo, double alpha, bool los, const SystemParams& p,
                       const quad::QuadSpec& spec) {
  auto f = [&, alpha, los](double t) {
    const double w = los ? geo::los_probability(t, p)
                         : 1.0 - geo::los_probability(t, p);
    return std::pow(std::max(t, p.ref_dist_m), -alpha) * w * t;
  };
  return require(quad::integrate_semi_inf(f, lo, {p.ref_dist_m}, spec),
                 "interferer_tail");
}

}  // namespace

double avg_power_lower(const SystemParams& p, const quad::QuadSpec& spec) {
  const double d = p.ref_dist_m;
  auto gl = [&p](double x) { return geo::assoc_pdf_los(x, p); };
  auto gn = [&p](double x) { return geo::assoc_pdf_nlos(x, p); };
  const double disk_l = require(quad::integrate(gl, 0.0, d, spec), "avg_power_lower");
  const double tail_l = require(
      quad::integrate_semi_inf(
          [&](double x) { return std::pow(x, -p.alpha_los) * gl(x); }, d, spec),
      "avg_power_lower");
  const double disk_n = require(quad::integrate(gn, 0.0, d, spec), "avg_power_lower");
  const double tail_n = require(
      quad::integrate_semi_inf(
          [&](double x) { return std::pow(x, -p.alpha_nlos) * gn(x); }, d, spec),
      "avg_power_lower");
  const double sum = p.beta_los * std::pow(d, -p.alpha_los) * disk_l +
                     p.beta_los * tail_l +
                     p.beta_nlos * std::pow(d, -p.alpha_nlos) * disk_n +
                     p.beta_nlos * tail_n;
  return static_cast<double>(p.n_ue) * p.m_bs * p.pmm_watts * sum;
}

double avg_power_exact(const SystemParams& p, const quad::QuadSpec& spec) {
  const double lower = avg_power_lower(p, spec);
  const double hbar = beam::mean_interference_gain(
      {p.m_bs, p.n_ue, p.spacing_ratio});
  // inner integrals run one decade looser; the outer association integral
  // controls the final accuracy
  const quad::QuadSpec inner = spec.looser(10.0);
  auto serving_los = [&](double x) {
    return (p.beta_los * interferer_tail(x, p.alpha_los, true, p, inner) +
            p.beta_nlos * interferer_tail(geo::boundary_los_to_nlos(x, p),
                                          p.alpha_nlos, false, p, inner)) *
           geo::assoc_pdf_los(x, p);
  };
  auto serving_nlos = [&](double x) {
    return (p.beta_los * interferer_tail(geo::boundary_nlos_to_los(x, p),
                                         p.alpha_los, true, p, inner) +
            p.beta_nlos * interferer_tail(x, p.alpha_nlos, false, p, inner)) *
           geo::assoc_pdf_nlos(x, p);
  };
  const double i1 = require(
      quad::integrate_semi_inf(serving_los, 0.0, {p.ref_dist_m}, spec),
      "avg_power_exact");
  const double i2 = require(
      quad::integrate_semi_inf(serving_nlos, 0.0, {p.ref_dist_m}, spec),
      "avg_power_exact");
  const double en2 = p.pmm_watts / (static_cast<double>(p.n_ue) * p.m_bs) *
                     hbar * kTwoPi * p.bs_density * (i1 + i2);
  return lower + en2;
}

double stable_transmit_power(const SystemParams& p, double pbar_w) {
  if (!(p.phi_split > 0.0 && p.phi_split < 1.0))
    throw std::domain_error("stable_transmit_power: phi_split outside (0,1)");
  if (pbar_w < 0.0)
    throw std::domain_error("stable_transmit_power: negative average power");
  return p.eta_rfdc * p.phi_split / (1.0 - p.phi_split) * pbar_w;
}

SnrThresholdGeometry snr_outage_distances(double x, const SystemParams& p,
                                          double pu_w) {
  const double mn = static_cast<double>(p.m_bs) * p.n_ue;
  const double c = mn * pu_w / (x * p.noise_watts);
  return {std::pow(c * p.beta_los, 1.0 / p.alpha_los),
          std::pow(c * p.beta_nlos, 1.0 / p.alpha_nlos)};
}

double snr_cdf(double x, const SystemParams& p, double pu_w,
               const quad::QuadSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("snr_cdf: threshold must be positive");
  if (!(pu_w > 0.0)) throw std::domain_error("snr_cdf: pu_w must be positive");
  if (!(p.noise_watts > 0.0))
    throw std::domain_error("snr_cdf: noise power must be positive");
  const auto [d1, d2] = snr_outage_distances(x, p, pu_w);
  const double d = p.ref_dist_m;
  auto gl = [&p](double t) { return geo::assoc_pdf_los(t, p); };
  auto gn = [&p](double t) { return geo::assoc_pdf_nlos(t, p); };
  double f = 0.0;
  if (d > d1) f += require(quad::integrate(gl, 0.0, d, spec), "snr_cdf");
  f += require(quad::integrate_semi_inf(gl, std::max(d, d1), spec), "snr_cdf");
  if (d > d2) f += require(quad::integrate(gn, 0.0, d, spec), "snr_cdf");
  f += require(quad::integrate_semi_inf(gn, std::max(d, d2), spec), "snr_cdf");
  return f;
}

double snr_ccdf(double x, const SystemParams& p, double pu_w,
                const quad::QuadSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("snr_ccdf: threshold must be positive");
  if (!(pu_w > 0.0)) throw std::domain_error("snr_ccdf: pu_w must be positive");
  if (!(p.noise_watts > 0.0))
    throw std::domain_error("snr_ccdf: noise power must be positive");
  const auto [d1, d2] = snr_outage_distances(x, p, pu_w);
  const double d = p.ref_dist_m;
  auto gl = [&p](double t) { return geo::assoc_pdf_los(t, p); };
  auto gn = [&p](double t) { return geo::assoc_pdf_nlos(t, p); };
  // the clamp caps the SNR at its value at d: thresholds above the cap are
  // exceeded by no deployment, so the complementary mass is exactly zero
  double c = 0.0;
  if (d1 >= d)
    c += require(quad::integrate(gl, 0.0, d1, std::vector<double>{d}, spec),
                 "snr_ccdf");
  if (d2 >= d)
    c += require(quad::integrate(gn, 0.0, d2, std::vector<double>{d}, spec),
                 "snr_ccdf");
  return c;
}

double rate_from_ccdf(const std::function<double(double)>& ccdf,
                      double phi_split, const quad::QuadSpec& spec) {
  if (!(phi_split > 0.0 && phi_split < 1.0))
    throw std::domain_error("rate_from_ccdf: phi_split outside (0,1)");
  auto f = [&ccdf](double x) { return ccdf(x) / (1.0 + x); };
  const double head =
      require(quad::integrate(f, 0.0, 1.0, {1e-6, 1e-4, 1e-2}, spec),
              "rate_from_ccdf");
  const double tail = require(
      quad::integrate_semi_inf(f, 1.0, {1e2, 1e4, 1e6}, spec), "rate_from_ccdf");
  return (1.0 - phi_split) / std::numbers::ln2 * (head + tail);
}

RateReport rate_upper(const SystemParams& p, const quad::QuadSpec& spec) {
  const double pbar = avg_power_exact(p, spec);
  const double pu = stable_transmit_power(p, pbar);
  const quad::QuadSpec inner = spec.looser(10.0);
  auto ccdf = [&, pu](double x) {
    return x <= 0.0 ? 1.0 : snr_ccdf(x, p, pu, inner);
  };
  // the outer tolerance stays a decade above the inner CCDF evaluations so
  // their residual jitter cannot stall the outer refinement
  RateReport r;
  r.rate_upper_bps = rate_from_ccdf(ccdf, p.phi_split, inner.looser(10.0));
  r.method = "analytic";
  return r;
}

EnergyReport analytic_energy(const SystemParams& p, const quad::QuadSpec& spec) {
  EnergyReport rep;
  rep.en1_mean_w = avg_power_lower(p, spec);
  rep.total_w = avg_power_exact(p, spec);
  rep.en2_mean_w = rep.total_w - rep.en1_mean_w;
  rep.pu_stable_w = stable_transmit_power(p, rep.total_w);
  rep.method = "analytic";
  return rep;
}

}  // namespace mmwpt::analytic
