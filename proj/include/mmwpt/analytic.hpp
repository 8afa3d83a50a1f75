#pragma once

#include <functional>
#include <string>

#include "mmwpt/params.hpp"
#include "mmwpt/quadrature.hpp"

namespace mmwpt::analytic {

struct EnergyReport {
  double en1_mean_w = 0.0;   // serving-link average receive power
  double en2_mean_w = 0.0;   // interference average receive power
  double total_w = 0.0;
  double pu_stable_w = 0.0;  // eta * phi/(1-phi) * total
  std::string method;        // "analytic" or "montecarlo"
  double ci_halfwidth_w = 0.0;
};

struct RateReport {
  double rate_upper_bps = 0.0;  // SNR-based rate, bit/s/Hz
  double rate_exact_bps = 0.0;  // SINR-based rate (montecarlo only)
  bool has_exact = false;
  std::string method;
};

/// Minimum serving distances at which the receive SNR drops below x.
struct SnrThresholdGeometry {
  double delta1_m;  // LoS
  double delta2_m;  // NLoS
};

SnrThresholdGeometry snr_outage_distances(double x, const SystemParams& p,
                                          double pu_w);

/// Serving-link average receive power E{En1} (the lower bound).
double avg_power_lower(const SystemParams& p, const quad::QuadSpec& spec = {});

/// Full average receive power E{En1} + E{En2}; the interference expectation
/// uses the mean misalignment gain and the thinned-PPP intensity integrals.
double avg_power_exact(const SystemParams& p, const quad::QuadSpec& spec = {});

/// Sustainable uplink transmit power eta * phi/(1-phi) * pbar.
double stable_transmit_power(const SystemParams& p, double pbar_w);

/// CDF of the uplink receive SNR at threshold x given transmit power pu_w.
double snr_cdf(double x, const SystemParams& p, double pu_w,
               const quad::QuadSpec& spec = {});

/// Complementary CDF P(SNR >= x), integrated directly over the serving-link
/// association density; avoids the 1 - F cancellation when F is close to 1.
double snr_ccdf(double x, const SystemParams& p, double pu_w,
                const quad::QuadSpec& spec = {});

/// (1-phi)/ln2 * integral_0^inf ccdf(x)/(1+x) dx.
double rate_from_ccdf(const std::function<double(double)>& ccdf,
                      double phi_split, const quad::QuadSpec& spec = {});

/// SNR-based upper bound on the average achievable rate (bit/s/Hz), with the
/// stable transmit power derived from avg_power_exact.
RateReport rate_upper(const SystemParams& p, const quad::QuadSpec& spec = {});

/// Full analytic energy report at one parameter point.
EnergyReport analytic_energy(const SystemParams& p,
                             const quad::QuadSpec& spec = {});

}  // namespace mmwpt::analytic
