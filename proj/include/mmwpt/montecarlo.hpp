#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmwpt/analytic.hpp"
#include "mmwpt/params.hpp"

namespace mmwpt::mc {

/// Sorted-sample CDF; evaluation at x returns rank(x)/n.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;
  explicit EmpiricalCdf(std::vector<double> samples);

  double cdf(double x) const;
  double ccdf(double x) const { return 1.0 - cdf(x); }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  /// mean of ln(1+s) over the samples, skipping non-finite/capped entries;
  /// equals the exact integral of ccdf(x)/(1+x) over [0,inf) for the step CDF.
  double mean_log1p() const;

  /// sup-distance to another empirical CDF.
  double ks_distance(const EmpiricalCdf& other) const;

 private:
  std::vector<double> samples_;  // ascending
};

struct TrialBatchSpec {
  long n_trials = 100000;
  std::uint64_t seed = 1;
  double sim_radius_m = 0.0;  // 0 = default radius policy
  bool record_sinr = true;
  bool use_control_variate = true;  // nearest-BS path-loss control in mc_harvest
  bool pu_from_mc = false;          // mc_rate: derive P_u from the MC harvest mean
  bool parallel = true;

  void validate() const;
};

/// Value used in place of SNR samples when the noise power is zero.
inline constexpr double kSnrCapSentinel = 1e30;

/// Harvested-power simulation of the downlink power-transfer phase.
analytic::EnergyReport mc_harvest(const SystemParams& p, const TrialBatchSpec& b);

/// Uplink simulation; returns empirical (SINR, SNR) CDFs.
std::pair<EmpiricalCdf, EmpiricalCdf> mc_uplink(const SystemParams& p,
                                                double pu_w,
                                                const TrialBatchSpec& b);

/// Exact rate integral for an empirical step CDF.
double rate_from_empirical(const EmpiricalCdf& cdf, double phi_split);

/// Empirical SINR-rate (exact) and SNR-rate (upper) at stable transmit power.
analytic::RateReport mc_rate(const SystemParams& p, const TrialBatchSpec& b);

/// Deterministic pairwise sum, independent of thread schedule.
double pairwise_sum(const std::vector<double>& v);

}  // namespace mmwpt::mc
