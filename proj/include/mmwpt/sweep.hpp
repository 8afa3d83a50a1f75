#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmwpt/params.hpp"

namespace mmwpt::sweep {

inline constexpr const char* kToolVersion = "mmwpt 0.1.0";

struct SweepRow {
  double bs_density = 0.0;
  int m_bs = 0;
  std::optional<double> analytic_total_w;
  std::optional<double> analytic_lower_w;
  std::optional<double> mc_total_w;
  std::optional<double> mc_ci_w;
  std::optional<double> pu_stable_w;
  std::optional<double> rate_upper;     // analytic SNR bound, bit/s/Hz
  std::optional<double> rate_exact;     // MC SINR rate, bit/s/Hz
  std::optional<double> rate_mc_upper;  // MC SNR rate, bit/s/Hz
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (m_bs, bs_density)
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  long n_trials = 0;
  std::string tool_version = kToolVersion;
};

struct SweepOptions {
  long n_trials = 100000;
  std::uint64_t seed = 1;
  bool run_mc = true;
};

/// Deterministic per-point seed derived from (global seed, density, M).
std::uint64_t point_seed(std::uint64_t global_seed, double density, int m_bs);

/// Harvested-power sweep: analytic exact/lower, MC estimate with CI, and the
/// stable transmit power, per (density, M) grid point.
SweepResult run_fig1(const SystemParams& base, const std::vector<double>& densities,
                     const std::vector<int>& m_values, const SweepOptions& opt);

/// Achievable-rate sweep: analytic SNR upper bound plus MC SNR/SINR rates.
SweepResult run_fig2(const SystemParams& base, const std::vector<double>& densities,
                     const std::vector<int>& m_values, const SweepOptions& opt);

void emit_csv(const SweepResult& r, std::ostream& out);
void emit_json(const SweepResult& r, std::ostream& out);
SweepResult parse_csv(std::istream& in);

/// Reduced-scale invariant suite; returns a machine-readable JSON report and
/// sets all_pass accordingly.
std::string selftest(const SystemParams& p, std::uint64_t seed, bool& all_pass);

std::vector<double> default_density_grid();

}  // namespace mmwpt::sweep
