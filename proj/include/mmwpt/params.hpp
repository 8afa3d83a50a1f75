#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmwpt {

// All internal computation is in linear units (W, Hz, m). dB/dBm conversion
// happens at the config/CLI boundary only.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline constexpr double kSpeedOfLight = 2.99792458e8;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Physical and model constants of one network configuration.
struct SystemParams {
  double pmm_watts = 19.952623149688797;  // BS transmit power (43 dBm)
  int m_bs = 32;                          // BS antenna count M
  int n_ue = 16;                          // user antenna count N
  double spacing_ratio = 0.5;             // antenna spacing d/lambda
  double alpha_los = 2.0;
  double alpha_nlos = 4.0;
  double beta_los = 3.9414360506533564e-07;   // (lambda/4pi)^2 at 38 GHz
  double beta_nlos = 3.9414360506533564e-07 * 1.9952623149688787e-3;  // -27 dB offset
  double blockage_decay_m = 141.4;        // LoS decay length
  double bs_density = 1e-4;               // BS per m^2
  double ref_dist_m = 1.0;                // short-range reference distance
  double phi_split = 0.5;                 // power-transfer time fraction
  double eta_rfdc = 0.5;                  // RF-to-DC conversion efficiency
  double noise_watts = 7.962143411069939e-11;  // -174 + 10log10(BW) + Nf dBm
  double bandwidth_hz = 2e9;
  double noise_figure_db = 10.0;

  void validate() const {
    auto pos = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(std::string(name) + " must be strictly positive");
    };
    pos(pmm_watts, "pmm_watts");
    if (m_bs < 1) throw ConfigError("m_bs must be >= 1");
    if (n_ue < 1) throw ConfigError("n_ue must be >= 1");
    pos(spacing_ratio, "spacing_ratio");
    pos(alpha_los, "alpha_los");
    pos(alpha_nlos, "alpha_nlos");
    if (alpha_nlos < alpha_los)
      throw ConfigError("alpha_nlos must be >= alpha_los");
    pos(beta_los, "beta_los");
    pos(beta_nlos, "beta_nlos");
    pos(blockage_decay_m, "blockage_decay_m");
    pos(bs_density, "bs_density");
    pos(ref_dist_m, "ref_dist_m");
    if (!(phi_split > 0.0 && phi_split < 1.0))
      throw ConfigError("phi_split must lie strictly inside (0,1)");
    if (!(eta_rfdc > 0.0 && eta_rfdc <= 1.0))
      throw ConfigError("eta_rfdc must lie in (0,1]");
    // zero noise is allowed (SNR samples are then reported as a capped
    // sentinel); negative noise is not
    if (!(noise_watts >= 0.0) || !std::isfinite(noise_watts))
      throw ConfigError("noise_watts must be >= 0");
    pos(bandwidth_hz, "bandwidth_hz");
    if (!std::isfinite(noise_figure_db))
      throw ConfigError("noise_figure_db must be finite");
  }

  /// Path loss L(r) = beta * r^-alpha for the given link class, with the
  /// short-range clamp at the reference distance.
  double path_loss(double r, bool los) const {
    const double d = std::max(r, ref_dist_m);
    const double beta = los ? beta_los : beta_nlos;
    const double alpha = los ? alpha_los : alpha_nlos;
    // the common exponents sit in the simulator's innermost loop, where
    // std::pow dominates the per-station cost
    if (alpha == 2.0) return beta / (d * d);
    if (alpha == 4.0) {
      const double d2 = d * d;
      return beta / (d2 * d2);
    }
    return beta * std::pow(d, -alpha);
  }
};

}  // namespace mmwpt
