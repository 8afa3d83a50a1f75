#include "mmwpt/sweep.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mmwpt/analytic.hpp"
#include "mmwpt/beamforming.hpp"
#include "mmwpt/config.hpp"
#include "mmwpt/montecarlo.hpp"
#include "mmwpt/netgeometry.hpp"
#include "mmwpt/rng.hpp"

namespace mmwpt::sweep {

namespace {

const char* kColumns =
    "bs_density,bs_density_per_km2,m_bs,analytic_total_w,analytic_lower_w,"
    "mc_total_w,mc_ci_w,pu_stable_w,rate_upper_bps_hz,rate_exact_bps_hz,"
    "rate_mc_upper_bps_hz";

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string{};
}

void sort_rows(SweepResult& r) {
  std::sort(r.rows.begin(), r.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.m_bs != b.m_bs) return a.m_bs < b.m_bs;
    return a.bs_density < b.bs_density;
  });
}

}  // namespace

std::uint64_t point_seed(std::uint64_t global_seed, double density, int m_bs) {
  std::uint64_t h = splitmix64(global_seed);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(density));
  h = splitmix64(h ^ static_cast<std::uint64_t>(m_bs));
  return h;
}

std::vector<double> default_density_grid() {
  std::vector<double> g;
  for (int i = 0; i < 13; ++i)
    g.push_back(1e-6 * std::pow(10.0, i / 3.0));
  return g;
}

SweepResult run_fig1(const SystemParams& base, const std::vector<double>& densities,
                     const std::vector<int>& m_values, const SweepOptions& opt) {
  SweepResult res;
  res.params = config::to_keyvals(base);
  res.seed = opt.seed;
  res.n_trials = opt.n_trials;
  // hbar depends only on (M, N, d/lambda); warm the cache before any use
  for (int m : m_values)
    beam::mean_interference_gain({m, base.n_ue, base.spacing_ratio});
  for (int m : m_values) {
    for (double rho : densities) {
      SystemParams p = base;
      p.m_bs = m;
      p.bs_density = rho;
      SweepRow row;
      row.bs_density = rho;
      row.m_bs = m;
      row.analytic_lower_w = analytic::avg_power_lower(p);
      row.analytic_total_w = analytic::avg_power_exact(p);
      row.pu_stable_w = analytic::stable_transmit_power(p, *row.analytic_total_w);
      if (opt.run_mc) {
        mc::TrialBatchSpec batch;
        batch.n_trials = opt.n_trials;
        batch.seed = point_seed(opt.seed, rho, m);
        const auto rep = mc::mc_harvest(p, batch);
        row.mc_total_w = rep.total_w;
        row.mc_ci_w = rep.ci_halfwidth_w;
      }
      res.rows.push_back(row);
    }
  }
  sort_rows(res);
  return res;
}

SweepResult run_fig2(const SystemParams& base, const std::vector<double>& densities,
                     const std::vector<int>& m_values, const SweepOptions& opt) {
  SweepResult res;
  res.params = config::to_keyvals(base);
  res.seed = opt.seed;
  res.n_trials = opt.n_trials;
  for (int m : m_values)
    beam::mean_interference_gain({m, base.n_ue, base.spacing_ratio});
  for (int m : m_values) {
    for (double rho : densities) {
      SystemParams p = base;
      p.m_bs = m;
      p.bs_density = rho;
      SweepRow row;
      row.bs_density = rho;
      row.m_bs = m;
      const auto upper = analytic::rate_upper(p);
      row.rate_upper = upper.rate_upper_bps;
      if (opt.run_mc) {
        mc::TrialBatchSpec batch;
        batch.n_trials = opt.n_trials;
        batch.seed = point_seed(opt.seed, rho, m);
        const auto r = mc::mc_rate(p, batch);
        row.rate_exact = r.rate_exact_bps;
        row.rate_mc_upper = r.rate_upper_bps;
      }
      res.rows.push_back(row);
    }
  }
  sort_rows(res);
  return res;
}

void emit_csv(const SweepResult& r, std::ostream& out) {
  out << "# " << r.tool_version << "\n";
  out << "# seed = " << r.seed << "\n";
  out << "# n_trials = " << r.n_trials << "\n";
  for (const auto& [k, v] : r.params) out << "# " << k << " = " << fmt(v) << "\n";
  out << kColumns << "\n";
  for (const auto& row : r.rows) {
    out << fmt(row.bs_density) << ',' << fmt(row.bs_density * 1e6) << ','
        << row.m_bs << ',' << fmt_opt(row.analytic_total_w) << ','
        << fmt_opt(row.analytic_lower_w) << ',' << fmt_opt(row.mc_total_w) << ','
        << fmt_opt(row.mc_ci_w) << ',' << fmt_opt(row.pu_stable_w) << ','
        << fmt_opt(row.rate_upper) << ',' << fmt_opt(row.rate_exact) << ','
        << fmt_opt(row.rate_mc_upper) << "\n";
  }
}

void emit_json(const SweepResult& r, std::ostream& out) {
  nlohmann::json j;
  j["tool_version"] = r.tool_version;
  j["metadata"]["seed"] = r.seed;
  j["metadata"]["n_trials"] = r.n_trials;
  for (const auto& [k, v] : r.params) j["metadata"]["params"][k] = v;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr;
    jr["bs_density"] = row.bs_density;
    jr["m_bs"] = row.m_bs;
    auto put = [&jr](const char* key, const std::optional<double>& v) {
      if (v) jr[key] = *v; else jr[key] = nullptr;
    };
    put("analytic_total_w", row.analytic_total_w);
    put("analytic_lower_w", row.analytic_lower_w);
    put("mc_total_w", row.mc_total_w);
    put("mc_ci_w", row.mc_ci_w);
    put("pu_stable_w", row.pu_stable_w);
    put("rate_upper_bps_hz", row.rate_upper);
    put("rate_exact_bps_hz", row.rate_exact);
    put("rate_mc_upper_bps_hz", row.rate_mc_upper);
    j["rows"].push_back(jr);
  }
  out << j.dump(2) << "\n";
}

SweepResult parse_csv(std::istream& in) {
  SweepResult r;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        std::string value = line.substr(eq + 1);
        auto strip = [](std::string& s) {
          s.erase(0, s.find_first_not_of(" \t"));
          s.erase(s.find_last_not_of(" \t") + 1);
        };
        strip(key);
        strip(value);
        if (key == "seed") r.seed = std::stoull(value);
        else if (key == "n_trials") r.n_trials = std::stol(value);
        else r.params[key] = std::stod(value);
      } else if (line.size() > 2) {
        r.tool_version = line.substr(2);
      }
      continue;
    }
    if (!header_seen) {  // column header row
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    cells.resize(11);
    auto opt = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return std::stod(s);
    };
    SweepRow row;
    row.bs_density = std::stod(cells[0]);
    row.m_bs = std::stoi(cells[2]);
    row.analytic_total_w = opt(cells[3]);
    row.analytic_lower_w = opt(cells[4]);
    row.mc_total_w = opt(cells[5]);
    row.mc_ci_w = opt(cells[6]);
    row.pu_stable_w = opt(cells[7]);
    row.rate_upper = opt(cells[8]);
    row.rate_exact = opt(cells[9]);
    row.rate_mc_upper = opt(cells[10]);
    r.rows.push_back(row);
  }
  return r;
}

std::string selftest(const SystemParams& p, std::uint64_t seed, bool& all_pass) {
  nlohmann::json checks = nlohmann::json::array();
  auto add = [&checks](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
  };

  {  // Fejer kernel against the direct complex phase sum
    Rng rng(seed, 101);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const int n = 1 + static_cast<int>(rng.uniform() * 256.0);
      const double w = rng.uniform(-std::numbers::pi, std::numbers::pi);
      double re = 0.0, im = 0.0;
      for (int k = 0; k < n; ++k) {
        re += std::cos(k * w);
        im -= std::sin(k * w);
      }
      worst = std::max(worst,
                       std::fabs(beam::fejer_gain(n, w) - (re * re + im * im)));
    }
    add("fejer_kernel_oracle", worst <= 1e-9, "max abs diff " + fmt(worst));
  }

  {  // Theta/Xi identity
    double worst = 0.0;
    for (double x : {0.1, 1.0, 50.0, 141.4, 1000.0, 10000.0}) {
      const double lhs = geo::theta_fn(x, p) + geo::xi_fn(x, p);
      worst = std::max(worst, std::fabs(lhs - 0.5 * x * x) / (0.5 * x * x));
    }
    add("theta_xi_identity", worst <= 1e-12, "max rel err " + fmt(worst));
  }

  {  // association densities jointly normalize to one
    quad::QuadSpec spec;
    spec.rel_tol = 1e-9;
    const double lam = geo::los_assoc_probability(p, spec);
    const double lam_n =
        quad::integrate_semi_inf(
            [&p](double x) { return geo::assoc_pdf_nlos(x, p); }, 0.0, spec)
            .value;
    const double err = std::fabs(lam + lam_n - 1.0);
    add("association_normalization", err <= 1e-6,
        "|LamLoS + LamNLoS - 1| = " + fmt(err));
  }

  {  // empirical LoS association frequency vs quadrature
    const double lam = geo::los_assoc_probability(p);
    const double radius = geo::default_sim_radius(p);
    const long n = 20000;
    long hits = 0;
    for (long i = 0; i < n; ++i) {
      const auto net = geo::sample_realization(p, radius, seed, 200 + i);
      if (!net.empty() &&
          net.bss[static_cast<size_t>(net.serving_idx)].link == geo::LinkClass::LoS)
        ++hits;
    }
    const double freq = static_cast<double>(hits) / static_cast<double>(n);
    add("los_association_frequency", std::fabs(freq - lam) <= 0.02,
        "quadrature " + fmt(lam) + " empirical " + fmt(freq));
  }

  {  // mean interference gain: quadrature vs Monte Carlo
    const double hbar1 = beam::mean_kernel_gain(p.n_ue, p.spacing_ratio);
    Rng rng(seed, 303);
    double acc = 0.0;
    const long n = 1000000;
    for (long i = 0; i < n; ++i) {
      const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double b = rng.uniform(0.0, 2.0 * std::numbers::pi);
      acc += beam::fejer_gain(p.n_ue, 2.0 * std::numbers::pi * p.spacing_ratio *
                                          (std::sin(a) - std::sin(b)));
    }
    const double mc_mean = acc / static_cast<double>(n);
    const double rel = std::fabs(mc_mean - hbar1) / hbar1;
    add("mean_kernel_gain_mc", rel <= 0.02,
        "quadrature " + fmt(hbar1) + " mc " + fmt(mc_mean));
  }

  {  // cross-engine harvested power at reduced trials
    mc::TrialBatchSpec batch;
    batch.n_trials = 20000;
    batch.seed = seed;
    const auto rep = mc::mc_harvest(p, batch);
    const double exact = analytic::avg_power_exact(p);
    const double tol = std::max(0.03 * exact, rep.ci_halfwidth_w);
    add("harvest_cross_engine", std::fabs(rep.total_w - exact) <= tol,
        "analytic " + fmt(exact) + " mc " + fmt(rep.total_w) + " ci " +
            fmt(rep.ci_halfwidth_w));
  }

  {  // SNR CDF vs empirical at reduced trials
    const double pu =
        analytic::stable_transmit_power(p, analytic::avg_power_exact(p));
    mc::TrialBatchSpec batch;
    batch.n_trials = 20000;
    batch.seed = seed;
    auto [sinr, snr] = mc::mc_uplink(p, pu, batch);
    double worst = 0.0;
    double prev = 0.0;
    bool monotone = true;
    for (int i = 0; i < 20; ++i) {
      const double x = std::pow(10.0, -4.0 + 8.0 * i / 19.0);
      const double fa = analytic::snr_cdf(x, p, pu);
      monotone = monotone && fa >= prev - 1e-9;
      prev = fa;
      worst = std::max(worst, std::fabs(fa - snr.cdf(x)));
    }
    add("snr_cdf_cross_engine", worst <= 0.03 && monotone,
        "sup distance " + fmt(worst));
  }

  {  // determinism
    mc::TrialBatchSpec batch;
    batch.n_trials = 2000;
    batch.seed = seed;
    const auto a = mc::mc_harvest(p, batch);
    const auto b = mc::mc_harvest(p, batch);
    add("determinism", a.total_w == b.total_w && a.ci_halfwidth_w == b.ci_halfwidth_w,
        "repeat totals " + fmt(a.total_w) + " / " + fmt(b.total_w));
  }

  all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c["pass"].get<bool>();
  nlohmann::json j;
  j["all_pass"] = all_pass;
  j["checks"] = checks;
  return j.dump(2);
}

}  // namespace mmwpt::sweep
