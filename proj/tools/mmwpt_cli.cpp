#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mmwpt/analytic.hpp"
#include "mmwpt/config.hpp"
#include "mmwpt/montecarlo.hpp"
#include "mmwpt/sweep.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  long trials = 100000;
  std::uint64_t seed = 1;
  std::vector<double> densities;
  std::vector<int> antennas;
  bool no_mc = false;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "key=value config file");
  cmd->add_option("--out", o.out_path, "output path (default stdout)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
  cmd->add_option("--seed", o.seed, "global RNG seed");
  cmd->add_option("--densities", o.densities, "BS densities per m^2")
      ->delimiter(',');
  cmd->add_option("--antennas", o.antennas, "BS antenna counts M")
      ->delimiter(',');
  cmd->add_flag("--no-mc", o.no_mc, "skip Monte Carlo columns");
  cmd->add_flag("--json", o.json, "emit JSON instead of CSV");
}

mmwpt::SystemParams load(const CommonOpts& o) {
  if (o.config_path.empty()) {
    mmwpt::SystemParams p;
    p.validate();
    return p;
  }
  return mmwpt::config::load_config(o.config_path);
}

int write_out(const CommonOpts& o, const mmwpt::sweep::SweepResult& res) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      std::cerr << "error: cannot open output file " << o.out_path << "\n";
      return 1;
    }
    out = &file;
  }
  if (o.json)
    mmwpt::sweep::emit_json(res, *out);
  else
    mmwpt::sweep::emit_csv(res, *out);
  return 0;
}

int run_sweep(const CommonOpts& o, bool fig2) {
  const auto p = load(o);
  auto densities =
      o.densities.empty() ? mmwpt::sweep::default_density_grid() : o.densities;
  auto antennas = o.antennas.empty() ? std::vector<int>{p.m_bs} : o.antennas;
  mmwpt::sweep::SweepOptions opt;
  opt.n_trials = o.trials;
  opt.seed = o.seed;
  opt.run_mc = !o.no_mc;
  const auto res = fig2 ? mmwpt::sweep::run_fig2(p, densities, antennas, opt)
                        : mmwpt::sweep::run_fig1(p, densities, antennas, opt);
  return write_out(o, res);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"millimeter-wave wireless power transfer network laboratory"};
  app.require_subcommand(1);

  CommonOpts fig1_opts, fig2_opts, self_opts, eval_opts;
  auto* fig1 = app.add_subcommand(
      "fig1", "harvested-power sweep over density and antenna count");
  add_common(fig1, fig1_opts);
  auto* fig2 = app.add_subcommand("fig2", "achievable-rate sweep");
  add_common(fig2, fig2_opts);
  auto* self = app.add_subcommand("selftest", "reduced-scale invariant suite");
  add_common(self, self_opts);
  auto* eval = app.add_subcommand("eval", "single-point evaluation");
  add_common(eval, eval_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig1->parsed()) return run_sweep(fig1_opts, false);
    if (fig2->parsed()) return run_sweep(fig2_opts, true);
    if (self->parsed()) {
      const auto p = load(self_opts);
      bool ok = false;
      const std::string report = mmwpt::sweep::selftest(p, self_opts.seed, ok);
      if (!self_opts.out_path.empty()) {
        std::ofstream f(self_opts.out_path);
        f << report << "\n";
      } else {
        std::cout << report << "\n";
      }
      return ok ? 0 : 2;
    }
    if (eval->parsed()) {
      const auto p = load(eval_opts);
      auto res_params = mmwpt::config::to_keyvals(p);
      const auto energy = mmwpt::analytic::analytic_energy(p);
      const auto rate = mmwpt::analytic::rate_upper(p);
      nlohmann::json j;
      for (const auto& [k, v] : res_params) j["params"][k] = v;
      j["analytic"]["en1_mean_w"] = energy.en1_mean_w;
      j["analytic"]["en2_mean_w"] = energy.en2_mean_w;
      j["analytic"]["total_w"] = energy.total_w;
      j["analytic"]["pu_stable_w"] = energy.pu_stable_w;
      j["analytic"]["rate_upper_bps_hz"] = rate.rate_upper_bps;
      j["analytic"]["rate_upper_bps"] = rate.rate_upper_bps * p.bandwidth_hz;
      if (!eval_opts.no_mc) {
        mmwpt::mc::TrialBatchSpec batch;
        batch.n_trials = eval_opts.trials;
        batch.seed = eval_opts.seed;
        const auto mc_rep = mmwpt::mc::mc_harvest(p, batch);
        const auto mc_rates = mmwpt::mc::mc_rate(p, batch);
        j["montecarlo"]["en1_mean_w"] = mc_rep.en1_mean_w;
        j["montecarlo"]["en2_mean_w"] = mc_rep.en2_mean_w;
        j["montecarlo"]["total_w"] = mc_rep.total_w;
        j["montecarlo"]["ci_halfwidth_w"] = mc_rep.ci_halfwidth_w;
        j["montecarlo"]["pu_stable_w"] = mc_rep.pu_stable_w;
        j["montecarlo"]["rate_exact_bps_hz"] = mc_rates.rate_exact_bps;
        j["montecarlo"]["rate_upper_bps_hz"] = mc_rates.rate_upper_bps;
      }
      if (!eval_opts.out_path.empty()) {
        std::ofstream f(eval_opts.out_path);
        f << j.dump(2) << "\n";
      } else {
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
