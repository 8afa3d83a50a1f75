#include "mmwpt/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mmwpt::config {

namespace {

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos])))
      ++pos;
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" +
                      value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  const int i = static_cast<int>(std::lround(v));
  if (static_cast<double>(i) != v)
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      value + "'");
  return i;
}

}  // namespace

SystemParams from_keyvals(const std::map<std::string, std::string>& kv) {
  SystemParams p;
  double frequency_hz = 38e9;
  bool beta_los_set = false, beta_nlos_set = false, noise_set = false;
  double beta_nlos_gap_db = 27.0;

  for (const auto& [key, value] : kv) {
    if (key == "pmm_watts") p.pmm_watts = parse_number(key, value);
    else if (key == "pmm_dbm") p.pmm_watts = dbm_to_watts(parse_number(key, value));
    else if (key == "m_bs") p.m_bs = parse_int(key, value);
    else if (key == "n_ue") p.n_ue = parse_int(key, value);
    else if (key == "spacing_ratio") p.spacing_ratio = parse_number(key, value);
    else if (key == "alpha_los") p.alpha_los = parse_number(key, value);
    else if (key == "alpha_nlos") p.alpha_nlos = parse_number(key, value);
    else if (key == "beta_los") { p.beta_los = parse_number(key, value); beta_los_set = true; }
    else if (key == "beta_nlos") { p.beta_nlos = parse_number(key, value); beta_nlos_set = true; }
    else if (key == "beta_nlos_gap_db") beta_nlos_gap_db = parse_number(key, value);
    else if (key == "frequency_hz") frequency_hz = parse_number(key, value);
    else if (key == "blockage_decay_m") p.blockage_decay_m = parse_number(key, value);
    else if (key == "bs_density") p.bs_density = parse_number(key, value);
    else if (key == "bs_density_per_km2") p.bs_density = parse_number(key, value) * 1e-6;
    else if (key == "ref_dist_m") p.ref_dist_m = parse_number(key, value);
    else if (key == "phi_split") p.phi_split = parse_number(key, value);
    else if (key == "eta_rfdc") p.eta_rfdc = parse_number(key, value);
    else if (key == "noise_watts") { p.noise_watts = parse_number(key, value); noise_set = true; }
    else if (key == "noise_dbm") { p.noise_watts = dbm_to_watts(parse_number(key, value)); noise_set = true; }
    else if (key == "bandwidth_hz") p.bandwidth_hz = parse_number(key, value);
    else if (key == "noise_figure_db") p.noise_figure_db = parse_number(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
  }

  if (!beta_los_set) {
    if (!(frequency_hz > 0))
      throw ConfigError("config key 'frequency_hz' must be positive");
    const double lambda = kSpeedOfLight / frequency_hz;
    p.beta_los = std::pow(lambda / (4.0 * std::numbers::pi), 2.0);
  }
  if (!beta_nlos_set)
    p.beta_nlos = p.beta_los * db_to_linear(-beta_nlos_gap_db);
  if (!noise_set)
    p.noise_watts = dbm_to_watts(-174.0 + 10.0 * std::log10(p.bandwidth_hz) +
                                 p.noise_figure_db);
  p.validate();
  return p;
}

SystemParams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    // collapse whitespace-only lines
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    if (!kv.emplace(key, value).second)
      throw ConfigError("duplicate config key '" + key + "'");
  }
  return from_keyvals(kv);
}

std::map<std::string, double> to_keyvals(const SystemParams& p) {
  return {
      {"pmm_watts", p.pmm_watts},
      {"m_bs", static_cast<double>(p.m_bs)},
      {"n_ue", static_cast<double>(p.n_ue)},
      {"spacing_ratio", p.spacing_ratio},
      {"alpha_los", p.alpha_los},
      {"alpha_nlos", p.alpha_nlos},
      {"beta_los", p.beta_los},
      {"beta_nlos", p.beta_nlos},
      {"blockage_decay_m", p.blockage_decay_m},
      {"bs_density", p.bs_density},
      {"ref_dist_m", p.ref_dist_m},
      {"phi_split", p.phi_split},
      {"eta_rfdc", p.eta_rfdc},
      {"noise_watts", p.noise_watts},
      {"bandwidth_hz", p.bandwidth_hz},
      {"noise_figure_db", p.noise_figure_db},
  };
}

}  // namespace mmwpt::config
