#pragma once

#include <map>
#include <string>

#include "mmwpt/params.hpp"

namespace mmwpt::config {

/// Parse a flat key=value config file. Unknown keys are rejected; absent keys
/// take the built-in defaults (38 GHz carrier, 43 dBm BS power, 2 GHz
/// bandwidth, 10 dB noise figure, ...). dB-suffixed variants are accepted for
/// the power-like fields.
SystemParams load_config(const std::string& path);

/// As load_config, from pre-parsed key/value pairs.
SystemParams from_keyvals(const std::map<std::string, std::string>& kv);

/// Serialize the resolved parameters (linear units) as key=value lines.
std::map<std::string, double> to_keyvals(const SystemParams& p);

}  // namespace mmwpt::config
