#pragma once

#include <string>
#include <vector>

#include "d2dnc/engine.hpp"

namespace d2dnc {

/// Parses `key = value` lines (or `key=value` flag strings) into a RunConfig.
/// Documented keys: players, packets, epsilon, sigma_rule (half_epsilon |
/// factor | fixed), sigma_factor, sigma, connectivity, side, scheme, episodes,
/// seed, max_rounds, threads. Unknown keys and out-of-range values raise
/// CONFIG_ERROR mentioning the key. Flags override file keys.
RunConfig parse_config(const std::string& file_path, const std::vector<std::string>& flag_overrides);

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& flag_overrides);

void validate_config(const RunConfig& c);

}  // namespace d2dnc
