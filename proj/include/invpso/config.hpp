#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "invpso/domain.hpp"
#include "invpso/pso.hpp"

namespace invpso {

/// Everything a command needs besides input paths.
struct RunConfig {
  Topology topology = Topology::from_agents({2, 2});
  PsoConfig pso;
  double velocity_fraction = 0.2;
};

/// Flat `key = value` settings; `#` starts a comment.
using Settings = std::map<std::string, std::string, std::less<>>;

Settings parse_settings(std::string_view text, std::string_view source = "config");
Settings read_settings_file(const std::filesystem::path& path);

/// Applies defaults, then `settings`. Unknown keys and malformed values throw
/// InvalidConfig; the resulting PsoConfig is validated.
RunConfig make_run_config(const Settings& settings);

/// Every recognised key with its effective value, in stable key order.
Settings snapshot(const RunConfig& config);

}  // namespace invpso
