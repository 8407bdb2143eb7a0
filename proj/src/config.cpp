#include "invpso/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "invpso/error.hpp"

namespace invpso {

namespace {

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "swarm_size", "max_iterations", "c1",         "c2",         "w_max",          "w_min",
      "r1",         "r2",             "r3",         "match_radius", "log_base",     "stall_window",
      "product_lb", "product_ub",     "stock_lb",   "stock_ub",   "velocity_fraction", "per_dimension_r",
      "member_count", "dc_count",     "agents_per_dc", "seed"};
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorCode::InvalidConfig,
              "key '" + std::string(key) + "': '" + std::string(value) + "' is not " + std::string(expected));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, std::string_view expected) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc{} || ptr != end) bad_value(key, value, expected);
  return out;
}

class Reader {
 public:
  explicit Reader(const Settings& settings) : settings_(settings) {}

  bool has(std::string_view key) const { return settings_.contains(key); }

  std::int64_t integer(std::string_view key, std::int64_t fallback) const {
    const auto it = settings_.find(key);
    return it == settings_.end() ? fallback : parse_number<std::int64_t>(key, it->second, "an integer");
  }
  std::uint64_t unsigned_integer(std::string_view key, std::uint64_t fallback) const {
    const auto it = settings_.find(key);
    return it == settings_.end() ? fallback : parse_number<std::uint64_t>(key, it->second, "an unsigned integer");
  }
  double real(std::string_view key, double fallback) const {
    const auto it = settings_.find(key);
    return it == settings_.end() ? fallback : parse_number<double>(key, it->second, "a number");
  }
  bool boolean(std::string_view key, bool fallback) const {
    const auto it = settings_.find(key);
    if (it == settings_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    bad_value(key, it->second, "true or false");
  }
  std::vector<std::int64_t> integer_list(std::string_view key, std::vector<std::int64_t> fallback) const {
    const auto it = settings_.find(key);
    if (it == settings_.end()) return fallback;
    std::vector<std::int64_t> values;
    std::string_view rest = it->second;
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_number<std::int64_t>(key, trim(rest.substr(0, comma)), "a comma-separated integer list"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return values;
  }
  LogBase log_base(std::string_view key, LogBase fallback) const {
    const auto it = settings_.find(key);
    if (it == settings_.end()) return fallback;
    if (it->second == "natural") return LogBase::Natural;
    if (it->second == "base10") return LogBase::Base10;
    bad_value(key, it->second, "natural or base10");
  }

 private:
  const Settings& settings_;
};

std::string shortest(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

Settings parse_settings(std::string_view text, std::string_view source) {
  Settings settings;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig,
                  std::string(source) + " line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!known_keys().contains(key)) {
      throw Error(ErrorCode::InvalidConfig,
                  std::string(source) + " line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    settings[key] = std::string(trim(line.substr(eq + 1)));
  }
  return settings;
}

Settings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_settings(buffer.str(), path.string());
}

RunConfig make_run_config(const Settings& settings) {
  for (const auto& [key, value] : settings) {
    if (!known_keys().contains(key)) throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
  }
  const Reader in(settings);
  RunConfig config;

  std::vector<std::int64_t> agents = in.integer_list("agents_per_dc", {2, 2});
  const auto dc_count = in.integer("dc_count", static_cast<std::int64_t>(agents.size()));
  if (in.has("member_count")) {
    config.topology = Topology::from_counts(dc_count, std::move(agents), in.integer("member_count", 0));
  } else {
    config.topology = Topology::from_counts(dc_count, agents, 1 + dc_count + total_agents(agents));
  }

  PsoConfig& pso = config.pso;
  pso.swarm_size = in.integer("swarm_size", pso.swarm_size);
  pso.max_iterations = in.integer("max_iterations", pso.max_iterations);
  pso.c1 = in.real("c1", pso.c1);
  pso.c2 = in.real("c2", pso.c2);
  pso.w_max = in.real("w_max", pso.w_max);
  pso.w_min = in.real("w_min", pso.w_min);
  pso.priorities = {in.real("r1", pso.priorities.r1), in.real("r2", pso.priorities.r2),
                    in.real("r3", pso.priorities.r3)};
  pso.match_radius = in.integer("match_radius", pso.match_radius);
  pso.log_base = in.log_base("log_base", pso.log_base);
  pso.stall_window = in.integer("stall_window", pso.stall_window);
  pso.per_dimension_r = in.boolean("per_dimension_r", pso.per_dimension_r);
  pso.seed = in.unsigned_integer("seed", pso.seed);

  config.velocity_fraction = in.real("velocity_fraction", config.velocity_fraction);
  if (!(config.velocity_fraction > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "velocity_fraction must be positive");
  }
  pso.bounds = Bounds::with_velocity_fraction(in.integer("product_lb", 1), in.integer("product_ub", 5),
                                              in.integer("stock_lb", -1000), in.integer("stock_ub", 1000),
                                              config.velocity_fraction);
  // a single-product range gives zero product velocity; keep the limits open
  if (pso.bounds.product_lb == pso.bounds.product_ub) {
    pso.bounds.product_velocity = {-config.velocity_fraction, config.velocity_fraction};
  }
  validate_config(pso);
  return config;
}

Settings snapshot(const RunConfig& config) {
  const PsoConfig& p = config.pso;
  std::string agents;
  for (const std::int64_t a : config.topology.agents_per_dc()) {
    if (!agents.empty()) agents += ",";
    agents += std::to_string(a);
  }
  return {
      {"swarm_size", std::to_string(p.swarm_size)},
      {"max_iterations", std::to_string(p.max_iterations)},
      {"c1", shortest(p.c1)},
      {"c2", shortest(p.c2)},
      {"w_max", shortest(p.w_max)},
      {"w_min", shortest(p.w_min)},
      {"r1", shortest(p.priorities.r1)},
      {"r2", shortest(p.priorities.r2)},
      {"r3", shortest(p.priorities.r3)},
      {"match_radius", std::to_string(p.match_radius)},
      {"log_base", p.log_base == LogBase::Natural ? "natural" : "base10"},
      {"stall_window", std::to_string(p.stall_window)},
      {"product_lb", std::to_string(p.bounds.product_lb)},
      {"product_ub", std::to_string(p.bounds.product_ub)},
      {"stock_lb", std::to_string(p.bounds.stock_lb)},
      {"stock_ub", std::to_string(p.bounds.stock_ub)},
      {"velocity_fraction", shortest(config.velocity_fraction)},
      {"per_dimension_r", p.per_dimension_r ? "true" : "false"},
      {"member_count", std::to_string(config.topology.member_count())},
      {"dc_count", std::to_string(config.topology.dc_count())},
      {"agents_per_dc", agents},
      {"seed", std::to_string(p.seed)},
  };
}

}  // namespace invpso
