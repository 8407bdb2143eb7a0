#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "invpso/recommender.hpp"
#include "invpso/synth.hpp"

namespace invpso {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;

struct CommandOptions {
  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> overrides;  // "key=value", applied after the file
  std::filesystem::path history;
  std::filesystem::path stock_lead;
  std::filesystem::path raw_lead;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  ReportFormat format = ReportFormat::Text;
};

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_optimize(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_oracle(const CommandOptions& options, std::ostream& out, std::ostream& err);

struct SynthOptions {
  std::optional<std::filesystem::path> config_path;  // topology and stock bounds
  std::vector<std::string> overrides;
  std::int64_t periods = 20;
  std::int64_t products = 5;
  std::int64_t link_time_min = 1;
  std::int64_t link_time_max = 47;
  std::int64_t raw_time_min = 1;
  std::int64_t raw_time_max = 25;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
};

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

}  // namespace invpso
