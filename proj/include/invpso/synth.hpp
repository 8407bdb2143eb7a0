#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "invpso/domain.hpp"

namespace invpso {

struct SynthConfig {
  std::int64_t periods = 20;
  std::int64_t products = 5;
  Topology topology = Topology::from_agents({2, 2});
  StockLevel stock_lb = -1000;
  StockLevel stock_ub = 1000;
  std::int64_t link_time_min = 1;
  std::int64_t link_time_max = 47;
  std::int64_t raw_time_min = 1;
  std::int64_t raw_time_max = 25;
  std::uint64_t seed = 1;
};

struct SynthTables {
  std::string history_csv;
  std::string stock_lead_csv;
  std::string raw_lead_csv;
};

/// Schema-valid tables; every product gets 2 to 5 raw materials.
SynthTables synthesize(const SynthConfig& config);

/// Writes stock_history.csv, stock_lead_times.csv and raw_material_lead_times.csv.
void write_tables(const SynthTables& tables, const std::filesystem::path& out_dir);

}  // namespace invpso
