#include "invpso/synth.hpp"

#include <fstream>
#include <sstream>

#include "invpso/error.hpp"
#include "invpso/random.hpp"

namespace invpso {

SynthTables synthesize(const SynthConfig& config) {
  if (config.periods < 1 || config.products < 1) {
    throw Error(ErrorCode::InvalidConfig, "periods and products must be positive");
  }
  if (config.stock_lb > config.stock_ub || config.link_time_min < 0 || config.link_time_min > config.link_time_max ||
      config.raw_time_min < 0 || config.raw_time_min > config.raw_time_max) {
    throw Error(ErrorCode::InvalidConfig, "synthetic value ranges are empty or negative");
  }
  Rng rng(config.seed);
  const std::int64_t members = config.topology.member_count();
  SynthTables out;

  std::ostringstream history;
  history << "TID,PI";
  for (std::int64_t j = 1; j <= members; ++j) history << ",F" << j;
  history << '\n';
  std::ostringstream stock;
  stock << "TID";
  for (std::int64_t j = 1; j < members; ++j) stock << ",T" << j;
  stock << '\n';

  for (std::int64_t tid = 1; tid <= config.periods; ++tid) {
    history << tid << ',' << rng.uniform_int(1, config.products);
    for (std::int64_t j = 0; j < members; ++j) history << ',' << rng.uniform_int(config.stock_lb, config.stock_ub);
    history << '\n';
    stock << tid;
    for (std::int64_t j = 1; j < members; ++j) {
      stock << ',' << rng.uniform_int(config.link_time_min, config.link_time_max);
    }
    stock << '\n';
  }

  std::ostringstream raw;
  raw << "PI,RM,T\n";
  for (std::int64_t product = 1; product <= config.products; ++product) {
    const std::int64_t materials = rng.uniform_int(2, 5);
    for (std::int64_t rm = 1; rm <= materials; ++rm) {
      raw << product << ',' << rm << ',' << rng.uniform_int(config.raw_time_min, config.raw_time_max) << '\n';
    }
  }

  out.history_csv = history.str();
  out.stock_lead_csv = stock.str();
  out.raw_lead_csv = raw.str();
  return out;
}

void write_tables(const SynthTables& tables, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  auto write = [&](const char* name, const std::string& body) {
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << body) || !out.flush()) {
      throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
  };
  write("stock_history.csv", tables.history_csv);
  write("stock_lead_times.csv", tables.stock_lead_csv);
  write("raw_material_lead_times.csv", tables.raw_lead_csv);
}

}  // namespace invpso
