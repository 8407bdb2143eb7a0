#include "invpso/commands.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "invpso/config.hpp"
#include "invpso/error.hpp"
#include "invpso/history_store.hpp"
#include "invpso/manifest.hpp"
#include "invpso/oracle.hpp"
#include "invpso/pso.hpp"

namespace invpso {

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string join_position(std::span<const double> position) {
  std::string s = "[";
  for (std::size_t i = 0; i < position.size(); ++i) {
    if (i > 0) s += ", ";
    s += shortest(position[i]);
  }
  return s + "]";
}

Settings gather_settings(const std::optional<std::filesystem::path>& config_path,
                         const std::vector<std::string>& overrides) {
  Settings settings = config_path ? read_settings_file(*config_path) : Settings{};
  for (const std::string& line : overrides) {
    for (auto& [key, value] : parse_settings(line, "override")) settings[key] = value;
  }
  return settings;
}

RunConfig load_run_config(const CommandOptions& options) {
  Settings settings = gather_settings(options.config_path, options.overrides);
  if (options.seed) settings["seed"] = std::to_string(*options.seed);
  return make_run_config(settings);
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << bytes) || !out.flush()) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

/// Non-fatal observations about data the optimiser cannot reach or never uses.
std::vector<std::string> soft_warnings(const HistoryStore& store, const PsoConfig& pso) {
  std::vector<std::string> warnings;
  const auto& b = pso.bounds;
  for (const HistoryRecord& r : store.history()) {
    if (r.product_id < b.product_lb || r.product_id > b.product_ub) {
      warnings.push_back("TID " + std::to_string(r.tid) + ": product " + std::to_string(r.product_id) +
                         " lies outside the product bounds");
    }
    for (std::size_t j = 0; j < r.levels.size(); ++j) {
      if (r.levels[j] < b.stock_lb || r.levels[j] > b.stock_ub) {
        warnings.push_back("TID " + std::to_string(r.tid) + ": F" + std::to_string(j + 1) + " = " +
                           std::to_string(r.levels[j]) + " lies outside the stock bounds");
      }
    }
  }
  for (ProductId p = b.product_lb; p <= b.product_ub; ++p) {
    if (!store.has_raw_materials(p)) {
      warnings.push_back("product " + std::to_string(p) + " is within bounds but has no raw-material rows");
    }
  }
  return warnings;
}

}  // namespace

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(options);
    const HistoryStore store = load_store(options.history, options.stock_lead, options.raw_lead, config.topology);
    const std::vector<ProductId> products = store.history_products();

    out << "stock history: " << store.history().size() << " rows\n";
    out << "stock lead times: " << store.stock_lead_times().size() << " rows\n";
    out << "raw material lead times: " << store.raw_lead_times().size() << " rows\n";
    out << store.total_periods() << " periods, " << products.size() << " products, l="
        << config.topology.member_count() << "\n";
    out << "products:";
    for (const ProductId p : products) out << ' ' << p;
    out << "\n";
    for (const std::string& w : soft_warnings(store, config.pso)) out << "warning: " << w << "\n";
    return kExitOk;
  });
}

int cmd_optimize(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(options);
    const HistoryStore store = load_store(options.history, options.stock_lead, options.raw_lead, config.topology);
    const OptimizationResult result = run(store, config.pso);

    Recommendation rec = interpret(result.best_position, config.topology);
    rec.fitness = result.best_fitness;
    rec.weights = result.weights_used;
    rec.iterations = result.iterations_run;

    RunManifest manifest;
    manifest.config = snapshot(config);
    manifest.seed = config.pso.seed;
    manifest.inputs = {
        {"history", options.history.string(), content_digest(read_bytes(options.history))},
        {"stock_lead", options.stock_lead.string(), content_digest(read_bytes(options.stock_lead))},
        {"raw_lead", options.raw_lead.string(), content_digest(read_bytes(options.raw_lead))},
    };

    std::ostringstream trace;
    trace << "iteration,gbest_fitness\n";
    for (const TracePoint& t : result.gbest_trace) trace << t.iteration << ',' << shortest(t.fitness) << '\n';

    std::filesystem::create_directories(options.out_dir);
    write_bytes(options.out_dir / "report.txt", render_report(rec, ReportFormat::Text));
    write_bytes(options.out_dir / "report.json", render_report(rec, ReportFormat::Json));
    write_bytes(options.out_dir / "manifest.json", render_manifest(manifest));
    write_bytes(options.out_dir / "trace.csv", trace.str());

    std::int64_t last_improvement = 0;
    for (std::size_t i = 1; i < result.gbest_trace.size(); ++i) {
      if (result.gbest_trace[i].fitness < result.gbest_trace[i - 1].fitness) {
        last_improvement = result.gbest_trace[i].iteration;
      }
    }
    std::ostream& summary = options.format == ReportFormat::Json ? err : out;
    out << render_report(rec, options.format);
    summary << "trace: " << result.gbest_trace.size() << " entries, first "
            << shortest(result.gbest_trace.front().fitness) << ", last " << shortest(result.gbest_trace.back().fitness)
            << ", last improvement at iteration " << last_improvement << "\n";
    summary << "reports written to " << options.out_dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_oracle(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(options);
    const HistoryStore store = load_store(options.history, options.stock_lead, options.raw_lead, config.topology);
    const OracleReport report = enumerate_oracle(store, config.pso);
    const OracleCandidate& best = report.best();
    const auto empties = std::ranges::count_if(report.candidates, &OracleCandidate::empty_match);

    if (options.format == ReportFormat::Json) {
      nlohmann::ordered_json doc;
      doc["evaluations"] = report.candidates.size();
      doc["record_candidates"] = report.candidates.size() - static_cast<std::size_t>(empties);
      doc["empty_match_candidates"] = empties;
      doc["min_fitness"] = best.fitness;
      doc["argmin"] = best.position;
      doc["argmin_occurrences"] = best.occurrences;
      doc["products_without_empty_candidate"] = report.products_without_empty_candidate;
      out << doc.dump(2) << "\n";
      return kExitOk;
    }
    out << "evaluations: " << report.candidates.size() << " (" << report.candidates.size() - empties
        << " records + " << empties << " empty-match)\n";
    out << "min fitness: " << shortest(best.fitness) << "\n";
    out << "argmin: " << join_position(best.position) << "\n";
    out << "argmin occurrences: " << best.occurrences << "\n";
    for (const ProductId p : report.products_without_empty_candidate) {
      out << "note: no in-bounds vector escapes every record of product " << p << "\n";
    }
    return kExitOk;
  });
}

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = make_run_config(gather_settings(options.config_path, options.overrides));
    SynthConfig synth;
    synth.periods = options.periods;
    synth.products = options.products;
    synth.topology = config.topology;
    synth.stock_lb = config.pso.bounds.stock_lb;
    synth.stock_ub = config.pso.bounds.stock_ub;
    synth.link_time_min = options.link_time_min;
    synth.link_time_max = options.link_time_max;
    synth.raw_time_min = options.raw_time_min;
    synth.raw_time_max = options.raw_time_max;
    synth.seed = options.seed;

    write_tables(synthesize(synth), options.out_dir);
    out << "wrote " << synth.periods << " periods, " << synth.products << " products, l="
        << synth.topology.member_count() << " to " << options.out_dir.string() << "\n";
    return kExitOk;
  });
}

}  // namespace invpso
