#include <CLI11.hpp>
#include <iostream>

#include "invpso/commands.hpp"

namespace {

void add_common(CLI::App& cmd, invpso::CommandOptions& o, std::string& format) {
  cmd.add_option("--config", o.config_path, "key = value config file");
  cmd.add_option("--set", o.overrides, "override one config key (key=value), repeatable");
  cmd.add_option("--history", o.history, "stock_history.csv")->required();
  cmd.add_option("--stock-lead", o.stock_lead, "stock_lead_times.csv")->required();
  cmd.add_option("--raw-lead", o.raw_lead, "raw_material_lead_times.csv")->required();
  cmd.add_option("--seed", o.seed, "PRNG seed (overrides the config file)");
  cmd.add_option("--out", o.out_dir, "output directory for reports");
  cmd.add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle-swarm search for the inventory pattern that drives supply-chain cost"};
  app.require_subcommand(1);

  invpso::CommandOptions validate_opts, optimize_opts, oracle_opts;
  std::string validate_fmt = "text", optimize_fmt = "text", oracle_fmt = "text";

  auto* validate = app.add_subcommand("validate", "load and check the three input tables");
  add_common(*validate, validate_opts, validate_fmt);
  auto* optimize = app.add_subcommand("optimize", "run the swarm and write reports plus a run manifest");
  add_common(*optimize, optimize_opts, optimize_fmt);
  auto* oracle = app.add_subcommand("oracle", "enumerate record and empty-match candidates, report the minimum");
  add_common(*oracle, oracle_opts, oracle_fmt);

  invpso::SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "generate schema-valid synthetic tables");
  synth->add_option("--config", synth_opts.config_path, "config file (topology and stock bounds)");
  synth->add_option("--set", synth_opts.overrides, "override one config key (key=value), repeatable");
  synth->add_option("--periods", synth_opts.periods, "number of history periods")->check(CLI::PositiveNumber);
  synth->add_option("--products", synth_opts.products, "number of products")->check(CLI::PositiveNumber);
  synth->add_option("--link-time-min", synth_opts.link_time_min);
  synth->add_option("--link-time-max", synth_opts.link_time_max);
  synth->add_option("--raw-time-min", synth_opts.raw_time_min);
  synth->add_option("--raw-time-max", synth_opts.raw_time_max);
  synth->add_option("--seed", synth_opts.seed, "PRNG seed");
  synth->add_option("--out", synth_opts.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invpso::kExitConfig;
  }

  auto to_format = [](const std::string& f) {
    return f == "json" ? invpso::ReportFormat::Json : invpso::ReportFormat::Text;
  };
  if (*validate) {
    validate_opts.format = to_format(validate_fmt);
    return invpso::cmd_validate(validate_opts, std::cout, std::cerr);
  }
  if (*optimize) {
    optimize_opts.format = to_format(optimize_fmt);
    return invpso::cmd_optimize(optimize_opts, std::cout, std::cerr);
  }
  if (*oracle) {
    oracle_opts.format = to_format(oracle_fmt);
    return invpso::cmd_oracle(oracle_opts, std::cout, std::cerr);
  }
  return invpso::cmd_synth(synth_opts, std::cout, std::cerr);
}
