// osram_sim: command-line front end for the spMTTKRP accelerator model.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "osram/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sparse MTTKRP accelerator model with optical and electrical on-chip SRAM"};
  app.require_subcommand(1);

  osram::RunRequest req;
  std::string config, tensor, synthetic, trace;
  std::uint64_t seed = 0, rank = 0;

  auto add_common = [&](CLI::App* sub, bool needs_tensor) {
    sub->add_option("--config", config, "experiment config (JSON); default from $OSRAM_SIM_CONFIG");
    sub->add_option("--rank", rank, "override workload rank R");
    sub->add_option("--seed", seed, "override the synthetic tensor seed");
    if (!needs_tensor) return;
    auto* t = sub->add_option("--tensor", tensor, "FROSTT .tns tensor file");
    auto* s = sub->add_option("--synthetic", synthetic,
                              "synthetic tensor: preset name or dims=AxBxC,nnz=N,skew=S,seed=K");
    t->excludes(s);
    sub->add_option("--out", req.out_dir, "output directory")->capture_default_str();
  };

  auto* simulate = app.add_subcommand("simulate", "simulate one memory technology");
  add_common(simulate, true);
  simulate->add_option("--trace", trace, "write the cache access trace here");
  auto* compare = app.add_subcommand("compare", "simulate primary and baseline technologies and compare");
  add_common(compare, true);
  compare->add_option("--trace", trace, "write the primary run's cache access trace here");
  auto* analyze = app.add_subcommand("analyze", "analytic hypergraph counts without simulation");
  add_common(analyze, true);
  analyze->add_flag("--orderings", req.dump_orderings, "also write the per-mode nonzero orderings");
  auto* validate = app.add_subcommand("validate", "print the normalized config");
  add_common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? osram::kExitOk : osram::kExitUsage;
  }

  if (simulate->parsed()) req.command = osram::Command::simulate;
  else if (compare->parsed()) req.command = osram::Command::compare;
  else if (analyze->parsed()) req.command = osram::Command::analyze;
  else req.command = osram::Command::validate;

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--config")) req.config_path = config;
  if (sub->count("--rank")) req.rank = rank;
  if (sub->count("--seed")) req.seed = seed;
  if (req.command != osram::Command::validate) {
    if (sub->count("--tensor")) req.tensor_path = tensor;
    if (sub->count("--synthetic")) req.synthetic = synthetic;
  }
  if ((simulate->parsed() || compare->parsed()) && sub->count("--trace")) req.trace_path = trace;

  return osram::run_experiment(req, std::cout, std::cerr);
}
