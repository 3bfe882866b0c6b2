#pragma once

// End-to-end experiment driver behind the command-line tool: resolve the
// config and tensor, run the simulations, write the report files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "osram/config.hpp"
#include "osram/hypergraph.hpp"
#include "osram/report.hpp"
#include "osram/simulator.hpp"
#include "osram/tensor_io.hpp"

namespace osram {

enum class Command { simulate, compare, analyze, validate };

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitInternal = 3 };

inline constexpr const char* kConfigEnvVar = "OSRAM_SIM_CONFIG";

struct RunRequest {
  Command command = Command::compare;
  std::optional<std::string> config_path;
  std::optional<std::string> tensor_path;
  std::optional<std::string> synthetic;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> rank;
  std::optional<std::string> trace_path;
  bool dump_orderings = false;
};

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("file not found or unreadable: " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed: " + path.string());
}

// Parses and validates a config file; every problem lands in one ConfigError.
inline ExperimentConfig load_config(const std::optional<std::string>& path) {
  Json doc = Json::object();
  if (path) {
    std::string text;
    try {
      text = read_text_file(*path);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError("config " + *path + " is not valid JSON: " + e.what());
    }
  }
  auto v = validate_config(doc);
  if (!v.ok()) {
    std::string msg = "invalid config";
    if (path) msg += " " + *path;
    msg += ":";
    for (const auto& e : v.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return v.config;
}

inline SparseTensorCOO load_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("tensor file not found: " + path);
  ParseOptions opts;
  opts.name = std::filesystem::path(path).stem().string();
  try {
    return parse_frostt(in, opts);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), std::string(path) + ": " + e.what());
  }
}

namespace detail {

inline std::optional<std::string> resolve_config_path(const RunRequest& req) {
  if (req.config_path) return req.config_path;
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return std::string(env);
  return std::nullopt;
}

inline SparseTensorCOO resolve_tensor(const RunRequest& req, const ExperimentConfig& cfg) {
  std::optional<SyntheticSpec> syn;
  std::optional<std::string> path;
  if (req.tensor_path && req.synthetic)
    throw ConfigError("give either --tensor or --synthetic, not both");
  if (req.tensor_path) path = req.tensor_path;
  else if (req.synthetic) syn = parse_synthetic_arg(*req.synthetic);
  else if (cfg.tensor_path) path = cfg.tensor_path;
  else if (cfg.synthetic) syn = cfg.synthetic;
  else throw ConfigError("no tensor: pass --tensor, --synthetic or set workload.tensor");

  if (path) return load_tensor_file(*path);
  if (req.seed) syn->seed = *req.seed;
  return generate_synthetic(*syn);
}

inline Json analysis_json(const SparseTensorCOO& t, const ExperimentConfig& cfg) {
  const Hypergraph h = build_hypergraph(t);
  const std::uint64_t rank = cfg.accelerator.rank;
  Json modes = Json::array();
  for (std::size_t m = 0; m < t.num_modes(); ++m) {
    const Count traffic = traffic_count(t.num_modes(), t.nnz(), rank, t.dim(m));
    modes.push_back({{"mode", m},
                     {"output_rows", t.dim(m)},
                     {"compute_ops", compute_count(t.num_modes(), t.nnz(), rank)},
                     {"traffic_elements", traffic},
                     {"traffic_bytes", traffic * cfg.accelerator.element_bytes}});
  }
  return {{"tensor", t.name()},
          {"dims", t.dims()},
          {"rank", rank},
          {"vertices", h.num_vertices()},
          {"hyperedges", h.num_hyperedges},
          {"modes", modes}};
}

}  // namespace detail

// Runs one CLI command. Diagnostics go to `err`; returns the exit code.
inline int run_experiment(const RunRequest& req, std::ostream& out = std::cout,
                          std::ostream& err = std::cerr) {
  try {
    const auto config_path = detail::resolve_config_path(req);
    ExperimentConfig cfg = load_config(config_path);
    // Tensor paths in a config file are relative to that file.
    if (cfg.tensor_path && config_path && std::filesystem::path(*cfg.tensor_path).is_relative())
      cfg.tensor_path =
          (std::filesystem::path(*config_path).parent_path() / *cfg.tensor_path).string();
    if (req.rank) cfg.accelerator.rank = *req.rank;
    if (req.seed) cfg.seed = *req.seed;
    if (auto errs = validation_errors(cfg.accelerator); !errs.empty()) {
      std::string msg = "invalid config:";
      for (const auto& e : errs) msg += "\n  " + e;
      throw ConfigError(msg);
    }

    if (req.command == Command::validate) {
      out << config_to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }

    const SparseTensorCOO tensor = detail::resolve_tensor(req, cfg);
    const std::filesystem::path dir(req.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());

    if (req.command == Command::analyze) {
      const Json a = detail::analysis_json(tensor, cfg);
      write_text_file(dir / "analysis.json", a.dump(2) + "\n");
      if (req.dump_orderings) {
        for (std::size_t m = 0; m < tensor.num_modes(); ++m) {
          std::ostringstream s;
          write_ordering(s, sort_for_mode(tensor, m));
          write_text_file(dir / ("ordering_mode" + std::to_string(m) + ".txt"), s.str());
        }
      }
      out << a.dump(2) << '\n';
      return kExitOk;
    }

    std::ofstream trace_file;
    TraceSink trace;
    if (req.trace_path) {
      trace_file.open(*req.trace_path, std::ios::trunc);
      if (!trace_file) throw InputError("cannot write trace " + *req.trace_path);
      trace = [&trace_file](const TraceRecord& r) { trace_file << format_trace(r) << '\n'; };
    }

    std::vector<RunReport> reports;
    std::vector<Comparison> comparisons;
    const AcceleratorConfig primary = cfg.accelerator;
    if (req.command == Command::simulate) {
      reports.push_back(simulate_all_modes(tensor, primary, trace));
    } else {
      const AcceleratorConfig baseline = cfg.with_tech(cfg.baseline);
      if (primary.tech.name == baseline.tech.name)
        throw ConfigError("memory_tech.baseline.name: must differ from the primary technology name");
      // Independent runs over shared immutable inputs.
      auto fut = std::async(std::launch::async,
                            [&tensor, &baseline] { return simulate_all_modes(tensor, baseline); });
      RunReport a = simulate_all_modes(tensor, primary, trace);
      RunReport b = fut.get();
      comparisons.push_back(compare(a, b));
      reports.push_back(std::move(a));
      reports.push_back(std::move(b));
    }

    for (const auto& r : reports)
      write_text_file(dir / ("report_" + r.tech + ".json"), report_to_json(r).dump(2) + "\n");
    write_text_file(dir / "comparison.csv", emit_csv(reports, comparisons));
    const std::string summary = summary_text(reports, comparisons);
    write_text_file(dir / "summary.txt", summary);
    out << summary;
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ModelError& e) {
    err << "model invariant violated: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace osram
