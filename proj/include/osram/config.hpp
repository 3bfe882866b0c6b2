#pragma once

// Experiment configuration: the JSON document read by the CLI, its
// validation against the accelerator invariants, and the bundled synthetic
// workloads.
//
// Document layout (every key optional, unknown keys rejected):
//
//   {
//     "accelerator": { "num_pes": 4, "pipelines_per_pe": 80, ... },
//     "memory_tech": { "primary": "osram-paper", "baseline": "esram-paper" },
//     "dram":        { "channels": 4, "bandwidth_bytes_per_s": 19.2e9, ... },
//     "workload":    { "rank": 16, "seed": 0, "tensor": "x.tns" | "synthetic": ... }
//   }

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "osram/error.hpp"
#include "osram/memtech.hpp"
#include "osram/simulator.hpp"
#include "osram/tensor_io.hpp"

namespace osram {

using Json = nlohmann::json;

struct ExperimentConfig {
  AcceleratorConfig accelerator;  // accelerator.tech is the primary technology
  SramTechSpec baseline = esram_paper();
  std::uint64_t seed = 0;
  std::optional<std::string> tensor_path;
  std::optional<SyntheticSpec> synthetic;

  AcceleratorConfig with_tech(const SramTechSpec& tech) const {
    AcceleratorConfig c = accelerator;
    c.tech = tech;
    return c;
  }
  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    auto syn_eq = [](const std::optional<SyntheticSpec>& x, const std::optional<SyntheticSpec>& y) {
      if (x.has_value() != y.has_value()) return false;
      if (!x) return true;
      return x->name == y->name && x->dims == y->dims && x->nnz == y->nnz &&
             x->skew == y->skew && x->seed == y->seed;
    };
    return a.accelerator == b.accelerator && a.baseline == b.baseline && a.seed == b.seed &&
           a.tensor_path == b.tensor_path && syn_eq(a.synthetic, b.synthetic);
  }
};

// ---------------------------------------------------------------------------
// Bundled synthetic workloads, desk-scale stand-ins for public FROSTT tensors.

inline std::optional<SyntheticSpec> synthetic_preset(std::string_view name) {
  auto make = [&](std::vector<Index> dims, std::uint64_t nnz, double skew, std::uint64_t seed) {
    return SyntheticSpec{std::string(name), std::move(dims), nnz, {skew}, seed};
  };
  if (name == "tiny") return make({4, 4, 4}, 64, 0.0, 7);
  // High reuse of a few factor rows.
  if (name == "nell2-like") return make({12100, 9200, 28800}, 100000, 1.2, 1);
  // NELL-1 shape divided by 100, uniform indices: almost no reuse.
  if (name == "nell1-like") return make({29000, 21000, 255000}, 100000, 0.0, 1);
  if (name == "patents-like") return make({46, 2392, 2392}, 100000, 0.8, 3);
  if (name == "lbnl-like") return make({1600, 4200, 1600, 4200, 8681}, 50000, 0.6, 5);
  if (name == "delicious-like") return make({5329, 173000, 25000, 14}, 100000, 0.0, 9);
  return std::nullopt;
}

inline const std::vector<std::string>& synthetic_preset_names() {
  static const std::vector<std::string> names = {"tiny",         "nell2-like", "nell1-like",
                                                 "patents-like", "lbnl-like",  "delicious-like"};
  return names;
}

// Inline spec "dims=4x4x4,nnz=64,skew=0,seed=7[,name=x]" or a preset name.
// Skew may be one value or one per mode separated by ':'.
inline SyntheticSpec parse_synthetic_arg(std::string_view arg) {
  if (auto p = synthetic_preset(arg)) return *p;
  SyntheticSpec spec;
  bool have_dims = false;
  bool have_nnz = false;
  auto bad = [&](const std::string& why) {
    return InputError("bad --synthetic spec '" + std::string(arg) + "': " + why);
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
      const auto pos = s.find(sep, start);
      out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  };
  for (auto kv : split(arg, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw bad("expected key=value, got '" + std::string(kv) + "'");
    const auto key = kv.substr(0, eq);
    const auto val = kv.substr(eq + 1);
    if (key == "dims") {
      for (auto d : split(val, 'x')) {
        Index v = 0;
        if (!detail::parse_number(d, v) || v == 0) throw bad("dims must be positive integers");
        spec.dims.push_back(v);
      }
      have_dims = true;
    } else if (key == "nnz") {
      if (!detail::parse_number(val, spec.nnz)) throw bad("nnz must be an integer");
      have_nnz = true;
    } else if (key == "skew") {
      for (auto sk : split(val, ':')) {
        double v = 0;
        if (!detail::parse_number(sk, v)) throw bad("skew must be numeric");
        spec.skew.push_back(v);
      }
    } else if (key == "seed") {
      if (!detail::parse_number(val, spec.seed)) throw bad("seed must be an integer");
    } else if (key == "name") {
      spec.name = std::string(val);
    } else {
      throw bad("unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_dims || !have_nnz) throw bad("dims and nnz are required");
  return spec;
}

// ---------------------------------------------------------------------------
// JSON <-> config

namespace detail {

// Reads fields of one JSON object, collecting errors instead of throwing.
class FieldReader {
 public:
  FieldReader(const Json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) error(path_, "must be an object");
  }

  void u64(const char* key, std::uint64_t& out) {
    const Json* v = find(key);
    if (!v) return;
    if (v->is_number_unsigned()) {
      out = v->get<std::uint64_t>();
    } else if (v->is_number_float() && v->get<double>() >= 0 &&
               v->get<double>() == std::floor(v->get<double>()) && v->get<double>() < 0x1.0p64) {
      out = static_cast<std::uint64_t>(v->get<double>());
    } else {
      error(at(key), "must be a non-negative integer");
    }
  }
  void f64(const char* key, double& out) {
    const Json* v = find(key);
    if (!v) return;
    if (v->is_number() && std::isfinite(v->get<double>())) {
      out = v->get<double>();
    } else {
      error(at(key), "must be a finite number");
    }
  }
  void boolean(const char* key, bool& out) {
    const Json* v = find(key);
    if (!v) return;
    if (v->is_boolean()) out = v->get<bool>();
    else error(at(key), "must be true or false");
  }
  void str(const char* key, std::string& out) {
    const Json* v = find(key);
    if (!v) return;
    if (v->is_string()) out = v->get<std::string>();
    else error(at(key), "must be a string");
  }
  const Json* find(const char* key) {
    known_.insert(key);
    if (!obj_.is_object()) return nullptr;
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }
  void reject_unknown() {
    if (!obj_.is_object()) return;
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!known_.count(it.key())) error(at(it.key()), "unknown key");
  }
  std::string at(const std::string& key) const { return path_ + "." + key; }
  void error(const std::string& where, const std::string& what) {
    errors_.push_back(where + ": " + what);
  }

 private:
  const Json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> known_;
};

inline SramTechSpec read_tech(const Json& j, const std::string& path, const SramTechSpec& fallback,
                              std::vector<std::string>& errors) {
  if (j.is_string()) {
    if (auto p = sram_preset(j.get<std::string>())) return *p;
    errors.push_back(path + ": unknown preset '" + j.get<std::string>() +
                     "' (known: osram-paper, esram-paper)");
    return fallback;
  }
  FieldReader r(j, path, errors);
  SramTechSpec t = fallback;
  if (const Json* p = r.find("preset")) {
    if (p->is_string() && sram_preset(p->get<std::string>())) {
      t = *sram_preset(p->get<std::string>());
    } else {
      r.error(r.at("preset"), "unknown preset (known: osram-paper, esram-paper)");
    }
  }
  r.str("name", t.name);
  std::string kind(to_string(t.kind));
  r.str("kind", kind);
  if (kind == "optical") t.kind = SramKind::optical;
  else if (kind == "electrical") t.kind = SramKind::electrical;
  else r.error(r.at("kind"), "must be 'optical' or 'electrical'");
  r.u64("f_mem_hz", t.f_mem);
  r.u64("wavelengths", t.wavelengths);
  r.u64("port_width_bits", t.port_width_bits);
  r.u64("port_count", t.port_count);
  r.u64("block_capacity_bits", t.block_capacity_bits);
  r.f64("static_pj_per_bit", t.static_pj_per_bit);
  r.f64("switching_pj_per_bit", t.switching_pj_per_bit);
  r.f64("area_mm2_per_bit", t.area_mm2_per_bit);
  r.reject_unknown();
  return t;
}

inline Json tech_to_json(const SramTechSpec& t) {
  return Json{{"name", t.name},
              {"kind", std::string(to_string(t.kind))},
              {"f_mem_hz", t.f_mem},
              {"wavelengths", t.wavelengths},
              {"port_width_bits", t.port_width_bits},
              {"port_count", t.port_count},
              {"block_capacity_bits", t.block_capacity_bits},
              {"static_pj_per_bit", t.static_pj_per_bit},
              {"switching_pj_per_bit", t.switching_pj_per_bit},
              {"area_mm2_per_bit", t.area_mm2_per_bit}};
}

inline Json synthetic_to_json(const SyntheticSpec& s) {
  return Json{{"name", s.name}, {"dims", s.dims}, {"nnz", s.nnz}, {"skew", s.skew}, {"seed", s.seed}};
}

}  // namespace detail

struct ConfigValidation {
  ExperimentConfig config;
  std::vector<std::string> errors;
  bool ok() const noexcept { return errors.empty(); }
};

// Fills unset fields with the default accelerator and checks every
// invariant. Errors accumulate; each names its field path.
inline ConfigValidation validate_config(const Json& doc) {
  ConfigValidation out;
  ExperimentConfig& cfg = out.config;
  auto& errs = out.errors;
  const Json empty = Json::object();
  const Json& root = doc.is_null() ? empty : doc;
  detail::FieldReader top(root, "config", errs);

  AcceleratorConfig& a = cfg.accelerator;
  if (const Json* j = top.find("accelerator")) {
    detail::FieldReader r(*j, "accelerator", errs);
    r.u64("num_pes", a.pe.num_pes);
    r.u64("pipelines_per_pe", a.pe.pipelines_per_pe);
    r.u64("partial_buffer_elements", a.pe.partial_buffer_elements);
    r.u64("f_electrical_hz", a.pe.f_electrical);
    r.u64("num_caches", a.cache.num_caches);
    r.u64("associativity", a.cache.associativity);
    r.u64("cache_lines", a.cache.num_lines);
    r.u64("line_bytes", a.cache.line_bytes);
    r.u64("pe_pipeline_stages", a.cache.pe_pipeline_stages);
    r.u64("cache_service_blocks", a.cache.service_blocks);
    r.boolean("ideal_cache", a.cache.ideal);
    r.u64("dma_buffers", a.dma.buffer_count);
    r.u64("dma_buffer_bytes", a.dma.buffer_bytes);
    r.u64("element_bytes", a.element_bytes);
    r.u64("index_bytes", a.index_bytes);
    r.f64("compute_energy_pj_per_op", a.compute_energy_pj_per_op);
    std::uint64_t budget_bytes = a.onchip_budget_bits / 8;
    r.u64("onchip_budget_bytes", budget_bytes);
    a.onchip_budget_bits = budget_bytes * 8;
    r.f64("pe_area_mm2", a.pe_area_mm2);
    r.reject_unknown();
  }
  if (const Json* j = top.find("memory_tech")) {
    detail::FieldReader r(*j, "memory_tech", errs);
    if (const Json* p = r.find("primary")) a.tech = detail::read_tech(*p, "memory_tech.primary", a.tech, errs);
    if (const Json* b = r.find("baseline"))
      cfg.baseline = detail::read_tech(*b, "memory_tech.baseline", cfg.baseline, errs);
    r.reject_unknown();
  }
  if (const Json* j = top.find("dram")) {
    detail::FieldReader r(*j, "dram", errs);
    r.u64("channels", a.dram.channels);
    r.f64("bandwidth_bytes_per_s", a.dram.bandwidth_bytes_per_s);
    r.u64("random_access_latency_cycles", a.dram.random_access_latency);
    r.u64("burst_bytes", a.dram.burst_bytes);
    r.f64("energy_pj_per_bit", a.dram.energy_pj_per_bit);
    r.u64("max_outstanding", a.dram.max_outstanding);
    r.reject_unknown();
  }
  if (const Json* j = top.find("workload")) {
    detail::FieldReader r(*j, "workload", errs);
    r.u64("rank", a.rank);
    r.u64("seed", cfg.seed);
    if (const Json* t = r.find("tensor")) {
      if (t->is_string()) cfg.tensor_path = t->get<std::string>();
      else r.error(r.at("tensor"), "must be a path string");
    }
    if (const Json* s = r.find("synthetic")) {
      if (s->is_string()) {
        try {
          cfg.synthetic = parse_synthetic_arg(s->get<std::string>());
        } catch (const Error& e) {
          r.error(r.at("synthetic"), e.what());
        }
      } else {
        detail::FieldReader sr(*s, "workload.synthetic", errs);
        SyntheticSpec spec;
        spec.seed = cfg.seed;
        sr.str("name", spec.name);
        sr.u64("nnz", spec.nnz);
        sr.u64("seed", spec.seed);
        if (const Json* d = sr.find("dims")) {
          if (d->is_array() && std::all_of(d->begin(), d->end(), [](const Json& x) {
                return x.is_number_unsigned() && x.get<std::uint64_t>() > 0;
              }))
            spec.dims = d->get<std::vector<Index>>();
          else
            sr.error(sr.at("dims"), "must be an array of positive integers");
        } else {
          sr.error(sr.at("dims"), "required");
        }
        if (const Json* k = sr.find("skew")) {
          if (k->is_number()) spec.skew = {k->get<double>()};
          else if (k->is_array() && std::all_of(k->begin(), k->end(), [](const Json& x) { return x.is_number(); }))
            spec.skew = k->get<std::vector<double>>();
          else sr.error(sr.at("skew"), "must be a number or an array of numbers");
        }
        for (double v : spec.skew)
          if (!(v >= 0.0) || !std::isfinite(v)) sr.error(sr.at("skew"), "must be finite and >= 0");
        if (!spec.skew.empty() && spec.skew.size() != 1 && spec.skew.size() != spec.dims.size())
          sr.error(sr.at("skew"), "needs one value or one per mode");
        if (spec.dims.size() == 1) sr.error(sr.at("dims"), "needs at least 2 modes");
        if (spec.nnz > detail::saturating_product(spec.dims))
          sr.error(sr.at("nnz"), "exceeds the product of dims");
        sr.reject_unknown();
        cfg.synthetic = std::move(spec);
      }
    }
    if (cfg.tensor_path && cfg.synthetic)
      r.error("workload", "give either tensor or synthetic, not both");
    r.reject_unknown();
  }
  top.reject_unknown();

  if (!std::isfinite(a.dram.bandwidth_bytes_per_s))
    errs.push_back("dram.bandwidth_bytes_per_s: must be finite in a config file");
  auto inv = validation_errors(a);
  errs.insert(errs.end(), inv.begin(), inv.end());
  auto base = tech_validation_errors(cfg.baseline, "memory_tech.baseline");
  errs.insert(errs.end(), base.begin(), base.end());
  return out;
}

// Fully populated document; validate_config(config_to_json(c)).config == c.
inline Json config_to_json(const ExperimentConfig& cfg) {
  const AcceleratorConfig& a = cfg.accelerator;
  Json workload{{"rank", a.rank}, {"seed", cfg.seed}};
  if (cfg.tensor_path) workload["tensor"] = *cfg.tensor_path;
  if (cfg.synthetic) workload["synthetic"] = detail::synthetic_to_json(*cfg.synthetic);
  return Json{
      {"accelerator",
       {{"num_pes", a.pe.num_pes},
        {"pipelines_per_pe", a.pe.pipelines_per_pe},
        {"partial_buffer_elements", a.pe.partial_buffer_elements},
        {"f_electrical_hz", a.pe.f_electrical},
        {"num_caches", a.cache.num_caches},
        {"associativity", a.cache.associativity},
        {"cache_lines", a.cache.num_lines},
        {"line_bytes", a.cache.line_bytes},
        {"pe_pipeline_stages", a.cache.pe_pipeline_stages},
        {"cache_service_blocks", a.cache.service_blocks},
        {"ideal_cache", a.cache.ideal},
        {"dma_buffers", a.dma.buffer_count},
        {"dma_buffer_bytes", a.dma.buffer_bytes},
        {"element_bytes", a.element_bytes},
        {"index_bytes", a.index_bytes},
        {"compute_energy_pj_per_op", a.compute_energy_pj_per_op},
        {"onchip_budget_bytes", a.onchip_budget_bits / 8},
        {"pe_area_mm2", a.pe_area_mm2}}},
      {"memory_tech",
       {{"primary", detail::tech_to_json(a.tech)}, {"baseline", detail::tech_to_json(cfg.baseline)}}},
      {"dram",
       {{"channels", a.dram.channels},
        {"bandwidth_bytes_per_s", a.dram.bandwidth_bytes_per_s},
        {"random_access_latency_cycles", a.dram.random_access_latency},
        {"burst_bytes", a.dram.burst_bytes},
        {"energy_pj_per_bit", a.dram.energy_pj_per_bit},
        {"max_outstanding", a.dram.max_outstanding}}},
      {"workload", workload}};
}

}  // namespace osram
