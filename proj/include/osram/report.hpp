#pragma once

// Report serialization: canonical JSON per run, a flat CSV for plotting and
// a short human-readable summary.

#include <algorithm>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "osram/simulator.hpp"

namespace osram {

inline nlohmann::json counters_to_json(const CacheCounters& c) {
  return {{"accesses", c.accesses}, {"hits", c.hits}, {"misses", c.misses}, {"evictions", c.evictions}};
}

inline nlohmann::json mode_to_json(const ModeResult& m) {
  nlohmann::json pes = nlohmann::json::array();
  for (const auto& pe : m.pes) {
    pes.push_back({{"first_row", pe.rows.begin},
                   {"end_row", pe.rows.end},
                   {"nnz", pe.rows.nnz},
                   {"compute_cycles", pe.compute},
                   {"dram_stream_cycles", pe.dram_stream},
                   {"dram_random_cycles", pe.dram_random},
                   {"cache_service_cycles", pe.cache_service},
                   {"bottleneck", std::string(to_string(pe.bottleneck))},
                   {"cache", counters_to_json(pe.cache)}});
  }
  return {{"mode", m.mode},
          {"mode_cycles", m.mode_cycles},
          {"seconds", m.seconds},
          {"fill_latency", m.fill_latency},
          {"bottleneck", std::string(to_string(m.bottleneck))},
          {"critical_pe", m.critical_pe},
          {"cache", counters_to_json(m.cache)},
          {"dram_bytes", m.dram_bytes},
          {"dram_elements", m.dram_elements},
          {"dma_bytes", m.dma_bytes},
          {"op_count", m.op_count},
          {"energy",
           {{"compute_pj", m.energy.compute_pj},
            {"dram_pj", m.energy.dram_pj},
            {"sram_static_pj", m.energy.sram_static_pj},
            {"sram_switching_pj", m.energy.sram_switching_pj}}},
          {"energy_model",
           {{"p_compute_pj_per_cycle", m.p_compute_pj_per_cycle},
            {"p_sram_block_pj_per_cycle", m.p_sram_block_pj_per_cycle},
            {"sram_blocks", m.sram_blocks},
            {"t_cycles", m.mode_cycles}}},
          {"total_energy_pj", m.total_energy_pj},
          {"pes", pes}};
}

// Keys come out sorted, so equal reports serialize to identical bytes.
inline nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : r.modes) modes.push_back(mode_to_json(m));
  return {{"tensor", r.tensor},
          {"tech", r.tech},
          {"config_digest", r.config_digest},
          {"dims", r.dims},
          {"nnz", r.nnz},
          {"rank", r.rank},
          {"f_electrical_hz", r.f_electrical},
          {"modes", modes},
          {"totals",
           {{"cycles", r.totals.cycles},
            {"seconds", r.totals.seconds},
            {"energy_pj", r.totals.energy_pj},
            {"area",
             {{"onchip_memory_mm2", r.totals.area.onchip_memory_mm2},
              {"pe_mm2", r.totals.area.pe_mm2},
              {"total_mm2", r.totals.area.total_mm2()}}}}}};
}

inline nlohmann::json comparison_to_json(const Comparison& c) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : c.modes)
    modes.push_back({{"mode", m.mode}, {"speedup", m.speedup}, {"energy_savings", m.energy_savings}});
  return {{"tensor", c.tensor},
          {"tech", c.tech_a},
          {"baseline", c.tech_b},
          {"modes", modes},
          {"speedup", c.speedup},
          {"energy_savings", c.energy_savings}};
}

inline constexpr const char* kCsvHeader =
    "tensor,mode,tech,cycles,seconds,energy_pj,speedup,energy_savings,hits,misses,bytes_dram";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// One row per (tensor, mode, tech), then one ratio row per comparison and
// mode. Tensors appear in first-seen order, modes ascending, reports in
// input order.
inline std::string emit_csv(std::span<const RunReport> reports,
                            std::span<const Comparison> comparisons = {}) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  std::vector<std::string> tensors;
  auto note = [&](const std::string& t) {
    if (std::find(tensors.begin(), tensors.end(), t) == tensors.end()) tensors.push_back(t);
  };
  for (const auto& r : reports) note(r.tensor);
  for (const auto& c : comparisons) note(c.tensor);
  for (const auto& t : tensors) {
    std::size_t modes = 0;
    for (const auto& r : reports)
      if (r.tensor == t) modes = std::max(modes, r.modes.size());
    for (const auto& c : comparisons)
      if (c.tensor == t) modes = std::max(modes, c.modes.size());
    const std::string tf = detail::csv_field(t);
    for (std::size_t m = 0; m < modes; ++m) {
      for (const auto& r : reports) {
        if (r.tensor != t || m >= r.modes.size()) continue;
        const ModeResult& mr = r.modes[m];
        out << tf << ',' << m << ',' << detail::csv_field(r.tech) << ',' << mr.mode_cycles << ','
            << detail::format_double(mr.seconds) << ',' << detail::format_double(mr.total_energy_pj)
            << ",,," << mr.cache.hits << ',' << mr.cache.misses << ',' << mr.dram_bytes << '\n';
      }
      for (const auto& c : comparisons) {
        if (c.tensor != t || m >= c.modes.size()) continue;
        out << tf << ',' << m << ',' << detail::csv_field(c.tech_a + "/" + c.tech_b) << ",,,,"
            << detail::format_double(c.modes[m].speedup) << ','
            << detail::format_double(c.modes[m].energy_savings) << ",,,\n";
      }
    }
  }
  return out.str();
}

inline std::string summary_text(std::span<const RunReport> reports,
                                std::span<const Comparison> comparisons = {}) {
  std::ostringstream out;
  char buf[256];
  for (const auto& r : reports) {
    out << "tensor " << r.tensor << " (" << r.nnz << " nonzeros, " << r.modes.size()
        << " modes, rank " << r.rank << ") on " << r.tech << " [config " << r.config_digest << "]\n";
    out << "  mode       cycles  bottleneck   hit rate      energy (pJ)\n";
    for (const auto& m : r.modes) {
      const double hr = m.cache.accesses == 0
                            ? 0.0
                            : static_cast<double>(m.cache.hits) / static_cast<double>(m.cache.accesses);
      std::snprintf(buf, sizeof(buf), "  %4zu %12llu  %-10s  %8.4f  %15.6e\n", m.mode,
                    static_cast<unsigned long long>(m.mode_cycles),
                    std::string(to_string(m.bottleneck)).c_str(), hr, m.total_energy_pj);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "  total %llu cycles = %.6e s, %.6e pJ, area %.6g mm2 (memory %.6g + PEs %.6g)\n",
                  static_cast<unsigned long long>(r.totals.cycles), r.totals.seconds,
                  r.totals.energy_pj, r.totals.area.total_mm2(), r.totals.area.onchip_memory_mm2,
                  r.totals.area.pe_mm2);
    out << buf;
  }
  for (const auto& c : comparisons) {
    out << "comparison " << c.tech_a << " vs " << c.tech_b << " on " << c.tensor << "\n";
    for (const auto& m : c.modes) {
      std::snprintf(buf, sizeof(buf), "  mode %zu: speedup %.4fx, energy savings %.4fx\n", m.mode,
                    m.speedup, m.energy_savings);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), "  overall: speedup %.4fx, energy savings %.4fx\n", c.speedup,
                  c.energy_savings);
    out << buf;
  }
  return out.str();
}

}  // namespace osram
