#pragma once

// Trace-driven performance and energy model of the spMTTKRP accelerator.
//
// Per output mode the nonzeros are split across PEs by contiguous output
// rows. Each PE streams its tensor slice and output rows through DMA,
// looks every input factor row up in its caches (misses go to DRAM one line
// at a time) and multiplies on its parallel pipelines. Compute, DRAM and
// cache service overlap perfectly, so a PE takes as long as its slowest
// resource, plus a fixed pipeline fill.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "osram/error.hpp"
#include "osram/hypergraph.hpp"
#include "osram/memtech.hpp"
#include "osram/tensor_io.hpp"
#include "osram/uarch.hpp"

namespace osram {

struct AcceleratorConfig {
  PeConfig pe;
  CacheConfig cache;
  DmaConfig dma;
  SramTechSpec tech = osram_paper();
  DramSpec dram;
  std::uint64_t rank = 16;
  std::uint64_t element_bytes = 4;
  std::uint64_t index_bytes = 4;
  double compute_energy_pj_per_op = 0.5;
  std::uint64_t onchip_budget_bits = kOnchipBudgetBits;
  double pe_area_mm2 = kDefaultPeAreaMm2;

  std::uint64_t cache_bits_per_pe() const noexcept {
    return cache.num_caches * cache.data_bits();
  }
  std::uint64_t dma_bits_per_pe() const noexcept { return dma.buffer_count * dma.buffer_bytes * 8; }
  std::uint64_t partial_bits_per_pe() const noexcept {
    return pe.partial_buffer_elements * element_bytes * 8;
  }
  // On-chip bits the design occupies (caches, DMA buffers, partial sums).
  std::uint64_t allocated_bits() const noexcept {
    return pe.num_pes * (cache_bits_per_pe() + dma_bits_per_pe() + partial_bits_per_pe());
  }
  std::uint64_t allocated_blocks() const noexcept {
    const std::uint64_t cap = tech.block_capacity_bits;
    return cap == 0 ? 0 : (allocated_bits() + cap - 1) / cap;
  }
  Cycles fill_latency() const noexcept { return cache.pe_pipeline_stages + 2; }

  friend bool operator==(const AcceleratorConfig&, const AcceleratorConfig&) = default;
};

inline std::vector<std::string> tech_validation_errors(const SramTechSpec& t,
                                                       const std::string& path) {
  std::vector<std::string> errs;
  auto need = [&](bool ok, const char* field, const char* msg) {
    if (!ok) errs.push_back(path + "." + field + ": " + msg);
  };
  need(!t.name.empty(), "name", "must not be empty");
  need(t.f_mem >= 1, "f_mem_hz", "must be positive");
  need(t.wavelengths >= 1, "wavelengths", "must be at least 1");
  need(t.port_width_bits >= 1, "port_width_bits", "must be positive");
  need(t.port_count >= 1, "port_count", "must be positive");
  need(t.block_capacity_bits >= 1, "block_capacity_bits", "must be positive");
  need(t.static_pj_per_bit >= 0.0, "static_pj_per_bit", "must be >= 0");
  need(t.switching_pj_per_bit >= 0.0, "switching_pj_per_bit", "must be >= 0");
  need(t.area_mm2_per_bit >= 0.0, "area_mm2_per_bit", "must be >= 0");
  return errs;
}

// Every violated invariant, each prefixed with its config field path.
inline std::vector<std::string> validation_errors(const AcceleratorConfig& c) {
  std::vector<std::string> errs;
  auto need = [&](bool ok, std::string msg) {
    if (!ok) errs.push_back(std::move(msg));
  };
  need(c.pe.num_pes >= 1, "accelerator.num_pes: must be at least 1");
  need(c.pe.pipelines_per_pe >= 1, "accelerator.pipelines_per_pe: must be at least 1");
  need(c.pe.partial_buffer_elements >= 1, "accelerator.partial_buffer_elements: must be at least 1");
  need(c.pe.f_electrical >= 1, "accelerator.f_electrical_hz: must be positive");
  need(c.rank >= 1, "workload.rank: must be at least 1");
  need(c.rank <= c.pe.partial_buffer_elements,
       "workload.rank: rank " + std::to_string(c.rank) + " exceeds the " +
           std::to_string(c.pe.partial_buffer_elements) +
           "-element partial-sum buffer (accelerator.partial_buffer_elements)");
  if (c.cache.enabled()) {
    need(c.cache.associativity >= 1, "accelerator.associativity: must be at least 1");
    need(c.cache.num_lines >= 1, "accelerator.cache_lines: must be at least 1");
    need(c.cache.associativity == 0 || c.cache.num_lines % c.cache.associativity == 0,
         "accelerator.cache_lines: " + std::to_string(c.cache.num_lines) +
             " lines not divisible by associativity " + std::to_string(c.cache.associativity));
    need(is_power_of_two(c.cache.line_bytes), "accelerator.line_bytes: must be a power of two");
  }
  need(c.dma.buffer_count >= 1, "accelerator.dma_buffers: must be at least 1");
  need(c.dma.buffer_bytes >= 1, "accelerator.dma_buffer_bytes: must be at least 1");
  need(c.element_bytes >= 1, "accelerator.element_bytes: must be at least 1");
  need(c.index_bytes >= 1, "accelerator.index_bytes: must be at least 1");
  need(c.compute_energy_pj_per_op >= 0.0, "accelerator.compute_energy_pj_per_op: must be >= 0");
  need(c.pe_area_mm2 >= 0.0, "accelerator.pe_area_mm2: must be >= 0");

  auto tech = tech_validation_errors(c.tech, "memory_tech.primary");
  errs.insert(errs.end(), tech.begin(), tech.end());

  need(c.dram.channels >= c.pe.num_pes,
       "dram.channels: " + std::to_string(c.dram.channels) + " channels for " +
           std::to_string(c.pe.num_pes) + " PEs; each PE owns one channel");
  need(c.dram.bandwidth_bytes_per_s > 0.0, "dram.bandwidth_bytes_per_s: must be positive");
  need(c.dram.burst_bytes >= 1, "dram.burst_bytes: must be positive");
  need(c.dram.energy_pj_per_bit >= 0.0, "dram.energy_pj_per_bit: must be >= 0");
  need(c.dram.max_outstanding >= 1, "dram.max_outstanding: must be at least 1");

  need(c.allocated_bits() <= c.onchip_budget_bits,
       "accelerator: on-chip allocation of " + detail::format_double(
           static_cast<double>(c.allocated_bits()) / (8.0 * kMiB)) +
           " MB exceeds the " +
           detail::format_double(static_cast<double>(c.onchip_budget_bits) / (8.0 * kMiB)) +
           " MB on-chip memory budget");
  return errs;
}

inline void require_valid(const AcceleratorConfig& c) {
  auto errs = validation_errors(c);
  if (errs.empty()) return;
  std::string msg = "invalid accelerator config:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw ConfigError(msg);
}

// 64-bit FNV-1a of every config field, as 16 hex digits.
inline std::string config_digest(const AcceleratorConfig& c) {
  std::ostringstream s;
  auto f = [&](double v) { s << detail::format_double(v) << ';'; };
  s << c.pe.num_pes << ';' << c.pe.pipelines_per_pe << ';' << c.pe.partial_buffer_elements << ';'
    << c.pe.f_electrical << ';' << c.cache.num_caches << ';' << c.cache.associativity << ';'
    << c.cache.num_lines << ';' << c.cache.line_bytes << ';' << c.cache.pe_pipeline_stages << ';'
    << c.cache.service_blocks << ';' << c.cache.ideal << ';' << c.dma.buffer_count << ';'
    << c.dma.buffer_bytes << ';' << c.tech.name << ';' << to_string(c.tech.kind) << ';'
    << c.tech.f_mem << ';' << c.tech.wavelengths << ';' << c.tech.port_width_bits << ';'
    << c.tech.port_count << ';' << c.tech.block_capacity_bits << ';';
  f(c.tech.static_pj_per_bit);
  f(c.tech.switching_pj_per_bit);
  f(c.tech.area_mm2_per_bit);
  s << c.dram.channels << ';';
  f(c.dram.bandwidth_bytes_per_s);
  s << c.dram.random_access_latency << ';' << c.dram.burst_bytes << ';'
    << c.dram.max_outstanding << ';';
  f(c.dram.energy_pj_per_bit);
  s << c.rank << ';' << c.element_bytes << ';' << c.index_bytes << ';';
  f(c.compute_energy_pj_per_op);
  s << c.onchip_budget_bits << ';';
  f(c.pe_area_mm2);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

// ---------------------------------------------------------------------------
// Partitioning

struct RowRange {
  Index begin = 0;  // first output row
  Index end = 0;    // one past the last
  std::uint64_t nnz = 0;
  friend bool operator==(const RowRange&, const RowRange&) = default;
};

// Contiguous split of output rows across PEs, balanced by nonzero count.
// Each PE in turn takes the row prefix (at least one row) whose nonzero
// count is closest to ceil(remaining / remaining PEs); ties go to the
// shorter prefix. The last PE takes the rest.
inline std::vector<RowRange> partition_rows(std::span<const std::uint64_t> row_nnz,
                                            std::uint64_t num_pes) {
  if (num_pes == 0) throw ConfigError("need at least one PE");
  const Index rows = row_nnz.size();
  std::uint64_t remaining = std::accumulate(row_nnz.begin(), row_nnz.end(), std::uint64_t{0});
  std::vector<RowRange> out;
  out.reserve(num_pes);
  Index cursor = 0;
  for (std::uint64_t p = 0; p < num_pes; ++p) {
    RowRange r{cursor, cursor, 0};
    if (p + 1 == num_pes) {
      r.end = rows;
      r.nnz = remaining;
    } else if (cursor < rows) {
      const std::uint64_t left = num_pes - p;
      const std::uint64_t target = (remaining + left - 1) / left;
      auto dist = [&](std::uint64_t v) { return v > target ? v - target : target - v; };
      std::uint64_t acc = row_nnz[cursor];
      Index best_end = cursor + 1;
      std::uint64_t best_acc = acc;
      for (Index e = cursor + 1; e < rows && acc <= target; ++e) {
        acc += row_nnz[e];
        if (dist(acc) < dist(best_acc)) {
          best_acc = acc;
          best_end = e + 1;
        }
      }
      r.end = best_end;
      r.nnz = best_acc;
    }
    remaining -= r.nnz;
    cursor = r.end;
    out.push_back(r);
  }
  return out;
}

inline std::vector<std::uint64_t> row_nnz_counts(const SparseTensorCOO& tensor, std::size_t mode) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(tensor.dim(mode)), 0);
  for (std::size_t e = 0; e < tensor.nnz(); ++e) ++counts[tensor.coord(e, mode)];
  return counts;
}

inline std::vector<RowRange> partition(const SparseTensorCOO& tensor, std::size_t mode,
                                       std::uint64_t num_pes) {
  if (mode >= tensor.num_modes()) throw InputError("mode out of range");
  auto counts = row_nnz_counts(tensor, mode);
  return partition_rows(counts, num_pes);
}

// ---------------------------------------------------------------------------
// Results

enum class Bottleneck { compute, dram, cache };

inline std::string_view to_string(Bottleneck b) {
  switch (b) {
    case Bottleneck::compute: return "compute";
    case Bottleneck::dram: return "dram";
    case Bottleneck::cache: return "cache";
  }
  return "?";
}

struct PeResult {
  RowRange rows;
  Cycles compute = 0;
  Cycles dram_stream = 0;
  Cycles dram_random = 0;
  Cycles cache_service = 0;
  Bottleneck bottleneck = Bottleneck::compute;
  CacheCounters cache;

  Cycles busy() const noexcept { return std::max({compute, dram_stream + dram_random, cache_service}); }
  friend bool operator==(const PeResult&, const PeResult&) = default;
};

struct EnergyBreakdown {
  double compute_pj = 0.0;
  double dram_pj = 0.0;
  double sram_static_pj = 0.0;
  double sram_switching_pj = 0.0;

  double sum() const noexcept { return compute_pj + dram_pj + sram_static_pj + sram_switching_pj; }
  friend bool operator==(const EnergyBreakdown&, const EnergyBreakdown&) = default;
};

struct ModeResult {
  std::size_t mode = 0;
  std::vector<PeResult> pes;
  Bottleneck bottleneck = Bottleneck::compute;
  std::size_t critical_pe = 0;
  Cycles fill_latency = 0;
  Cycles mode_cycles = 0;
  double seconds = 0.0;  // mode_cycles at the fabric clock
  CacheCounters cache;

  std::uint64_t dram_bytes = 0;     // everything crossing the DRAM interface
  std::uint64_t dram_elements = 0;  // the same traffic counted in elements
  std::uint64_t dma_bytes = 0;      // through DMA buffers
  std::uint64_t op_count = 0;

  EnergyBreakdown energy;
  // Inputs of the total-energy formula, derived from the components above.
  std::uint64_t sram_blocks = 0;
  double p_compute_pj_per_cycle = 0.0;
  double p_sram_block_pj_per_cycle = 0.0;
  double total_energy_pj = 0.0;

  friend bool operator==(const ModeResult&, const ModeResult&) = default;
};

struct RunTotals {
  Cycles cycles = 0;
  double seconds = 0.0;
  double energy_pj = 0.0;
  AreaModel area;
};

struct RunReport {
  std::string tensor;
  std::string tech;
  std::string config_digest;
  std::vector<Index> dims;
  std::uint64_t nnz = 0;
  std::uint64_t rank = 0;
  Hertz f_electrical = kDefaultFabricHz;
  std::vector<ModeResult> modes;
  RunTotals totals;
};

// E = P_compute * t + E_dram + (P_sram_block * n_blocks) * t, everything in
// pJ and fabric cycles.
inline double energy_total(double p_compute_pj_per_cycle, double t_cycles, double e_dram_pj,
                           double p_sram_block_pj_per_cycle, double n_blocks) {
  return p_compute_pj_per_cycle * t_cycles + e_dram_pj +
         (p_sram_block_pj_per_cycle * n_blocks) * t_cycles;
}

// One cache lookup, for optional trace dumps.
struct TraceRecord {
  std::size_t pe = 0;
  std::size_t cache = 0;
  std::size_t factor_mode = 0;
  std::uint64_t address = 0;
  bool hit = false;
};
using TraceSink = std::function<void(const TraceRecord&)>;

inline std::string format_trace(const TraceRecord& r) {
  std::ostringstream s;
  s << r.pe << ' ' << r.cache << ' ' << r.factor_mode << " 0x" << std::hex << r.address
    << std::dec << ' ' << (r.hit ? "hit" : "miss");
  return s.str();
}

// Lower bound on any technology's mode cycles: the slowest PE's compute or
// DRAM time (neither depends on the SRAM), plus the pipeline fill.
inline Cycles technology_floor(const ModeResult& r) {
  Cycles floor = 0;
  for (const auto& pe : r.pes) floor = std::max({floor, pe.compute, pe.dram_stream + pe.dram_random});
  return floor + r.fill_latency;
}

// ---------------------------------------------------------------------------
// Simulation

// Simulates one output mode. `ordering` must be a valid output-major
// ordering of `tensor` for that mode.
inline ModeResult simulate_mode(const SparseTensorCOO& tensor, const ModeOrdering& ordering,
                                const AcceleratorConfig& cfg, const TraceSink& trace = {}) {
  require_valid(cfg);
  if (!is_valid_ordering(tensor, ordering))
    throw InputError("entries are not sorted for output mode " + std::to_string(ordering.mode));
  const std::size_t mode = ordering.mode;
  const std::size_t n = tensor.num_modes();
  const std::uint64_t rank = cfg.rank;
  const Hertz f = cfg.pe.f_electrical;
  const bool cached = cfg.cache.enabled();

  const std::uint64_t row_bytes = rank * cfg.element_bytes;
  const std::uint64_t line_bytes = cached ? cfg.cache.line_bytes : row_bytes;
  const std::uint64_t row_lines = (row_bytes + line_bytes - 1) / line_bytes;
  const std::uint64_t row_stride = row_lines * line_bytes;
  const std::uint64_t access_bits = std::min(row_bytes, line_bytes) * 8;
  const std::uint64_t entry_bytes = n * cfg.index_bytes + cfg.element_bytes;

  // Disjoint, line-aligned region per factor matrix.
  std::vector<std::uint64_t> base(n, 0);
  for (std::size_t k = 1; k < n; ++k) base[k] = base[k - 1] + tensor.dim(k - 1) * row_stride;

  const ServiceRate rate =
      cached ? cache_service_rate(cfg.cache, cfg.tech, f, access_bits) : ServiceRate{};
  // Element-wise DMA moves exactly one row per request.
  DramSpec elementwise = cfg.dram;
  elementwise.burst_bytes = row_bytes;

  const auto counts = row_nnz_counts(tensor, mode);
  const auto ranges = partition_rows(counts, cfg.pe.num_pes);

  ModeResult res;
  res.mode = mode;
  res.fill_latency = cfg.fill_latency();
  res.pes.reserve(ranges.size());

  std::uint64_t switched_bits = 0;
  std::size_t cursor = 0;  // position in ordering.permutation
  for (std::size_t p = 0; p < ranges.size(); ++p) {
    PeResult pe;
    pe.rows = ranges[p];
    const std::uint64_t nnz = pe.rows.nnz;
    const std::uint64_t rows = pe.rows.end - pe.rows.begin;
    // An empty tensor launches no kernel, so no output rows are stored.
    const std::uint64_t stored_rows = tensor.nnz() == 0 ? 0 : rows;

    std::vector<LruCache> caches;
    std::vector<std::uint64_t> cache_hits(cached ? cfg.cache.num_caches : 0, 0);
    if (cached && !cfg.cache.ideal)
      for (std::uint64_t c = 0; c < cfg.cache.num_caches; ++c) caches.emplace_back(cfg.cache);

    std::uint64_t lines_fetched = 0;
    std::uint64_t elementwise_rows = 0;
    for (std::uint64_t j = 0; j < nnz; ++j) {
      const std::size_t e = ordering.permutation[cursor + j];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == mode) continue;
        const std::uint64_t row_addr = base[k] + tensor.coord(e, k) * row_stride;
        if (!cached) {
          ++elementwise_rows;
          continue;
        }
        const std::size_t c = k % cfg.cache.num_caches;
        for (std::uint64_t l = 0; l < row_lines; ++l) {
          const std::uint64_t addr = row_addr + l * line_bytes;
          bool hit = true;
          if (cfg.cache.ideal) {
            ++pe.cache.accesses;
            ++pe.cache.hits;
          } else {
            hit = caches[c].access(addr).hit;
          }
          if (hit) {
            ++cache_hits[c];
          } else {
            ++lines_fetched;
          }
          if (trace) trace({p, c, k, addr, hit});
        }
      }
    }
    cursor += nnz;
    for (const auto& cache : caches) pe.cache += cache.counters();

    const std::uint64_t stream_bytes = nnz * entry_bytes + stored_rows * row_bytes;
    const std::uint64_t miss_bytes = lines_fetched * line_bytes;
    const std::uint64_t elementwise_bytes = elementwise_rows * row_bytes;

    pe.compute = pe_compute_cycles(nnz, rank, cfg.pe.pipelines_per_pe);
    pe.dram_stream = dram_stream_cycles(stream_bytes, cfg.dram, f);
    pe.dram_random = dram_line_fetch_cycles(lines_fetched, cfg.dram, f) +
                     dram_line_fetch_cycles(elementwise_rows, elementwise, f);
    for (std::uint64_t h : cache_hits) pe.cache_service = std::max(pe.cache_service, rate.cycles_for(h));
    const Cycles busy = pe.busy();
    if (pe.compute == busy) {
      pe.bottleneck = Bottleneck::compute;
    } else if (pe.dram_stream + pe.dram_random == busy) {
      pe.bottleneck = Bottleneck::dram;
    } else {
      pe.bottleneck = Bottleneck::cache;
    }

    res.cache += pe.cache;
    res.dram_bytes += stream_bytes + miss_bytes + elementwise_bytes;
    res.dram_elements += nnz + stored_rows * rank + elementwise_rows * rank +
                         miss_bytes / cfg.element_bytes;
    res.dma_bytes += stream_bytes + elementwise_bytes;
    res.op_count += compute_count(n, nnz, rank);
    switched_bits += pe.cache.hits * access_bits + lines_fetched * line_bytes * 8 +
                     (stream_bytes + elementwise_bytes) * 8 + nnz * rank * cfg.element_bytes * 8;
    res.pes.push_back(pe);
  }

  Cycles slowest = 0;
  for (std::size_t p = 0; p < res.pes.size(); ++p) {
    if (p == 0 || res.pes[p].busy() > slowest) {
      slowest = res.pes[p].busy();
      res.critical_pe = p;
    }
  }
  res.bottleneck = res.pes[res.critical_pe].bottleneck;
  res.mode_cycles = slowest + res.fill_latency;
  res.seconds = static_cast<double>(res.mode_cycles) / static_cast<double>(f);

  const auto t = static_cast<double>(res.mode_cycles);
  res.sram_blocks = cfg.allocated_blocks();
  res.energy.compute_pj = static_cast<double>(res.op_count) * cfg.compute_energy_pj_per_op;
  res.energy.dram_pj = static_cast<double>(res.dram_bytes) * 8.0 * cfg.dram.energy_pj_per_bit;
  res.energy.sram_static_pj = static_cast<double>(res.sram_blocks) *
                              static_cast<double>(cfg.tech.block_capacity_bits) *
                              cfg.tech.static_pj_per_bit * t;
  res.energy.sram_switching_pj = static_cast<double>(switched_bits) * cfg.tech.switching_pj_per_bit;

  res.p_compute_pj_per_cycle = res.energy.compute_pj / t;
  res.p_sram_block_pj_per_cycle =
      res.sram_blocks == 0
          ? 0.0
          : (res.energy.sram_static_pj + res.energy.sram_switching_pj) /
                (static_cast<double>(res.sram_blocks) * t);
  res.total_energy_pj = energy_total(res.p_compute_pj_per_cycle, t, res.energy.dram_pj,
                                     res.p_sram_block_pj_per_cycle,
                                     static_cast<double>(res.sram_blocks));
  return res;
}

inline RunReport simulate_all_modes(const SparseTensorCOO& tensor, const AcceleratorConfig& cfg,
                                    const TraceSink& trace = {}) {
  require_valid(cfg);
  RunReport rep;
  rep.tensor = tensor.name();
  rep.tech = cfg.tech.name;
  rep.config_digest = config_digest(cfg);
  rep.dims = tensor.dims();
  rep.nnz = tensor.nnz();
  rep.rank = cfg.rank;
  rep.f_electrical = cfg.pe.f_electrical;
  for (std::size_t m = 0; m < tensor.num_modes(); ++m) {
    rep.modes.push_back(simulate_mode(tensor, sort_for_mode(tensor, m), cfg, trace));
    rep.totals.cycles += rep.modes.back().mode_cycles;
    rep.totals.energy_pj += rep.modes.back().total_energy_pj;
  }
  rep.totals.seconds = static_cast<double>(rep.totals.cycles) / static_cast<double>(rep.f_electrical);
  rep.totals.area = area_report(cfg.onchip_budget_bits, cfg.tech, cfg.pe_area_mm2);
  return rep;
}

// ---------------------------------------------------------------------------
// Technology comparison

struct ModeComparison {
  std::size_t mode = 0;
  double speedup = 1.0;         // cycles of b / cycles of a
  double energy_savings = 1.0;  // energy of b / energy of a
};

struct Comparison {
  std::string tensor;
  std::string tech_a;
  std::string tech_b;
  std::vector<ModeComparison> modes;
  double speedup = 1.0;
  double energy_savings = 1.0;
};

// How much faster and more frugal `a` is than the baseline `b`.
inline Comparison compare(const RunReport& a, const RunReport& b) {
  if (a.tensor != b.tensor || a.modes.size() != b.modes.size() || a.nnz != b.nnz)
    throw InputError("cannot compare reports of different tensors ('" + a.tensor + "' vs '" +
                     b.tensor + "')");
  Comparison c{a.tensor, a.tech, b.tech, {}, 1.0, 1.0};
  for (std::size_t m = 0; m < a.modes.size(); ++m) {
    c.modes.push_back({m,
                       static_cast<double>(b.modes[m].mode_cycles) /
                           static_cast<double>(a.modes[m].mode_cycles),
                       b.modes[m].total_energy_pj / a.modes[m].total_energy_pj});
  }
  c.speedup = static_cast<double>(b.totals.cycles) / static_cast<double>(a.totals.cycles);
  c.energy_savings = b.totals.energy_pj / a.totals.energy_pj;
  return c;
}

}  // namespace osram
