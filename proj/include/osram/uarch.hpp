#pragma once

// Microarchitectural blocks of the accelerator: the set-associative LRU
// factor cache, DMA buffers, PE pipelines and the partial-sum buffer.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "osram/error.hpp"
#include "osram/memtech.hpp"

namespace osram {

struct CacheConfig {
  std::uint64_t num_caches = 3;  // per PE; 0 disables caching
  std::uint64_t associativity = 4;
  std::uint64_t num_lines = 4096;  // per cache
  std::uint64_t line_bytes = 64;
  std::uint64_t pe_pipeline_stages = 4;
  // Blocks of the data array one cache's in-order request stream can use
  // per cycle. 0 means every block of the data array.
  std::uint64_t service_blocks = 1;
  // Every access hits. Only for bounds and tests.
  bool ideal = false;

  std::uint64_t num_sets() const noexcept { return num_lines / associativity; }
  std::uint64_t data_bits() const noexcept { return num_lines * line_bytes * 8; }
  bool enabled() const noexcept { return num_caches > 0; }

  friend bool operator==(const CacheConfig&, const CacheConfig&) = default;
};

struct DmaConfig {
  std::uint64_t buffer_count = 6;  // per PE
  std::uint64_t buffer_bytes = 64 * 1024;

  friend bool operator==(const DmaConfig&, const DmaConfig&) = default;
};

struct PeConfig {
  std::uint64_t num_pes = 4;
  std::uint64_t pipelines_per_pe = 80;
  std::uint64_t partial_buffer_elements = 1024;  // per PE
  Hertz f_electrical = kDefaultFabricHz;

  friend bool operator==(const PeConfig&, const PeConfig&) = default;
};

inline bool is_power_of_two(std::uint64_t v) noexcept { return v != 0 && (v & (v - 1)) == 0; }

// Requests served per `cycles` fabric cycles.
struct ServiceRate {
  std::uint64_t requests = 1;
  std::uint64_t cycles = 1;

  Cycles cycles_for(std::uint64_t n) const noexcept {
    const unsigned __int128 num = static_cast<unsigned __int128>(n) * cycles;
    return static_cast<Cycles>((num + requests - 1) / requests);
  }
  friend bool operator==(const ServiceRate&, const ServiceRate&) = default;
};

struct CacheAccess {
  bool hit = false;
  std::optional<std::uint64_t> evicted_line;  // line number of the victim
};

struct CacheCounters {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;

  CacheCounters& operator+=(const CacheCounters& o) noexcept {
    accesses += o.accesses;
    hits += o.hits;
    misses += o.misses;
    evictions += o.evictions;
    return *this;
  }
  friend bool operator==(const CacheCounters&, const CacheCounters&) = default;
};

// Tag RAM plus LRU state of one cache. Each set keeps its resident line
// numbers ordered most- to least-recently used.
class LruCache {
 public:
  explicit LruCache(const CacheConfig& cfg)
      : line_bytes_(cfg.line_bytes), ways_(cfg.associativity), sets_(cfg.num_sets()) {
    if (ways_ == 0 || cfg.num_lines == 0 || cfg.num_lines % ways_ != 0)
      throw ConfigError("cache lines must be a positive multiple of the associativity");
    if (!is_power_of_two(line_bytes_)) throw ConfigError("cache line size must be a power of two");
    lines_.assign(sets_ * ways_, 0);
    fill_.assign(sets_, 0);
  }

  CacheAccess access(std::uint64_t address, bool is_write = false) {
    (void)is_write;  // read-only factor caches: writes cost the same lookup
    const std::uint64_t line = address / line_bytes_;
    const std::uint64_t set = line % sets_;
    std::uint64_t* mru = lines_.data() + set * ways_;
    std::uint64_t& used = fill_[set];
    ++counters_.accesses;

    auto* pos = std::find(mru, mru + used, line);
    if (pos != mru + used) {
      std::rotate(mru, pos, pos + 1);
      ++counters_.hits;
      return {true, std::nullopt};
    }
    ++counters_.misses;
    CacheAccess res;
    if (used == ways_) {
      res.evicted_line = mru[ways_ - 1];
      ++counters_.evictions;
    } else {
      ++used;
    }
    std::copy_backward(mru, mru + used - 1, mru + used);
    mru[0] = line;
    return res;
  }

  const CacheCounters& counters() const noexcept { return counters_; }
  std::uint64_t num_sets() const noexcept { return sets_; }

  // Resident lines of one set, most recent first.
  std::vector<std::uint64_t> set_contents(std::uint64_t set) const {
    const std::uint64_t* mru = lines_.data() + set * ways_;
    return {mru, mru + fill_[set]};
  }

 private:
  std::uint64_t line_bytes_;
  std::uint64_t ways_;
  std::uint64_t sets_;
  std::vector<std::uint64_t> lines_;
  std::vector<std::uint64_t> fill_;
  CacheCounters counters_;
};

// Hits one cache can serve per fabric cycle when each moves `row_bits`.
// Throughput of the backing blocks follows from their per-cycle bit rate;
// rates below one request per cycle stay exact as a (1, k)-style fraction.
inline ServiceRate cache_service_rate(const CacheConfig& cfg, const SramTechSpec& tech,
                                      Hertz f_electrical, std::uint64_t row_bits) {
  if (row_bits == 0) throw ModelError("row_bits must be positive");
  if (tech.block_capacity_bits == 0) throw ModelError("backing block capacity must be positive");
  const std::uint64_t data_blocks =
      (cfg.data_bits() + tech.block_capacity_bits - 1) / tech.block_capacity_bits;
  const std::uint64_t blocks =
      cfg.service_blocks == 0 ? data_blocks : std::min(cfg.service_blocks, data_blocks);
  const std::uint64_t total = bits_per_electrical_cycle(tech, f_electrical) * std::max<std::uint64_t>(blocks, 1);
  if (total == 0) throw ModelError("backing SRAM delivers no bits per cycle");
  if (total >= row_bits) return {total / row_bits, 1};
  const std::uint64_t g = std::gcd(total, row_bits);
  return {total / g, row_bits / g};
}

// Each pipeline retires one (nonzero, rank column) product chain per cycle.
inline Cycles pe_compute_cycles(std::uint64_t nnz, std::uint64_t rank, std::uint64_t pipelines) {
  if (pipelines == 0) throw ConfigError("a PE needs at least one pipeline");
  const unsigned __int128 work = static_cast<unsigned __int128>(nnz) * rank;
  return static_cast<Cycles>((work + pipelines - 1) / pipelines);
}

// Output rows the partial-sum buffer holds at rank R.
inline std::uint64_t partial_buffer_check(const PeConfig& pe, std::uint64_t rank) {
  if (rank == 0) throw ConfigError("rank must be at least 1");
  if (rank > pe.partial_buffer_elements)
    throw ConfigError("rank " + std::to_string(rank) + " exceeds the " +
                      std::to_string(pe.partial_buffer_elements) +
                      "-element partial-sum buffer; one output row must fit");
  return pe.partial_buffer_elements / rank;
}

}  // namespace osram
