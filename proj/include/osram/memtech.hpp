#pragma once

// Memory technology models: per-block SRAM throughput and power, a
// bandwidth/latency DRAM channel, and on-chip area.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "osram/error.hpp"

namespace osram {

using Cycles = std::uint64_t;
using Hertz = std::uint64_t;

inline constexpr Hertz kDefaultFabricHz = 500'000'000;
inline constexpr std::uint64_t kMiB = 1ULL << 20;
// 54 MB of on-chip memory, in bits.
inline constexpr std::uint64_t kOnchipBudgetBits = 54 * kMiB * 8;

enum class SramKind { optical, electrical };

inline std::string_view to_string(SramKind k) {
  return k == SramKind::optical ? "optical" : "electrical";
}

struct SramTechSpec {
  std::string name;  // short label used in reports and file names
  SramKind kind = SramKind::electrical;
  Hertz f_mem = kDefaultFabricHz;
  std::uint64_t wavelengths = 1;
  std::uint64_t port_width_bits = 32;
  std::uint64_t port_count = 1;
  std::uint64_t block_capacity_bits = 32 * 1024;
  // pJ per stored bit per fabric cycle (optical + electrical leakage).
  double static_pj_per_bit = 0.0;
  // pJ per bit read or written.
  double switching_pj_per_bit = 0.0;
  double area_mm2_per_bit = 0.0;

  friend bool operator==(const SramTechSpec&, const SramTechSpec&) = default;
};

struct DramSpec {
  std::uint64_t channels = 4;
  double bandwidth_bytes_per_s = 19.2e9;  // per channel; +inf is unlimited
  Cycles random_access_latency = 32;      // fabric cycles
  std::uint64_t burst_bytes = 64;
  double energy_pj_per_bit = 20.0;
  // Line fetches one channel keeps in flight; their latencies overlap.
  std::uint64_t max_outstanding = 8;

  friend bool operator==(const DramSpec&, const DramSpec&) = default;
};

struct AreaModel {
  double onchip_memory_mm2 = 0.0;
  double pe_mm2 = 0.0;
  double total_mm2() const noexcept { return onchip_memory_mm2 + pe_mm2; }
};

// Area per bit calibrated so 54 MB reproduces the published on-chip areas.
inline constexpr double kElectricalAreaMm2PerBit = 43.2 / static_cast<double>(kOnchipBudgetBits);
inline constexpr double kOpticalAreaMm2PerBit = 103.7e4 / static_cast<double>(kOnchipBudgetBits);
inline constexpr double kDefaultPeAreaMm2 = 202.2;

// 32 Kb block, 5 wavelengths at 20 GHz, 200 ports of 32 bits.
inline SramTechSpec osram_paper() {
  SramTechSpec s;
  s.name = "osram";
  s.kind = SramKind::optical;
  s.f_mem = 20'000'000'000ULL;
  s.wavelengths = 5;
  s.port_width_bits = 32;
  s.port_count = 200;
  s.block_capacity_bits = 32 * 1024;
  s.static_pj_per_bit = 4.17e-6;
  s.switching_pj_per_bit = 1.04;
  s.area_mm2_per_bit = kOpticalAreaMm2PerBit;
  return s;
}

// Dual-port 32 Kb block RAM at the fabric clock. The two ports are modeled as
// two concurrent channels so throughput equals port_count * port_width.
inline SramTechSpec esram_paper() {
  SramTechSpec s;
  s.name = "esram";
  s.kind = SramKind::electrical;
  s.f_mem = kDefaultFabricHz;
  s.wavelengths = 2;
  s.port_width_bits = 32;
  s.port_count = 2;
  s.block_capacity_bits = 32 * 1024;
  s.static_pj_per_bit = 1.175e-6;
  s.switching_pj_per_bit = 4.68;
  s.area_mm2_per_bit = kElectricalAreaMm2PerBit;
  return s;
}

inline std::optional<SramTechSpec> sram_preset(std::string_view name) {
  if (name == "osram-paper") return osram_paper();
  if (name == "esram-paper") return esram_paper();
  return std::nullopt;
}

inline DramSpec dram_default() { return DramSpec{}; }

// Bits one block hands to the fabric per fabric cycle:
// wavelengths * f_mem * port_width / f_electrical, floored.
inline std::uint64_t bits_per_electrical_cycle(const SramTechSpec& spec, Hertz f_electrical) {
  if (f_electrical == 0) throw ModelError("fabric frequency must be positive");
  const unsigned __int128 num = static_cast<unsigned __int128>(spec.wavelengths) * spec.f_mem *
                                spec.port_width_bits;
  return static_cast<std::uint64_t>(num / f_electrical);
}

// Power of one block in pJ per fabric cycle: the whole block leaks, only the
// bits touched this cycle switch.
inline double sram_block_power(const SramTechSpec& spec, std::uint64_t active_bits,
                               Hertz f_electrical = kDefaultFabricHz) {
  if (spec.block_capacity_bits == 0) {
    if (active_bits != 0) throw ModelError("zero-capacity block cannot serve bits");
    return 0.0;
  }
  const std::uint64_t servable = bits_per_electrical_cycle(spec, f_electrical);
  if (active_bits > servable)
    throw ModelError(std::to_string(active_bits) + " active bits exceed the " +
                     std::to_string(servable) + " bits a block serves per cycle");
  return static_cast<double>(spec.block_capacity_bits) * spec.static_pj_per_bit +
         static_cast<double>(active_bits) * spec.switching_pj_per_bit;
}

// Bandwidth-limited streaming on one channel: ceil(bytes * f / bandwidth).
inline Cycles dram_stream_cycles(std::uint64_t bytes, const DramSpec& spec,
                                 Hertz f_electrical) {
  if (bytes == 0) return 0;
  const double bw = spec.bandwidth_bytes_per_s;
  if (!(bw > 0.0)) throw ModelError("DRAM bandwidth must be positive");
  if (std::isinf(bw)) return 0;
  const unsigned __int128 num = static_cast<unsigned __int128>(bytes) * f_electrical;
  if (bw == std::floor(bw) && bw < 0x1.0p63) {
    const auto den = static_cast<unsigned __int128>(static_cast<std::uint64_t>(bw));
    return static_cast<Cycles>((num + den - 1) / den);
  }
  return static_cast<Cycles>(std::ceil(static_cast<long double>(num) / bw));
}

// One line fetch: fixed latency plus the burst transfer.
inline Cycles dram_random_access_cycles(const DramSpec& spec, Hertz f_electrical) {
  return spec.random_access_latency + dram_stream_cycles(spec.burst_bytes, spec, f_electrical);
}

// `lines` independent line fetches on one channel with up to max_outstanding
// in flight: latency-bound when few may overlap, bandwidth-bound otherwise.
// With max_outstanding = 1 every fetch pays the full random-access time.
inline Cycles dram_line_fetch_cycles(std::uint64_t lines, const DramSpec& spec,
                                     Hertz f_electrical) {
  if (lines == 0) return 0;
  if (spec.max_outstanding == 0) throw ModelError("max_outstanding must be at least 1");
  const Cycles burst = dram_stream_cycles(spec.burst_bytes, spec, f_electrical);
  const unsigned __int128 serial =
      static_cast<unsigned __int128>(lines) * dram_random_access_cycles(spec, f_electrical);
  const auto overlapped =
      static_cast<Cycles>((serial + spec.max_outstanding - 1) / spec.max_outstanding);
  return std::max<Cycles>(overlapped, lines * burst);
}

inline AreaModel area_report(std::uint64_t memory_bits, const SramTechSpec& tech,
                             double pe_area_mm2) {
  return AreaModel{static_cast<double>(memory_bits) * tech.area_mm2_per_bit, pe_area_mm2};
}

}  // namespace osram
