#pragma once

// Sparse tensor and factor-matrix types, FROSTT (.tns) text I/O and the
// deterministic synthetic workload generator.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "osram/error.hpp"
#include "osram/rng.hpp"

namespace osram {

using Index = std::uint64_t;

namespace detail {

// FNV-1a over a coordinate tuple.
inline std::size_t hash_coords(std::span<const Index> c) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Index v : c) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

// Hash set of entry ids keyed by the coordinate tuple they point at inside a
// flat coordinate buffer. Lets us detect duplicates without copying tuples.
class CoordSet {
 public:
  CoordSet(const std::vector<Index>& coords, std::size_t modes)
      : set_(16, Hash{&coords, modes}, Eq{&coords, modes}) {}

  // Returns the id already holding the same tuple, or inserts `id`.
  std::optional<std::size_t> insert(std::size_t id) {
    auto [it, inserted] = set_.insert(id);
    if (inserted) return std::nullopt;
    return *it;
  }
  void erase(std::size_t id) { set_.erase(id); }
  void reserve(std::size_t n) { set_.reserve(n); }

 private:
  struct Hash {
    const std::vector<Index>* coords;
    std::size_t modes;
    std::size_t operator()(std::size_t id) const noexcept {
      return hash_coords({coords->data() + id * modes, modes});
    }
  };
  struct Eq {
    const std::vector<Index>* coords;
    std::size_t modes;
    bool operator()(std::size_t a, std::size_t b) const noexcept {
      const Index* pa = coords->data() + a * modes;
      const Index* pb = coords->data() + b * modes;
      return std::equal(pa, pa + modes, pb);
    }
  };
  std::unordered_set<std::size_t, Hash, Eq> set_;
};

// Product of dims, saturating at UINT64_MAX.
inline std::uint64_t saturating_product(std::span<const Index> dims) noexcept {
  unsigned __int128 p = 1;
  for (Index d : dims) {
    p *= d;
    if (p > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(p);
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// N-mode coordinate-list tensor. Entries are stored flat: entry e owns
// coords[e*N .. e*N+N). Immutable after construction.
class SparseTensorCOO {
 public:
  SparseTensorCOO() = default;

  // Validates every invariant: N >= 2, positive dims, in-range coordinates
  // and unique tuples. Use from_entries() to merge duplicates instead.
  SparseTensorCOO(std::string name, std::vector<Index> dims,
                  std::vector<Index> coords, std::vector<double> values)
      : name_(std::move(name)),
        dims_(std::move(dims)),
        coords_(std::move(coords)),
        values_(std::move(values)) {
    validate();
  }

  // Builds a tensor from possibly-duplicated entries; duplicates are summed
  // into the first occurrence, which keeps its position.
  static SparseTensorCOO from_entries(std::string name, std::vector<Index> dims,
                                      const std::vector<Index>& coords,
                                      const std::vector<double>& values) {
    const std::size_t n = dims.size();
    if (n < 2) throw InputError("tensor needs at least 2 modes");
    if (coords.size() != values.size() * n)
      throw InputError("coordinate buffer does not match entry count");
    std::vector<Index> out_coords;
    std::vector<double> out_values;
    out_coords.reserve(coords.size());
    out_values.reserve(values.size());
    detail::CoordSet seen(out_coords, n);
    seen.reserve(values.size());
    for (std::size_t e = 0; e < values.size(); ++e) {
      out_coords.insert(out_coords.end(), coords.begin() + e * n,
                        coords.begin() + (e + 1) * n);
      const std::size_t id = out_values.size();
      if (auto prev = seen.insert(id)) {
        out_values[*prev] += values[e];
        out_coords.resize(out_coords.size() - n);
      } else {
        out_values.push_back(values[e]);
      }
    }
    return SparseTensorCOO(std::move(name), std::move(dims),
                           std::move(out_coords), std::move(out_values));
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t num_modes() const noexcept { return dims_.size(); }
  std::size_t nnz() const noexcept { return values_.size(); }
  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index dim(std::size_t mode) const { return dims_.at(mode); }

  std::span<const Index> coords(std::size_t entry) const noexcept {
    return {coords_.data() + entry * dims_.size(), dims_.size()};
  }
  Index coord(std::size_t entry, std::size_t mode) const noexcept {
    return coords_[entry * dims_.size() + mode];
  }
  double value(std::size_t entry) const noexcept { return values_[entry]; }

  const std::vector<Index>& flat_coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return values_; }

  // Same tensor with every value multiplied by `alpha`.
  SparseTensorCOO scaled(double alpha) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= alpha;
    return SparseTensorCOO(name_, dims_, coords_, std::move(v));
  }

  // Same tensor with entries reordered by `perm` (perm[k] = old entry id).
  SparseTensorCOO permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != nnz()) throw InputError("permutation size mismatch");
    std::vector<Index> c;
    std::vector<double> v;
    c.reserve(coords_.size());
    v.reserve(values_.size());
    for (std::size_t old : perm) {
      auto src = coords(old);
      c.insert(c.end(), src.begin(), src.end());
      v.push_back(values_[old]);
    }
    return SparseTensorCOO(name_, dims_, std::move(c), std::move(v));
  }

  friend bool operator==(const SparseTensorCOO&, const SparseTensorCOO&) = default;

 private:
  void validate() const {
    const std::size_t n = dims_.size();
    if (n < 2) throw InputError("tensor needs at least 2 modes");
    for (std::size_t k = 0; k < n; ++k)
      if (dims_[k] == 0)
        throw InputError("dimension of mode " + std::to_string(k) + " is zero");
    if (coords_.size() != values_.size() * n)
      throw InputError("coordinate buffer does not match entry count");
    for (std::size_t e = 0; e < values_.size(); ++e)
      for (std::size_t k = 0; k < n; ++k)
        if (coords_[e * n + k] >= dims_[k])
          throw InputError("entry " + std::to_string(e) + " mode " +
                           std::to_string(k) + " index out of range");
    detail::CoordSet seen(coords_, n);
    seen.reserve(values_.size());
    for (std::size_t e = 0; e < values_.size(); ++e)
      if (seen.insert(e))
        throw InputError("duplicate coordinates at entry " + std::to_string(e));
  }

  std::string name_;
  std::vector<Index> dims_;
  std::vector<Index> coords_;
  std::vector<double> values_;
};

// Dense rows x rank matrix, row-major.
class FactorMatrix {
 public:
  FactorMatrix() = default;
  FactorMatrix(std::size_t mode, std::size_t rows, std::size_t rank)
      : mode_(mode), rows_(rows), rank_(rank), values_(rows * rank, 0.0) {
    if (rank == 0) throw InputError("factor rank must be at least 1");
  }
  FactorMatrix(std::size_t mode, std::size_t rows, std::size_t rank,
               std::vector<double> values)
      : mode_(mode), rows_(rows), rank_(rank), values_(std::move(values)) {
    if (rank == 0) throw InputError("factor rank must be at least 1");
    if (values_.size() != rows * rank)
      throw InputError("factor values length must equal rows * rank");
    for (double v : values_)
      if (!std::isfinite(v)) throw InputError("factor values must be finite");
  }

  std::size_t mode() const noexcept { return mode_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t rank() const noexcept { return rank_; }

  std::span<double> row(std::size_t i) noexcept {
    return {values_.data() + i * rank_, rank_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * rank_, rank_};
  }
  double operator()(std::size_t i, std::size_t r) const noexcept {
    return values_[i * rank_ + r];
  }
  double& operator()(std::size_t i, std::size_t r) noexcept {
    return values_[i * rank_ + r];
  }
  const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const FactorMatrix&, const FactorMatrix&) = default;

 private:
  std::size_t mode_ = 0;
  std::size_t rows_ = 0;
  std::size_t rank_ = 0;
  std::vector<double> values_;
};

struct SyntheticSpec {
  std::string name = "synthetic";
  std::vector<Index> dims;
  std::uint64_t nnz = 0;
  // Zipf-like exponent per mode; 0 is uniform. A single value applies to
  // every mode.
  std::vector<double> skew;
  std::uint64_t seed = 0;

  double skew_of(std::size_t mode) const {
    if (skew.empty()) return 0.0;
    return skew.size() == 1 ? skew[0] : skew.at(mode);
  }
};

// ---------------------------------------------------------------------------
// FROSTT text format

struct ParseOptions {
  std::string name = "tensor";
  // Explicit dims; must cover every coordinate. Without it dims are the
  // per-mode maxima, or the "# dims:" line written by write_frostt.
  std::optional<std::vector<Index>> dims;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (first != last && *first == '+') ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

// Reads one entry per line: N 1-based indices then a real value. Lines
// starting with '#' are comments. Duplicate coordinates are summed.
inline SparseTensorCOO parse_frostt(std::istream& in, const ParseOptions& opts = {}) {
  std::vector<Index> coords;
  std::vector<double> values;
  std::vector<std::size_t> line_of;  // source line per raw entry
  std::optional<std::vector<Index>> header_dims;
  std::size_t modes = 0;
  std::size_t lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      constexpr std::string_view tag = "dims:";
      std::string_view body = detail::trim(s.substr(1));
      if (body.substr(0, tag.size()) == tag && !header_dims) {
        std::vector<Index> d;
        for (auto tok : detail::split_ws(body.substr(tag.size()))) {
          Index v = 0;
          if (!detail::parse_number(tok, v) || v == 0)
            throw ParseError(lineno, "bad dims header token '" + std::string(tok) + "'");
          d.push_back(v);
        }
        header_dims = std::move(d);
      }
      continue;
    }
    auto toks = detail::split_ws(s);
    if (toks.size() < 3)
      throw ParseError(lineno, "expected at least 2 indices and a value, got " +
                                   std::to_string(toks.size()) + " tokens");
    const std::size_t n = toks.size() - 1;
    if (modes == 0) {
      modes = n;
    } else if (n != modes) {
      throw ParseError(lineno, "expected " + std::to_string(modes) + " indices, got " +
                                   std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      Index idx = 0;
      if (!detail::parse_number(toks[k], idx))
        throw ParseError(lineno, "index '" + std::string(toks[k]) + "' is not a positive integer");
      if (idx < 1) throw ParseError(lineno, "indices are 1-based; got 0");
      coords.push_back(idx - 1);
    }
    double v = 0;
    if (!detail::parse_number(toks[n], v))
      throw ParseError(lineno, "value '" + std::string(toks[n]) + "' is not a number");
    if (!std::isfinite(v)) throw ParseError(lineno, "value is not finite");
    values.push_back(v);
    line_of.push_back(lineno);
  }

  std::vector<Index> dims;
  const std::optional<std::vector<Index>>& fixed = opts.dims ? opts.dims : header_dims;
  if (fixed) {
    dims = *fixed;
    if (modes != 0 && dims.size() != modes)
      throw ParseError(line_of.front(), "dims specify " + std::to_string(dims.size()) +
                                            " modes but entries have " + std::to_string(modes));
    for (std::size_t e = 0; e < values.size(); ++e)
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (coords[e * dims.size() + k] >= dims[k])
          throw ParseError(line_of[e], "index exceeds dimension of mode " + std::to_string(k));
  } else {
    if (modes == 0) throw ParseError(lineno, "no tensor entries and no dims given");
    dims.assign(modes, 0);
    for (std::size_t e = 0; e < values.size(); ++e)
      for (std::size_t k = 0; k < modes; ++k)
        dims[k] = std::max(dims[k], coords[e * modes + k] + 1);
  }
  return SparseTensorCOO::from_entries(opts.name, std::move(dims), coords, values);
}

// Writes the tensor in the format parse_frostt reads, preceded by a
// "# dims:" comment so round trips keep trailing empty slices.
inline void write_frostt(std::ostream& out, const SparseTensorCOO& t) {
  out << "# dims:";
  for (Index d : t.dims()) out << ' ' << d;
  out << '\n';
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    for (Index c : t.coords(e)) out << (c + 1) << ' ';
    out << detail::format_double(t.value(e)) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Synthetic workloads

namespace detail {

// Bounded continuous power law on [1, dim+1), floored to a 0-based index.
// Exponent 0 is uniform. Constant memory, so multi-million-row modes work.
class ZipfLikeSampler {
 public:
  ZipfLikeSampler(Index dim, double skew) : dim_(dim), skew_(skew) {
    const double top = static_cast<double>(dim) + 1.0;
    if (skew_ == 0.0) {
      // plain uniform
    } else if (skew_ == 1.0) {
      log_top_ = std::log(top);
    } else {
      one_minus_ = 1.0 - skew_;
      span_ = std::pow(top, one_minus_) - 1.0;
    }
  }

  Index operator()(double u) const {
    double x;
    if (skew_ == 0.0) {
      x = 1.0 + u * static_cast<double>(dim_);
    } else if (skew_ == 1.0) {
      x = std::exp(u * log_top_);
    } else {
      x = std::pow(1.0 + u * span_, 1.0 / one_minus_);
    }
    auto idx = static_cast<Index>(std::floor(x)) - 1;
    return std::min(idx, dim_ - 1);
  }

  // Probability mass of index i (integral of the density over [i+1, i+2)).
  double mass(Index i) const {
    const double a = static_cast<double>(i) + 1.0;
    const double b = a + 1.0;
    if (skew_ == 0.0) return 1.0 / static_cast<double>(dim_);
    if (skew_ == 1.0) return (std::log(b) - std::log(a)) / log_top_;
    return (std::pow(b, one_minus_) - std::pow(a, one_minus_)) / span_;
  }

 private:
  Index dim_;
  double skew_;
  double log_top_ = 0.0;
  double one_minus_ = 0.0;
  double span_ = 0.0;
};

}  // namespace detail

// Deterministic tensor with exactly spec.nnz unique coordinates. Per-mode
// indices follow the configured Zipf-like skew; values are uniform in [0,1).
inline SparseTensorCOO generate_synthetic(const SyntheticSpec& spec) {
  const std::size_t n = spec.dims.size();
  if (n < 2) throw InputError("synthetic tensor needs at least 2 modes");
  for (Index d : spec.dims)
    if (d == 0) throw InputError("synthetic dims must be positive");
  if (!spec.skew.empty() && spec.skew.size() != 1 && spec.skew.size() != n)
    throw InputError("skew must have one value or one per mode");
  for (double s : spec.skew)
    if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("skew must be finite and >= 0");
  const std::uint64_t capacity = detail::saturating_product(spec.dims);
  if (spec.nnz > capacity)
    throw CapacityError("nnz " + std::to_string(spec.nnz) + " exceeds the " +
                        std::to_string(capacity) + " cells of the index grid");

  std::vector<detail::ZipfLikeSampler> samplers;
  for (std::size_t k = 0; k < n; ++k) samplers.emplace_back(spec.dims[k], spec.skew_of(k));

  std::mt19937_64 gen(splitmix64(spec.seed));
  std::vector<Index> coords;
  std::vector<double> values;
  coords.reserve(spec.nnz * n);
  values.reserve(spec.nnz);

  constexpr std::uint64_t kGridLimit = 1ULL << 22;
  if (spec.nnz > 0 && capacity <= kGridLimit && spec.nnz * 2 > capacity) {
    // Dense regime: weighted sampling without replacement over the whole
    // grid (Efraimidis-Spirakis keys), weight = product of per-mode masses.
    std::vector<std::pair<double, std::uint64_t>> keyed(capacity);
    std::vector<Index> idx(n);
    for (std::uint64_t cell = 0; cell < capacity; ++cell) {
      std::uint64_t rest = cell;
      double w = 1.0;
      for (std::size_t k = n; k-- > 0;) {
        idx[k] = rest % spec.dims[k];
        rest /= spec.dims[k];
        w *= samplers[k].mass(idx[k]);
      }
      const double u = uniform01(gen);
      // log(u)/w: larger is better; u == 0 maps to -inf.
      const double key = (u > 0.0 && w > 0.0) ? std::log(u) / w
                                              : -std::numeric_limits<double>::infinity();
      keyed[cell] = {key, cell};
    }
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(spec.nnz),
                      keyed.end(), [](const auto& a, const auto& b) {
                        return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    for (std::uint64_t j = 0; j < spec.nnz; ++j) {
      std::uint64_t rest = keyed[j].second;
      for (std::size_t k = n; k-- > 0;) {
        idx[k] = rest % spec.dims[k];
        rest /= spec.dims[k];
      }
      coords.insert(coords.end(), idx.begin(), idx.end());
      values.push_back(uniform01(gen));
    }
  } else {
    detail::CoordSet seen(coords, n);
    seen.reserve(spec.nnz);
    const std::uint64_t max_draws = 1000 * spec.nnz + 1000000;
    std::uint64_t draws = 0;
    while (values.size() < spec.nnz) {
      if (++draws > max_draws)
        throw CapacityError("could not draw " + std::to_string(spec.nnz) +
                            " unique coordinates; skew concentrates too much mass");
      for (std::size_t k = 0; k < n; ++k) coords.push_back(samplers[k](uniform01(gen)));
      const std::size_t id = values.size();
      if (seen.insert(id)) {
        coords.resize(coords.size() - n);
        continue;
      }
      values.push_back(uniform01(gen));
    }
  }
  return SparseTensorCOO(spec.name, spec.dims, std::move(coords), std::move(values));
}

// One rows x rank matrix per mode, values uniform in [0,1).
inline std::vector<FactorMatrix> init_factors(const SparseTensorCOO& tensor, std::size_t rank,
                                              std::uint64_t seed) {
  if (rank == 0) throw InputError("rank must be at least 1");
  std::vector<FactorMatrix> out;
  out.reserve(tensor.num_modes());
  for (std::size_t m = 0; m < tensor.num_modes(); ++m) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(m + 1)));
    std::vector<double> v(static_cast<std::size_t>(tensor.dim(m)) * rank);
    for (double& x : v) x = uniform01(gen);
    out.emplace_back(m, static_cast<std::size_t>(tensor.dim(m)), rank, std::move(v));
  }
  return out;
}

}  // namespace osram
