#pragma once

// Hypergraph view of a sparse tensor: one vertex per index of every mode,
// one hyperedge per nonzero. Also the output-major entry orderings and the
// closed-form compute/traffic counts of the mode-wise MTTKRP.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <vector>

#include "osram/error.hpp"
#include "osram/tensor_io.hpp"

namespace osram {

using Count = std::uint64_t;

struct Hypergraph {
  std::vector<Index> vertex_counts;
  Count num_hyperedges = 0;
  const SparseTensorCOO* tensor = nullptr;

  Count num_vertices() const noexcept {
    return std::accumulate(vertex_counts.begin(), vertex_counts.end(), Count{0});
  }
};

inline Hypergraph build_hypergraph(const SparseTensorCOO& tensor) {
  return Hypergraph{tensor.dims(), tensor.nnz(), &tensor};
}

// Entry visiting order for one output mode: hyperedges sharing an output
// vertex are consecutive.
struct ModeOrdering {
  std::size_t mode = 0;
  std::vector<std::size_t> permutation;
};

// Stable counting sort of entry ids by the output-mode coordinate.
inline ModeOrdering sort_for_mode(const SparseTensorCOO& tensor, std::size_t mode) {
  if (mode >= tensor.num_modes())
    throw InputError("mode " + std::to_string(mode) + " out of range");
  const auto rows = static_cast<std::size_t>(tensor.dim(mode));
  std::vector<std::size_t> start(rows + 1, 0);
  for (std::size_t e = 0; e < tensor.nnz(); ++e) ++start[tensor.coord(e, mode) + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  ModeOrdering out{mode, std::vector<std::size_t>(tensor.nnz())};
  for (std::size_t e = 0; e < tensor.nnz(); ++e)
    out.permutation[start[tensor.coord(e, mode)]++] = e;
  return out;
}

// True if `ordering` is a bijection on the entries and visits output
// coordinates in non-decreasing order.
inline bool is_valid_ordering(const SparseTensorCOO& tensor, const ModeOrdering& ordering) {
  if (ordering.mode >= tensor.num_modes() || ordering.permutation.size() != tensor.nnz())
    return false;
  std::vector<bool> seen(tensor.nnz(), false);
  Index prev = 0;
  for (std::size_t e : ordering.permutation) {
    if (e >= tensor.nnz() || seen[e]) return false;
    seen[e] = true;
    const Index c = tensor.coord(e, ordering.mode);
    if (c < prev) return false;
    prev = c;
  }
  return true;
}

// Newline-separated entry ids, for debugging.
inline void write_ordering(std::ostream& out, const ModeOrdering& ordering) {
  for (std::size_t e : ordering.permutation) out << e << '\n';
}

// Element-wise operations for one mode: N-1 multiplies and one add per
// (nonzero, rank column).
inline Count compute_count(Count modes, Count nnz, Count rank) {
  return modes * nnz * rank;
}

// External-memory elements for one mode with no on-chip reuse: the tensor
// stream, one input factor row per non-output mode per nonzero, and the
// output matrix.
inline Count traffic_count(Count modes, Count nnz, Count rank, Count out_rows) {
  if (modes < 2) throw InputError("traffic_count needs at least 2 modes");
  return nnz + (modes - 1) * nnz * rank + out_rows * rank;
}

}  // namespace osram
