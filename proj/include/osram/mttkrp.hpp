#pragma once

// Functional sparse MTTKRP for any mode of an N-mode tensor, plus a dense
// brute-force oracle used to check it.

#include <cstdint>
#include <vector>

#include "osram/error.hpp"
#include "osram/hypergraph.hpp"
#include "osram/tensor_io.hpp"

namespace osram {

namespace detail {

inline std::size_t check_factors(const SparseTensorCOO& tensor,
                                 const std::vector<FactorMatrix>& factors, std::size_t mode) {
  if (mode >= tensor.num_modes())
    throw InputError("mode " + std::to_string(mode) + " out of range");
  if (factors.size() != tensor.num_modes())
    throw InputError("expected one factor matrix per mode");
  const std::size_t rank = factors.front().rank();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].rank() != rank) throw InputError("factor matrices disagree on rank");
    if (factors[k].rows() != tensor.dim(k))
      throw InputError("factor " + std::to_string(k) + " rows do not match the tensor dim");
  }
  return rank;
}

}  // namespace detail

// out(i_mode, r) = sum over nonzeros x at i with i[mode] = i_mode of
//                  x * prod_{k != mode} factors[k](i[k], r).
// If `op_count` is given it is incremented by N per (nonzero, rank column).
inline FactorMatrix mttkrp_mode(const SparseTensorCOO& tensor,
                                const std::vector<FactorMatrix>& factors, std::size_t mode,
                                Count* op_count = nullptr) {
  const std::size_t rank = detail::check_factors(tensor, factors, mode);
  const std::size_t n = tensor.num_modes();
  FactorMatrix out(mode, static_cast<std::size_t>(tensor.dim(mode)), rank);
  std::vector<double> prod(rank);
  Count ops = 0;
  for (std::size_t e = 0; e < tensor.nnz(); ++e) {
    auto c = tensor.coords(e);
    std::fill(prod.begin(), prod.end(), tensor.value(e));
    for (std::size_t k = 0; k < n; ++k) {
      if (k == mode) continue;
      auto row = factors[k].row(static_cast<std::size_t>(c[k]));
      for (std::size_t r = 0; r < rank; ++r) prod[r] *= row[r];
      ops += rank;
    }
    auto dst = out.row(static_cast<std::size_t>(c[mode]));
    for (std::size_t r = 0; r < rank; ++r) dst[r] += prod[r];
    ops += rank;
  }
  if (op_count) *op_count += ops;
  return out;
}

inline constexpr std::uint64_t kDenseOracleLimit = 1'000'000;

// Densifies the tensor and evaluates the product over every grid cell.
// Independent of mttkrp_mode: no entry list traversal, no ordering.
inline FactorMatrix mttkrp_dense_oracle(const SparseTensorCOO& tensor,
                                        const std::vector<FactorMatrix>& factors,
                                        std::size_t mode) {
  const std::size_t rank = detail::check_factors(tensor, factors, mode);
  const std::size_t n = tensor.num_modes();
  const std::uint64_t cells = detail::saturating_product(tensor.dims());
  if (cells > kDenseOracleLimit)
    throw CapacityError("dense oracle limited to " + std::to_string(kDenseOracleLimit) +
                        " cells, tensor has " + std::to_string(cells));

  // Row-major strides, last mode fastest.
  std::vector<std::uint64_t> stride(n, 1);
  for (std::size_t k = n - 1; k-- > 0;) stride[k] = stride[k + 1] * tensor.dim(k + 1);
  std::vector<double> dense(cells, 0.0);
  for (std::size_t e = 0; e < tensor.nnz(); ++e) {
    std::uint64_t off = 0;
    for (std::size_t k = 0; k < n; ++k) off += tensor.coord(e, k) * stride[k];
    dense[off] += tensor.value(e);
  }

  FactorMatrix out(mode, static_cast<std::size_t>(tensor.dim(mode)), rank);
  std::vector<Index> idx(n, 0);
  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    std::uint64_t rest = cell;
    for (std::size_t k = 0; k < n; ++k) {
      idx[k] = rest / stride[k];
      rest %= stride[k];
    }
    const double x = dense[cell];
    for (std::size_t r = 0; r < rank; ++r) {
      double term = x;
      for (std::size_t k = 0; k < n; ++k)
        if (k != mode) term *= factors[k](static_cast<std::size_t>(idx[k]), r);
      out(static_cast<std::size_t>(idx[mode]), r) += term;
    }
  }
  return out;
}

}  // namespace osram
