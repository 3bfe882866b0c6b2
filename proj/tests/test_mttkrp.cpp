#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "osram/mttkrp.hpp"

using namespace osram;

namespace {

void expect_close(const FactorMatrix& a, const FactorMatrix& b, double rel = 1e-9) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.rank(), b.rank());
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    const double x = a.values()[i], y = b.values()[i];
    ASSERT_LE(std::abs(x - y), rel * std::max({1.0, std::abs(x), std::abs(y)})) << "at " << i;
  }
}

std::vector<FactorMatrix> two_nonzero_factors() {
  return {FactorMatrix(0, 1, 2, {0, 0}), FactorMatrix(1, 2, 2, {1, 2, 3, 4}),
          FactorMatrix(2, 2, 2, {5, 6, 7, 8})};
}

}  // namespace

TEST(Mttkrp, SingleNonzero) {
  SparseTensorCOO t("t", {1, 1, 1}, {0, 0, 0}, {2.0});
  std::vector<FactorMatrix> f{FactorMatrix(0, 1, 2, {9, 9}), FactorMatrix(1, 1, 2, {1, 1}),
                              FactorMatrix(2, 1, 2, {3, 4})};
  auto a = mttkrp_mode(t, f, 0);
  EXPECT_EQ(a(0, 0), 6.0);
  EXPECT_EQ(a(0, 1), 8.0);
}

TEST(Mttkrp, TwoNonzerosAccumulate) {
  SparseTensorCOO t("t", {1, 2, 2}, {0, 0, 0, 0, 1, 1}, {1.0, 1.0});
  auto f = two_nonzero_factors();
  auto a = mttkrp_mode(t, f, 0);
  EXPECT_EQ(a(0, 0), 26.0);
  EXPECT_EQ(a(0, 1), 44.0);
  auto d = mttkrp_dense_oracle(t, f, 0);
  EXPECT_EQ(d(0, 0), 26.0);
  EXPECT_EQ(d(0, 1), 44.0);
}

TEST(Mttkrp, EmptyTensorGivesZeros) {
  SparseTensorCOO t("t", {3, 2, 2}, {}, {});
  auto f = init_factors(t, 4, 1);
  Count ops = 0;
  auto a = mttkrp_mode(t, f, 0, &ops);
  EXPECT_EQ(ops, 0u);
  for (double v : a.values()) EXPECT_EQ(v, 0.0);
}

TEST(Mttkrp, FourModeAgainstOracle) {
  auto t = generate_synthetic({"s", {3, 3, 3, 3}, 30, {0.0}, 1});
  auto f = init_factors(t, 2, 1);
  for (std::size_t m = 0; m < 4; ++m) expect_close(mttkrp_mode(t, f, m), mttkrp_dense_oracle(t, f, m));
}

TEST(Mttkrp, RandomTensorsAgainstOracle) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + gen() % 2;
    std::vector<Index> dims(n);
    for (auto& d : dims) d = 1 + gen() % 8;
    Index cap = 1;
    for (auto d : dims) cap *= d;
    auto t = generate_synthetic({"s", dims, 1 + gen() % cap, {0.3}, gen()});
    auto f = init_factors(t, 1 + gen() % 8, gen());
    for (std::size_t m = 0; m < n; ++m) expect_close(mttkrp_mode(t, f, m), mttkrp_dense_oracle(t, f, m));
  }
}

TEST(Mttkrp, OpCountIsNTimesNnzTimesRank) {
  auto t = generate_synthetic({"s", {10, 11, 12, 13}, 321, {0.0}, 5});
  auto f = init_factors(t, 7, 2);
  for (std::size_t m = 0; m < 4; ++m) {
    Count ops = 0;
    mttkrp_mode(t, f, m, &ops);
    EXPECT_EQ(ops, compute_count(4, 321, 7));
  }
}

TEST(Mttkrp, LinearInValues) {
  auto t = generate_synthetic({"s", {6, 7, 8}, 100, {0.0}, 3});
  auto f = init_factors(t, 5, 4);
  auto base = mttkrp_mode(t, f, 1);
  auto scaled = mttkrp_mode(t.scaled(-2.5), f, 1);
  for (std::size_t i = 0; i < base.values().size(); ++i)
    ASSERT_NEAR(scaled.values()[i], -2.5 * base.values()[i], 1e-12 * (1 + std::abs(base.values()[i])));
}

TEST(Mttkrp, EntryOrderDoesNotMatter) {
  auto t = generate_synthetic({"s", {6, 7, 8}, 150, {0.8}, 8});
  auto f = init_factors(t, 3, 4);
  std::vector<std::size_t> perm(t.nnz());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  auto p = t.permuted(perm);
  for (std::size_t m = 0; m < 3; ++m) expect_close(mttkrp_mode(t, f, m), mttkrp_mode(p, f, m), 1e-12);
}

TEST(Mttkrp, FactorChecks) {
  SparseTensorCOO t("t", {2, 2, 2}, {0, 0, 0}, {1.0});
  auto f = init_factors(t, 2, 0);
  EXPECT_THROW(mttkrp_mode(t, f, 3), InputError);
  auto short_f = f;
  short_f.pop_back();
  EXPECT_THROW(mttkrp_mode(t, short_f, 0), InputError);
  auto bad_rank = f;
  bad_rank[1] = FactorMatrix(1, 2, 3);
  EXPECT_THROW(mttkrp_mode(t, bad_rank, 0), InputError);
  auto bad_rows = f;
  bad_rows[2] = FactorMatrix(2, 5, 2);
  EXPECT_THROW(mttkrp_mode(t, bad_rows, 0), InputError);
}

TEST(Mttkrp, DenseOracleGuard) {
  SparseTensorCOO big("t", {1000, 1000, 2}, {0, 0, 0}, {1.0});
  std::vector<FactorMatrix> f{FactorMatrix(0, 1000, 1), FactorMatrix(1, 1000, 1), FactorMatrix(2, 2, 1)};
  EXPECT_THROW(mttkrp_dense_oracle(big, f, 0), Error);
}
