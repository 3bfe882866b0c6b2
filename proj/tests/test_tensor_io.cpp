#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "osram/tensor_io.hpp"

using namespace osram;

namespace {

SparseTensorCOO parse(const std::string& text, ParseOptions opts = {}) {
  std::istringstream in(text);
  return parse_frostt(in, opts);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(ParseFrostt, SingleLineIsZeroBased) {
  auto t = parse("1 2 1 3.0\n");
  EXPECT_EQ(t.dims(), (std::vector<Index>{1, 2, 1}));
  ASSERT_EQ(t.nnz(), 1u);
  EXPECT_EQ(t.coord(0, 0), 0u);
  EXPECT_EQ(t.coord(0, 1), 1u);
  EXPECT_EQ(t.coord(0, 2), 0u);
  EXPECT_EQ(t.value(0), 3.0);
}

TEST(ParseFrostt, DuplicatesAreSummed) {
  auto t = parse("1 1 1 2.0\n1 1 1 3.0\n");
  ASSERT_EQ(t.nnz(), 1u);
  EXPECT_EQ(t.coord(0, 0), 0u);
  EXPECT_EQ(t.value(0), 5.0);
}

TEST(ParseFrostt, MalformedValueReportsLine) {
  EXPECT_EQ(parse_error_line("1 2 x\n"), 1u);
  EXPECT_EQ(parse_error_line("# c\n1 1 1 1\n1 1 one 2\n"), 3u);
}

TEST(ParseFrostt, Rejections) {
  EXPECT_EQ(parse_error_line("0 1 1 1.0\n"), 1u);          // 1-based indices
  EXPECT_EQ(parse_error_line("1 1 1 1\n1 1 1\n"), 2u);     // mode count changes
  EXPECT_EQ(parse_error_line("1 1\n"), 1u);                // one mode
  EXPECT_EQ(parse_error_line("1 1 1 nan\n"), 1u);
  EXPECT_EQ(parse_error_line("1 -1 1 1.0\n"), 1u);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(ParseFrostt, CommentsBlankLinesAndExplicitDims) {
  auto t = parse("# hello\n\n  2 3 4 1.5e0  \r\n", ParseOptions{"x", std::vector<Index>{5, 5, 5}});
  EXPECT_EQ(t.name(), "x");
  EXPECT_EQ(t.dims(), (std::vector<Index>{5, 5, 5}));
  EXPECT_THROW(parse("6 1 1 1\n", ParseOptions{"x", std::vector<Index>{5, 5, 5}}), Error);
}

TEST(ParseFrostt, DimsHeaderKeepsTrailingEmptySlices) {
  auto t = parse("# dims: 9 8 7\n1 1 1 1\n");
  EXPECT_EQ(t.dims(), (std::vector<Index>{9, 8, 7}));
}

TEST(SparseTensor, ConstructorRejectsBadInput) {
  EXPECT_THROW(SparseTensorCOO("t", {3}, {0}, {1.0}), Error);
  EXPECT_THROW(SparseTensorCOO("t", {3, 0}, {}, {}), Error);
  EXPECT_THROW(SparseTensorCOO("t", {3, 3}, {0, 3}, {1.0}), Error);
  EXPECT_THROW(SparseTensorCOO("t", {3, 3}, {0, 1, 0, 1}, {1.0, 2.0}), Error);
  EXPECT_NO_THROW(SparseTensorCOO("t", {1, 1, 1}, {}, {}));
}

TEST(SparseTensor, PermutedAndScaled) {
  SparseTensorCOO t("t", {2, 2}, {0, 0, 1, 1}, {1.0, 2.0});
  std::vector<std::size_t> perm{1, 0};
  auto p = t.permuted(perm);
  EXPECT_EQ(p.coord(0, 0), 1u);
  EXPECT_EQ(p.value(0), 2.0);
  EXPECT_EQ(t.scaled(3.0).value(1), 6.0);
}

// Serialization round-trip over random tensors with awkward values.
TEST(ParseFrostt, RoundTripIsBitExact) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + gen() % 4;
    std::vector<Index> dims(n);
    for (auto& d : dims) d = 1 + gen() % 9;
    std::vector<Index> coords;
    std::vector<double> values;
    std::set<std::vector<Index>> used;
    const std::size_t want = gen() % 30;
    for (std::size_t i = 0; i < want; ++i) {
      std::vector<Index> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = gen() % dims[k];
      if (!used.insert(c).second) continue;
      coords.insert(coords.end(), c.begin(), c.end());
      double v;
      switch (gen() % 4) {
        case 0: v = uniform01(gen); break;
        case 1: v = -1e-300 * static_cast<double>(gen() % 1000 + 1); break;
        case 2: v = std::ldexp(static_cast<double>(gen() >> 11), 900); break;
        default: v = 1.0 / 3.0 * static_cast<double>(gen() % 7); break;
      }
      values.push_back(v);
    }
    SparseTensorCOO t("t", dims, coords, values);
    std::ostringstream out;
    write_frostt(out, t);
    auto back = parse(out.str(), ParseOptions{"t", std::nullopt});
    ASSERT_EQ(back.dims(), t.dims());
    ASSERT_EQ(back.flat_coords(), t.flat_coords());
    ASSERT_EQ(back.nnz(), t.nnz());
    for (std::size_t e = 0; e < t.nnz(); ++e) ASSERT_TRUE(bit_equal(back.value(e), t.value(e)));
  }
}

TEST(Synthetic, SaturatedGridHasEveryCell) {
  auto t = generate_synthetic({"s", {4, 4, 4}, 64, {0.0}, 7});
  ASSERT_EQ(t.nnz(), 64u);
  std::set<std::vector<Index>> cells;
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    auto c = t.coords(e);
    cells.emplace(c.begin(), c.end());
  }
  EXPECT_EQ(cells.size(), 64u);
}

TEST(Synthetic, SameSeedSameEntries) {
  SyntheticSpec s{"s", {4, 4, 4}, 64, {0.0}, 7};
  EXPECT_EQ(generate_synthetic(s), generate_synthetic(s));
  SyntheticSpec sparse{"s", {50, 60, 70}, 500, {0.9}, 3};
  EXPECT_EQ(generate_synthetic(sparse), generate_synthetic(sparse));
  auto other = sparse;
  other.seed = 4;
  EXPECT_NE(generate_synthetic(sparse).flat_coords(), generate_synthetic(other).flat_coords());
}

TEST(Synthetic, SkewConcentratesTheTopIndex) {
  auto top_share = [](const SparseTensorCOO& t) {
    std::map<Index, std::size_t> hist;
    for (std::size_t e = 0; e < t.nnz(); ++e) ++hist[t.coord(e, 0)];
    std::size_t best = 0;
    for (const auto& [k, v] : hist) best = std::max(best, v);
    return static_cast<double>(best) / static_cast<double>(t.nnz());
  };
  auto skewed = generate_synthetic({"s", {100, 100, 100}, 1000, {1.2}, 1});
  auto flat = generate_synthetic({"s", {100, 100, 100}, 1000, {0.0}, 1});
  EXPECT_GT(top_share(skewed), top_share(flat));
}

TEST(Synthetic, Errors) {
  EXPECT_THROW(generate_synthetic({"s", {2, 2}, 5, {0.0}, 1}), CapacityError);
  EXPECT_THROW(generate_synthetic({"s", {4}, 1, {0.0}, 1}), InputError);
  EXPECT_THROW(generate_synthetic({"s", {4, 4}, 1, {-1.0}, 1}), InputError);
  EXPECT_THROW(generate_synthetic({"s", {4, 4, 4}, 1, {0.1, 0.2}, 1}), InputError);
}

TEST(Synthetic, UniqueCoordinatesInRange) {
  for (double skew : {0.0, 0.5, 1.0, 2.0}) {
    auto t = generate_synthetic({"s", {30, 40, 50}, 2000, {skew}, 11});
    ASSERT_EQ(t.nnz(), 2000u);  // constructor already rejects duplicates
    for (std::size_t e = 0; e < t.nnz(); ++e) {
      ASSERT_GE(t.value(e), 0.0);
      ASSERT_LT(t.value(e), 1.0);
    }
  }
}

TEST(InitFactors, ShapesAndDeterminism) {
  auto t = generate_synthetic({"s", {5, 6, 7}, 20, {0.0}, 2});
  auto f = init_factors(t, 16, 0);
  ASSERT_EQ(f.size(), 3u);
  for (std::size_t m = 0; m < 3; ++m) {
    EXPECT_EQ(f[m].rank(), 16u);
    EXPECT_EQ(f[m].rows(), t.dim(m));
    EXPECT_EQ(f[m].mode(), m);
  }
  EXPECT_EQ(f, init_factors(t, 16, 0));
  EXPECT_NE(f[0].values(), init_factors(t, 16, 1)[0].values());
}

TEST(InitFactors, TwoModeShapes) {
  SparseTensorCOO t("t", {2, 3}, {0, 0}, {1.0});
  auto f = init_factors(t, 2, 5);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].rows(), 2u);
  EXPECT_EQ(f[0].rank(), 2u);
  EXPECT_EQ(f[1].rows(), 3u);
  EXPECT_EQ(f[1].rank(), 2u);
  EXPECT_THROW(init_factors(t, 0, 5), InputError);
}
