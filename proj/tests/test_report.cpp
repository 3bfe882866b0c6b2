#include <gtest/gtest.h>

#include <sstream>

#include "osram/config.hpp"
#include "osram/report.hpp"

using namespace osram;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

bool mentions(const std::vector<std::string>& errs, const std::string& needle) {
  for (const auto& e : errs)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(ValidateConfig, EmptyDocumentGetsDefaults) {
  auto v = validate_config(Json::object());
  ASSERT_TRUE(v.ok());
  const auto& a = v.config.accelerator;
  EXPECT_EQ(a.pe.num_pes, 4u);
  EXPECT_EQ(a.pe.pipelines_per_pe, 80u);
  EXPECT_EQ(a.pe.partial_buffer_elements, 1024u);
  EXPECT_EQ(a.cache.num_caches, 3u);
  EXPECT_EQ(a.cache.associativity, 4u);
  EXPECT_EQ(a.cache.num_lines, 4096u);
  EXPECT_EQ(a.cache.line_bytes, 64u);
  EXPECT_EQ(a.dma.buffer_count, 6u);
  EXPECT_EQ(a.dma.buffer_bytes, 64u * 1024u);
  EXPECT_EQ(a.rank, 16u);
  EXPECT_EQ(a.pe.f_electrical, 500'000'000u);
  EXPECT_EQ(a.tech.f_mem, 20'000'000'000u);
  EXPECT_EQ(a.onchip_budget_bits, kOnchipBudgetBits);
  EXPECT_EQ(v.config.baseline, esram_paper());
  EXPECT_TRUE(validate_config(Json()).ok());
}

TEST(ValidateConfig, DivisibilityError) {
  auto v = validate_config(Json::parse(R"({"accelerator": {"associativity": 3, "cache_lines": 4096}})"));
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(mentions(v.errors, "accelerator.cache_lines"));
  EXPECT_TRUE(mentions(v.errors, "not divisible by associativity 3"));
}

TEST(ValidateConfig, RankExceedsPartialBuffer) {
  auto v = validate_config(Json::parse(R"({"workload": {"rank": 2048}})"));
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(mentions(v.errors, "partial"));
  EXPECT_TRUE(mentions(v.errors, "workload.rank"));
}

TEST(ValidateConfig, BudgetErrorNamesTheLimit) {
  // 4 PEs x 3 caches x 5 MB: 60 MB of cache alone.
  auto v = validate_config(Json::parse(R"({"accelerator": {"cache_lines": 81920}})"));
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(mentions(v.errors, "54 MB"));
}

TEST(ValidateConfig, ErrorsAggregateWithPaths) {
  auto v = validate_config(Json::parse(R"({
    "accelerator": {"num_pes": 0, "line_bytes": 48, "colour": 1},
    "dram": {"channels": "four"},
    "memory_tech": {"primary": "dram-paper"},
    "bogus": {}
  })"));
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(mentions(v.errors, "accelerator.num_pes"));
  EXPECT_TRUE(mentions(v.errors, "accelerator.line_bytes"));
  EXPECT_TRUE(mentions(v.errors, "accelerator.colour"));
  EXPECT_TRUE(mentions(v.errors, "dram.channels"));
  EXPECT_TRUE(mentions(v.errors, "memory_tech.primary"));
  EXPECT_TRUE(mentions(v.errors, "bogus"));
  EXPECT_GE(v.errors.size(), 6u);
}

TEST(ValidateConfig, Idempotent) {
  const char* docs[] = {
      "{}",
      R"({"accelerator": {"num_pes": 2, "cache_lines": 1024}, "workload": {"rank": 8, "synthetic": "tiny"}})",
      R"({"memory_tech": {"primary": {"preset": "osram-paper", "wavelengths": 4, "name": "o4"}},
          "workload": {"synthetic": {"dims": [5, 6], "nnz": 10, "skew": [0.5, 1.0]}}})",
      R"({"dram": {"max_outstanding": 1}, "workload": {"tensor": "x.tns", "seed": 9}})",
  };
  for (const char* d : docs) {
    auto first = validate_config(Json::parse(d));
    ASSERT_TRUE(first.ok()) << d << ": " << (first.errors.empty() ? "" : first.errors[0]);
    const Json norm = config_to_json(first.config);
    auto second = validate_config(norm);
    ASSERT_TRUE(second.ok());
    EXPECT_EQ(second.config, first.config);
    EXPECT_EQ(config_to_json(second.config), norm);
  }
}

TEST(SyntheticArg, InlineAndPreset) {
  auto s = parse_synthetic_arg("dims=4x5x6,nnz=12,skew=0.5:1:0,seed=3,name=q");
  EXPECT_EQ(s.dims, (std::vector<Index>{4, 5, 6}));
  EXPECT_EQ(s.nnz, 12u);
  EXPECT_EQ(s.skew, (std::vector<double>{0.5, 1.0, 0.0}));
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(s.name, "q");
  EXPECT_EQ(parse_synthetic_arg("tiny").dims, (std::vector<Index>{4, 4, 4}));
  EXPECT_THROW(parse_synthetic_arg("nnz=3"), InputError);
  EXPECT_THROW(parse_synthetic_arg("dims=4x0,nnz=3"), InputError);
  EXPECT_THROW(parse_synthetic_arg("dims=4x4,nnz=3,colour=red"), InputError);
  for (const auto& name : synthetic_preset_names()) EXPECT_TRUE(synthetic_preset(name).has_value());
}

class CsvTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto t = generate_synthetic(*synthetic_preset("tiny"));
    AcceleratorConfig o;
    AcceleratorConfig e = o;
    e.tech = esram_paper();
    reports = {simulate_all_modes(t, o), simulate_all_modes(t, e)};
    comparisons = {compare(reports[0], reports[1])};
  }
  std::vector<RunReport> reports;
  std::vector<Comparison> comparisons;
};

TEST_F(CsvTest, OneComparisonShape) {
  auto rows = lines_of(emit_csv(reports, comparisons));
  ASSERT_EQ(rows.size(), 1u + 6u + 3u);
  EXPECT_EQ(rows[0], kCsvHeader);
  std::size_t ratio_rows = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool ratio = rows[i].find("osram/esram") != std::string::npos;
    ratio_rows += ratio;
    // 11 columns everywhere.
    EXPECT_EQ(std::count(rows[i].begin(), rows[i].end(), ','), 10);
    if (!ratio) {
      EXPECT_NE(rows[i].find(",,,"), std::string::npos);
    }
  }
  EXPECT_EQ(ratio_rows, 3u);
  EXPECT_EQ(rows[1].rfind("tiny,0,osram,", 0), 0u);
  EXPECT_EQ(rows[2].rfind("tiny,0,esram,", 0), 0u);
  EXPECT_EQ(rows[3].rfind("tiny,0,osram/esram,", 0), 0u);
}

TEST_F(CsvTest, EmptyIsHeaderOnly) {
  EXPECT_EQ(emit_csv({}), std::string(kCsvHeader) + "\n");
}

TEST_F(CsvTest, RerunIsByteIdentical) {
  auto again = generate_synthetic(*synthetic_preset("tiny"));
  AcceleratorConfig o;
  AcceleratorConfig e = o;
  e.tech = esram_paper();
  std::vector<RunReport> r2 = {simulate_all_modes(again, o), simulate_all_modes(again, e)};
  std::vector<Comparison> c2 = {compare(r2[0], r2[1])};
  EXPECT_EQ(emit_csv(reports, comparisons), emit_csv(r2, c2));
  EXPECT_EQ(report_to_json(reports[0]).dump(2), report_to_json(r2[0]).dump(2));
}

TEST_F(CsvTest, NumbersTraceToModeResults) {
  auto rows = lines_of(emit_csv(reports));
  const auto& m = reports[0].modes[1];
  const std::string want = "tiny,1,osram," + std::to_string(m.mode_cycles) + ",";
  bool found = false;
  for (const auto& r : rows) found |= r.rfind(want, 0) == 0;
  EXPECT_TRUE(found);
  const Json j = report_to_json(reports[0]);
  EXPECT_EQ(j["modes"][1]["mode_cycles"].get<Cycles>(), m.mode_cycles);
  EXPECT_EQ(j["modes"][1]["total_energy_pj"].get<double>(), m.total_energy_pj);
  EXPECT_EQ(j["totals"]["cycles"].get<Cycles>(), reports[0].totals.cycles);
}

TEST_F(CsvTest, SummaryMentionsBothTechs) {
  const auto s = summary_text(reports, comparisons);
  EXPECT_NE(s.find("on osram"), std::string::npos);
  EXPECT_NE(s.find("on esram"), std::string::npos);
  EXPECT_NE(s.find("overall: speedup"), std::string::npos);
}

TEST(Csv, QuotesAwkwardNames) {
  RunReport r;
  r.tensor = "a,b";
  r.tech = "x";
  r.modes.resize(1);
  auto rows = lines_of(emit_csv(std::vector<RunReport>{r}));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].rfind("\"a,b\",0,x,", 0), 0u);
}
