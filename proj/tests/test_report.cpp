#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"

using namespace cosmax;
using testutil::idx;

namespace {

RunConfig correlation_config() {
  RunConfig c;
  c.input_kind = InputKind::correlation;
  return c;
}

// Order-insensitive view of a set list: what was found, not where in the
// output it sits.
std::multiset<std::string> set_signatures(const std::vector<CollinearSet>& sets,
                                          const std::vector<std::string>& names) {
  std::multiset<std::string> out;
  for (const auto& s : sets) {
    std::string sig = detail::method_name(s.method);
    sig += ":{";
    for (std::size_t m : s.members) sig += names[m] + ",";
    sig += "}";
    if (s.pooled) sig += "+pooled";
    if (s.degenerate) sig += "+degenerate";
    out.insert(sig);
  }
  return out;
}

}  // namespace

TEST(Run, SalesDefaultsFindTheOneCollinearSet) {
  const auto rep = run(correlation_config(), testutil::read_fixture("sales.corr"));
  ASSERT_EQ(rep.cosmax_sets.size(), 1u);
  EXPECT_EQ(rep.cosmax_sets[0].members, idx({0, 1, 3, 4}));
  ASSERT_EQ(rep.families.size(), 1u);
  EXPECT_EQ(rep.families[0], idx({0, 1, 3, 4}));
  // All three methods agree here.
  ASSERT_EQ(rep.eigen_sets.size(), 1u);
  EXPECT_EQ(rep.eigen_sets[0].members, idx({0, 1, 3, 4}));
  ASSERT_EQ(rep.vdp_sets.size(), 1u);
  EXPECT_EQ(rep.vdp_sets[0].members, idx({0, 1, 3, 4}));
}

TEST(Run, PitpropHasThreeCosmaxFamilies) {
  const auto rep = run(correlation_config(), testutil::read_fixture("pitprop.corr"));
  ASSERT_EQ(rep.families.size(), 3u);
  EXPECT_EQ(rep.families[0], idx({0, 1}));
  EXPECT_EQ(rep.families[1], idx({2, 3}));
  EXPECT_EQ(rep.families[2], idx({5, 6, 9}));
}

TEST(Run, SyntheticZeroNoiseRaisesExactCollinearity) {
  RunConfig c;
  c.input_kind = InputKind::synthetic;
  c.synth_n = 50;
  c.seed = 9;
  c.synth_noise = 0.0;
  EXPECT_THROW(run(c, ""), ExactCollinearityError);
}

TEST(Run, RawDataInputFillsObservationCount) {
  const auto d = generate_example4(60, 4);
  std::ostringstream text;
  for (std::size_t j = 0; j < d.m(); ++j) text << (j ? " " : "") << d.names[j];
  text << "\n";
  text.precision(17);
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.m(); ++j) text << (j ? " " : "") << d.values(i, j);
    text << "\n";
  }
  RunConfig c;
  c.input_kind = InputKind::raw_data;
  c.stepwise_targets = {"X4"};
  const auto rep = run(c, text.str());
  ASSERT_TRUE(rep.n_obs.has_value());
  EXPECT_EQ(*rep.n_obs, 60u);
  ASSERT_FALSE(rep.stepwise.empty());
  ASSERT_FALSE(rep.stepwise[0].steps.empty());
  EXPECT_TRUE(rep.stepwise[0].steps[0].f_stat.has_value());
  EXPECT_EQ(parse_structured(render_structured(rep)), rep);
}

TEST(Run, UnknownStepwiseTargetIsConfigError) {
  RunConfig c = correlation_config();
  c.stepwise_targets = {"X99"};
  EXPECT_THROW(run(c, testutil::read_fixture("sales.corr")), ConfigError);
}

TEST(Validate, RejectsBadThresholds) {
  RunConfig c = correlation_config();
  c.thresholds.vdp_pi = 1.5;
  EXPECT_THROW(validate(c), ConfigError);
  c = correlation_config();
  c.thresholds.vif = -1.0;
  EXPECT_THROW(validate(c), ConfigError);
  c = correlation_config();
  c.thresholds.min_gain = -0.2;
  EXPECT_THROW(validate(c), ConfigError);
  c = correlation_config();
  c.input_kind = InputKind::synthetic;
  c.synth_n = 3;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(RenderText, SalesTableCells) {
  const auto rep = run(correlation_config(), testutil::read_fixture("sales.corr"));
  const std::string text = render_text(rep);
  // The near-zero eigen direction's VDP row: X3 barely participates.
  EXPECT_NE(text.find("0.012"), std::string::npos);
  EXPECT_NE(text.find("cosmax: {X1, X2, X4, X5}"), std::string::npos);
  EXPECT_NE(text.find("families: {X1, X2, X4, X5}"), std::string::npos);
  // VDP row for the smallest eigenvalue carries the 0.007 label and flags.
  std::istringstream lines(text);
  std::string line;
  bool found_row = false;
  while (std::getline(lines, line)) {
    if (line.find("      0.007") == 0 || line.find("0.007") == 6) {
      if (line.find("0.012") != std::string::npos) found_row = true;
    }
  }
  EXPECT_TRUE(found_row) << text;
}

TEST(RenderText, EmptyReportSaysSo) {
  const auto rep = run(correlation_config(), "A B\n1 0.1\n0.1 1\n");
  const std::string text = render_text(rep);
  EXPECT_NE(text.find("no collinearities detected"), std::string::npos);
}

TEST(RenderText, PitpropBorderlineMark) {
  const auto rep = run(correlation_config(), testutil::read_fixture("pitprop.corr"));
  const std::string text = render_text(rep);
  // In the a3 row, X5's 0.592 entry sits just below the 0.75 loading
  // threshold and is marked borderline.
  EXPECT_NE(text.find("0.592~"), std::string::npos) << text;
  EXPECT_NE(text.find("-0.664~"), std::string::npos);
}

TEST(RenderText, ThreeDecimalAgreementWithReportValues) {
  const auto rep = run(correlation_config(), testutil::read_fixture("shopping.corr"));
  const std::string text = render_text(rep);
  for (std::size_t i = 0; i < rep.vifs.size(); ++i)
    EXPECT_NE(text.find(detail::fmt3(rep.vifs[i])), std::string::npos) << i;
  for (std::size_t j = 0; j < rep.condition_indices.size(); ++j)
    EXPECT_NE(text.find(detail::fmt3(rep.condition_indices[j])), std::string::npos);
}

TEST(RenderStructured, RoundTripIsExact) {
  RunConfig c = correlation_config();
  c.stepwise_targets = {"X7", "X4", "X1"};
  c.partial_queries = {{"X3", "X5", {"X4"}}, {"X1", "X2", {}}};
  c.n_obs = 180;
  c.alpha = 0.001;
  const auto rep = run(c, testutil::read_fixture("pitprop.corr"));
  const std::string text = render_structured(rep);
  const DiagnosticsReport back = parse_structured(text);
  EXPECT_EQ(back, rep);
}

TEST(RenderStructured, RoundTripSyntheticConfig) {
  RunConfig c;
  c.input_kind = InputKind::synthetic;
  c.synth_n = 64;
  c.seed = 123456789;
  c.synth_noise = 0.25;
  c.output_format = OutputFormat::structured;
  const auto rep = run(c, "");
  EXPECT_EQ(parse_structured(render_structured(rep)), rep);
}

TEST(RenderStructured, VifsMatchInMemoryBitForBit) {
  const auto rep = run(correlation_config(), testutil::read_fixture("sales.corr"));
  const auto parsed = detail::json::parse(render_structured(rep));
  const auto vifs = parsed.at("vif").at("values").get<std::vector<double>>();
  ASSERT_EQ(vifs.size(), rep.vifs.size());
  for (std::size_t i = 0; i < vifs.size(); ++i) {
    EXPECT_EQ(vifs[i], rep.vifs[i]);  // exact, not approximate
  }
  EXPECT_EQ(parsed.at("schema_version").get<int>(), kStructuredSchemaVersion);
  EXPECT_TRUE(parsed.contains("config"));
}

TEST(RenderStructured, ByteIdenticalAcrossRuns) {
  const std::string input = testutil::read_fixture("shopping.corr");
  RunConfig c = correlation_config();
  c.stepwise_targets = {"X9"};
  const auto rep1 = run(c, input);
  const auto rep2 = run(c, input);
  EXPECT_EQ(rep1, rep2);
  EXPECT_EQ(render_structured(rep1), render_structured(rep2));
  EXPECT_EQ(render_text(rep1), render_text(rep2));
}

TEST(Golden, FixtureReportsMatchFrozenExpectations) {
  struct Case {
    const char* fixture;
    const char* expected;
    RunConfig config;
  };
  RunConfig pitprop_cfg = correlation_config();
  pitprop_cfg.stepwise_targets = {"X7", "X4", "X1"};
  pitprop_cfg.n_obs = 180;
  RunConfig shopping_cfg = correlation_config();
  shopping_cfg.stepwise_targets = {"X9", "X2", "X4", "X3"};
  shopping_cfg.partial_queries = {{"X2", "X3", {"X4"}}, {"X6", "X7", {"X5"}},
                                  {"X5", "X2", {"X4"}}, {"X5", "X3", {"X4"}},
                                  {"X4", "X6", {"X5"}}, {"X4", "X7", {"X5"}}};
  const Case cases[] = {
      {"sales.corr", "expected/sales.expected.json", correlation_config()},
      {"pitprop.corr", "expected/pitprop.expected.json", pitprop_cfg},
      {"shopping.corr", "expected/shopping.expected.json", shopping_cfg},
      {"artificial.corr", "expected/artificial.expected.json", correlation_config()},
  };
  for (const auto& c : cases) {
    const auto rep = run(c.config, testutil::read_fixture(c.fixture));
    const auto expected = parse_structured(testutil::read_fixture(c.expected));
    EXPECT_EQ(rep.names, expected.names) << c.fixture;
    ASSERT_EQ(rep.vifs.size(), expected.vifs.size()) << c.fixture;
    for (std::size_t i = 0; i < rep.vifs.size(); ++i)
      EXPECT_NEAR(rep.vifs[i], expected.vifs[i], 1e-10) << c.fixture;
    for (std::size_t j = 0; j < rep.condition_indices.size(); ++j) {
      EXPECT_NEAR(rep.eigen.eigenvalues[j], expected.eigen.eigenvalues[j], 1e-10);
      EXPECT_NEAR(rep.condition_indices[j], expected.condition_indices[j], 1e-7);
    }
    EXPECT_LE(testutil::max_abs_diff(rep.transform.a, expected.transform.a), 1e-10)
        << c.fixture;
    // Set-of-sets comparison is order-insensitive.
    EXPECT_EQ(set_signatures(rep.cosmax_sets, rep.names),
              set_signatures(expected.cosmax_sets, expected.names))
        << c.fixture;
    EXPECT_EQ(set_signatures(rep.eigen_sets, rep.names),
              set_signatures(expected.eigen_sets, expected.names));
    EXPECT_EQ(set_signatures(rep.vdp_sets, rep.names),
              set_signatures(expected.vdp_sets, expected.names));
    EXPECT_EQ(rep.link_graph.edges, expected.link_graph.edges) << c.fixture;
    ASSERT_EQ(rep.stepwise.size(), expected.stepwise.size());
    for (std::size_t t = 0; t < rep.stepwise.size(); ++t) {
      ASSERT_EQ(rep.stepwise[t].steps.size(), expected.stepwise[t].steps.size());
      for (std::size_t k = 0; k < rep.stepwise[t].steps.size(); ++k) {
        EXPECT_EQ(rep.stepwise[t].steps[k].variable,
                  expected.stepwise[t].steps[k].variable);
        EXPECT_NEAR(rep.stepwise[t].steps[k].r_squared,
                    expected.stepwise[t].steps[k].r_squared, 1e-10);
      }
    }
    ASSERT_EQ(rep.partials.size(), expected.partials.size());
    for (std::size_t p = 0; p < rep.partials.size(); ++p)
      EXPECT_NEAR(rep.partials[p].value, expected.partials[p].value, 1e-10);
  }
}

TEST(Golden, GeneratedDatasetFixtureIsStable) {
  // Guards the documented generator contract: same seed, same bytes.
  const auto d = generate_example4(100, 1);
  const auto file = parse_raw_data(testutil::read_fixture("example4_n100_seed1.dat"));
  ASSERT_EQ(file.n(), d.n());
  ASSERT_EQ(file.m(), d.m());
  EXPECT_EQ(file.names, d.names);
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = 0; j < d.m(); ++j)
      EXPECT_DOUBLE_EQ(file.values(i, j), d.values(i, j)) << i << "," << j;
}

TEST(Performance, FixtureRunsStayUnderASecond) {
  for (const char* name : {"sales.corr", "pitprop.corr", "shopping.corr",
                           "artificial.corr"}) {
    const std::string input = testutil::read_fixture(name);
    const auto start = std::chrono::steady_clock::now();
    const auto rep = run(correlation_config(), input);
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    EXPECT_GT(rep.vifs.size(), 0u);
    EXPECT_LT(elapsed, 1.0) << name;
  }
}
