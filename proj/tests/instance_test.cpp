#include "mobility/instance.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "test_support.hpp"

namespace mobility {
namespace {

using testing::sample_instance;

std::vector<double> weights_of(const CandidateList& list) {
  std::vector<double> w;
  for (const auto& c : list.candidates) w.push_back(c.weight);
  return w;
}

TEST(AggregateWeight, SingleCriterionIsIdentity) {
  CriteriaProfile p{{{"seniority", 1.0}}, {{"seniority", 76.0}}};
  EXPECT_EQ(aggregate_weight(p), 76.0);
}

TEST(AggregateWeight, ConvexCombinationOfEqualValues) {
  CriteriaProfile p{{{"productivity", 0.5}, {"proximity", 0.5}},
                    {{"productivity", 80.0}, {"proximity", 80.0}}};
  EXPECT_EQ(aggregate_weight(p), 80.0);
}

TEST(AggregateWeight, WeightedSum) {
  // 2*10 + 3*4
  CriteriaProfile p{{{"a", 2.0}, {"b", 3.0}}, {{"a", 10.0}, {"b", 4.0}}};
  EXPECT_EQ(aggregate_weight(p), 32.0);
}

TEST(AggregateWeight, MissingCoefficientNamesTheCriterion) {
  CriteriaProfile p{{{"a", 1.0}}, {{"a", 1.0}, {"zeal", 2.0}}};
  try {
    aggregate_weight(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("zeal"), std::string::npos);
  }
}

TEST(AggregateWeight, RequiresAPositiveCoefficient) {
  CriteriaProfile p{{{"a", 0.0}}, {{"a", 5.0}}};
  EXPECT_THROW(aggregate_weight(p), ValidationError);
}

TEST(ParseInstance, SampleInstanceCardinalities) {
  const Instance raw = load_instance(testing::data_path("sample_instance"));
  ASSERT_EQ(raw.ns(), 3);
  EXPECT_EQ(raw.capacities(), (std::vector<int>{7, 7, 5}));
  const SiteId a1{1}, a2{2}, a3{3};
  EXPECT_EQ(raw.list(a2, a1).cardinality(), 9u);
  EXPECT_EQ(raw.list(a3, a1).cardinality(), 2u);
  EXPECT_EQ(raw.list(a1, a2).cardinality(), 7u);
  EXPECT_EQ(raw.list(a3, a2).cardinality(), 5u);
  EXPECT_EQ(raw.list(a1, a3).cardinality(), 3u);
  EXPECT_EQ(raw.list(a2, a3).cardinality(), 3u);
  EXPECT_EQ(raw.candidate_count(), 29u);
}

TEST(ParseInstance, EmptyInstance) {
  const Instance inst = parse_instance("sites 2 X Y\ncapacity 1 1\n");
  EXPECT_EQ(inst.ns(), 2);
  EXPECT_EQ(inst.candidate_count(), 0u);
  EXPECT_EQ(inst.pair_count(), 2u);
}

TEST(ParseInstance, KeepsFileOrder) {
  const Instance inst = parse_instance(
      "sites 2 X Y\ncapacity 3 3\ncand a X Y 4\ncand b X Y 67\ncand c X Y 11\n");
  EXPECT_EQ(weights_of(inst.list(SiteId{1}, SiteId{2})), (std::vector<double>{4, 67, 11}));
}

struct BadDocument {
  const char* text;
  ParseErrorKind kind;
  int line;
};

class ParseInstanceErrors : public ::testing::TestWithParam<BadDocument> {};

TEST_P(ParseInstanceErrors, ReportsKindAndLine) {
  const auto& p = GetParam();
  try {
    parse_instance(p.text);
    FAIL() << "expected ParseError for: " << p.text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), p.kind) << e.what();
    EXPECT_EQ(e.line(), p.line) << e.what();
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(p.line)), std::string::npos);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Diagnostics, ParseInstanceErrors,
    ::testing::Values(
        BadDocument{"sites 3 A1 A2 A3\ncapacity 1 1 1\ncand x A1 A1 5\n",
                    ParseErrorKind::kOriginEqualsDestination, 3},
        BadDocument{"sites 2 A B\ncapacity 1 1\ncand x A C 5\n", ParseErrorKind::kUnknownSite, 3},
        BadDocument{"sites 2 A B\ncapacity 1 1\ncand x A B -2\n", ParseErrorKind::kNegativeWeight, 3},
        BadDocument{"sites 2 A B\ncapacity 1 1\ncand x A B 2\n# c\ncand x B A 3\n",
                    ParseErrorKind::kDuplicateCandidate, 5},
        BadDocument{"sites 2 A B\ncapacity 1 1 1\n", ParseErrorKind::kCapacityCount, 2},
        BadDocument{"sites 2 A B\ncapacity 1 1\ncand x A B\n", ParseErrorKind::kMalformedLine, 3},
        BadDocument{"sites 2 A B\ncapacity 1 1\nfrobnicate\n", ParseErrorKind::kMalformedLine, 3},
        BadDocument{"capacity 1 1\ncand x A B 1\n", ParseErrorKind::kMissingHeader, 2},
        BadDocument{"sites 2 A B\ncapacity 1 1\nalpha s=1\ncand x A B criteria s=2,t=3\n",
                    ParseErrorKind::kMissingCoefficient, 4}));

TEST(ParseInstance, OriginEqualsDestinationMessage) {
  try {
    parse_instance("sites 2 A1 A2\ncapacity 1 1\ncand x A1 A1 5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("origin equals destination"), std::string::npos);
  }
}

TEST(ParseInstance, CriteriaAreAggregatedWithGlobalAlpha) {
  const Instance inst = parse_instance(
      "sites 2 A B\ncapacity 1 1\ncand x A B criteria a=10,b=4\nalpha a=2,b=3\n");
  EXPECT_EQ(inst.list(SiteId{1}, SiteId{2}).weight(0), 32.0);
}

TEST(ParseInstance, DirectWeightWinsOverCriteriaWithWarning) {
  std::vector<std::string> warnings;
  const Instance inst = parse_instance(
      "sites 2 A B\nalpha a=1\ncapacity 1 1\ncand x A B 7 criteria a=10\n", warnings);
  EXPECT_EQ(inst.list(SiteId{1}, SiteId{2}).weight(0), 7.0);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("line 4"), std::string::npos);
}

TEST(Canonicalize, SortsDescending) {
  const Instance inst = canonicalize(parse_instance(
      "sites 2 X Y\ncapacity 3 3\ncand a X Y 4\ncand b X Y 67\ncand c X Y 11\n"));
  EXPECT_EQ(weights_of(inst.list(SiteId{1}, SiteId{2})), (std::vector<double>{67, 11, 4}));
  EXPECT_TRUE(inst.is_canonical());
}

TEST(Canonicalize, SampleRowAlreadySorted) {
  const Instance raw = load_instance(testing::data_path("sample_instance"));
  const Instance canon = canonicalize(raw);
  EXPECT_EQ(weights_of(canon.list(SiteId{2}, SiteId{1})),
            (std::vector<double>{76, 67, 43, 43, 29, 22, 20, 16, 13}));
  EXPECT_EQ(canon.list(SiteId{2}, SiteId{1}), raw.list(SiteId{2}, SiteId{1}));
}

TEST(Canonicalize, StableOnTies) {
  const Instance inst = canonicalize(parse_instance(
      "sites 2 X Y\ncapacity 3 3\ncand c5 X Y 43\ncand c6 X Y 43\ncand c7 X Y 50\n"));
  const auto& l = inst.list(SiteId{1}, SiteId{2});
  EXPECT_EQ(l.candidates[0].id, "c7");
  EXPECT_EQ(l.candidates[1].id, "c5");
  EXPECT_EQ(l.candidates[2].id, "c6");
}

TEST(BuildWeightMatrices, SampleDestinationOne) {
  const WeightMatrix beta = build_weight_matrices(sample_instance());
  const WeightGrid& g = beta.grid(SiteId{1});
  ASSERT_EQ(g.rows, 2u);
  ASSERT_EQ(g.cols, 9u);
  EXPECT_EQ(g.values, (std::vector<double>{76, 67, 43, 43, 29, 22, 20, 16, 13,  //
                                           80, 41, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(BuildWeightMatrices, SampleDestinationThree) {
  const WeightMatrix beta = build_weight_matrices(sample_instance());
  const WeightGrid& g = beta.grid(SiteId{3});
  ASSERT_EQ(g.rows, 2u);
  ASSERT_EQ(g.cols, 3u);
  EXPECT_EQ(g.values, (std::vector<double>{64, 27, 7, 67, 11, 4}));
}

TEST(BuildWeightMatrices, EmptyDestinationHasNoColumns) {
  const Instance inst = parse_instance("sites 3 A B C\ncapacity 1 1 1\ncand x A B 3\n");
  const WeightMatrix beta = build_weight_matrices(inst);
  EXPECT_EQ(beta.grid(SiteId{1}).cols, 0u);
  EXPECT_EQ(beta.grid(SiteId{1}).rows, 2u);
  EXPECT_EQ(beta.grid(SiteId{2}).cols, 1u);
}

TEST(GridRow, RoundTrips) {
  for (int k = 1; k <= 5; ++k) {
    for (std::size_t r = 0; r < 4; ++r) {
      const SiteId origin = grid_origin(r, SiteId{k});
      EXPECT_NE(origin, SiteId{k});
      EXPECT_EQ(grid_row(origin, SiteId{k}), r);
    }
  }
}

// Properties over seeded random instances.

TEST(InstanceProperties, SerializeParseRoundTrip) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = testing::random_instance(rng);
    EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
  }
  // Non-integral weights survive too.
  Instance frac({"A", "B"}, {1, 1});
  frac.add_candidate(Candidate{"x", SiteId{1}, SiteId{2}, 0.1 + 0.2, std::nullopt});
  EXPECT_EQ(parse_instance(serialize_instance(frac)), frac);
}

TEST(InstanceProperties, CanonicalOrderAndConservation) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng);
    std::size_t total = 0;
    for (const auto& l : inst.lists()) {
      total += l.cardinality();
      for (std::size_t i = 0; i + 1 < l.cardinality(); ++i) EXPECT_GE(l.weight(i), l.weight(i + 1));
    }
    EXPECT_EQ(total, inst.candidate_count());

    const WeightMatrix beta = build_weight_matrices(inst);
    double grid_sum = 0.0;
    for (const auto& g : beta.grids) grid_sum = std::accumulate(g.values.begin(), g.values.end(), grid_sum);
    EXPECT_EQ(grid_sum, inst.total_weight());
  }
}

TEST(InstanceProperties, SampleCandidateCount) {
  const Instance inst = sample_instance();
  std::size_t total = 0;
  for (const auto& l : inst.lists()) total += l.cardinality();
  EXPECT_EQ(total, 29u);
}

}  // namespace
}  // namespace mobility
