#include "serpaudit/annotations.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace serpaudit {
namespace {

std::vector<WorkerJudgment> votes(const std::string& doc, std::vector<Stance> stances) {
  std::vector<WorkerJudgment> out;
  for (std::size_t i = 0; i < stances.size(); ++i) {
    out.push_back({doc, "w" + std::to_string(i + 1), stances[i]});
  }
  return out;
}

std::vector<WorkerJudgment> concat(std::vector<std::vector<WorkerJudgment>> parts) {
  std::vector<WorkerJudgment> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

using S = Stance;

TEST(AggregateTest, StrictMajority) {
  const auto js = concat({votes("a", {S::pro, S::pro, S::against}),
                          votes("b", {S::pro, S::against, S::neutral}),
                          votes("c", {S::not_relevant, S::not_relevant, S::not_relevant})});
  const Aggregation agg = aggregate(js);
  ASSERT_EQ(agg.labels.size(), 3u);
  EXPECT_EQ(agg.labels[0], (AggregatedLabel{"a", S::pro, 2, 3}));
  EXPECT_EQ(agg.labels[1], (AggregatedLabel{"b", S::unresolved, 1, 3}));
  EXPECT_EQ(agg.labels[2], (AggregatedLabel{"c", S::not_relevant, 3, 3}));
  EXPECT_TRUE(agg.warnings.empty());
}

TEST(AggregateTest, TwoWorkersNeedUnanimity) {
  const auto js = concat({votes("a", {S::pro, S::against}), votes("b", {S::neutral, S::neutral})});
  const Aggregation agg = aggregate(js);
  EXPECT_EQ(agg.labels[0].stance, S::unresolved);
  EXPECT_EQ(agg.labels[1].stance, S::neutral);
  EXPECT_EQ(agg.warnings.size(), 2u);
}

TEST(AggregateTest, Errors) {
  EXPECT_THROW(aggregate({}), ValidationError);
  const auto bad = votes("a", {S::pro, S::unresolved});
  EXPECT_THROW(aggregate(bad), ValidationError);
  auto dup = votes("a", {S::pro, S::pro});
  dup[1].worker_id = dup[0].worker_id;
  EXPECT_THROW(aggregate(dup), ValidationError);
}

TEST(AggregateTest, PermutationInvariant) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> stance(0, 3);
  std::uniform_int_distribution<int> workers(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<WorkerJudgment> js;
    for (int d = 0; d < 8; ++d) {
      const int n = workers(rng);
      for (int w = 0; w < n; ++w) {
        js.push_back({"d" + std::to_string(d), "w" + std::to_string(w),
                      kJudgedStanceValues[static_cast<std::size_t>(stance(rng))]});
      }
    }
    const auto expected = aggregate(js).labels;
    std::shuffle(js.begin(), js.end(), rng);
    EXPECT_EQ(aggregate(js).labels, expected);
  }
}

TEST(LabelSetTest, LookupAndDuplicates) {
  const LabelSet set({{"x", S::pro, 3, 3}, {"y", S::neutral, 2, 3}});
  ASSERT_NE(set.find("y"), nullptr);
  EXPECT_EQ(set.find("y")->stance, S::neutral);
  EXPECT_EQ(set.find("z"), nullptr);
  EXPECT_THROW(LabelSet({{"x", S::pro, 3, 3}, {"x", S::against, 3, 3}}), ValidationError);

  const LabelBook book = {{Location::UK, set}};
  EXPECT_EQ(labels_for(book, Location::UK).size(), 2u);
  EXPECT_EQ(labels_for(book, Location::US).size(), 0u);
}

TEST(FleissKappaTest, PerfectAgreement) {
  const auto js = concat({votes("a", {S::pro, S::pro, S::pro}),
                          votes("b", {S::against, S::against, S::against}),
                          votes("c", {S::neutral, S::neutral, S::neutral})});
  const AgreementReport r = fleiss_kappa(js);
  EXPECT_NEAR(r.kappa, 1.0, 1e-12);
  EXPECT_EQ(r.n_items, 3u);
  EXPECT_EQ(r.n_raters_per_item, 3);
  EXPECT_DOUBLE_EQ(r.category_proportions[3], 0.0);
}

TEST(FleissKappaTest, TwoItemExample) {
  // P-bar = 0.5, p = (3/4, 1/4), P_e = 0.625, kappa = -1/3.
  const auto js = concat({votes("a", {S::pro, S::pro}), votes("b", {S::against, S::pro})});
  const AgreementReport r = fleiss_kappa(js);
  EXPECT_NEAR(r.kappa, -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.observed_agreement, 0.5, 1e-15);
  EXPECT_NEAR(r.chance_agreement, 0.625, 1e-15);
  EXPECT_NEAR(r.category_proportions[0], 0.75, 1e-15);
}

TEST(FleissKappaTest, UnusedCategoriesDoNotMatter) {
  // Relabelling which judged categories are used leaves kappa unchanged.
  const auto a = concat({votes("a", {S::pro, S::pro}), votes("b", {S::against, S::pro})});
  const auto b = concat({votes("a", {S::neutral, S::neutral}),
                         votes("b", {S::not_relevant, S::neutral})});
  EXPECT_NEAR(fleiss_kappa(a).kappa, fleiss_kappa(b).kappa, 1e-15);
}

TEST(FleissKappaTest, ExcludesItemsWithAnotherRaterCount) {
  const auto js = concat({votes("a", {S::pro, S::pro, S::pro}),
                          votes("b", {S::against, S::against, S::pro}),
                          votes("c", {S::against, S::against})});
  const AgreementReport r = fleiss_kappa(js);
  EXPECT_EQ(r.n_items, 2u);
  EXPECT_EQ(r.n_raters_per_item, 3);
  EXPECT_EQ(r.excluded_items, std::vector<std::string>{"c"});
}

TEST(FleissKappaTest, TiesGoToTheLargerRaterCount) {
  const auto js = concat({votes("a", {S::pro, S::pro, S::against}), votes("b", {S::pro, S::pro})});
  const AgreementReport r = fleiss_kappa(js);
  EXPECT_EQ(r.n_raters_per_item, 3);
  EXPECT_EQ(r.excluded_items, std::vector<std::string>{"b"});
}

TEST(FleissKappaTest, DegenerateInputs) {
  const auto one_category = concat({votes("a", {S::pro, S::pro}), votes("b", {S::pro, S::pro})});
  EXPECT_THROW(fleiss_kappa(one_category), ValidationError);
  const auto single_rater = concat({votes("a", {S::pro}), votes("b", {S::against})});
  EXPECT_THROW(fleiss_kappa(single_rater), ValidationError);
  EXPECT_THROW(fleiss_kappa({}), ValidationError);
}

TEST(FleissKappaTest, BoundedAboveByOne) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> stance(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<WorkerJudgment> js;
    for (int d = 0; d < 20; ++d) {
      for (int w = 0; w < 3; ++w) {
        js.push_back({"d" + std::to_string(d), "w" + std::to_string(w),
                      kJudgedStanceValues[static_cast<std::size_t>(stance(rng))]});
      }
    }
    const auto r = fleiss_kappa(js);
    EXPECT_LE(r.kappa, 1.0 + 1e-12);
    double total = 0.0;
    for (double p : r.category_proportions) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(LeaningTest, StanceMapping) {
  const Topic lib = testing::make_topic("t1", Leaning::liberal);
  const Topic con = testing::make_topic("t2", Leaning::conservative);
  EXPECT_EQ(leaning_of(S::pro, lib), Leaning::liberal);
  EXPECT_EQ(leaning_of(S::against, lib), Leaning::conservative);
  EXPECT_EQ(leaning_of(S::pro, con), Leaning::conservative);
  EXPECT_EQ(leaning_of(S::against, con), Leaning::liberal);
  for (S s : {S::neutral, S::not_relevant, S::unresolved}) {
    EXPECT_EQ(leaning_of(s, lib), std::nullopt);
    EXPECT_EQ(leaning_of(s, con), std::nullopt);
  }
}

TEST(LeaningTest, Relevance) {
  EXPECT_EQ(relevance_of(S::pro), 1);
  EXPECT_EQ(relevance_of(S::against), 1);
  EXPECT_EQ(relevance_of(S::neutral), 1);
  EXPECT_EQ(relevance_of(S::not_relevant), 0);
  EXPECT_EQ(relevance_of(S::unresolved), 0);
  EXPECT_EQ(relevance_of(AggregatedLabel{"d", S::against, 2, 3}), 1);
}

TEST(JudgmentFileTest, ParsesAndReportsLines) {
  std::istringstream ok("# batch 1\ndoc_id\tworker_id\tstance\nd1\tw1\tpro\nd1\tw2\tnot_relevant\n");
  const auto js = parse_judgments(ok, "j.tsv");
  ASSERT_EQ(js.size(), 2u);
  EXPECT_EQ(js[1], (WorkerJudgment{"d1", "w2", S::not_relevant}));

  std::istringstream bad("doc_id\tworker_id\tstance\nd1\tw1\tmaybe\n");
  try {
    parse_judgments(bad, "j.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(),
                 "j.tsv:2: stance must be one of pro, against, neutral, not_relevant; got 'maybe'");
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(JudgmentFileTest, SyntheticCampaign) {
  const auto uk = load_judgments(SERPAUDIT_DATA_DIR "/synthetic/judgments_UK.tsv");
  const auto us = load_judgments(SERPAUDIT_DATA_DIR "/synthetic/judgments_US.tsv");
  EXPECT_EQ(uk.size(), 3u * 240u);
  EXPECT_EQ(aggregate(uk).warnings.size(), 0u);
  EXPECT_EQ(aggregate(us).warnings.size(), 1u);
  const auto r = fleiss_kappa(us);
  EXPECT_EQ(r.excluded_items.size(), 1u);
  EXPECT_GT(r.kappa, 0.5);
  EXPECT_LT(r.kappa, 1.0);
}

}  // namespace
}  // namespace serpaudit
