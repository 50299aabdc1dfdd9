#include <gtest/gtest.h>
#include <omp.h>

#include <random>
#include <set>
#include <unordered_set>

#include "bidcg/explorer.hpp"
#include "bidcg/kernels.hpp"
#include "bidcg/notation.hpp"
#include "oracles.hpp"

namespace bidcg::explorer {
namespace {

constexpr Player L = Player::Left;

class ExplorerTest : public ::testing::Test {
 protected:
  Arena arena;
  Solver solver{arena};

  GameId g(const char* text) { return parse(arena, text); }

  static EnumerationSpec bounds(std::uint32_t birthday, std::vector<int> tbs) {
    EnumerationSpec spec;
    spec.max_birthday = birthday;
    spec.tb_range = std::move(tbs);
    return spec;
  }

  static RunOptions small(const std::string& name) {
    RunOptions o = default_options(name);
    if (o.bounds.max_birthday > 2) {
      o.bounds.top_day_sample = 120;
    }
    o.pairs = 300;
    o.size = 2;
    return o;
  }
};

TEST_F(ExplorerTest, EnumerationCounts) {
  EXPECT_EQ(enumerate_forms(arena, bounds(0, {})).size(), 1u);
  const auto day1 = enumerate_forms(arena, bounds(1, {}));
  EXPECT_EQ(std::set<GameId>(day1.begin(), day1.end()),
            (std::set<GameId>{Arena::zero(), g("{0|}"), g("{|0}"), g("{0|0}")}));
  // 16 x 16 side-subset pairs of the four day-1 forms.
  const auto day2 = enumerate_forms(arena, bounds(2, {}));
  EXPECT_EQ(day2.size(), 256u);
  EXPECT_EQ(std::unordered_set<GameId>(day2.begin(), day2.end()).size(), 256u);
  for (std::uint32_t b = 0; b <= 2; ++b) EXPECT_EQ(count_forms(bounds(b, {})), enumerate_forms(arena, bounds(b, {})).size());

  // Day 3 with at most one option per side: 257^2 pairs of (empty or one of
  // 256 forms), minus the 5^2 pairs drawing only on forms of day <= 1.
  EnumerationSpec capped = bounds(3, {});
  capped.option_subset_cap = 1;
  const auto day3 = enumerate_forms(arena, capped);
  EXPECT_EQ(day3.size(), 256u + 257u * 257u - 25u);
  EXPECT_EQ(count_forms(capped), day3.size());
  EXPECT_EQ(std::unordered_set<GameId>(day3.begin(), day3.end()).size(), day3.size());
  for (GameId f : day3) {
    EXPECT_LE(arena.birthday(f), 3u);
  }
}

TEST_F(ExplorerTest, PopulationBounds) {
  EnumerationSpec spec = bounds(3, {0});
  EXPECT_THROW(population(arena, spec), std::length_error);
  spec.top_day_sample = 50;
  const auto a = population(arena, spec);
  EXPECT_EQ(a.size(), 306u);
  EXPECT_EQ(population(arena, spec), a);
  for (std::size_t i = 256; i < a.size(); ++i) EXPECT_EQ(arena.birthday(a[i]), 3u);
}

TEST_F(ExplorerTest, WitnessSearchExamples) {
  const WitnessReport upsum = witness_search(solver, g("^+v"), Arena::zero(), bounds(0, {1}));
  ASSERT_EQ(upsum.result, SearchResult::CounterexampleFound);
  EXPECT_EQ(upsum.counterexample->x, Arena::zero());
  EXPECT_EQ(upsum.counterexample->state, (BudgetState{1, 1, L}));
  EXPECT_EQ(upsum.counterexample->g_outcome, Outcome::L);
  EXPECT_EQ(upsum.counterexample->h_outcome, Outcome::R);

  const WitnessReport ints = witness_search(solver, g("1+(-1)"), Arena::zero(), bounds(2, {0, 1, 2}));
  EXPECT_EQ(ints.result, SearchResult::Inconclusive);
  EXPECT_FALSE(ints.counterexample.has_value());
  EXPECT_EQ(ints.examined, 3u * 256u);

  const WitnessReport stars = witness_search(solver, g("*+*"), Arena::zero(), bounds(2, {1}));
  ASSERT_EQ(stars.result, SearchResult::CounterexampleFound);
  EXPECT_EQ(stars.counterexample->x, Arena::zero());
  EXPECT_EQ(stars.counterexample->state, (BudgetState{1, 1, L}));
}

TEST_F(ExplorerTest, WitnessesReplayAndOrient) {
  const auto forms = enumerate_forms(arena, bounds(2, {}));
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const GameId a = forms[pick(rng)], b = forms[pick(rng)];
    const WitnessReport r = witness_search(solver, a, b, bounds(1, {1, 2}));
    for (const auto& d : {r.counterexample, r.refutes_ge, r.refutes_le}) {
      if (!d) continue;
      ++found;
      EXPECT_TRUE(replays(solver, a, b, *d));
    }
    if (r.refutes_ge) EXPECT_EQ(r.refutes_ge->g_outcome, Outcome::R);
    if (r.refutes_le) EXPECT_EQ(r.refutes_le->g_outcome, Outcome::L);
    if (r.counterexample) {
      EXPECT_TRUE(r.counterexample->x == (r.refutes_ge ? r.refutes_ge->x : r.refutes_le->x) ||
                  (r.refutes_ge && r.refutes_le));
    }
  }
  EXPECT_GT(found, 40);
}

TEST_F(ExplorerTest, ParallelKernelsMatchSerial) {
  omp_set_num_threads(4);
  const auto forms = standard_population(arena, 150, 17);
  for (int tb = 0; tb <= 3; ++tb) {
    EXPECT_EQ(kernels::solve_outcomes(solver, forms, tb, Execution::Serial),
              kernels::solve_outcomes(solver, forms, tb, Execution::Parallel));
  }
  Arena fresh;
  Solver cold(fresh);
  const auto again = standard_population(fresh, 150, 17);
  EXPECT_EQ(kernels::solve_outcomes(cold, again, 3, Execution::Parallel),
            kernels::solve_outcomes(solver, forms, 3, Execution::Serial));

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
  const std::span<const GameId> xs(forms.data(), 256);
  for (int trial = 0; trial < 80; ++trial) {
    const GameId a = forms[pick(rng)], b = forms[pick(rng)];
    const int tb = trial % 3;
    for (bool both : {true, false}) {
      const auto s = kernels::scan_separations(solver, a, b, xs, tb, Execution::Serial, both);
      const auto p = kernels::scan_separations(solver, a, b, xs, tb, Execution::Parallel, both);
      EXPECT_EQ(s.examined, p.examined);
      for (auto [x, y] : {std::pair{s.first, p.first}, std::pair{s.below, p.below}, std::pair{s.above, p.above}}) {
        ASSERT_EQ(x.has_value(), y.has_value());
        if (!x) continue;
        EXPECT_EQ(x->x_index, y->x_index);
        EXPECT_EQ(x->state, y->state);
      }
    }
  }
}

TEST_F(ExplorerTest, InverseSearch) {
  for (int tb : {1, 2}) {
    const InverseSearchReport star = inverse_search(solver, g("*"), tb, bounds(2, {tb}));
    EXPECT_EQ(star.candidates, 256u);
    EXPECT_TRUE(star.certified.empty());
    EXPECT_TRUE(star.surviving.empty());
    EXPECT_EQ(star.refuted.size(), 256u);
    for (const auto& r : star.refuted) {
      EXPECT_TRUE(replays(solver, arena.sum(g("*"), r.candidate), Arena::zero(), r.witness));
    }
  }
  const InverseSearchReport at_zero = inverse_search(solver, g("*"), 0, bounds(2, {0}));
  EXPECT_FALSE(at_zero.certified.empty());

  for (int tb = 0; tb <= 2; ++tb) {
    const InverseSearchReport one = inverse_search(solver, g("1"), tb, bounds(2, {tb}));
    bool has_minus_one = false;
    for (const auto& c : one.certified) has_minus_one = has_minus_one || c.inverse() == g("-1");
    EXPECT_TRUE(has_minus_one) << "tb=" << tb;
    const InverseSearchReport zero = inverse_search(solver, Arena::zero(), tb, bounds(1, {tb}));
    ASSERT_FALSE(zero.certified.empty());
    EXPECT_EQ(zero.certified.front().inverse(), Arena::zero());
  }
}

TEST_F(ExplorerTest, TheoremSuitesPass) {
  for (const std::string& name : suite_names()) {
    const Report r = run_suite(solver, name, small(name));
    EXPECT_EQ(r.verdict, "pass") << name;
    EXPECT_EQ(r.count("fail"), 0u) << name;
    EXPECT_FALSE(r.records.empty()) << name;
  }
}

TEST_F(ExplorerTest, NozeroObservation) {
  const Report r = run_suite(solver, "nozero-observation", default_options("nozero-observation"));
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].tb, 4);
  EXPECT_EQ(r.records[1].tb, 2);
  for (const Record& rec : r.records) {
    EXPECT_EQ(rec.result, "pass");
    EXPECT_EQ(rec.evidence["o_at_0"], "L");
    EXPECT_EQ(rec.evidence["zero_bid_optimal_left"], false);
  }
}

TEST_F(ExplorerTest, ReportsAreDeterministic) {
  for (const char* name : {"mmw", "additive-property", "integers"}) {
    RunOptions serial = small(name);
    serial.exec = Execution::Serial;
    RunOptions parallel = small(name);
    Arena other;
    Solver fresh(other);
    const auto a = run_suite(solver, name, serial).json_lines();
    const auto b = run_suite(fresh, name, parallel).json_lines();
    ASSERT_EQ(a.size(), b.size()) << name;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].dump(), b[i].dump()) << name;
  }
}

TEST_F(ExplorerTest, ReportFormat) {
  const Report r = run_suite(solver, "integers", small("integers"));
  const auto lines = r.json_lines();
  ASSERT_EQ(lines.size(), r.records.size() + 1);
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    for (const char* key : {"suite", "instance", "tb", "result", "evidence"}) EXPECT_TRUE(lines[i].contains(key));
  }
  const Json& summary = lines.back();
  EXPECT_EQ(summary["summary"], true);
  EXPECT_EQ(summary["bounds"]["tb_range"], Json({0, 1, 2, 3}));
  EXPECT_EQ(summary["counts"]["pass"], r.records.size());
  EXPECT_THROW(run_suite(solver, "no-such-suite", {}), std::invalid_argument);
  EXPECT_THROW(run_conjecture(solver, "no-such-conjecture", {}), std::invalid_argument);
}

TEST_F(ExplorerTest, InverseIsConjugateExperiment) {
  RunOptions o = default_options("inverse-is-conjugate");
  o.bounds = bounds(2, {0, 1, 2});
  const Report r = run_conjecture(solver, "inverse-is-conjugate", o);
  EXPECT_EQ(r.verdict, "Inconclusive");
  EXPECT_GT(r.records.size(), 0u);
  EXPECT_EQ(r.count("fail"), 0u);
  EXPECT_EQ(r.summary()["conclusive"], false);
}

TEST_F(ExplorerTest, PositiveWinsEverywhereIsRefuted) {
  RunOptions o = default_options("positive-wins-everywhere");
  o.bounds = bounds(2, {1});
  const Report r = run_conjecture(solver, "positive-wins-everywhere", o);
  EXPECT_EQ(r.verdict, "CounterexampleFound");
  bool seen = false;
  for (const Record& rec : r.records) {
    if (rec.instance != "{*|}") continue;
    seen = true;
    EXPECT_EQ(rec.result, "fail");
    // Replay: G > 0 by the constructive tests, yet Right wins at 0^.
    const GameId f = g("{*|}");
    EXPECT_TRUE(classify_vs_zero(solver, f, 1).proven(Relation::GT0));
    EXPECT_EQ(solver.partial_outcome(f, parse_budget_state(1, rec.evidence["losing_state"])), Outcome::R);
  }
  EXPECT_TRUE(seen);
}

TEST_F(ExplorerTest, OtherExperimentsRun) {
  for (const std::string& name : conjecture_names()) {
    RunOptions o = default_options(name);
    o.bounds = bounds(1, {0, 1});
    o.size = 2;
    const Report r = run_conjecture(solver, name, o);
    EXPECT_TRUE(r.verdict == "Inconclusive" || r.verdict == "CounterexampleFound") << name;
    EXPECT_EQ(r.summary()["details"]["label"], "bounded experiment; not a proof");
  }
}

TEST_F(ExplorerTest, Tb0SuiteAgreesWithTestOracle) {
  // The suite carries its own alternating-play oracle; cross-check it
  // against the test-side one.
  const Report r = run_suite(solver, "tb0-oracle", small("tb0-oracle"));
  std::map<std::pair<std::uint32_t, int>, bool> memo;
  NameTable names(arena);
  const auto forms = population(arena, small("tb0-oracle").bounds);
  ASSERT_EQ(r.records.size(), forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const bool left_first = oracle::alternating_left_wins(arena, forms[i], L, memo);
    const bool right_first = oracle::alternating_left_wins(arena, forms[i], Player::Right, memo);
    const std::string expected = std::string{left_first ? 'L' : 'R'} + (right_first ? 'L' : 'R');
    EXPECT_EQ(r.records[i].evidence["alternating_oracle"], expected);
    EXPECT_EQ(r.records[i].instance, names.print(forms[i], PrintStyle::Named));
  }
}

}  // namespace
}  // namespace bidcg::explorer
