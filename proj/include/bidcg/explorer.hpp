#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bidcg/algebra.hpp"
#include "bidcg/enumerate.hpp"
#include "bidcg/json.hpp"
#include "bidcg/kernels.hpp"

namespace bidcg::explorer {

using kernels::Execution;

/// G + X and H + X end differently at `state`.
struct Distinction {
  GameId x;
  BudgetState state;
  Outcome g_outcome = Outcome::L;
  Outcome h_outcome = Outcome::L;
};

enum class SearchResult { Verified, CounterexampleFound, Inconclusive };
const char* to_string(SearchResult r);

struct WitnessReport {
  std::string claim;
  SearchResult result = SearchResult::Inconclusive;
  EnumerationSpec bounds;
  /// The first distinction in (tb, X, state) order.
  std::optional<Distinction> counterexample;
  /// First distinctions refuting G >= H and G <= H respectively.
  std::optional<Distinction> refutes_ge;
  std::optional<Distinction> refutes_le;
  /// (X, tb) pairs evaluated.
  std::size_t examined = 0;
  /// Experiment-specific findings (certified pairs, candidates, counts).
  Json details = Json::object();
};

/// Searches X over population(spec) at every tb in spec.tb_range for
/// o(G+X, s) != o(H+X, s). A distinction refutes G = H; exhaustion is
/// Inconclusive, never a proof of equality.
WitnessReport witness_search(Solver& solver, GameId g, GameId h, const EnumerationSpec& spec,
                             Execution exec = Execution::Parallel);

/// Re-solves the witness and checks the stored outcomes.
bool replays(Solver& solver, GameId g, GameId h, const Distinction& d);

struct InverseRefutation {
  GameId candidate;
  Distinction witness;  // separates G + candidate from 0
};

struct InverseSearchReport {
  GameId game;
  int tb = 0;
  EnumerationSpec bounds;
  std::size_t candidates = 0;
  std::vector<InverseCertificate> certified;
  std::vector<InverseRefutation> refuted;
  /// Neither certified nor refuted within the bounds.
  std::vector<GameId> surviving;
};

/// Every candidate H in population(spec) is either certified (G + H EQ0 by
/// the constructive tests) or refuted by a witness X from the same
/// population, else it survives.
InverseSearchReport inverse_search(Solver& solver, GameId g, int tb, const EnumerationSpec& spec,
                                   Execution exec = Execution::Parallel);

/// One checked instance of a suite or experiment.
struct Record {
  std::string instance;
  int tb = 0;
  /// "pass", "fail" or "inconclusive"; experiments also use "observed".
  std::string result;
  Json evidence = Json::object();
};

struct RunOptions {
  EnumerationSpec bounds;
  /// Family size for the number suites (|n| <= size, k <= size).
  int size = 3;
  /// Random pairs drawn by pairwise suites.
  std::size_t pairs = 2000;
  Execution exec = Execution::Parallel;
};

struct Report {
  std::string name;
  bool conjecture = false;
  RunOptions options;
  std::vector<Record> records;
  /// Suites: pass/fail. Experiments: a SearchResult name.
  std::string verdict;
  Json summary_details = Json::object();

  std::size_t count(const std::string& result) const;
  bool passed() const { return verdict == "pass" || verdict == "Inconclusive" || verdict == "Verified"; }

  /// One JSON object per record, then the summary object.
  std::vector<Json> json_lines() const;
  Json summary() const;
};

std::vector<std::string> suite_names();
std::vector<std::string> conjecture_names();

/// Defaults for a registered suite or experiment: the bounds its checks
/// are specified over.
RunOptions default_options(const std::string& name);

/// Throws std::invalid_argument for an unregistered name.
Report run_suite(Solver& solver, const std::string& name, const RunOptions& options);
Report run_conjecture(Solver& solver, const std::string& name, const RunOptions& options);

}  // namespace bidcg::explorer
