#include "bidcg/explorer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "bidcg/forms.hpp"
#include "bidcg/notation.hpp"

namespace bidcg::explorer {
namespace {

std::string outcome_str(Outcome o) { return std::string(1, to_char(o)); }

Json distinction_json(const NameTable& names, const Distinction& d) {
  return {{"x", names.print(d.x, PrintStyle::Named)},
          {"state", d.state.to_string()},
          {"g_outcome", outcome_str(d.g_outcome)},
          {"h_outcome", outcome_str(d.h_outcome)}};
}

Distinction from_separation(const kernels::Separation& s, std::span<const GameId> xs) {
  return {xs[s.x_index], s.state, s.g_outcome, s.h_outcome};
}

struct Item {
  GameId g;
  int tb;
};

std::vector<Item> cross(const std::vector<GameId>& forms, const std::vector<int>& tbs) {
  std::vector<Item> items;
  items.reserve(forms.size() * tbs.size());
  for (int tb : tbs) {
    for (GameId g : forms) items.push_back({g, tb});
  }
  return items;
}

// Fills one record per item, in item order, possibly in parallel. A body
// returning nullopt drops the item.
template <typename T, typename Body>
std::vector<Record> collect(const std::vector<T>& items, Execution exec, Body&& body) {
  std::vector<std::optional<Record>> slots(items.size());
  kernels::for_each_index(items.size(), exec, [&](std::size_t i) { slots[i] = body(items[i]); });
  std::vector<Record> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

Record record(std::string instance, int tb, bool ok, Json evidence) {
  return {std::move(instance), tb, ok ? "pass" : "fail", std::move(evidence)};
}

// Classical alternating play, written against the arena only: the player to
// move who cannot move loses.
class AlternatingOracle {
 public:
  explicit AlternatingOracle(const Arena& arena) : arena_(arena) {}

  Player winner(GameId g, Player to_move) {
    const std::uint64_t key = (std::uint64_t{g.index} << 1) | (to_move == Player::Left ? 0 : 1);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Player w = opponent(to_move);
    for (GameId o : arena_.options(g, to_move)) {
      if (winner(o, opponent(to_move)) == to_move) {
        w = to_move;
        break;
      }
    }
    memo_[key] = w;
    return w;
  }

 private:
  const Arena& arena_;
  std::unordered_map<std::uint64_t, Player> memo_;
};

// Constructive certificate for a number's inverse, used where the suites
// must not lean on a theorem.
std::optional<InverseCertificate> conjugate_inverse(Solver& solver, GameId g, int tb) {
  return InverseCertificate::certify(solver, g, solver.arena().conjugate(g), tb);
}

Json verdict_json(const NameTable& names, const Comparison& c, Relation r) { return to_json(names, c[r]); }

class Runner {
 public:
  Runner(Solver& solver, const RunOptions& options)
      : solver_(solver), arena_(solver.arena()), names_(arena_), opt_(options) {}

  std::string name(GameId g) const { return names_.print(g, PrintStyle::Named); }
  const NameTable& names() const { return names_; }
  Arena& arena() { return arena_; }
  Solver& solver() { return solver_; }
  const RunOptions& opt() const { return opt_; }
  std::vector<GameId> forms() { return population(arena_, opt_.bounds); }

 private:
  Solver& solver_;
  Arena& arena_;
  NameTable names_;
  RunOptions opt_;
};

// Checks one expected relation between two games, through a constructive
// inverse of the right-hand side.
Record expect_relation(Runner& run, const std::string& instance, GameId g, GameId h, int tb,
                       Relation expected) {
  Solver& solver = run.solver();
  const auto inverse = conjugate_inverse(solver, h, tb);
  Json evidence;
  if (!inverse) {
    evidence["error"] = "no constructive inverse for " + run.name(h);
    return record(instance, tb, false, std::move(evidence));
  }
  const Comparison c = compare(solver, g, h, tb, inverse);
  evidence["inverse"] = to_json(run.names(), *inverse);
  evidence["verdict"] = verdict_json(run.names(), c, expected);
  return record(instance, tb, c.proven(expected), std::move(evidence));
}

// ---------------------------------------------------------------- suites

std::vector<Record> suite_mmw(Runner& run) {
  return collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) {
    const OutcomeVector v = run.solver().outcome_vector(it.g, it.tb);
    const bool ok = v.monotone() && v.marker_worth();
    return std::optional(record(run.name(it.g), it.tb, ok,
                                {{"vector", v.to_string()},
                                 {"monotone", v.monotone()},
                                 {"marker_worth", v.marker_worth()}}));
  });
}

std::vector<Record> suite_determinacy(Runner& run) {
  return collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) {
    Json violations = Json::array();
    for (std::size_t i = 0; i < BudgetState::count(it.tb); ++i) {
      const BudgetState s = BudgetState::from_index(it.tb, i);
      const BidMatrix m = run.solver().bid_matrix(it.g, s);
      const bool row = m.has_all_left_row(), col = m.has_all_right_column();
      const bool agrees = row == (run.solver().partial_outcome(it.g, s) == Outcome::L);
      if (row == col || !agrees) violations.push_back(s.to_string());
    }
    const bool ok = violations.empty();
    return std::optional(record(run.name(it.g), it.tb, ok,
                                {{"states", BudgetState::count(it.tb)}, {"violations", std::move(violations)}}));
  });
}

std::vector<Record> suite_tb0_oracle(Runner& run) {
  const std::vector<GameId> forms = run.forms();
  // The oracle memo is not shared across threads: fill it serially first.
  AlternatingOracle oracle(run.arena());
  std::vector<std::string> expected;
  expected.reserve(forms.size());
  for (GameId g : forms) {
    // 0^: Left holds the marker, wins the tied zero bids and moves first.
    const Player first = oracle.winner(g, Player::Left);
    const Player second = oracle.winner(g, Player::Right);
    expected.push_back(std::string{first == Player::Left ? 'L' : 'R'} + (second == Player::Left ? 'L' : 'R'));
  }
  std::vector<std::size_t> idx(forms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return collect(idx, run.opt().exec, [&](std::size_t i) {
    const std::string got = run.solver().outcome_vector(forms[i], 0).to_string();
    return std::optional(record(run.name(forms[i]), 0, got == expected[i],
                                {{"solver", got}, {"alternating_oracle", expected[i]}}));
  });
}

std::vector<Record> suite_additive(Runner& run) {
  const std::vector<GameId> pool = run.forms();
  const auto& tbs = run.opt().bounds.tb_range;
  struct Pair {
    GameId a, b;
    int tb;
  };
  std::vector<Pair> pairs;
  std::mt19937_64 rng(run.opt().bounds.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < run.opt().pairs && !tbs.empty(); ++i) {
    const GameId a = pool[pick(rng)];
    const GameId b = pool[pick(rng)];
    pairs.push_back({a, b, tbs[i % tbs.size()]});
  }
  return collect(pairs, run.opt().exec, [&](const Pair& pr) -> std::optional<Record> {
    Solver& solver = run.solver();
    const GameId sum = run.arena().sum(pr.a, pr.b);
    const int tb = pr.tb;
    int applicable = 0;
    Json violations = Json::array();
    constexpr std::pair<Player, Player> kCases[] = {
        {Player::Right, Player::Right}, {Player::Right, Player::Left}, {Player::Left, Player::Right}};
    for (int p = 0; p <= tb; ++p) {
      for (int q = 0; p + q <= tb; ++q) {
        for (auto [gm, hm] : kCases) {
          const BudgetState gs{tb, p, gm}, hs{tb, q, hm};
          if (solver.partial_outcome(pr.a, gs) != Outcome::L) continue;
          if (solver.partial_outcome(pr.b, hs) != Outcome::L) continue;
          if (!solver.zero_bid_optimal(pr.a, gs, Player::Left)) continue;
          ++applicable;
          const Player sm = (gm == Player::Left || hm == Player::Left) ? Player::Left : Player::Right;
          const BudgetState ss{tb, p + q, sm};
          if (solver.partial_outcome(sum, ss) != Outcome::L) {
            violations.push_back({{"g_state", gs.to_string()}, {"h_state", hs.to_string()}, {"sum_state", ss.to_string()}});
          }
        }
      }
    }
    Record r = record(run.name(pr.a) + " + " + run.name(pr.b), tb, violations.empty(),
                      {{"applicable", applicable}, {"violations", std::move(violations)}});
    if (applicable == 0) r.result = "inconclusive";
    return r;
  });
}

std::vector<Record> suite_number_comparison(Runner& run) {
  std::vector<GameId> forms = run.forms();
  const int size = run.opt().size;
  for (int k = 1; k <= size; ++k) {
    for (std::int64_t m = -(std::int64_t{1} << (k + 1)); m <= (std::int64_t{1} << (k + 1)); ++m) {
      if (m % 2 != 0) forms.push_back(dyadic_form(run.arena(), DyadicValue(m, static_cast<std::uint32_t>(k))));
    }
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return collect(cross(forms, run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    Solver& solver = run.solver();
    const NumberCertificate cert = is_number(solver, it.g, it.tb);
    if (!cert.is_number) return std::nullopt;
    const Outcome at_zero = solver.partial_outcome(it.g, {it.tb, 0, Player::Right});
    const Comparison c = classify_vs_zero(solver, it.g, it.tb);
    const Status expected = at_zero == Outcome::L ? Status::Proven : Status::Refuted;
    bool zero_bids = true;
    for (std::size_t i = 0; i < BudgetState::count(it.tb) && zero_bids; ++i) {
      const BudgetState s = BudgetState::from_index(it.tb, i);
      zero_bids = solver.zero_bid_optimal(it.g, s, Player::Left) && solver.zero_bid_optimal(it.g, s, Player::Right);
    }
    Json evidence{{"o_at_0", outcome_str(at_zero)},
                  {"ge0", verdict_json(run.names(), c, Relation::GE0)},
                  {"zero_bids_optimal_everywhere", zero_bids}};
    if (c.status(Relation::GE0) == Status::Unknown) {
      return Record{run.name(it.g), it.tb, "inconclusive", std::move(evidence)};
    }
    return record(run.name(it.g), it.tb, c.status(Relation::GE0) == expected && zero_bids, std::move(evidence));
  });
}

struct Task {
  std::string instance;
  int tb;
  std::function<Record()> check;
};

std::vector<Record> run_tasks(const std::vector<Task>& tasks, Execution exec) {
  return collect(tasks, exec, [](const Task& t) { return std::optional(t.check()); });
}

std::vector<Record> suite_integers(Runner& run) {
  Arena& arena = run.arena();
  const int n_max = run.opt().size;
  std::vector<Task> tasks;
  for (int tb : run.opt().bounds.tb_range) {
    for (int n = -n_max; n <= n_max; ++n) {
      const GameId g = integer_form(arena, n);
      const std::string label = std::to_string(n) + " + conj(" + std::to_string(n) + ") = 0";
      tasks.push_back({label, tb, [&run, g, tb, label] {
                         const Comparison c = classify_vs_zero(run.solver(), run.arena().sum(g, run.arena().conjugate(g)), tb);
                         return record(label, tb, c.proven(Relation::EQ0), {{"verdict", verdict_json(run.names(), c, Relation::EQ0)}});
                       }});
    }
    for (int n = -n_max; n <= n_max; ++n) {
      for (int m = -n_max; m <= n_max; ++m) {
        const GameId sum = arena.sum(integer_form(arena, n), integer_form(arena, m));
        const GameId expected = integer_form(arena, n + m);
        const std::string label = "(" + std::to_string(n) + ") + (" + std::to_string(m) + ") = " + std::to_string(n + m);
        tasks.push_back({label, tb, [&run, sum, expected, tb, label] {
                           return expect_relation(run, label, sum, expected, tb, Relation::EQ0);
                         }});
        if (n == m) continue;
        const Relation order = n > m ? Relation::GT0 : Relation::LT0;
        const std::string olabel = std::to_string(n) + (n > m ? " > " : " < ") + std::to_string(m);
        const GameId gn = integer_form(arena, n), gm = integer_form(arena, m);
        tasks.push_back({olabel, tb, [&run, gn, gm, tb, olabel, order] {
                           return expect_relation(run, olabel, gn, gm, tb, order);
                         }});
      }
    }
    for (int n = -n_max; n <= n_max; ++n) {
      const GameId simple = arena.intern({integer_form(arena, n - 1)}, {integer_form(arena, n + 1)});
      const GameId g = integer_form(arena, n);
      const std::string label = "{" + std::to_string(n - 1) + "|" + std::to_string(n + 1) + "} = " + std::to_string(n);
      tasks.push_back({label, tb, [&run, simple, g, tb, label] {
                         return expect_relation(run, label, simple, g, tb, Relation::EQ0);
                       }});
    }
  }
  return run_tasks(tasks, run.opt().exec);
}

std::vector<Record> suite_dyadics(Runner& run) {
  Arena& arena = run.arena();
  const auto k_max = static_cast<std::uint32_t>(run.opt().size);
  std::vector<Task> tasks;
  for (int tb : run.opt().bounds.tb_range) {
    for (std::uint32_t k = 1; k <= k_max; ++k) {
      const GameId unit = unit_dyadic_form(arena, k);
      const std::string u = "1/" + std::to_string(1u << k);
      tasks.push_back({u + " is a number", tb, [&run, unit, tb, u] {
                         const NumberCertificate cert = is_number(run.solver(), unit, tb);
                         return record(u + " is a number", tb, cert.is_number, {{"certificate", to_json(run.names(), cert)}});
                       }});
      const GameId twice = arena.sum(unit, unit);
      const GameId half_up = unit_dyadic_form(arena, k - 1);
      const std::string dlabel = u + " + " + u + " = " + DyadicValue(1, k - 1).to_string();
      tasks.push_back({dlabel, tb, [&run, twice, half_up, tb, dlabel] {
                         return expect_relation(run, dlabel, twice, half_up, tb, Relation::EQ0);
                       }});
      const std::int64_t denom = std::int64_t{1} << k;
      for (std::int64_t m = 1; m <= denom + 1; m += 2) {
        const DyadicValue d(m, k);
        const GameId g = dyadic_form(arena, d);
        const std::string label = d.to_string() + " + conj(" + d.to_string() + ") = 0";
        tasks.push_back({label, tb, [&run, g, tb, label] {
                           const Comparison c = classify_vs_zero(run.solver(), run.arena().sum(g, run.arena().conjugate(g)), tb);
                           return record(label, tb, c.proven(Relation::EQ0), {{"verdict", verdict_json(run.names(), c, Relation::EQ0)}});
                         }});
      }
      for (std::int64_t m = 1; m <= denom; ++m) {
        const DyadicValue lo(m - 1, k), mid(m, k), hi(m + 1, k);
        const GameId simple = arena.intern({dyadic_form(arena, lo)}, {dyadic_form(arena, hi)});
        const GameId g = dyadic_form(arena, mid);
        const std::string label = "{" + lo.to_string() + "|" + hi.to_string() + "} = " + mid.to_string() +
                                  " (as " + std::to_string(m) + "/" + std::to_string(denom) + ")";
        tasks.push_back({label, tb, [&run, simple, g, tb, label] {
                           return expect_relation(run, label, simple, g, tb, Relation::EQ0);
                         }});
      }
    }
  }
  return run_tasks(tasks, run.opt().exec);
}

std::vector<Record> suite_infinitesimals(Runner& run) {
  Arena& arena = run.arena();
  const auto k_max = static_cast<std::uint32_t>(run.opt().size);
  const std::pair<const char*, GameId> games[] = {
      {"*", star_form(arena)}, {"^", up_form(arena)}, {"v", down_form(arena)}};
  std::vector<Task> tasks;
  for (int tb : run.opt().bounds.tb_range) {
    for (const auto& [label, g] : games) {
      const std::string instance = std::string("-1/2^k < ") + label + " < 1/2^k, k <= " + std::to_string(k_max);
      const GameId form = g;
      tasks.push_back({instance, tb, [&run, form, tb, instance, k_max] {
                         const InfinitesimalResult r = is_infinitesimal_bounded(run.solver(), form, tb, k_max);
                         Json evidence{{"k", r.k}};
                         if (r.evidence) evidence["comparison"] = to_json(run.names(), *r.evidence);
                         return record(instance, tb, r.kind == InfinitesimalResult::Kind::ProvenUpTo && r.k == k_max,
                                       std::move(evidence));
                       }});
    }
    if (tb == 0) continue;
    const GameId sum = arena.sum(up_form(arena), down_form(arena));
    if (tb == 1) {
      tasks.push_back({"o(^+v, 1^) = L", tb, [&run, sum, tb] {
                         const BudgetState s{tb, 1, Player::Left};
                         const Outcome with = run.solver().partial_outcome(sum, s);
                         const Outcome alone = run.solver().partial_outcome(Arena::zero(), s);
                         return record("o(^+v, 1^) = L", tb, with == Outcome::L && alone == Outcome::R,
                                       {{"o(^+v)", outcome_str(with)}, {"o(0)", outcome_str(alone)}, {"state", s.to_string()}});
                       }});
    }
    tasks.push_back({"^+v != 0", tb, [&run, sum, tb] {
                       EnumerationSpec one = run.opt().bounds;
                       one.tb_range = {tb};
                       const WitnessReport w = witness_search(run.solver(), sum, Arena::zero(), one, Execution::Serial);
                       Json evidence{{"witness", w.counterexample ? distinction_json(run.names(), *w.counterexample) : Json(nullptr)}};
                       return record("^+v != 0", tb, w.counterexample.has_value(), std::move(evidence));
                     }});
  }
  return run_tasks(tasks, run.opt().exec);
}

std::vector<Record> suite_zero_sandwich(Runner& run) {
  Arena& arena = run.arena();
  const int k_max = run.opt().size;
  std::vector<Task> tasks;
  for (int tb : run.opt().bounds.tb_range) {
    for (int k = 1; k <= k_max; ++k) {
      const GameId ints = arena.intern({integer_form(arena, -k)}, {integer_form(arena, k)});
      const GameId unit = unit_dyadic_form(arena, static_cast<std::uint32_t>(k));
      const GameId dyads = arena.intern({arena.conjugate(unit)}, {unit});
      const std::string d = "1/" + std::to_string(1 << k);
      const std::pair<std::string, GameId> cases[] = {
          {"{-" + std::to_string(k) + "|" + std::to_string(k) + "} = 0", ints}, {"{-" + d + "|" + d + "} = 0", dyads}};
      for (const auto& [label, g] : cases) {
        tasks.push_back({label, tb, [&run, g = g, tb, label = label] {
                           const Comparison c = analyze(run.solver(), g, tb);
                           return record(label, tb, c.proven(Relation::EQ0), {{"verdict", verdict_json(run.names(), c, Relation::EQ0)}});
                         }});
      }
    }
  }
  return run_tasks(tasks, run.opt().exec);
}

Json inverse_search_json(const NameTable& names, const InverseSearchReport& r) {
  Json certified = Json::array();
  for (const auto& c : r.certified) certified.push_back(to_json(names, c));
  Json surviving = Json::array();
  for (GameId g : r.surviving) surviving.push_back(names.print(g, PrintStyle::Named));
  Json sample = Json::array();
  for (std::size_t i = 0; i < r.refuted.size() && i < 5; ++i) {
    sample.push_back({{"candidate", names.print(r.refuted[i].candidate, PrintStyle::Named)},
                      {"witness", distinction_json(names, r.refuted[i].witness)}});
  }
  return {{"candidates", r.candidates},
          {"certified", std::move(certified)},
          {"refuted", r.refuted.size()},
          {"surviving", std::move(surviving)},
          {"refutation_sample", std::move(sample)}};
}

std::vector<Record> suite_no_group_structure(Runner& run) {
  std::vector<Record> out;
  const GameId star = star_form(run.arena());
  for (int tb : run.opt().bounds.tb_range) {
    if (tb == 0) continue;
    const InverseSearchReport r = inverse_search(run.solver(), star, tb, run.opt().bounds, run.opt().exec);
    const bool ok = r.certified.empty() && r.surviving.empty();
    out.push_back(record("no inverse of *", tb, ok, inverse_search_json(run.names(), r)));
  }
  return out;
}

std::vector<Record> suite_nozero_observation(Runner& run) {
  Arena& arena = run.arena();
  const GameId up = up_form(arena);
  const GameId tb2 = arena.intern({Arena::zero()}, {up});
  const GameId tb4 = arena.intern({Arena::zero()}, {tb2});
  std::vector<Record> out;
  for (auto [g, tb, label] : {std::tuple{tb4, 4, "{0|{0|^}}"}, std::tuple{tb2, 2, "{0|^}"}}) {
    const BudgetState s{tb, 0, Player::Right};
    const Outcome o = run.solver().partial_outcome(g, s);
    const bool zero = run.solver().zero_bid_optimal(g, s, Player::Left);
    const Comparison c = classify_vs_zero(run.solver(), g, tb);
    out.push_back(record(label, tb, o == Outcome::L && !zero,
                         {{"o_at_0", outcome_str(o)},
                          {"zero_bid_optimal_left", zero},
                          {"ge0", verdict_json(run.names(), c, Relation::GE0)}}));
  }
  return out;
}

std::vector<Record> suite_conjugate_duality(Runner& run) {
  return collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) {
    const OutcomeVector v = run.solver().outcome_vector(it.g, it.tb);
    const OutcomeVector c = run.solver().outcome_vector(run.arena().conjugate(it.g), it.tb);
    bool ok = true;
    for (std::size_t i = 0; i < BudgetState::count(it.tb) && ok; ++i) {
      const BudgetState s = BudgetState::from_index(it.tb, i);
      ok = c.at(s) == flip(v.at(s.mirrored()));
    }
    return std::optional(record(run.name(it.g), it.tb, ok, {{"vector", v.to_string()}, {"conjugate", c.to_string()}}));
  });
}

std::vector<Record> suite_last_move_wins(Runner& run) {
  return collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    Arena& arena = run.arena();
    int applicable = 0;
    Json violations = Json::array();
    for (std::size_t i = 0; i < BudgetState::count(it.tb); ++i) {
      const BudgetState s = BudgetState::from_index(it.tb, i);
      for (Player p : {Player::Left, Player::Right}) {
        const int mine = s.budget(p), theirs = s.budget(opponent(p));
        if (mine < theirs || (mine == theirs && s.marker != p)) continue;
        bool finishing = false;
        for (GameId o : arena.options(it.g, p)) finishing = finishing || arena.options(o, opponent(p)).empty();
        if (!finishing) continue;
        ++applicable;
        if (run.solver().partial_outcome(it.g, s) != win_for(p)) violations.push_back(s.to_string());
      }
    }
    if (applicable == 0) return std::nullopt;
    return record(run.name(it.g), it.tb, violations.empty(), {{"applicable", applicable}, {"violations", std::move(violations)}});
  });
}

// ---------------------------------------------------------- experiments

struct Finding {
  std::vector<Record> records;
  bool counterexample = false;
  Json details = Json::object();
};

Finding conj_inverse_is_conjugate(Runner& run) {
  const std::vector<GameId> forms = run.forms();
  struct Pair {
    std::size_t i, j;
    int tb;
  };
  std::vector<Pair> pairs;
  for (int tb : run.opt().bounds.tb_range) {
    for (std::size_t i = 0; i < forms.size(); ++i) {
      for (std::size_t j = i; j < forms.size(); ++j) pairs.push_back({i, j, tb});
    }
  }
  Finding f;
  f.records = collect(pairs, run.opt().exec, [&](const Pair& p) -> std::optional<Record> {
    Solver& solver = run.solver();
    const GameId g = forms[p.i], h = forms[p.j];
    const auto cert = InverseCertificate::certify(solver, g, h, p.tb);
    if (!cert) return std::nullopt;
    // Inverses are unique up to equality, so h = conj(g) iff conj(g) is
    // also an inverse of g.
    const GameId cg = run.arena().conjugate(g);
    const Comparison c = classify_vs_zero(solver, run.arena().sum(g, cg), p.tb);
    Json evidence{{"certificate", to_json(run.names(), *cert)},
                  {"h_is_conj_g", verdict_json(run.names(), c, Relation::EQ0)}};
    const std::string label = run.name(g) + " + " + run.name(h) + " = 0";
    if (c.proven(Relation::EQ0)) return Record{label, p.tb, "pass", std::move(evidence)};
    if (c.status(Relation::EQ0) == Status::Refuted) return Record{label, p.tb, "fail", std::move(evidence)};
    return Record{label, p.tb, "inconclusive", std::move(evidence)};
  });
  f.counterexample = std::any_of(f.records.begin(), f.records.end(), [](const Record& r) { return r.result == "fail"; });
  f.details["pairs_examined"] = pairs.size();
  f.details["certified_pairs"] = f.records.size();
  return f;
}

// Tri-state conjunction of proof obligations.
struct Tally {
  bool refuted = false;
  bool unknown = false;
  void add(Status s) {
    refuted = refuted || s == Status::Refuted;
    unknown = unknown || s == Status::Unknown;
  }
  Status status() const { return refuted ? Status::Refuted : unknown ? Status::Unknown : Status::Proven; }
};

std::vector<GameId> subpositions(const Arena& arena, GameId g) {
  std::vector<GameId> out{g};
  std::unordered_set<GameId> seen{g};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Player p : {Player::Left, Player::Right}) {
      for (GameId o : arena.options(out[i], p)) {
        if (seen.insert(o).second) out.push_back(o);
      }
    }
  }
  return out;
}

Finding conj_number_definitions(Runner& run) {
  Finding f;
  f.records = collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) {
    Solver& solver = run.solver();
    Arena& arena = run.arena();
    Tally i_crit, ii_crit;
    for (GameId h : subpositions(arena, it.g)) {
      for (GameId hl : arena.left(h)) {
        for (GameId hr : arena.right(h)) i_crit.add(compare(solver, hl, hr, it.tb).status(Relation::LT0));
        ii_crit.add(compare(solver, h, hl, it.tb).status(Relation::GT0));
      }
      for (GameId hr : arena.right(h)) ii_crit.add(compare(solver, h, hr, it.tb).status(Relation::LT0));
    }
    const Status a = i_crit.status(), b = ii_crit.status();
    std::string result = "inconclusive";
    if (a == b && a != Status::Unknown) result = "pass";
    if ((a == Status::Proven && b == Status::Refuted) || (a == Status::Refuted && b == Status::Proven)) result = "fail";
    return std::optional(Record{run.name(it.g), it.tb, result, {{"criterion_i", to_string(a)}, {"criterion_ii", to_string(b)}}});
  });
  std::map<std::string, std::size_t> agreement;
  for (const Record& r : f.records) {
    agreement[r.evidence["criterion_i"].get<std::string>() + "/" + r.evidence["criterion_ii"].get<std::string>()]++;
    f.counterexample = f.counterexample || r.result == "fail";
  }
  f.details["agreement"] = agreement;
  return f;
}

Finding conj_unique_idempotent(Runner& run) {
  const std::vector<GameId> forms = run.forms();
  Finding f;
  f.records = collect(cross(forms, run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    Solver& solver = run.solver();
    const GameId doubled = run.arena().sum(it.g, it.g);
    const Comparison c = compare(solver, doubled, it.g, it.tb);
    if (c.status(Relation::EQ0) == Status::Refuted) return std::nullopt;
    const Comparison zero = classify_vs_zero(solver, it.g, it.tb);
    Json evidence{{"g+g=g", verdict_json(run.names(), c, Relation::EQ0)},
                  {"g=0", verdict_json(run.names(), zero, Relation::EQ0)}};
    if (c.proven(Relation::EQ0)) {
      const Status z = zero.status(Relation::EQ0);
      const std::string result = z == Status::Proven ? "pass" : z == Status::Refuted ? "fail" : "inconclusive";
      return Record{run.name(it.g), it.tb, result, std::move(evidence)};
    }
    // Undecided by the tests: look for a separating X within the bounds.
    EnumerationSpec one = run.opt().bounds;
    one.tb_range = {it.tb};
    const WitnessReport w = witness_search(solver, doubled, it.g, one, Execution::Serial);
    if (w.counterexample) return std::nullopt;
    if (zero.proven(Relation::EQ0)) return Record{run.name(it.g), it.tb, "pass", std::move(evidence)};
    evidence["witness_search"] = "no separating X within bounds";
    return Record{run.name(it.g), it.tb, "inconclusive", std::move(evidence)};
  });
  f.counterexample = std::any_of(f.records.begin(), f.records.end(), [](const Record& r) { return r.result == "fail"; });
  return f;
}

Finding conj_number_simplicity(Runner& run) {
  Finding f;
  const auto exponent = static_cast<std::uint32_t>(run.opt().size + 1);
  f.records = collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    if (!is_number(run.solver(), it.g, it.tb).is_number) return std::nullopt;
    const auto value = identify_number_value(run.solver(), it.g, it.tb, exponent);
    if (value) return Record{run.name(it.g), it.tb, "pass", {{"value", value->to_string()}}};
    return Record{run.name(it.g), it.tb, "inconclusive", {{"value", nullptr}, {"max_exponent", exponent}}};
  });
  f.details["max_exponent"] = exponent;
  return f;
}

Finding conj_positive_infinitesimals(Runner& run) {
  Finding f;
  const auto k_max = static_cast<std::uint32_t>(run.opt().size);
  f.records = collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    if (it.tb == 0) return std::nullopt;
    const Comparison c = classify_vs_zero(run.solver(), it.g, it.tb);
    if (!c.proven(Relation::GT0)) return std::nullopt;
    const InfinitesimalResult r = is_infinitesimal_bounded(run.solver(), it.g, it.tb, k_max);
    if (r.kind == InfinitesimalResult::Kind::Refuted) return std::nullopt;
    const bool candidate = r.kind == InfinitesimalResult::Kind::ProvenUpTo;
    return Record{run.name(it.g), it.tb, candidate ? "observed" : "inconclusive",
                  {{"gt0", verdict_json(run.names(), c, Relation::GT0)}, {"bounded_k", r.k}}};
  });
  f.details["k_max"] = k_max;
  f.details["note"] = "a bounded k is evidence only; infinitesimality needs every k";
  return f;
}

Finding conj_integer_exceeds_younger(Runner& run) {
  Finding f;
  f.records = collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) {
    Solver& solver = run.solver();
    Arena& arena = run.arena();
    const int n = static_cast<int>(arena.birthday(it.g)) + 1;
    const GameId ng = integer_form(arena, n);
    const auto inverse = conjugate_inverse(solver, ng, it.tb);
    const Comparison c = compare(solver, it.g, ng, it.tb, inverse);
    const GameId diff = arena.sum(it.g, arena.conjugate(ng));
    bool right_zero = true;
    for (std::size_t i = 0; i < BudgetState::count(it.tb) && right_zero; ++i) {
      right_zero = solver.zero_bid_optimal(diff, BudgetState::from_index(it.tb, i), Player::Right);
    }
    const Status s = c.status(Relation::LT0);
    const std::string result = s == Status::Proven ? "pass" : s == Status::Refuted ? "fail" : "inconclusive";
    return std::optional(Record{run.name(it.g) + " < " + std::to_string(n), it.tb, result,
                                {{"lt", verdict_json(run.names(), c, Relation::LT0)},
                                 {"right_zero_bid_optimal_in_g_minus_n", right_zero}}});
  });
  f.counterexample = std::any_of(f.records.begin(), f.records.end(), [](const Record& r) { return r.result == "fail"; });
  return f;
}

Finding conj_positive_wins_everywhere(Runner& run) {
  Finding f;
  f.records = collect(cross(run.forms(), run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    const Comparison c = classify_vs_zero(run.solver(), it.g, it.tb);
    if (!c.proven(Relation::GT0)) return std::nullopt;
    const OutcomeVector v = run.solver().outcome_vector(it.g, it.tb);
    Json evidence{{"gt0", verdict_json(run.names(), c, Relation::GT0)}, {"vector", v.to_string()}};
    for (std::size_t pos = 0; pos < v.entries().size(); ++pos) {
      if (v.entries()[pos] == Outcome::R) {
        evidence["losing_state"] = OutcomeVector::state_at(it.tb, pos).to_string();
        return Record{run.name(it.g), it.tb, "fail", std::move(evidence)};
      }
    }
    return Record{run.name(it.g), it.tb, "pass", std::move(evidence)};
  });
  f.counterexample = std::any_of(f.records.begin(), f.records.end(), [](const Record& r) { return r.result == "fail"; });
  return f;
}

Finding conj_zero_bid_necessity(Runner& run) {
  Finding f;
  const std::vector<GameId> forms = run.forms();
  f.records = collect(cross(forms, run.opt().bounds.tb_range), run.opt().exec, [&](const Item& it) -> std::optional<Record> {
    Solver& solver = run.solver();
    const BudgetState zero{it.tb, 0, Player::Right};
    if (solver.partial_outcome(it.g, zero) != Outcome::L) return std::nullopt;
    if (solver.zero_bid_optimal(it.g, zero, Player::Left)) return std::nullopt;
    EnumerationSpec one = run.opt().bounds;
    one.tb_range = {it.tb};
    const WitnessReport w = witness_search(solver, it.g, Arena::zero(), one, Execution::Serial);
    Json evidence{{"refuting_x", w.refutes_ge ? distinction_json(run.names(), *w.refutes_ge) : Json(nullptr)}};
    // A refuted G >= 0 here answers the open problem positively.
    return Record{run.name(it.g), it.tb, w.refutes_ge ? "observed" : "inconclusive", std::move(evidence)};
  });
  f.counterexample = std::any_of(f.records.begin(), f.records.end(), [](const Record& r) { return r.result == "observed"; });
  return f;
}

using SuiteFn = std::vector<Record> (*)(Runner&);
using ConjFn = Finding (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"mmw", suite_mmw},
      {"determinacy", suite_determinacy},
      {"tb0-oracle", suite_tb0_oracle},
      {"additive-property", suite_additive},
      {"number-comparison", suite_number_comparison},
      {"integers", suite_integers},
      {"dyadics", suite_dyadics},
      {"infinitesimals", suite_infinitesimals},
      {"zero-sandwich", suite_zero_sandwich},
      {"no-group-structure", suite_no_group_structure},
      {"nozero-observation", suite_nozero_observation},
      {"conjugate-duality", suite_conjugate_duality},
      {"last-move-wins", suite_last_move_wins},
  };
  return table;
}

// The claim each experiment tries to refute.
const std::map<std::string, std::string>& claims() {
  static const std::map<std::string, std::string> table{
      {"inverse-is-conjugate", "if G + H = 0 then H = conj(G)"},
      {"number-definition-equivalence", "H^L < H^R for all subpositions iff H^L < H < H^R for all subpositions"},
      {"unique-idempotent", "G + G = G implies G = 0"},
      {"number-simplicity", "every number equals a dyadic rational"},
      {"positive-infinitesimals", "no G > 0 lies below every 1/2^k (candidates are reported)"},
      {"integer-exceeds-younger", "n > G whenever birthday(G) < n"},
      {"positive-wins-everywhere", "G > 0 implies o(G, s) = L at every state s"},
      {"zero-bid-necessity", "o(G,0) = L without a Left 0-bid win still gives G >= 0"},
  };
  return table;
}

const std::vector<std::pair<std::string, ConjFn>>& conjectures() {
  static const std::vector<std::pair<std::string, ConjFn>> table{
      {"inverse-is-conjugate", conj_inverse_is_conjugate},
      {"number-definition-equivalence", conj_number_definitions},
      {"unique-idempotent", conj_unique_idempotent},
      {"number-simplicity", conj_number_simplicity},
      {"positive-infinitesimals", conj_positive_infinitesimals},
      {"integer-exceeds-younger", conj_integer_exceeds_younger},
      {"positive-wins-everywhere", conj_positive_wins_everywhere},
      {"zero-bid-necessity", conj_zero_bid_necessity},
  };
  return table;
}

template <typename Table>
auto lookup(const Table& table, const std::string& name, const char* kind) {
  for (const auto& [n, fn] : table) {
    if (n == name) return fn;
  }
  throw std::invalid_argument(std::string("unknown ") + kind + " '" + name + "'");
}

}  // namespace

const char* to_string(SearchResult r) {
  switch (r) {
    case SearchResult::Verified: return "Verified";
    case SearchResult::CounterexampleFound: return "CounterexampleFound";
    case SearchResult::Inconclusive: return "Inconclusive";
  }
  return "?";
}

WitnessReport witness_search(Solver& solver, GameId g, GameId h, const EnumerationSpec& spec, Execution exec) {
  Arena& arena = solver.arena();
  WitnessReport report;
  report.claim = print(arena, g) + " = " + print(arena, h);
  report.bounds = spec;
  const std::vector<GameId> xs = population(arena, spec);
  for (int tb : spec.tb_range) {
    if (report.refutes_ge && report.refutes_le) break;
    const kernels::SeparationScan scan = kernels::scan_separations(solver, g, h, xs, tb, exec);
    report.examined += scan.examined;
    if (scan.first && !report.counterexample) report.counterexample = from_separation(*scan.first, xs);
    if (scan.below && !report.refutes_ge) report.refutes_ge = from_separation(*scan.below, xs);
    if (scan.above && !report.refutes_le) report.refutes_le = from_separation(*scan.above, xs);
  }
  report.result = report.counterexample ? SearchResult::CounterexampleFound : SearchResult::Inconclusive;
  return report;
}

bool replays(Solver& solver, GameId g, GameId h, const Distinction& d) {
  Arena& arena = solver.arena();
  return solver.partial_outcome(arena.sum(g, d.x), d.state) == d.g_outcome &&
         solver.partial_outcome(arena.sum(h, d.x), d.state) == d.h_outcome && d.g_outcome != d.h_outcome;
}

InverseSearchReport inverse_search(Solver& solver, GameId g, int tb, const EnumerationSpec& spec, Execution exec) {
  Arena& arena = solver.arena();
  InverseSearchReport report;
  report.game = g;
  report.tb = tb;
  report.bounds = spec;
  const std::vector<GameId> xs = population(arena, spec);
  report.candidates = xs.size();

  struct Verdict {
    std::optional<InverseCertificate> cert;
    std::optional<Distinction> witness;
  };
  std::vector<Verdict> verdicts(xs.size());
  kernels::for_each_index(xs.size(), exec, [&](std::size_t i) {
    Verdict& v = verdicts[i];
    v.cert = InverseCertificate::certify(solver, g, xs[i], tb);
    if (v.cert) return;
    const GameId sum = arena.sum(g, xs[i]);
    const auto scan = kernels::scan_separations(solver, sum, Arena::zero(), xs, tb, Execution::Serial, false);
    if (scan.first) v.witness = from_separation(*scan.first, xs);
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (verdicts[i].cert) {
      report.certified.push_back(*verdicts[i].cert);
    } else if (verdicts[i].witness) {
      report.refuted.push_back({xs[i], *verdicts[i].witness});
    } else {
      report.surviving.push_back(xs[i]);
    }
  }
  return report;
}

std::size_t Report::count(const std::string& result) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const Record& r) { return r.result == result; }));
}

Json Report::summary() const {
  Json j;
  j["suite"] = name;
  j["summary"] = true;
  j["kind"] = conjecture ? "conjecture" : "suite";
  j["verdict"] = verdict;
  if (conjecture) j["conclusive"] = false;
  j["instances"] = records.size();
  j["counts"] = {{"pass", count("pass")},
                 {"fail", count("fail")},
                 {"inconclusive", count("inconclusive")},
                 {"observed", count("observed")}};
  j["bounds"] = to_json(options.bounds);
  j["size"] = options.size;
  j["pairs"] = options.pairs;
  j["details"] = summary_details;
  return j;
}

std::vector<Json> Report::json_lines() const {
  std::vector<Json> out;
  out.reserve(records.size() + 1);
  for (const Record& r : records) {
    Json j;
    j["suite"] = name;
    j["instance"] = r.instance;
    j["tb"] = r.tb;
    j["result"] = r.result;
    j["evidence"] = r.evidence;
    out.push_back(std::move(j));
  }
  out.push_back(summary());
  return out;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [n, fn] : suites()) out.push_back(n);
  return out;
}

std::vector<std::string> conjecture_names() {
  std::vector<std::string> out;
  for (const auto& [n, fn] : conjectures()) out.push_back(n);
  return out;
}

RunOptions default_options(const std::string& name) {
  RunOptions o;
  o.bounds.max_birthday = 2;
  o.bounds.tb_range = {0, 1, 2};
  if (name == "mmw" || name == "determinacy") {
    o.bounds.max_birthday = 3;
    o.bounds.top_day_sample = 1000;
    o.bounds.tb_range = {0, 1, 2, 3, 4};
  } else if (name == "tb0-oracle") {
    o.bounds.max_birthday = 3;
    o.bounds.top_day_sample = 1000;
    o.bounds.tb_range = {0};
  } else if (name == "conjugate-duality" || name == "last-move-wins") {
    o.bounds.tb_range = {0, 1, 2, 3, 4};
  } else if (name == "additive-property") {
    o.bounds.tb_range = {0, 1, 2, 3};
  } else if (name == "integers" || name == "dyadics" || name == "infinitesimals" || name == "zero-sandwich") {
    o.bounds.tb_range = {0, 1, 2, 3};
  } else if (name == "no-group-structure") {
    o.bounds.tb_range = {1, 2};
  } else if (name == "nozero-observation") {
    o.bounds.tb_range = {2, 4};
  }
  return o;
}

Report run_suite(Solver& solver, const std::string& name, const RunOptions& options) {
  const SuiteFn fn = lookup(suites(), name, "suite");
  Runner run(solver, options);
  Report report;
  report.name = name;
  report.options = options;
  report.records = fn(run);
  report.verdict = report.count("fail") == 0 ? "pass" : "fail";
  if (name == "no-group-structure" &&
      std::find(options.bounds.tb_range.begin(), options.bounds.tb_range.end(), 0) != options.bounds.tb_range.end()) {
    report.summary_details["excluded"] = "tb 0 is alternating play, where * + * = 0";
  }
  return report;
}

Report run_conjecture(Solver& solver, const std::string& name, const RunOptions& options) {
  const ConjFn fn = lookup(conjectures(), name, "conjecture");
  Runner run(solver, options);
  Finding f = fn(run);
  Report report;
  report.name = name;
  report.conjecture = true;
  report.options = options;
  report.records = std::move(f.records);
  report.verdict = to_string(f.counterexample ? SearchResult::CounterexampleFound : SearchResult::Inconclusive);
  report.summary_details = std::move(f.details);
  report.summary_details["claim"] = claims().at(name);
  report.summary_details["label"] = "bounded experiment; not a proof";
  return report;
}

}  // namespace bidcg::explorer
