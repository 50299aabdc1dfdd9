#include "bidcg/algebra.hpp"

#include <stdexcept>
#include <unordered_map>

#include "bidcg/notation.hpp"

namespace bidcg {
namespace {

constexpr const char* kOrderPreservation = "order preservation under an inverse";
constexpr const char* kNumbersInvertible = "numbers are invertible with the conjugate as inverse";
constexpr const char* kDyadicsInvertible = "dyadic rationals are numbers; n/2^k + conj(n/2^k) = 0";
constexpr const char* kZeroSandwich = "{G|H} = 0 for G < 0 and H > 0 with optimal 0-bid strategies";

RelationVerdict verdict(Relation r, Status s, Evidence e = {}) { return {r, s, std::move(e)}; }

Evidence merged(const Evidence& a, const Evidence& b) {
  Evidence e;
  e.tests = a.tests;
  e.tests.insert(e.tests.end(), b.tests.begin(), b.tests.end());
  e.theorem = !a.theorem.empty() ? a.theorem : b.theorem;
  e.witness = a.witness ? a.witness : b.witness;
  return e;
}

// The four derived relations are determined by GE0 and LE0:
// GT0 = GE0 and not LE0, LT0 = LE0 and not GE0, EQ0 = both, FUZZY0 = neither.
Comparison combine(GameId lhs, GameId rhs, int tb, RelationVerdict ge, RelationVerdict le) {
  Comparison c{lhs, rhs, tb, {}};
  const Status g = ge.status, l = le.status;
  auto pick_refuted = [&](const RelationVerdict& a, const RelationVerdict& b) {
    return a.status == Status::Refuted ? a.evidence : b.evidence;
  };
  auto pick_proven = [&](const RelationVerdict& a, const RelationVerdict& b) {
    return a.status == Status::Proven ? a.evidence : b.evidence;
  };

  if (g == Status::Proven && l == Status::Refuted) {
    c[Relation::GT0] = verdict(Relation::GT0, Status::Proven, merged(ge.evidence, le.evidence));
  } else if (g == Status::Refuted || l == Status::Proven) {
    c[Relation::GT0] = verdict(Relation::GT0, Status::Refuted, g == Status::Refuted ? ge.evidence : le.evidence);
  } else {
    c[Relation::GT0] = verdict(Relation::GT0, Status::Unknown);
  }

  if (l == Status::Proven && g == Status::Refuted) {
    c[Relation::LT0] = verdict(Relation::LT0, Status::Proven, merged(le.evidence, ge.evidence));
  } else if (l == Status::Refuted || g == Status::Proven) {
    c[Relation::LT0] = verdict(Relation::LT0, Status::Refuted, l == Status::Refuted ? le.evidence : ge.evidence);
  } else {
    c[Relation::LT0] = verdict(Relation::LT0, Status::Unknown);
  }

  if (g == Status::Proven && l == Status::Proven) {
    c[Relation::EQ0] = verdict(Relation::EQ0, Status::Proven, merged(ge.evidence, le.evidence));
  } else if (g == Status::Refuted || l == Status::Refuted) {
    c[Relation::EQ0] = verdict(Relation::EQ0, Status::Refuted, pick_refuted(ge, le));
  } else {
    c[Relation::EQ0] = verdict(Relation::EQ0, Status::Unknown);
  }

  if (g == Status::Refuted && l == Status::Refuted) {
    c[Relation::FUZZY0] = verdict(Relation::FUZZY0, Status::Proven, merged(ge.evidence, le.evidence));
  } else if (g == Status::Proven || l == Status::Proven) {
    c[Relation::FUZZY0] = verdict(Relation::FUZZY0, Status::Refuted, pick_proven(ge, le));
  } else {
    c[Relation::FUZZY0] = verdict(Relation::FUZZY0, Status::Unknown);
  }

  ge.relation = Relation::GE0;
  le.relation = Relation::LE0;
  c[Relation::GE0] = std::move(ge);
  c[Relation::LE0] = std::move(le);
  return c;
}

Outcome outcome_with(Solver& solver, GameId g, GameId x, const BudgetState& s) {
  return solver.partial_outcome(solver.arena().sum(g, x), s);
}

// Carries a classification of D = G + H' over to G against H. Witnesses
// X = 0 for D become X = H' for the pair.
Comparison translate(Solver& solver, const Comparison& d, GameId g, const InverseCertificate& inv) {
  Comparison c = d;
  c.lhs = g;
  c.rhs = inv.game();
  for (RelationVerdict& v : c.verdicts) {
    if (v.status == Status::Unknown) continue;
    if (v.evidence.theorem.empty()) {
      v.evidence.theorem = kOrderPreservation;
    } else {
      v.evidence.theorem = std::string(kOrderPreservation) + "; " + v.evidence.theorem;
    }
    if (v.evidence.witness && v.evidence.witness->x == Arena::zero()) {
      Witness w = *v.evidence.witness;
      w.x = inv.inverse();
      w.rhs = outcome_with(solver, inv.game(), w.x, w.state);
      if (w.rhs != v.evidence.witness->rhs) {
        throw std::logic_error("inverse certificate disagrees with 0 at " + w.state.to_string());
      }
      v.evidence.witness = w;
    }
  }
  return c;
}

std::string literal(Solver& solver, GameId g) { return print(solver.arena(), g, PrintStyle::Literal); }

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::GE0: return "GE0";
    case Relation::LE0: return "LE0";
    case Relation::GT0: return "GT0";
    case Relation::LT0: return "LT0";
    case Relation::EQ0: return "EQ0";
    case Relation::FUZZY0: return "FUZZY0";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Proven: return "Proven";
    case Status::Refuted: return "Refuted";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

std::optional<Relation> Comparison::strongest() const {
  for (Relation r : {Relation::EQ0, Relation::GT0, Relation::LT0, Relation::FUZZY0, Relation::GE0,
                     Relation::LE0}) {
    if (proven(r)) return r;
  }
  return std::nullopt;
}

Comparison classify_vs_zero(Solver& solver, GameId g, int tb) {
  const BudgetState bottom{tb, 0, Player::Right};
  const BudgetState top{tb, tb, Player::Left};
  const Outcome o0 = solver.partial_outcome(g, bottom);
  const Outcome otop = solver.partial_outcome(g, top);

  RelationVerdict ge{Relation::GE0, Status::Unknown, {}};
  if (o0 == Outcome::R) {
    ge.status = Status::Refuted;
    ge.evidence.tests = {7};
    ge.evidence.witness = Witness{Arena::zero(), bottom, Outcome::R, Outcome::L};
  } else if (solver.zero_bid_optimal(g, bottom, Player::Left)) {
    ge.status = Status::Proven;
    ge.evidence.tests = {1};
  } else {
    ge.evidence.note = "o(G,0)=L but no Left 0-bid certificate";
  }

  RelationVerdict le{Relation::LE0, Status::Unknown, {}};
  if (otop == Outcome::L) {
    le.status = Status::Refuted;
    le.evidence.tests = {6};
    le.evidence.witness = Witness{Arena::zero(), top, Outcome::L, Outcome::R};
  } else if (solver.zero_bid_optimal(g, top, Player::Right)) {
    le.status = Status::Proven;
    le.evidence.tests = {2};
  } else {
    le.evidence.note = "o(G,TB^)=R but no Right 0-bid certificate";
  }

  Comparison c = combine(g, Arena::zero(), tb, std::move(ge), std::move(le));
  // Name the corollary items for the derived verdicts.
  if (c.proven(Relation::GT0)) c[Relation::GT0].evidence.tests = {3};
  if (c.proven(Relation::LT0)) c[Relation::LT0].evidence.tests = {4};
  if (c.proven(Relation::EQ0)) c[Relation::EQ0].evidence.tests = {1, 2};
  if (c.proven(Relation::FUZZY0)) c[Relation::FUZZY0].evidence.tests = {5};
  return c;
}

std::optional<InverseCertificate> InverseCertificate::certify(Solver& solver, GameId game,
                                                              GameId inverse, int tb) {
  const Comparison c = classify_vs_zero(solver, solver.arena().sum(game, inverse), tb);
  if (!c.proven(Relation::EQ0)) return std::nullopt;
  return InverseCertificate(game, inverse, tb, c[Relation::EQ0].evidence);
}

InverseCertificate InverseCertificate::of_dyadic(Arena& arena, DyadicValue v, int tb) {
  Evidence e;
  e.theorem = kDyadicsInvertible;
  return InverseCertificate(dyadic_form(arena, v), dyadic_form(arena, -v), tb, std::move(e));
}

InverseCertificate NumberCertificate::inverse(Arena& arena) const {
  if (!is_number) throw std::invalid_argument("inverse of an uncertified number");
  Evidence e;
  e.theorem = kNumbersInvertible;
  return InverseCertificate(form, arena.conjugate(form), tb, std::move(e));
}

Comparison compare(Solver& solver, GameId g, GameId h, int tb,
                   const std::optional<InverseCertificate>& inverse_of_h) {
  Arena& arena = solver.arena();
  if (inverse_of_h) {
    if (inverse_of_h->game() != h || inverse_of_h->tb() != tb) {
      throw std::invalid_argument("inverse certificate is not for this game and total budget");
    }
    return translate(solver, classify_vs_zero(solver, arena.sum(g, inverse_of_h->inverse()), tb), g,
                     *inverse_of_h);
  }
  if (h == Arena::zero()) return classify_vs_zero(solver, g, tb);
  if (auto cert = InverseCertificate::certify(solver, h, arena.conjugate(h), tb)) {
    return compare(solver, g, h, tb, cert);
  }

  RelationVerdict ge{Relation::GE0, Status::Unknown, {}};
  RelationVerdict le{Relation::LE0, Status::Unknown, {}};
  for (GameId x : {Arena::zero(), arena.conjugate(h)}) {
    for (std::size_t i = 0; i < BudgetState::count(tb); ++i) {
      const BudgetState s = OutcomeVector::state_at(tb, i);
      const Outcome a = outcome_with(solver, g, x, s);
      const Outcome b = outcome_with(solver, h, x, s);
      if (a < b && ge.status == Status::Unknown) {
        ge.status = Status::Refuted;
        ge.evidence.witness = Witness{x, s, a, b};
      }
      if (a > b && le.status == Status::Unknown) {
        le.status = Status::Refuted;
        le.evidence.witness = Witness{x, s, a, b};
      }
    }
  }
  for (RelationVerdict* v : {&ge, &le}) {
    if (v->status == Status::Unknown) v->evidence.note = "no inverse certificate for H";
  }
  return combine(g, h, tb, std::move(ge), std::move(le));
}

namespace {

NumberCertificate certify_number(Solver& solver, GameId g, int tb,
                                 std::unordered_map<GameId, NumberCertificate>& memo) {
  if (auto it = memo.find(g); it != memo.end()) return it->second;
  Arena& arena = solver.arena();
  NumberCertificate cert{g, tb, false, {}, {}};
  for (Player side : {Player::Left, Player::Right}) {
    const Relation need = side == Player::Left ? Relation::GT0 : Relation::LT0;
    for (GameId o : arena.options(g, side)) {
      const NumberCertificate sub = certify_number(solver, o, tb, memo);
      if (!sub.is_number) {
        cert.failure = "option " + literal(solver, o) + " is not a certified number";
        return memo.emplace(g, cert).first->second;
      }
      Comparison c = compare(solver, g, o, tb, sub.inverse(arena));
      const Status st = c.status(need);
      cert.checks.push_back({o, side, std::move(c)});
      if (st != Status::Proven) {
        cert.failure = std::string(side == Player::Left ? "G > " : "G < ") + literal(solver, o) + " " +
                       (st == Status::Refuted ? "refuted" : "not decided");
        return memo.emplace(g, cert).first->second;
      }
    }
  }
  cert.is_number = true;
  return memo.emplace(g, cert).first->second;
}

}  // namespace

NumberCertificate is_number(Solver& solver, GameId g, int tb) {
  std::unordered_map<GameId, NumberCertificate> memo;
  return certify_number(solver, g, tb, memo);
}

std::optional<DyadicValue> identify_number_value(Solver& solver, GameId g, int tb,
                                                 std::uint32_t max_exponent) {
  if (!is_number(solver, g, tb).is_number) return std::nullopt;
  Arena& arena = solver.arena();
  auto probe = [&](DyadicValue v) {
    return compare(solver, g, dyadic_form(arena, v), tb, InverseCertificate::of_dyadic(arena, v, tb));
  };
  // Bracket g between integers, then halve the bracket once per exponent,
  // so simpler dyadics are probed before finer ones.
  const std::int64_t bound = static_cast<std::int64_t>(arena.birthday(g)) + 1;
  DyadicValue lo = DyadicValue::integer(-bound), hi = DyadicValue::integer(bound);
  if (!probe(lo).proven(Relation::GT0)) return std::nullopt;
  if (!probe(hi).proven(Relation::LT0)) return std::nullopt;
  enum class Probe { Equal, Narrowed, Undecided };
  auto step = [&](DyadicValue mid) {
    const Comparison c = probe(mid);
    if (c.proven(Relation::EQ0)) return Probe::Equal;
    if (c.proven(Relation::GT0)) {
      lo = mid;
    } else if (c.proven(Relation::LT0)) {
      hi = mid;
    } else {
      return Probe::Undecided;
    }
    return Probe::Narrowed;
  };
  auto next_mid = [&](bool integers) {
    if (integers) return DyadicValue::integer(lo.numerator() + (hi.numerator() - lo.numerator()) / 2);
    const DyadicValue sum = lo + hi;
    return DyadicValue(sum.numerator(), sum.exponent() + 1);
  };
  std::uint32_t halvings = 0;
  while (true) {
    const bool integers = hi.numerator() - lo.numerator() > 1 && hi.is_integer() && lo.is_integer();
    if (!integers && halvings++ == max_exponent) return std::nullopt;
    const DyadicValue mid = next_mid(integers);
    switch (step(mid)) {
      case Probe::Equal: return mid;
      case Probe::Undecided: return std::nullopt;
      case Probe::Narrowed: break;
    }
  }
}

InfinitesimalResult is_infinitesimal_bounded(Solver& solver, GameId g, int tb, std::uint32_t k_max) {
  Arena& arena = solver.arena();
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    for (int sign : {1, -1}) {
      const DyadicValue bound(sign, k);
      Comparison c = compare(solver, g, dyadic_form(arena, bound), tb,
                             InverseCertificate::of_dyadic(arena, bound, tb));
      const Relation need = sign > 0 ? Relation::LT0 : Relation::GT0;
      if (c.proven(need)) continue;
      const auto kind = c.status(need) == Status::Refuted ? InfinitesimalResult::Kind::Refuted
                                                          : InfinitesimalResult::Kind::Unknown;
      return {kind, k, std::move(c)};
    }
  }
  return {InfinitesimalResult::Kind::ProvenUpTo, k_max, std::nullopt};
}

std::optional<RelationVerdict> zero_sandwich(Solver& solver, GameId g, GameId h, int tb) {
  if (!classify_vs_zero(solver, g, tb).proven(Relation::LT0)) return std::nullopt;
  if (!classify_vs_zero(solver, h, tb).proven(Relation::GT0)) return std::nullopt;
  for (std::size_t i = 0; i < BudgetState::count(tb); ++i) {
    const BudgetState s = BudgetState::from_index(tb, i);
    if (!solver.zero_bid_optimal(g, s, Player::Right)) return std::nullopt;
    if (!solver.zero_bid_optimal(h, s, Player::Left)) return std::nullopt;
  }
  Evidence e;
  e.theorem = kZeroSandwich;
  e.note = "G = " + literal(solver, g) + ", H = " + literal(solver, h);
  return RelationVerdict{Relation::EQ0, Status::Proven, std::move(e)};
}

Comparison analyze(Solver& solver, GameId g, int tb) {
  Comparison c = classify_vs_zero(solver, g, tb);
  const Arena& arena = solver.arena();
  if (arena.left(g).size() != 1 || arena.right(g).size() != 1) return c;
  if (c.status(Relation::EQ0) == Status::Refuted) return c;
  const auto z = zero_sandwich(solver, arena.left(g)[0], arena.right(g)[0], tb);
  if (!z) return c;
  if (c.proven(Relation::EQ0)) {
    c[Relation::EQ0].evidence.theorem = z->evidence.theorem;
    c[Relation::EQ0].evidence.note = z->evidence.note;
    return c;
  }
  for (Relation r : kRelations) {
    const bool holds = r == Relation::GE0 || r == Relation::LE0 || r == Relation::EQ0;
    c[r] = verdict(r, holds ? Status::Proven : Status::Refuted, z->evidence);
  }
  return c;
}

}  // namespace bidcg
