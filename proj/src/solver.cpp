#include "bidcg/solver.hpp"

#include <stdexcept>

namespace bidcg {
namespace {

// Cell layout: bits 0-1 outcome, 2-3 Left zero-bid flag, 4-5 Right
// zero-bid flag. Each field is 0 while unknown, else 1 (R/false) or 2 (L/true).
constexpr unsigned kOutcomeShift = 0;
constexpr unsigned zero_bid_shift(Player p) { return p == Player::Left ? 2 : 4; }

constexpr Bid kZeroBid{0, false};

}  // namespace

OutcomeVector::OutcomeVector(int tb, std::vector<Outcome> entries)
    : tb_(tb), entries_(std::move(entries)) {
  if (entries_.size() != BudgetState::count(tb)) {
    throw std::invalid_argument("outcome vector needs 2(tb+1) entries");
  }
}

bool OutcomeVector::all(Outcome o) const {
  for (Outcome e : entries_) {
    if (e != o) return false;
  }
  return true;
}

std::string OutcomeVector::to_string() const {
  std::string s;
  s.reserve(entries_.size());
  for (Outcome e : entries_) s += to_char(e);
  return s;
}

bool OutcomeVector::monotone() const {
  for (Player m : {Player::Left, Player::Right}) {
    for (int p = 0; p < tb_; ++p) {
      if (at({tb_, p, m}) > at({tb_, p + 1, m})) return false;
    }
  }
  return true;
}

bool OutcomeVector::marker_worth() const {
  for (int p = 0; p < tb_; ++p) {
    if (at({tb_, p, Player::Left}) > at({tb_, p + 1, Player::Right})) return false;
  }
  return true;
}

bool outcome_leq(const OutcomeVector& a, const OutcomeVector& b) {
  if (a.tb() != b.tb()) throw std::invalid_argument("outcome vectors have different total budgets");
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    if (a.entries()[i] > b.entries()[i]) return false;
  }
  return true;
}

bool BidMatrix::has_all_left_row() const {
  for (std::size_t i = 0; i < left_bids.size(); ++i) {
    bool all_l = true;
    for (std::size_t j = 0; j < right_bids.size() && all_l; ++j) all_l = at(i, j) == Outcome::L;
    if (all_l) return true;
  }
  return false;
}

bool BidMatrix::has_all_right_column() const {
  for (std::size_t j = 0; j < right_bids.size(); ++j) {
    bool all_r = true;
    for (std::size_t i = 0; i < left_bids.size() && all_r; ++i) all_r = at(i, j) == Outcome::R;
    if (all_r) return true;
  }
  return false;
}

struct Solver::Table {
  explicit Table(int total) : tb(total), states(BudgetState::count(total)) {}

  std::atomic<std::uint8_t>& cell(GameId g, const BudgetState& s) {
    return cells.at(static_cast<std::size_t>(g.index) * states + s.index());
  }

  int tb;
  std::size_t states;
  ChunkedArray<std::atomic<std::uint8_t>, 14, (1u << 16)> cells;
};

Solver::Solver(Arena& arena) : arena_(arena) {
  for (auto& t : tables_) t.store(nullptr, std::memory_order_relaxed);
}

Solver::~Solver() {
  for (auto& t : tables_) delete t.load(std::memory_order_relaxed);
}

Solver::Table& Solver::table(int tb) {
  if (tb < 0 || tb > kMaxTotalBudget) {
    throw std::out_of_range("total budget " + std::to_string(tb) + " outside 0.." +
                            std::to_string(kMaxTotalBudget));
  }
  Table* t = tables_[tb].load(std::memory_order_acquire);
  if (t != nullptr) return *t;
  auto fresh = std::make_unique<Table>(tb);
  if (tables_[tb].compare_exchange_strong(t, fresh.get(), std::memory_order_acq_rel)) {
    return *fresh.release();
  }
  return *t;
}

Outcome Solver::partial_outcome(GameId g, const BudgetState& s) {
  if (!s.valid()) throw ContractViolation("invalid budget state");
  auto& cell = table(s.tb).cell(g, s);
  const std::uint8_t bits = (cell.load(std::memory_order_relaxed) >> kOutcomeShift) & 3u;
  if (bits != 0) return bits == 2 ? Outcome::L : Outcome::R;
  const Outcome o = compute_outcome(g, s);
  cell.fetch_or(static_cast<std::uint8_t>((o == Outcome::L ? 2u : 1u) << kOutcomeShift),
                std::memory_order_relaxed);
  return o;
}

bool Solver::mover_secures_win(GameId g, const BudgetState& next, Player mover) {
  for (GameId o : arena_.options(g, mover)) {
    if (partial_outcome(o, next) == win_for(mover)) return true;
  }
  return false;
}

Outcome Solver::compute_outcome(GameId g, const BudgetState& s) {
  // Results for (round winner, next state), shared by all bid pairs that
  // lead there: 0 unknown, 1 winner loses, 2 winner wins.
  std::vector<std::uint8_t> seen(2 * BudgetState::count(s.tb), 0);
  auto cell_value = [&](const Bid& lb, const Bid& rb) {
    const RoundResult res = resolve(s, lb, rb);
    auto& slot = seen[(res.winner == Player::Left ? 0 : BudgetState::count(s.tb)) + res.next.index()];
    if (slot == 0) slot = mover_secures_win(g, res.next, res.winner) ? 2 : 1;
    return slot == 2 ? win_for(res.winner) : win_for(opponent(res.winner));
  };

  const std::vector<Bid> left_bids = distinct_bids(s, Player::Left);
  const std::vector<Bid> right_bids = distinct_bids(s, Player::Right);
  for (const Bid& lb : left_bids) {
    bool all_left = true;
    for (const Bid& rb : right_bids) {
      if (cell_value(lb, rb) == Outcome::R) {
        all_left = false;
        break;
      }
    }
    if (all_left) return Outcome::L;
  }
  return Outcome::R;
}

OutcomeVector Solver::outcome_vector(GameId g, int tb) {
  if (tb < 0) throw std::invalid_argument("negative total budget");
  std::vector<Outcome> entries(BudgetState::count(tb));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i] = partial_outcome(g, OutcomeVector::state_at(tb, i));
  }
  return {tb, std::move(entries)};
}

Outcome Solver::round_outcome(GameId g, const BudgetState& s, const Bid& left_bid,
                              const Bid& right_bid) {
  const RoundResult res = resolve(s, left_bid, right_bid);
  return mover_secures_win(g, res.next, res.winner) ? win_for(res.winner)
                                                    : win_for(opponent(res.winner));
}

BidMatrix Solver::bid_matrix(GameId g, const BudgetState& s) {
  BidMatrix m{s, distinct_bids(s, Player::Left), distinct_bids(s, Player::Right), {}};
  m.cells.reserve(m.left_bids.size() * m.right_bids.size());
  for (const Bid& lb : m.left_bids) {
    for (const Bid& rb : m.right_bids) m.cells.push_back(round_outcome(g, s, lb, rb));
  }
  return m;
}

StrategyEntry Solver::best_response(GameId g, const BudgetState& s, Player player) {
  StrategyEntry e;
  e.position = g;
  e.state = s;
  e.player = player;
  e.value = partial_outcome(g, s);
  e.zero_bid_optimal = zero_bid_optimal(g, s, player);

  const Outcome goal = win_for(player);
  const std::vector<Bid> opponent_bids = distinct_bids(s, opponent(player));
  auto cell = [&](const Bid& mine, const Bid& theirs) {
    return player == Player::Left ? round_outcome(g, s, mine, theirs)
                                  : round_outcome(g, s, theirs, mine);
  };
  e.best_bid = kZeroBid;
  if (e.value == goal) {
    for (const Bid& mine : distinct_bids(s, player)) {
      bool secures = true;
      for (const Bid& theirs : opponent_bids) {
        if (cell(mine, theirs) != goal) {
          secures = false;
          break;
        }
      }
      if (secures) {
        e.best_bid = mine;
        break;
      }
    }
  }

  const RoundResult vs_pass = player == Player::Left ? resolve(s, e.best_bid, kZeroBid)
                                                     : resolve(s, kZeroBid, e.best_bid);
  if (vs_pass.winner == player) e.winning_move = best_move(g, vs_pass.next, player);
  return e;
}

std::optional<GameId> Solver::best_move(GameId g, const BudgetState& after_round, Player mover) {
  const auto opts = arena_.options(g, mover);
  if (opts.empty()) return std::nullopt;
  for (GameId o : opts) {
    if (partial_outcome(o, after_round) == win_for(mover)) return o;
  }
  return opts.front();
}

bool Solver::zero_bid_optimal(GameId g, const BudgetState& s, Player player) {
  return partial_outcome(g, s) != win_for(player) || wins_with_zero_bids(g, s, player);
}

bool Solver::wins_with_zero_bids(GameId g, const BudgetState& s, Player player) {
  if (!s.valid()) throw ContractViolation("invalid budget state");
  auto& cell = table(s.tb).cell(g, s);
  const unsigned shift = zero_bid_shift(player);
  const std::uint8_t bits = (cell.load(std::memory_order_relaxed) >> shift) & 3u;
  if (bits != 0) return bits == 2;
  const bool z = compute_zero_bid_win(g, s, player);
  cell.fetch_or(static_cast<std::uint8_t>((z ? 2u : 1u) << shift), std::memory_order_relaxed);
  return z;
}

bool Solver::compute_zero_bid_win(GameId g, const BudgetState& s, Player player) {
  if (partial_outcome(g, s) != win_for(player)) return false;
  std::vector<std::uint8_t> visited(2 * BudgetState::count(s.tb), 0);
  for (const Bid& theirs : distinct_bids(s, opponent(player))) {
    const RoundResult res = player == Player::Left ? resolve(s, kZeroBid, theirs)
                                                   : resolve(s, theirs, kZeroBid);
    auto& mark = visited[(res.winner == Player::Left ? 0 : BudgetState::count(s.tb)) +
                         res.next.index()];
    if (mark != 0) continue;
    mark = 1;
    const auto opts = arena_.options(g, res.winner);
    if (res.winner == player) {
      bool has_move = false;
      for (GameId o : opts) {
        if (wins_with_zero_bids(o, res.next, player)) {
          has_move = true;
          break;
        }
      }
      if (!has_move) return false;
    } else {
      for (GameId o : opts) {
        if (!wins_with_zero_bids(o, res.next, player)) return false;
      }
    }
  }
  return true;
}

}  // namespace bidcg
