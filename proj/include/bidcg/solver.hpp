#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bidcg/arena.hpp"
#include "bidcg/auction.hpp"
#include "bidcg/chunked_array.hpp"

namespace bidcg {

/// Winner under optimal play. Ordered with L > R.
enum class Outcome : std::uint8_t { R = 0, L = 1 };

constexpr Outcome win_for(Player p) { return p == Player::Left ? Outcome::L : Outcome::R; }
constexpr Outcome flip(Outcome o) { return o == Outcome::L ? Outcome::R : Outcome::L; }
constexpr char to_char(Outcome o) { return o == Outcome::L ? 'L' : 'R'; }

/// The 2(tb+1) partial outcomes ordered (tb^, ..., 0^, tb, ..., 0).
class OutcomeVector {
 public:
  OutcomeVector(int tb, std::vector<Outcome> entries);

  int tb() const { return tb_; }
  const std::vector<Outcome>& entries() const { return entries_; }
  Outcome at(const BudgetState& s) const { return entries_[position(s)]; }

  /// Index of a state within entries().
  static std::size_t position(const BudgetState& s) {
    return s.marker == Player::Left ? static_cast<std::size_t>(s.tb - s.left_budget)
                                    : static_cast<std::size_t>(2 * s.tb + 1 - s.left_budget);
  }
  static BudgetState state_at(int tb, std::size_t position) {
    return position <= static_cast<std::size_t>(tb)
               ? BudgetState{tb, tb - static_cast<int>(position), Player::Left}
               : BudgetState{tb, 2 * tb + 1 - static_cast<int>(position), Player::Right};
  }

  bool all(Outcome o) const;
  std::string to_string() const;

  /// Outcome monotonicity within each marker block and marker worth
  /// (p^ <= p+1).
  bool monotone() const;
  bool marker_worth() const;

  friend bool operator==(const OutcomeVector&, const OutcomeVector&) = default;

 private:
  int tb_;
  std::vector<Outcome> entries_;
};

/// Pointwise comparison with L > R. Throws std::invalid_argument on a total
/// budget mismatch.
bool outcome_leq(const OutcomeVector& a, const OutcomeVector& b);

/// The simultaneous-bid round at one position: rows are Left's legal bids,
/// columns Right's, each cell the partial outcome when the round winner then
/// moves optimally.
struct BidMatrix {
  BudgetState state;
  std::vector<Bid> left_bids;
  std::vector<Bid> right_bids;
  std::vector<Outcome> cells;  // row-major

  Outcome at(std::size_t row, std::size_t col) const { return cells[row * right_bids.size() + col]; }
  bool has_all_left_row() const;
  bool has_all_right_column() const;
};

struct StrategyEntry {
  GameId position;
  BudgetState state;
  Player player = Player::Left;
  Outcome value = Outcome::L;
  Bid best_bid;
  /// Set when best_bid wins the round against an opponent's pass and the
  /// player then has a move; the move is the prescribed one.
  std::optional<GameId> winning_move;
  bool zero_bid_optimal = false;
};

/// Memoized backward induction over (position, budget state).
///
/// Safe for concurrent queries: memo cells are atomic bytes that are only
/// ever set from "unknown" to a deterministic value, so racing threads at
/// worst repeat work.
class Solver {
 public:
  static constexpr int kMaxTotalBudget = 64;

  explicit Solver(Arena& arena);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  Arena& arena() const { return arena_; }

  Outcome partial_outcome(GameId g, const BudgetState& s);
  OutcomeVector outcome_vector(GameId g, int tb);

  /// Cell value for one pair of bids.
  Outcome round_outcome(GameId g, const BudgetState& s, const Bid& left_bid, const Bid& right_bid);
  BidMatrix bid_matrix(GameId g, const BudgetState& s);

  /// Prescribed bid for `player`: the smallest amount (keep before give)
  /// that secures the player's win against every opponent bid, or (0, keep)
  /// when the position is lost anyway.
  StrategyEntry best_response(GameId g, const BudgetState& s, Player player);

  /// Move for the round winner: the smallest-id option that keeps the win,
  /// else the smallest-id option; nullopt when the mover has no option.
  std::optional<GameId> best_move(GameId g, const BudgetState& after_round, Player mover);

  /// True iff the player wins (g, s) by bidding 0 in every round from here
  /// on: for every opponent bid, a won round leaves the player a move to a
  /// position still won this way, and every opponent move after a lost
  /// round does too.
  bool wins_with_zero_bids(GameId g, const BudgetState& s, Player player);

  /// Bidding 0 is optimal for the player at (g, s): either the position is
  /// lost anyway, or it is won with the 0-bid strategy above.
  bool zero_bid_optimal(GameId g, const BudgetState& s, Player player);

 private:
  struct Table;

  Table& table(int tb);
  Outcome compute_outcome(GameId g, const BudgetState& s);
  bool compute_zero_bid_win(GameId g, const BudgetState& s, Player player);
  bool mover_secures_win(GameId g, const BudgetState& next, Player mover);

  Arena& arena_;
  std::array<std::atomic<Table*>, kMaxTotalBudget + 1> tables_;
};

}  // namespace bidcg
