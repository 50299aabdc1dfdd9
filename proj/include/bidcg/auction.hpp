#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bidcg/game.hpp"

namespace bidcg {

/// Total budget, Left's share and the marker holder. With marker == Left
/// this is the "hatted" budget of the literature.
struct BudgetState {
  int tb = 0;
  int left_budget = 0;
  Player marker = Player::Left;

  constexpr int right_budget() const { return tb - left_budget; }
  constexpr int budget(Player p) const { return p == Player::Left ? left_budget : right_budget(); }
  constexpr bool valid() const { return tb >= 0 && left_budget >= 0 && left_budget <= tb; }

  /// Position of this state among the 2(tb+1) states: Left-marker states
  /// first (by Left budget), then Right-marker states.
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(marker == Player::Left ? left_budget : tb + 1 + left_budget);
  }
  static constexpr BudgetState from_index(int tb, std::size_t i) {
    const int n = tb + 1;
    return i < static_cast<std::size_t>(n)
               ? BudgetState{tb, static_cast<int>(i), Player::Left}
               : BudgetState{tb, static_cast<int>(i) - n, Player::Right};
  }
  static constexpr std::size_t count(int tb) { return 2 * static_cast<std::size_t>(tb + 1); }

  /// Same state seen with the players' roles swapped.
  constexpr BudgetState mirrored() const { return {tb, tb - left_budget, opponent(marker)}; }

  friend constexpr bool operator==(const BudgetState&, const BudgetState&) = default;

  /// "3^" when Left holds the marker, "3" otherwise.
  std::string to_string() const;
};

/// Parses "3" or "3^" (Left holds the marker) for a given total budget.
BudgetState parse_budget_state(int tb, const std::string& text);

struct Bid {
  int amount = 0;
  bool include_marker = false;

  friend constexpr bool operator==(const Bid&, const Bid&) = default;
};

struct RoundResult {
  Player winner = Player::Left;
  BudgetState next;

  friend constexpr bool operator==(const RoundResult&, const RoundResult&) = default;
};

/// Holder: (0,keep), (0,give), (1,keep), ...; non-holder: amounts 0..budget.
std::vector<Bid> legal_bids(const BudgetState& state, Player player);

/// legal_bids without (0, give): a zero bid can never win strictly, so
/// giving and keeping the marker coincide there. These are the distinct
/// strategic actions of a round.
std::vector<Bid> distinct_bids(const BudgetState& state, Player player);

bool is_legal(const BudgetState& state, Player player, const Bid& bid);

/// One bidding round. A strict win with the marker kept leaves the marker in
/// place; a win that includes the marker, or any tie, hands it to the loser.
/// The winner pays its bid to the loser. Throws ContractViolation on an
/// illegal bid.
RoundResult resolve(const BudgetState& state, const Bid& left_bid, const Bid& right_bid);

}  // namespace bidcg
