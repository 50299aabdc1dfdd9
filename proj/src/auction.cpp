#include "bidcg/auction.hpp"

#include <charconv>

#include "bidcg/arena.hpp"

namespace bidcg {

std::string BudgetState::to_string() const {
  return std::to_string(left_budget) + (marker == Player::Left ? "^" : "");
}

BudgetState parse_budget_state(int tb, const std::string& text) {
  std::string digits = text;
  Player marker = Player::Right;
  if (!digits.empty() && digits.back() == '^') {
    marker = Player::Left;
    digits.pop_back();
  }
  int value = -1;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("bad budget state '" + text + "'");
  }
  BudgetState s{tb, value, marker};
  if (!s.valid()) {
    throw std::invalid_argument("budget state '" + text + "' outside 0.." + std::to_string(tb));
  }
  return s;
}

std::vector<Bid> legal_bids(const BudgetState& state, Player player) {
  std::vector<Bid> bids;
  const int budget = state.budget(player);
  const bool holder = state.marker == player;
  bids.reserve(static_cast<std::size_t>(budget + 1) * (holder ? 2 : 1));
  for (int m = 0; m <= budget; ++m) {
    bids.push_back({m, false});
    if (holder) bids.push_back({m, true});
  }
  return bids;
}

std::vector<Bid> distinct_bids(const BudgetState& state, Player player) {
  std::vector<Bid> bids = legal_bids(state, player);
  if (state.marker == player) bids.erase(bids.begin() + 1);
  return bids;
}

bool is_legal(const BudgetState& state, Player player, const Bid& bid) {
  return state.valid() && bid.amount >= 0 && bid.amount <= state.budget(player) &&
         (!bid.include_marker || state.marker == player);
}

RoundResult resolve(const BudgetState& state, const Bid& left_bid, const Bid& right_bid) {
  if (!is_legal(state, Player::Left, left_bid) || !is_legal(state, Player::Right, right_bid)) {
    throw ContractViolation("illegal bid for state " + state.to_string());
  }
  const Player holder = state.marker;
  const Bid& own = holder == Player::Left ? left_bid : right_bid;
  const Bid& other = holder == Player::Left ? right_bid : left_bid;

  RoundResult out;
  out.next = state;
  if (own.amount < other.amount) {
    out.winner = opponent(holder);
  } else {
    out.winner = holder;
    if (own.include_marker || own.amount == other.amount) out.next.marker = opponent(holder);
  }
  const int paid = out.winner == Player::Left ? left_bid.amount : right_bid.amount;
  out.next.left_budget += out.winner == Player::Left ? -paid : paid;
  return out;
}

}  // namespace bidcg
