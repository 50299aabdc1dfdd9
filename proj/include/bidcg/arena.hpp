#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bidcg/chunked_array.hpp"
#include "bidcg/game.hpp"

namespace bidcg {

/// Raised when a caller breaks an API precondition (unknown id, illegal bid).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Hash-consed store of finite game forms {L | R}.
///
/// Option sets are kept sorted and duplicate-free, so structural equality of
/// two forms is exactly equality of their ids. The store is append-only:
/// interning, sums and conjugates may be called from any number of threads,
/// and a returned id stays valid (and its options immutable) for the
/// lifetime of the arena. Id 0 is always the empty form 0 = {|}.
class Arena {
 public:
  Arena();
  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;

  GameId intern(std::vector<GameId> left, std::vector<GameId> right);
  GameId intern(std::initializer_list<GameId> left, std::initializer_list<GameId> right) {
    return intern(std::vector<GameId>(left), std::vector<GameId>(right));
  }

  static constexpr GameId zero() { return GameId{0}; }

  std::span<const GameId> left(GameId g) const { return node(g).left; }
  std::span<const GameId> right(GameId g) const { return node(g).right; }
  std::span<const GameId> options(GameId g, Player p) const {
    return p == Player::Left ? left(g) : right(g);
  }
  std::uint32_t birthday(GameId g) const { return node(g).birthday; }

  std::size_t size() const { return next_.load(std::memory_order_acquire); }
  bool contains(GameId g) const { return g.index < size(); }

  /// Players' roles swapped throughout; memoized per node.
  GameId conjugate(GameId g);

  /// Disjunctive sum at the form level; memoized and commutative by
  /// construction (a+b and b+a intern to the same id).
  GameId sum(GameId a, GameId b);
  GameId sum(std::span<const GameId> terms);

  /// n copies of g added together (0 for n == 0).
  GameId repeat(GameId g, std::size_t n);

 private:
  struct Node {
    std::vector<GameId> left;
    std::vector<GameId> right;
    std::uint32_t birthday = 0;
    std::atomic<std::uint32_t> conjugate{0};  // id + 1, 0 while unknown
  };

  static constexpr std::size_t kShards = 64;

  struct InternShard {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  };

  struct SumShard {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, std::uint32_t> memo;
  };

  const Node& node(GameId g) const {
    if (!contains(g)) throw ContractViolation("unknown GameId " + std::to_string(g.index));
    return nodes_.at(g.index);
  }

  ChunkedArray<Node> nodes_;
  std::atomic<std::uint32_t> next_{0};
  std::mutex alloc_mutex_;
  std::array<InternShard, kShards> intern_shards_;
  std::array<SumShard, kShards> sum_shards_;
};

}  // namespace bidcg
