#include "bidcg/arena.hpp"

#include <algorithm>

namespace bidcg {
namespace {

constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_options(const std::vector<GameId>& left, const std::vector<GameId>& right) {
  std::uint64_t h = mix(left.size() * 1315423911ULL + right.size());
  for (GameId g : left) h = mix(h ^ g.index);
  h = mix(h ^ 0xa5a5a5a5ULL);
  for (GameId g : right) h = mix(h ^ (std::uint64_t{g.index} << 1));
  return h;
}

void canonicalize(std::vector<GameId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Arena::Arena() { intern({}, {}); }

GameId Arena::intern(std::vector<GameId> left, std::vector<GameId> right) {
  canonicalize(left);
  canonicalize(right);
  std::uint32_t day = 0;
  for (const auto* side : {&left, &right}) {
    for (GameId g : *side) day = std::max(day, birthday(g) + 1);  // birthday() validates g
  }

  const std::uint64_t h = hash_options(left, right);
  InternShard& shard = intern_shards_[h % kShards];
  std::lock_guard lock(shard.mutex);
  auto& bucket = shard.buckets[h];
  for (std::uint32_t id : bucket) {
    const Node& n = nodes_.at(id);
    if (n.left == left && n.right == right) return GameId{id};
  }

  // Shard locks only cover one hash range; id allocation spans all shards.
  std::uint32_t fresh;
  {
    std::lock_guard alloc(alloc_mutex_);
    fresh = next_.load(std::memory_order_relaxed);
    Node& n = nodes_.at(fresh);
    n.left = std::move(left);
    n.right = std::move(right);
    n.birthday = day;
    next_.store(fresh + 1, std::memory_order_release);
  }
  bucket.push_back(fresh);
  return GameId{fresh};
}

GameId Arena::conjugate(GameId g) {
  const Node& n = node(g);
  if (std::uint32_t c = n.conjugate.load(std::memory_order_acquire); c != 0) {
    return GameId{c - 1};
  }
  std::vector<GameId> left;
  std::vector<GameId> right;
  left.reserve(n.right.size());
  right.reserve(n.left.size());
  for (GameId r : n.right) left.push_back(conjugate(r));
  for (GameId l : n.left) right.push_back(conjugate(l));
  const GameId c = intern(std::move(left), std::move(right));
  nodes_.at(g.index).conjugate.store(c.index + 1, std::memory_order_release);
  nodes_.at(c.index).conjugate.store(g.index + 1, std::memory_order_release);
  return c;
}

GameId Arena::sum(GameId a, GameId b) {
  if (a == zero()) return (void)node(b), b;
  if (b == zero()) return (void)node(a), a;
  if (b < a) std::swap(a, b);

  const std::uint64_t key = (std::uint64_t{a.index} << 32) | b.index;
  SumShard& shard = sum_shards_[mix(key) % kShards];
  {
    std::lock_guard lock(shard.mutex);
    if (auto it = shard.memo.find(key); it != shard.memo.end()) return GameId{it->second};
  }

  std::vector<GameId> left;
  std::vector<GameId> right;
  const Node& na = node(a);
  const Node& nb = node(b);
  left.reserve(na.left.size() + nb.left.size());
  right.reserve(na.right.size() + nb.right.size());
  for (GameId x : na.left) left.push_back(sum(x, b));
  for (GameId x : nb.left) left.push_back(sum(a, x));
  for (GameId x : na.right) right.push_back(sum(x, b));
  for (GameId x : nb.right) right.push_back(sum(a, x));
  const GameId s = intern(std::move(left), std::move(right));

  std::lock_guard lock(shard.mutex);
  shard.memo.emplace(key, s.index);
  return s;
}

GameId Arena::sum(std::span<const GameId> terms) {
  GameId acc = zero();
  for (GameId t : terms) acc = sum(acc, t);
  return acc;
}

GameId Arena::repeat(GameId g, std::size_t n) {
  GameId acc = zero();
  for (std::size_t i = 0; i < n; ++i) acc = sum(acc, g);
  return acc;
}

}  // namespace bidcg
