#include "bidcg/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace bidcg::explorer {
namespace {

struct Subset {
  std::vector<GameId> members;
  bool has_newest = false;
};

// All subsets of `pool` with at most `cap` members, by size then
// lexicographically by pool position.
std::vector<Subset> subsets(const std::vector<GameId>& pool, std::size_t cap,
                            std::size_t newest_from) {
  std::vector<Subset> out;
  std::vector<std::size_t> idx;
  const std::size_t n = pool.size();
  for (std::size_t size = 0; size <= std::min(cap, n); ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Subset s;
      for (std::size_t i : idx) {
        s.members.push_back(pool[i]);
        s.has_newest = s.has_newest || i >= newest_from;
      }
      out.push_back(std::move(s));
      // Next combination.
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == n - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

using Wide = unsigned __int128;
constexpr Wide kSaturated = static_cast<Wide>(SIZE_MAX);

Wide saturate(Wide v) { return v > kSaturated ? kSaturated : v; }

// Subsets of an n-set with at most `cap` members.
Wide subset_count(Wide n, std::size_t cap) {
  Wide total = 0, choose = 1;
  for (std::size_t i = 0; i <= cap && static_cast<Wide>(i) <= n; ++i) {
    total = saturate(total + choose);
    choose = saturate(choose * (n - i) / (i + 1));
  }
  return total;
}

}  // namespace

std::optional<std::size_t> side_cap(const EnumerationSpec& spec, std::uint32_t birthday) {
  if (birthday <= 2) return std::nullopt;
  return spec.option_subset_cap;
}

void for_each_form(Arena& arena, const EnumerationSpec& spec,
                   const std::function<bool(GameId)>& visit) {
  std::vector<GameId> pool{Arena::zero()};
  if (!visit(Arena::zero())) return;
  for (std::uint32_t day = 1; day <= spec.max_birthday; ++day) {
    std::size_t newest_from = 0;
    while (newest_from < pool.size() && arena.birthday(pool[newest_from]) + 1 < day) ++newest_from;
    const std::size_t cap = side_cap(spec, day).value_or(pool.size());
    const std::vector<Subset> sides = subsets(pool, cap, newest_from);
    std::vector<GameId> born;
    for (const Subset& l : sides) {
      for (const Subset& r : sides) {
        if (!l.has_newest && !r.has_newest) continue;
        const GameId g = arena.intern(l.members, r.members);
        if (day < spec.max_birthday) born.push_back(g);
        if (!visit(g)) return;
      }
    }
    pool.insert(pool.end(), born.begin(), born.end());
  }
}

std::vector<GameId> enumerate_forms(Arena& arena, const EnumerationSpec& spec) {
  std::vector<GameId> out;
  for_each_form(arena, spec, [&](GameId g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::size_t count_forms(const EnumerationSpec& spec) {
  Wide pool = 1, newest = 1, total = 1;
  for (std::uint32_t day = 1; day <= spec.max_birthday; ++day) {
    const std::size_t cap = side_cap(spec, day).value_or(SIZE_MAX);
    const Wide all = subset_count(pool, cap);
    const Wide old = subset_count(pool - newest, cap);
    const Wide born = all >= kSaturated ? kSaturated : saturate(all * all - old * old);
    total = saturate(total + born);
    pool = saturate(pool + born);
    newest = born;
  }
  return static_cast<std::size_t>(total);
}

std::vector<GameId> population(Arena& arena, const EnumerationSpec& spec, std::size_t limit) {
  if (spec.top_day_sample == 0 || spec.max_birthday == 0) {
    if (count_forms(spec) > limit) {
      throw std::length_error("enumeration to birthday " + std::to_string(spec.max_birthday) +
                              " exceeds " + std::to_string(limit) + " forms; sample the top day");
    }
    return enumerate_forms(arena, spec);
  }
  EnumerationSpec below = spec;
  below.max_birthday = spec.max_birthday - 1;
  below.top_day_sample = 0;
  std::vector<GameId> out = population(arena, below, limit);
  const std::vector<GameId> top = sample_forms(arena, spec, spec.top_day_sample, spec.seed);
  out.insert(out.end(), top.begin(), top.end());
  return out;
}

std::vector<GameId> sample_forms(Arena& arena, const EnumerationSpec& spec, std::size_t count,
                                 std::uint64_t seed) {
  if (spec.max_birthday == 0) return {Arena::zero()};
  EnumerationSpec below = spec;
  below.max_birthday = spec.max_birthday - 1;
  const std::vector<GameId> pool = enumerate_forms(arena, below);
  std::vector<GameId> newest;
  for (GameId g : pool) {
    if (arena.birthday(g) + 1 == spec.max_birthday) newest.push_back(g);
  }
  const std::size_t cap = side_cap(spec, spec.max_birthday).value_or(pool.size());

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> width(0, cap);
  std::uniform_int_distribution<std::size_t> any(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> fresh(0, newest.size() - 1);
  std::unordered_set<GameId> seen;
  std::vector<GameId> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < count * 100) {
    std::vector<GameId> left(width(rng));
    std::vector<GameId> right(width(rng));
    if (left.empty() && right.empty()) continue;
    for (auto& g : left) g = pool[any(rng)];
    for (auto& g : right) g = pool[any(rng)];
    // Force the birthday by planting one day-(d-1) option.
    auto& side = left.empty() ? right : (right.empty() || rng() % 2 == 0 ? left : right);
    side[0] = newest[fresh(rng)];
    const GameId g = arena.intern(std::move(left), std::move(right));
    if (arena.left(g).size() > cap || arena.right(g).size() > cap) continue;
    if (seen.insert(g).second) out.push_back(g);
  }
  return out;
}

std::vector<GameId> standard_population(Arena& arena, std::size_t day3_sample, std::uint64_t seed) {
  EnumerationSpec spec;
  spec.max_birthday = 2;
  std::vector<GameId> out = enumerate_forms(arena, spec);
  spec.max_birthday = 3;
  const std::vector<GameId> day3 = sample_forms(arena, spec, day3_sample, seed);
  out.insert(out.end(), day3.begin(), day3.end());
  return out;
}

}  // namespace bidcg::explorer
