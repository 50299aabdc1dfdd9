#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bidcg/arena.hpp"

namespace bidcg::explorer {

/// Bounds of an exhaustive search. Every report carries these back.
struct EnumerationSpec {
  std::uint32_t max_birthday = 2;
  std::vector<int> tb_range{0, 1, 2};
  /// Per-side option cap for forms born after day 2; days 0-2 always use
  /// full subsets.
  std::size_t option_subset_cap = 2;
  /// When nonzero, forms born on day max_birthday are replaced by a
  /// deterministic sample of this many forms; earlier days stay complete.
  std::size_t top_day_sample = 0;
  std::uint64_t seed = 20240601;
};

/// Option-set size limit used for forms of the given birthday.
std::optional<std::size_t> side_cap(const EnumerationSpec& spec, std::uint32_t birthday);

/// Visits every distinct form with birthday <= spec.max_birthday exactly
/// once, day by day. Within a day, Left subsets are the outer loop. A form
/// of day d has option sets drawn from forms of earlier days, at least one
/// of them born on day d-1. Stops early when `visit` returns false.
void for_each_form(Arena& arena, const EnumerationSpec& spec,
                   const std::function<bool(GameId)>& visit);

/// Materialized for_each_form; only sensible for small bounds.
std::vector<GameId> enumerate_forms(Arena& arena, const EnumerationSpec& spec);

/// Deterministic pseudo-random sample of `count` distinct forms born exactly
/// on day spec.max_birthday (subject to the side cap).
std::vector<GameId> sample_forms(Arena& arena, const EnumerationSpec& spec, std::size_t count,
                                 std::uint64_t seed);

/// Number of forms for_each_form would visit, computed from subset counts
/// without interning anything. Saturates at SIZE_MAX.
std::size_t count_forms(const EnumerationSpec& spec);

/// The forms a search with these bounds ranges over: the full enumeration,
/// or every earlier day plus the top-day sample. Throws std::length_error
/// when a full enumeration would exceed `limit` forms.
std::vector<GameId> population(Arena& arena, const EnumerationSpec& spec,
                               std::size_t limit = 2'000'000);

/// All forms of birthday <= 2 followed by a birthday-3 sample: the standard
/// test population.
std::vector<GameId> standard_population(Arena& arena, std::size_t day3_sample, std::uint64_t seed);

}  // namespace bidcg::explorer
