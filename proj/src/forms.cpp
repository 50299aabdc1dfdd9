#include "bidcg/forms.hpp"

#include <cstdlib>

namespace bidcg {

std::string DyadicValue::to_string() const {
  std::string s = std::to_string(numerator_);
  if (exponent_ > 0) s += "/" + std::to_string(std::int64_t{1} << exponent_);
  return s;
}

GameId integer_form(Arena& arena, std::int64_t n, const FormLimits& limits) {
  if (std::llabs(n) > limits.max_integer) {
    throw BoundError("integer " + std::to_string(n) + " exceeds bound " +
                     std::to_string(limits.max_integer));
  }
  if (n < 0) return arena.conjugate(integer_form(arena, -n, limits));
  GameId g = Arena::zero();
  for (std::int64_t i = 0; i < n; ++i) g = arena.intern({g}, {});
  return g;
}

GameId unit_dyadic_form(Arena& arena, std::uint32_t k, const FormLimits& limits) {
  if (k > limits.max_exponent) {
    throw BoundError("exponent " + std::to_string(k) + " exceeds bound " +
                     std::to_string(limits.max_exponent));
  }
  GameId g = integer_form(arena, 1, limits);
  for (std::uint32_t i = 1; i <= k; ++i) g = arena.intern({Arena::zero()}, {g});
  return g;
}

GameId dyadic_form(Arena& arena, DyadicValue v, const FormLimits& limits) {
  if (v.numerator() < 0) return arena.conjugate(dyadic_form(arena, -v, limits));
  const std::uint32_t k = v.exponent();
  const std::int64_t whole = v.numerator() >> k;
  const std::int64_t copies = v.numerator() & ((std::int64_t{1} << k) - 1);
  if (copies > limits.max_fraction_terms) {
    throw BoundError("dyadic " + v.to_string() + " needs " + std::to_string(copies) +
                     " unit terms, bound is " + std::to_string(limits.max_fraction_terms));
  }
  GameId g = integer_form(arena, whole, limits);
  if (copies > 0) {
    g = arena.sum(g, arena.repeat(unit_dyadic_form(arena, k, limits),
                                  static_cast<std::size_t>(copies)));
  }
  return g;
}

GameId star_form(Arena& arena) { return arena.intern({Arena::zero()}, {Arena::zero()}); }

GameId up_form(Arena& arena) { return arena.intern({Arena::zero()}, {star_form(arena)}); }

GameId down_form(Arena& arena) { return arena.intern({star_form(arena)}, {Arena::zero()}); }

}  // namespace bidcg
