#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "bidcg/arena.hpp"

namespace bidcg {

/// Exact dyadic rational numerator / 2^exponent, kept canonical: the
/// numerator is odd unless the exponent is 0.
class DyadicValue {
 public:
  constexpr DyadicValue() = default;
  constexpr DyadicValue(std::int64_t numerator, std::uint32_t exponent)
      : numerator_(numerator), exponent_(exponent) {
    while (exponent_ > 0 && numerator_ % 2 == 0) {
      numerator_ /= 2;
      --exponent_;
    }
  }
  static constexpr DyadicValue integer(std::int64_t n) { return {n, 0}; }

  constexpr std::int64_t numerator() const { return numerator_; }
  constexpr std::uint32_t exponent() const { return exponent_; }
  constexpr bool is_integer() const { return exponent_ == 0; }

  constexpr DyadicValue operator-() const { return {-numerator_, exponent_}; }
  friend constexpr DyadicValue operator+(DyadicValue a, DyadicValue b) {
    const std::uint32_t e = a.exponent_ > b.exponent_ ? a.exponent_ : b.exponent_;
    return {(a.numerator_ << (e - a.exponent_)) + (b.numerator_ << (e - b.exponent_)), e};
  }
  friend constexpr bool operator==(DyadicValue, DyadicValue) = default;
  friend constexpr std::strong_ordering operator<=>(DyadicValue a, DyadicValue b) {
    const std::uint32_t e = a.exponent_ > b.exponent_ ? a.exponent_ : b.exponent_;
    return (a.numerator_ << (e - a.exponent_)) <=> (b.numerator_ << (e - b.exponent_));
  }

  /// "3/4", "-1/2", "2".
  std::string to_string() const;

 private:
  std::int64_t numerator_ = 0;
  std::uint32_t exponent_ = 0;
};

/// Size limits for forms built from numeric literals. A fraction m/2^k with
/// odd m is built from (m mod 2^k) copies of 1/2^k, and the interned sum of c
/// copies of a (k+2)-node chain has C(c+k+1, k+1) nodes, hence the cap.
struct FormLimits {
  std::int64_t max_integer = 256;
  std::uint32_t max_exponent = 16;
  std::int64_t max_fraction_terms = 16;
};

class BoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// n = {n-1 |} for n > 0, the conjugate chain for n < 0, and 0 = {|}.
GameId integer_form(Arena& arena, std::int64_t n, const FormLimits& limits = {});

/// 1/2^k = {0 | 1/2^(k-1)}, with 1/2^0 = 1.
GameId unit_dyadic_form(Arena& arena, std::uint32_t k, const FormLimits& limits = {});

/// Integer part as an integer chain plus (fraction numerator) copies of the
/// unit 1/2^k; negative values are conjugates of the positive form.
GameId dyadic_form(Arena& arena, DyadicValue v, const FormLimits& limits = {});

/// * = {0|0}, ^ = {0|*}, v = {*|0}.
GameId star_form(Arena& arena);
GameId up_form(Arena& arena);
GameId down_form(Arena& arena);

}  // namespace bidcg
