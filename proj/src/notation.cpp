#include "bidcg/notation.hpp"

#include <cctype>
#include <limits>
#include <vector>

namespace bidcg {
namespace {

class Parser {
 public:
  Parser(Arena& arena, std::string_view text, const FormLimits& limits)
      : arena_(arena), text_(text), limits_(limits) {}

  GameId parse_all() {
    GameId g = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, pos_, msg);
  }
  [[noreturn]] void bound(const std::string& msg, std::size_t at) const {
    throw ParseError(ParseError::Kind::Bound, at, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                               : "unexpected end of input, expected '" + std::string(1, c) + "'");
    }
    ++pos_;
  }

  GameId expr() {
    GameId g = term();
    while (peek() == '+') {
      ++pos_;
      g = arena_.sum(g, term());
    }
    return g;
  }

  GameId term() {
    if (peek() == '-') {
      ++pos_;
      return arena_.conjugate(term());
    }
    return atom();
  }

  std::vector<GameId> options(char terminator) {
    std::vector<GameId> out;
    if (peek() == terminator) return out;
    out.push_back(expr());
    while (peek() == ',') {
      ++pos_;
      out.push_back(expr());
    }
    return out;
  }

  // Reads [0-9]+ without skipping interior whitespace.
  std::int64_t digits(std::size_t& start) {
    skip_ws();
    start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected digits");
    }
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) bound("literal too large", start);
      v = v * 10 + (text_[pos_++] - '0');
    }
    return v;
  }

  std::uint32_t power_of_two() {
    std::size_t start = 0;
    const std::int64_t base = digits(start);
    if (pos_ < text_.size() && text_[pos_] == '^') {
      if (base != 2) fail("expected 2^k");
      ++pos_;
      std::size_t exp_start = 0;
      const std::int64_t k = digits(exp_start);
      if (k > limits_.max_exponent) {
        bound("exponent " + std::to_string(k) + " exceeds bound", exp_start);
      }
      return static_cast<std::uint32_t>(k);
    }
    if (base <= 0 || (base & (base - 1)) != 0) {
      pos_ = start;
      fail("denominator must be a power of two");
    }
    std::uint32_t k = 0;
    while ((std::int64_t{1} << k) < base) ++k;
    if (k > limits_.max_exponent) bound("denominator exceeds bound", start);
    return k;
  }

  GameId number_literal() {
    std::size_t start = 0;
    const std::int64_t n = digits(start);
    if (n != 0 && text_[start] == '0') {
      pos_ = start;
      fail("leading zero");
    }
    std::uint32_t k = 0;
    if (peek() == '/') {
      ++pos_;
      k = power_of_two();
    }
    try {
      return dyadic_form(arena_, DyadicValue(n, k), limits_);
    } catch (const BoundError& e) {
      bound(e.what(), start);
    }
  }

  GameId atom() {
    const char c = peek();
    switch (c) {
      case '{': {
        ++pos_;
        std::vector<GameId> left = options('|');
        expect('|');
        std::vector<GameId> right = options('}');
        expect('}');
        return arena_.intern(std::move(left), std::move(right));
      }
      case '(': {
        ++pos_;
        GameId g = expr();
        expect(')');
        return g;
      }
      case '*':
        ++pos_;
        return star_form(arena_);
      case '^':
        ++pos_;
        return up_form(arena_);
      case 'v':
        ++pos_;
        return down_form(arena_);
      case '\0':
        fail("unexpected end of input");
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) return number_literal();
        fail("unexpected '" + std::string(1, c) + "'");
    }
  }

  Arena& arena_;
  std::string_view text_;
  const FormLimits& limits_;
  std::size_t pos_ = 0;
};

void print_literal(const Arena& arena, GameId g, std::string& out) {
  if (g == Arena::zero()) {
    out += '0';
    return;
  }
  out += '{';
  bool first = true;
  for (GameId l : arena.left(g)) {
    if (!first) out += ',';
    first = false;
    print_literal(arena, l, out);
  }
  out += '|';
  first = true;
  for (GameId r : arena.right(g)) {
    if (!first) out += ',';
    first = false;
    print_literal(arena, r, out);
  }
  out += '}';
}

}  // namespace

GameId parse(Arena& arena, std::string_view text, const FormLimits& limits) {
  return Parser(arena, text, limits).parse_all();
}

NameTable::NameTable(Arena& arena) : arena_(arena) {
  add(Arena::zero(), "0");
  add(star_form(arena), "*");
  add(up_form(arena), "^");
  add(down_form(arena), "v");
  for (std::int64_t n = 1; n <= 8; ++n) {
    add(integer_form(arena, n), std::to_string(n));
    add(integer_form(arena, -n), std::to_string(-n));
  }
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const std::int64_t denom = std::int64_t{1} << k;
    for (std::int64_t m = 1; m < 4 * denom; m += 2) {
      const DyadicValue v(m, k);
      add(dyadic_form(arena, v), v.to_string());
      add(dyadic_form(arena, -v), (-v).to_string());
    }
  }
  for (std::uint32_t k = 4; k <= 8; ++k) {
    const DyadicValue v(1, k);
    add(unit_dyadic_form(arena, k), v.to_string());
    add(arena.conjugate(unit_dyadic_form(arena, k)), (-v).to_string());
  }
}

void NameTable::add(GameId g, std::string name) { names_.try_emplace(g, std::move(name)); }

const std::string* NameTable::find(GameId g) const {
  auto it = names_.find(g);
  return it == names_.end() ? nullptr : &it->second;
}

std::string NameTable::print(GameId g, PrintStyle style) const {
  std::string out;
  if (style == PrintStyle::Literal) {
    print_literal(arena_, g, out);
    return out;
  }
  if (const std::string* name = find(g)) return *name;
  out += '{';
  bool first = true;
  for (GameId l : arena_.left(g)) {
    if (!first) out += ',';
    first = false;
    out += print(l, style);
  }
  out += '|';
  first = true;
  for (GameId r : arena_.right(g)) {
    if (!first) out += ',';
    first = false;
    out += print(r, style);
  }
  out += '}';
  return out;
}

std::string print(Arena& arena, GameId g, PrintStyle style) {
  if (style == PrintStyle::Literal) {
    std::string out;
    print_literal(arena, g, out);
    return out;
  }
  return NameTable(arena).print(g, style);
}

}  // namespace bidcg
