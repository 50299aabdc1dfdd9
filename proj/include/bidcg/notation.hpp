#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include "bidcg/arena.hpp"
#include "bidcg/forms.hpp"

namespace bidcg {

// Bracket notation:
//
//   expr  := term ("+" term)*
//   term  := "-" term | atom
//   atom  := "{" opts "|" opts "}" | "(" expr ")"
//          | "0" | "*" | "^" | "v" | int | int "/" pow2
//   opts  := empty | expr ("," expr)*
//   pow2  := "2^" digits | power-of-two literal
//
// Whitespace is ignored. "-" is the conjugate and "+" the disjunctive sum.

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Bound };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

GameId parse(Arena& arena, std::string_view text, const FormLimits& limits = {});

enum class PrintStyle { Literal, Named };

/// Shorthand names for small integers, dyadics, *, ^ and v. Building the
/// table interns those forms into the arena once.
class NameTable {
 public:
  explicit NameTable(Arena& arena);

  const std::string* find(GameId g) const;
  std::string print(GameId g, PrintStyle style) const;

 private:
  void add(GameId g, std::string name);

  const Arena& arena_;
  std::unordered_map<GameId, std::string> names_;
};

/// Literal style prints only braces and "0" and round-trips through parse.
std::string print(Arena& arena, GameId g, PrintStyle style = PrintStyle::Literal);

}  // namespace bidcg
