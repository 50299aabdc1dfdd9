#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bidcg/forms.hpp"
#include "bidcg/solver.hpp"

namespace bidcg {

enum class Relation : std::uint8_t { GE0, LE0, GT0, LT0, EQ0, FUZZY0 };
inline constexpr std::array<Relation, 6> kRelations{Relation::GE0, Relation::LE0, Relation::GT0,
                                                    Relation::LT0, Relation::EQ0, Relation::FUZZY0};

enum class Status : std::uint8_t { Proven, Refuted, Unknown };

const char* to_string(Relation r);
const char* to_string(Status s);

/// A play that separates two games: o(G+X, state) = lhs while
/// o(H+X, state) = rhs. For classification H is 0.
struct Witness {
  GameId x;
  BudgetState state;
  Outcome lhs = Outcome::L;
  Outcome rhs = Outcome::L;
};

struct Evidence {
  /// Constructive comparison items (1-7) that produced the verdict.
  std::vector<int> tests;
  /// Cited result when the verdict rests on a theorem rather than a test.
  std::string theorem;
  std::optional<Witness> witness;
  std::string note;
};

struct RelationVerdict {
  Relation relation = Relation::GE0;
  Status status = Status::Unknown;
  Evidence evidence;
};

/// The six verdicts for G against H at one total budget (H = 0 when
/// classifying). Relation names read "G - H ? 0".
struct Comparison {
  GameId lhs;
  GameId rhs;
  int tb = 0;
  std::array<RelationVerdict, 6> verdicts;

  const RelationVerdict& operator[](Relation r) const { return verdicts[static_cast<std::size_t>(r)]; }
  RelationVerdict& operator[](Relation r) { return verdicts[static_cast<std::size_t>(r)]; }
  Status status(Relation r) const { return (*this)[r].status; }
  bool proven(Relation r) const { return status(r) == Status::Proven; }

  /// The most specific proven relation (EQ0, GT0, LT0, FUZZY0, then GE0,
  /// LE0), if any.
  std::optional<Relation> strongest() const;
};

/// The constructive comparison tests against 0, plus the refutations that
/// follow from X = 0.
Comparison classify_vs_zero(Solver& solver, GameId g, int tb);

/// Proof that `inverse` is an inverse of `game` at a total budget.
class InverseCertificate {
 public:
  GameId game() const { return game_; }
  GameId inverse() const { return inverse_; }
  int tb() const { return tb_; }
  const Evidence& basis() const { return basis_; }

  /// Checks game + inverse against 0 with the constructive tests.
  static std::optional<InverseCertificate> certify(Solver& solver, GameId game, GameId inverse,
                                                   int tb);
  /// Dyadic forms, integers included, are numbers whose inverse is the
  /// conjugate (dyadic_form(-v)).
  static InverseCertificate of_dyadic(Arena& arena, DyadicValue v, int tb);

 private:
  friend struct NumberCertificate;
  InverseCertificate(GameId game, GameId inverse, int tb, Evidence basis)
      : game_(game), inverse_(inverse), tb_(tb), basis_(std::move(basis)) {}

  GameId game_;
  GameId inverse_;
  int tb_;
  Evidence basis_;
};

/// G against H. With an inverse H' of H the verdicts are those of G + H'
/// against 0, carried over by order preservation. Without one, 0 needs no
/// inverse, the conjugate of H is tried as a certified inverse, and
/// otherwise only witness refutations at X in {0, conj(H)} are reported.
/// Throws std::invalid_argument when the certificate is for another game or
/// budget.
Comparison compare(Solver& solver, GameId g, GameId h, int tb,
                   const std::optional<InverseCertificate>& inverse_of_h = std::nullopt);

struct OptionCheck {
  GameId option;
  Player side = Player::Left;
  /// G against the option; a Left option must be proven GT0, a Right one LT0.
  Comparison comparison;
};

struct NumberCertificate {
  GameId form;
  int tb = 0;
  bool is_number = false;
  std::vector<OptionCheck> checks;
  /// Why certification stopped, when it did.
  std::string failure;

  /// Numbers are invertible with the conjugate as inverse. Requires
  /// is_number.
  InverseCertificate inverse(Arena& arena) const;
};

/// Recursive certification: every option certified a number and every
/// G^L < G < G^R proven, comparing through conjugate inverses of the
/// options. Stops at the first failure.
NumberCertificate is_number(Solver& solver, GameId g, int tb);

/// Binary search over dyadics in [-(b+1), b+1], b the birthday of g: first
/// over integers, then halving the bracket up to max_exponent times. Returns
/// the dyadic proven equal to g; none when g is not a certified number, when
/// a probe is not decided, or when the halvings run out.
std::optional<DyadicValue> identify_number_value(Solver& solver, GameId g, int tb,
                                                 std::uint32_t max_exponent);

struct InfinitesimalResult {
  enum class Kind { ProvenUpTo, Refuted, Unknown };
  Kind kind = Kind::Unknown;
  /// ProvenUpTo: the bound reached. Otherwise the first k that failed.
  std::uint32_t k = 0;
  /// The deciding comparison (against 1/2^k or -1/2^k) when not proven.
  std::optional<Comparison> evidence;
};

/// Checks -1/2^k < g < 1/2^k for k = 1..k_max.
InfinitesimalResult is_infinitesimal_bounded(Solver& solver, GameId g, int tb, std::uint32_t k_max);

/// {g | h} = 0 when g < 0 is proven and Right's 0-bid is optimal in g at
/// every budget, and h > 0 likewise for Left.
std::optional<RelationVerdict> zero_sandwich(Solver& solver, GameId g, GameId h, int tb);

/// classify_vs_zero, then the zero sandwich for forms with a single option
/// on each side when that settles what the tests left open.
Comparison analyze(Solver& solver, GameId g, int tb);

}  // namespace bidcg
