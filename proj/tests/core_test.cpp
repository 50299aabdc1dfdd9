#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>
#include <unordered_set>

#include "bidcg/arena.hpp"
#include "bidcg/enumerate.hpp"
#include "bidcg/forms.hpp"
#include "bidcg/notation.hpp"
#include "oracles.hpp"

namespace bidcg {
namespace {

TEST(Intern, ZeroAndStar) {
  Arena arena;
  EXPECT_EQ(arena.intern({}, {}), Arena::zero());
  const GameId star = arena.intern({Arena::zero()}, {Arena::zero()});
  EXPECT_EQ(star, star_form(arena));
  EXPECT_EQ(arena.birthday(star), 1u);
  EXPECT_EQ(arena.birthday(Arena::zero()), 0u);
}

TEST(Intern, DeduplicatesAndSortsOptions) {
  Arena arena;
  const GameId one = arena.intern({Arena::zero(), Arena::zero()}, {});
  EXPECT_EQ(one, arena.intern({Arena::zero()}, {}));
  const GameId star = star_form(arena);
  EXPECT_EQ(arena.intern({star, one, star}, {}), arena.intern({one, star}, {}));
  EXPECT_EQ(arena.left(arena.intern({star, one}, {})).size(), 2u);
}

TEST(Intern, UnknownIdIsContractViolation) {
  Arena arena;
  EXPECT_THROW(arena.intern({GameId{999}}, {}), ContractViolation);
  EXPECT_THROW((void)arena.left(GameId{12345}), ContractViolation);
}

// Random nested descriptions interned twice, once with options shuffled and
// duplicated, must land on the same ids; distinct descriptions must not.
struct Shape {
  std::vector<Shape> left, right;
};

Shape random_shape(std::mt19937_64& rng, int depth) {
  Shape s;
  if (depth == 0) return s;
  std::uniform_int_distribution<int> width(0, 2);
  for (int i = width(rng); i > 0; --i) s.left.push_back(random_shape(rng, depth - 1));
  for (int i = width(rng); i > 0; --i) s.right.push_back(random_shape(rng, depth - 1));
  return s;
}

GameId build(Arena& arena, const Shape& s, std::mt19937_64* shuffle) {
  std::vector<GameId> l, r;
  for (const auto& c : s.left) l.push_back(build(arena, c, shuffle));
  for (const auto& c : s.right) r.push_back(build(arena, c, shuffle));
  if (shuffle != nullptr) {
    if (!l.empty()) l.push_back(l.front());
    std::shuffle(l.begin(), l.end(), *shuffle);
    std::shuffle(r.begin(), r.end(), *shuffle);
  }
  return arena.intern(l, r);
}

bool structurally_equal(const Arena& a, GameId x, GameId y) {
  auto lx = a.left(x), ly = a.left(y), rx = a.right(x), ry = a.right(y);
  if (lx.size() != ly.size() || rx.size() != ry.size()) return false;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (!structurally_equal(a, lx[i], ly[i])) return false;
  }
  for (std::size_t i = 0; i < rx.size(); ++i) {
    if (!structurally_equal(a, rx[i], ry[i])) return false;
  }
  return true;
}

TEST(Intern, SoundnessOnRandomForms) {
  Arena arena;
  std::mt19937_64 rng(7);
  std::vector<GameId> ids;
  for (int i = 0; i < 1000; ++i) {
    const Shape s = random_shape(rng, 4);
    const GameId a = build(arena, s, nullptr);
    const GameId b = build(arena, s, &rng);
    ASSERT_EQ(a, b);
    ids.push_back(a);
  }
  // Id equality implies structural equality and vice versa on a sample.
  for (std::size_t i = 0; i + 1 < ids.size(); i += 7) {
    const GameId x = ids[i], y = ids[i + 1];
    EXPECT_EQ(x == y, structurally_equal(arena, x, y));
  }
}

TEST(Intern, AcyclicIdsAndBirthdays) {
  Arena arena;
  for (GameId g : oracle::random_forms(arena, 300, 3)) {
    std::uint32_t expect = 0;
    for (Player p : {Player::Left, Player::Right}) {
      for (GameId o : arena.options(g, p)) {
        EXPECT_LT(o, g);
        expect = std::max(expect, arena.birthday(o) + 1);
      }
    }
    EXPECT_EQ(arena.birthday(g), expect);
  }
}

TEST(Intern, ConcurrentInterningAgrees) {
  Arena arena;
  std::vector<std::vector<GameId>> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(99);
      for (int i = 0; i < 300; ++i) results[t].push_back(build(arena, random_shape(rng, 4), nullptr));
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(results[t], results[0]);
}

TEST(Conjugate, Examples) {
  Arena arena;
  EXPECT_EQ(arena.conjugate(Arena::zero()), Arena::zero());
  EXPECT_EQ(arena.conjugate(integer_form(arena, 1)), arena.intern({}, {Arena::zero()}));
  EXPECT_EQ(arena.conjugate(star_form(arena)), star_form(arena));
  EXPECT_EQ(arena.conjugate(up_form(arena)), down_form(arena));
}

TEST(Conjugate, InvolutionUpToBirthday3) {
  Arena arena;
  explorer::EnumerationSpec spec;
  spec.max_birthday = 2;
  auto forms = explorer::enumerate_forms(arena, spec);
  spec.max_birthday = 3;
  auto day3 = explorer::sample_forms(arena, spec, 2000, 11);
  forms.insert(forms.end(), day3.begin(), day3.end());
  for (GameId g : forms) EXPECT_EQ(arena.conjugate(arena.conjugate(g)), g);
}

TEST(Sum, Examples) {
  Arena arena;
  const GameId zero = Arena::zero();
  const GameId one = integer_form(arena, 1);
  const GameId minus_one = integer_form(arena, -1);
  const GameId star = star_form(arena);
  EXPECT_EQ(arena.sum(zero, zero), zero);
  EXPECT_EQ(arena.sum(one, minus_one), arena.intern({minus_one}, {one}));
  EXPECT_EQ(arena.sum(star, star), arena.intern({star}, {star}));
  EXPECT_EQ(arena.sum(star, zero), star);
}

TEST(Sum, FormLevelLawsOnDayTwoPairs) {
  Arena arena;
  explorer::EnumerationSpec spec;
  spec.max_birthday = 2;
  const auto forms = explorer::enumerate_forms(arena, spec);
  for (GameId a : forms) {
    for (GameId b : forms) {
      const GameId s = arena.sum(a, b);
      ASSERT_EQ(arena.birthday(s), arena.birthday(a) + arena.birthday(b));
      ASSERT_EQ(s, arena.sum(b, a));
      ASSERT_EQ(arena.conjugate(s), arena.sum(arena.conjugate(a), arena.conjugate(b)));
    }
  }
  // Associativity on a sample of triples.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const GameId a = forms[pick(rng)], b = forms[pick(rng)], c = forms[pick(rng)];
    EXPECT_EQ(arena.sum(arena.sum(a, b), c), arena.sum(a, arena.sum(b, c)));
  }
}

TEST(Parse, Shorthands) {
  Arena arena;
  EXPECT_EQ(parse(arena, "{0|0}"), star_form(arena));
  EXPECT_EQ(parse(arena, " { | } "), Arena::zero());
  EXPECT_EQ(parse(arena, "0"), Arena::zero());
  const GameId one = arena.intern({Arena::zero()}, {});
  EXPECT_EQ(parse(arena, "1"), one);
  EXPECT_EQ(parse(arena, "2"), arena.intern({one}, {}));
  EXPECT_EQ(parse(arena, "1/2"), arena.intern({Arena::zero()}, {one}));
  EXPECT_EQ(parse(arena, "1/2^2"), parse(arena, "1/4"));
  EXPECT_EQ(parse(arena, "-1"), arena.intern({}, {Arena::zero()}));
  EXPECT_EQ(parse(arena, "^"), arena.intern({Arena::zero()}, {star_form(arena)}));
  EXPECT_EQ(parse(arena, "v"), arena.intern({star_form(arena)}, {Arena::zero()}));
  EXPECT_EQ(parse(arena, "-^"), parse(arena, "v"));
  EXPECT_EQ(parse(arena, "*+*"), arena.intern({star_form(arena)}, {star_form(arena)}));
  EXPECT_EQ(parse(arena, "{-1|1}"), arena.intern({arena.conjugate(one)}, {one}));
  EXPECT_EQ(parse(arena, "1+-1"), arena.intern({arena.conjugate(one)}, {one}));
  EXPECT_EQ(parse(arena, "3/4"), arena.repeat(parse(arena, "1/4"), 3));
  EXPECT_EQ(parse(arena, "-(1+1/2)"), parse(arena, "-3/2"));
  EXPECT_EQ(parse(arena, "{0|{0|^}}"), arena.intern({Arena::zero()}, {parse(arena, "{0|^}")}));
}

TEST(Parse, Errors) {
  Arena arena;
  auto kind_of = [&](const char* text) {
    try {
      (void)parse(arena, text);
    } catch (const ParseError& e) {
      return std::make_pair(e.kind(), e.position());
    }
    ADD_FAILURE() << "no error for " << text;
    return std::make_pair(ParseError::Kind::Syntax, std::size_t{0});
  };
  EXPECT_EQ(kind_of("{0|0"), std::make_pair(ParseError::Kind::Syntax, std::size_t{4}));
  EXPECT_EQ(kind_of("{0 0}").first, ParseError::Kind::Syntax);
  EXPECT_EQ(kind_of("1/3"), std::make_pair(ParseError::Kind::Syntax, std::size_t{2}));
  EXPECT_EQ(kind_of("01").first, ParseError::Kind::Syntax);
  EXPECT_EQ(kind_of("x").first, ParseError::Kind::Syntax);
  EXPECT_EQ(kind_of("").first, ParseError::Kind::Syntax);
  EXPECT_EQ(kind_of("99999"), std::make_pair(ParseError::Kind::Bound, std::size_t{0}));
  EXPECT_EQ(kind_of("1/2^40").first, ParseError::Kind::Bound);
  EXPECT_EQ(kind_of("31/32").first, ParseError::Kind::Bound);
  EXPECT_EQ(kind_of("99999999999999999999999").first, ParseError::Kind::Bound);
}

TEST(Print, Styles) {
  Arena arena;
  const GameId star = star_form(arena);
  EXPECT_EQ(print(arena, star, PrintStyle::Literal), "{0|0}");
  EXPECT_EQ(print(arena, integer_form(arena, 1), PrintStyle::Named), "1");
  EXPECT_EQ(print(arena, Arena::zero(), PrintStyle::Literal), "0");
  EXPECT_EQ(print(arena, parse(arena, "{0|{0|^}}"), PrintStyle::Named), "{0|{0|^}}");
  EXPECT_EQ(print(arena, parse(arena, "{-1/2|3/2}"), PrintStyle::Named), "{-1/2|3/2}");
  EXPECT_EQ(print(arena, parse(arena, "2"), PrintStyle::Literal), "{{0|}|}");
}

TEST(Print, LiteralAndNamedRoundTrip) {
  Arena arena;
  NameTable names(arena);
  std::mt19937_64 rng(17);
  explorer::EnumerationSpec spec;
  spec.max_birthday = 2;
  auto forms = explorer::enumerate_forms(arena, spec);
  spec.max_birthday = 3;
  auto day3 = explorer::sample_forms(arena, spec, 244, 3);
  forms.insert(forms.end(), day3.begin(), day3.end());
  ASSERT_EQ(forms.size(), 500u);
  for (GameId g : forms) {
    ASSERT_EQ(parse(arena, names.print(g, PrintStyle::Literal)), g);
    ASSERT_EQ(parse(arena, names.print(g, PrintStyle::Named)), g);
  }
}

TEST(Forms, IntegerAndDyadicConstructors) {
  Arena arena;
  EXPECT_EQ(integer_form(arena, 0), Arena::zero());
  EXPECT_EQ(print(arena, integer_form(arena, 2)), "{{0|}|}");
  EXPECT_EQ(print(arena, integer_form(arena, -1)), "{|0}");
  EXPECT_EQ(print(arena, dyadic_form(arena, {1, 1})), "{0|{0|}}");
  EXPECT_EQ(dyadic_form(arena, {3, 2}), arena.repeat(parse(arena, "{0|{0|{0|}}}"), 3));
  EXPECT_EQ(print(arena, dyadic_form(arena, {-1, 1})), "{{|0}|0}");
  EXPECT_EQ(dyadic_form(arena, {2, 2}), dyadic_form(arena, {1, 1}));
  EXPECT_THROW(integer_form(arena, 1000), BoundError);
  EXPECT_THROW(dyadic_form(arena, {63, 6}), BoundError);
}

TEST(Dyadic, CanonicalArithmetic) {
  EXPECT_EQ(DyadicValue(4, 3), DyadicValue(1, 1));
  EXPECT_EQ(DyadicValue(1, 2) + DyadicValue(1, 2), DyadicValue(1, 1));
  EXPECT_LT(DyadicValue(-3, 2), DyadicValue(-1, 1));
  EXPECT_EQ(DyadicValue(3, 2).to_string(), "3/4");
  EXPECT_EQ((-DyadicValue(3, 1)).to_string(), "-3/2");
  EXPECT_EQ(DyadicValue::integer(5).to_string(), "5");
}

TEST(Enumerate, CountsPerBirthday) {
  Arena arena;
  explorer::EnumerationSpec spec;
  spec.max_birthday = 0;
  EXPECT_EQ(explorer::enumerate_forms(arena, spec), std::vector<GameId>{Arena::zero()});
  spec.max_birthday = 1;
  const auto day1 = explorer::enumerate_forms(arena, spec);
  EXPECT_EQ(day1.size(), 4u);
  const std::vector<GameId> expected{Arena::zero(), integer_form(arena, -1), integer_form(arena, 1),
                                     star_form(arena)};
  EXPECT_TRUE(std::is_permutation(day1.begin(), day1.end(), expected.begin()));
  spec.max_birthday = 2;
  const auto day2 = explorer::enumerate_forms(arena, spec);
  EXPECT_EQ(day2.size(), 256u);
  std::vector<GameId> sorted = day2;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::unique(sorted.begin(), sorted.end()), sorted.end());
}

TEST(Enumerate, CappedDayThreeMatchesIndependentCount) {
  // Cap 1 on day 3: side sets of size <= 1 from 256 forms, at least one born
  // on day 2 (252 of them): 257^2 - 5^2 pairs.
  Arena arena;
  explorer::EnumerationSpec spec;
  spec.max_birthday = 3;
  spec.option_subset_cap = 1;
  std::size_t day3 = 0;
  std::unordered_set<GameId> seen;
  explorer::for_each_form(arena, spec, [&](GameId g) {
    EXPECT_TRUE(seen.insert(g).second);
    if (arena.birthday(g) == 3) ++day3;
    return true;
  });
  EXPECT_EQ(day3, 257u * 257u - 5u * 5u);
}

TEST(Enumerate, SampleIsDistinctAndBornOnDay) {
  Arena arena;
  explorer::EnumerationSpec spec;
  spec.max_birthday = 3;
  const auto a = explorer::sample_forms(arena, spec, 1000, 42);
  const auto b = explorer::sample_forms(arena, spec, 1000, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 1000u);
  std::unordered_set<GameId> seen(a.begin(), a.end());
  EXPECT_EQ(seen.size(), a.size());
  for (GameId g : a) {
    EXPECT_EQ(arena.birthday(g), 3u);
    EXPECT_LE(arena.left(g).size(), 2u);
    EXPECT_LE(arena.right(g).size(), 2u);
  }
}

}  // namespace
}  // namespace bidcg
