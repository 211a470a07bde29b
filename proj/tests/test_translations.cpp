#include "support.hpp"

#include <gtest/gtest.h>

using namespace alwb;
using alwb::testing::el;
using alwb::testing::FormulaGen;
using alwb::testing::q;

TEST(Tau, Examples) {
  EXPECT_EQ(tau_luk_to_lu(parse_formula("p")), parse_formula("(p \\/ f) /\\ t"));
  EXPECT_EQ(tau_luk_to_lu(parse_formula("p -> q")), parse_formula("(((p \\/ f) /\\ t) -> ((q \\/ f) /\\ t)) /\\ t"));
  EXPECT_EQ(tau_luk_to_lu(parse_formula("p * q")), parse_formula("(((p \\/ f) /\\ t) * ((q \\/ f) /\\ t)) \\/ f"));
  EXPECT_EQ(tau_luk_to_lu(parse_formula("t")), parse_formula("t"));
  EXPECT_EQ(tau_luk_to_lu(parse_formula("f")), parse_formula("f"));
  EXPECT_EQ(tau_luk_to_lu(parse_formula("p /\\ t")), parse_formula("((p \\/ f) /\\ t) /\\ t"));
  EXPECT_EQ(tau_luk_to_lu(parse_consecution("p |- q")), parse_consecution("(p \\/ f) /\\ t |- (q \\/ f) /\\ t"));
}

TEST(Flip, Examples) {
  EXPECT_EQ(tau_flip(parse_formula("f")), parse_formula("f -> t"));
  EXPECT_EQ(tau_flip(parse_formula("f \\/ p")), parse_formula("(f -> t) \\/ p"));
  EXPECT_EQ(tau_flip(parse_formula("p -> q")), parse_formula("p -> q"));
  EXPECT_EQ(tau_flip(parse_consecution("f \\/ p |- p")), parse_consecution("-f \\/ p |- p"));
}

TEST(Clip, Examples) {
  EXPECT_EQ(clip(q(2)), q(1));
  EXPECT_EQ(clip(q(1, 2)), q(1, 2));
  EXPECT_EQ(clip(q(-3)), q(0));
  EXPECT_EQ(clip(Assignment{{0, el(2)}, {3, el(-1, 3)}}), (Assignment{{0, el(1)}, {3, el(0)}}));
}

TEST(Correspondence, Examples) {
  EXPECT_TRUE(correspondence_check(parse_formula("p"), {{0, el(2)}}));
  EXPECT_TRUE(correspondence_check(parse_formula("p * q"), {{0, el(1, 2)}, {1, el(1, 2)}}));
  EXPECT_TRUE(correspondence_check(parse_formula("t"), {}));
  EXPECT_TRUE(correspondence_check(parse_formula("~p -> p"), {{0, el(-7, 3)}}));
}

// Both sides computed here without the library's translation: the MV value under the
// clipped assignment against the unbound algebra ([t = 1, f = 0], x -> y = y - x + 1,
// x * y = x + y - 1) evaluated on the translated formula.
TEST(Correspondence, RandomPairsAgainstDirectComputation) {
  FormulaGen gen(71, {5, 4, true, 0});
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long long> num(-36, 48);
  for (int i = 0; i < 1000; ++i) {
    Formula chi = gen.formula();
    Assignment e;
    for (std::size_t v = 0; v < 4; ++v) e[v] = el(num(rng), 12);
    ASSERT_TRUE(correspondence_check(chi, e)) << print_formula(chi);

    std::function<Rational(const Formula&)> lu = [&](const Formula& x) -> Rational {
      switch (x.kind()) {
        case Kind::Var: return e.at(x.var_index()).coords[0];
        case Kind::ConstT: return 1;
        case Kind::ConstF: return 0;
        case Kind::Impl: return lu(x.right()) - lu(x.left()) + 1;
        case Kind::Fus: return lu(x.left()) + lu(x.right()) - 1;
        case Kind::Join: return std::max(lu(x.left()), lu(x.right()));
        case Kind::Meet: return std::min(lu(x.left()), lu(x.right()));
      }
      return 0;
    };
    ASSERT_EQ(evaluate(Model::mv_unit(), clip(e), chi).coords[0], lu(tau_luk_to_lu(chi)));
  }
}

TEST(Tau, DecisionAgreement) {
  FormulaGen gen(72, {4, 3, true, 3});
  for (int i = 0; i < 150; ++i) {
    Consecution c = gen.consecution();
    ASSERT_EQ(decide("luk", c).is_valid(), decide("lu", tau_luk_to_lu(c)).is_valid()) << print_consecution(c);
  }
}

TEST(Flip, DecisionAgreement) {
  FormulaGen gen(73, {4, 3, true, 3});
  for (int i = 0; i < 150; ++i) {
    Consecution c = gen.consecution();
    ASSERT_EQ(decide("lu", c).is_valid(), decide("lustar", tau_flip(c)).is_valid()) << print_consecution(c);
    ASSERT_EQ(decide("lustar", c).is_valid(), decide("lu", tau_flip(c)).is_valid()) << print_consecution(c);
  }
}

TEST(Flip, InvolutionUpToSemantics) {
  FormulaGen gen(74, {4, 3, true, 0});
  for (int i = 0; i < 100; ++i) {
    Formula x = gen.formula();
    Formula back = tau_flip(tau_flip(x));
    for (const auto& m : {Model::rational_chain(q(-1)), Model::rational_chain(q(0)), Model::rational_chain(q(3, 2))}) {
      ASSERT_TRUE(decide_in_model(m, Consecution{{}, Formula::impl(back, x)}, 0).is_valid());
      ASSERT_TRUE(decide_in_model(m, Consecution{{}, Formula::impl(x, back)}, 0).is_valid());
    }
  }
}
