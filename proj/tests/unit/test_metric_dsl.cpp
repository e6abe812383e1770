#include <cvlab/errors.hpp>
#include <cvlab/metric_dsl.hpp>

#include "expr_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace cvlab;

namespace {

void expect_jet(const Jet2& j, double v, double d1, double d2) {
  EXPECT_DOUBLE_EQ(j.value, v);
  EXPECT_DOUBLE_EQ(j.d1, d1);
  EXPECT_DOUBLE_EQ(j.d2, d2);
}

}  // namespace

TEST(Parse, ExpOfNegatedProduct) {
  const auto e = parse_metric("exp(-2*t)");
  const auto expected = make_unary(
      UnaryOp::Exp,
      make_unary(UnaryOp::Neg,
                 make_binary(BinaryOp::Mul, make_constant(2),
                             make_variable(Variable::T))));
  EXPECT_TRUE(structurally_equal(e.root(), *expected));
  EXPECT_EQ(serialize(e), "exp((-(2 * t)))");
}

TEST(Parse, Power) {
  const auto e = parse_metric("t^2");
  const auto expected = make_binary(BinaryOp::Pow, make_variable(Variable::T),
                                    make_constant(2));
  EXPECT_TRUE(structurally_equal(e.root(), *expected));
  EXPECT_EQ(serialize(e), "(t ^ 2)");
}

TEST(Parse, MalformedReportsOffset) {
  try {
    parse_metric("1 + * 2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(serialize(parse_metric("1 + 2 * t")), "(1 + (2 * t))");
  EXPECT_EQ(serialize(parse_metric("1 - t - 2")), "((1 - t) - 2)");
  EXPECT_EQ(serialize(parse_metric("t / 2 / 3")), "((t / 2) / 3)");
  EXPECT_EQ(serialize(parse_metric("2 ^ t ^ 2")), "(2 ^ (t ^ 2))");
  EXPECT_EQ(serialize(parse_metric("-t^2")), "(-(t ^ 2))");
  EXPECT_EQ(serialize(parse_metric("t^-1")), "(t ^ (-1))");
  EXPECT_EQ(serialize(parse_metric("2*-t")), "(2 * (-t))");
  EXPECT_EQ(serialize(parse_metric("1.5e-3 * theta")), "(0.0015 * theta)");
}

TEST(Parse, RejectsUnknownIdentifiers) {
  for (const char* src : {"x", "t + y", "foo(t)", "Theta", "T", "tt", "pi"}) {
    EXPECT_THROW(parse_metric(src), UnknownIdentifier) << src;
  }
  try {
    parse_metric("t + zeta");
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.name(), "zeta");
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Parse, RejectsMalformed) {
  for (const char* src : {"", "(", "t)", "exp t", "exp()", "1 2", "t ^", "*t",
                          "sin(t", "1..2", "@"}) {
    EXPECT_THROW(parse_metric(src), ParseError) << src;
  }
}

TEST(EvalJet, Examples) {
  expect_jet(eval_jet(parse_metric("exp(-2*t)"), 0.0, 0.0), 1, -2, 4);
  expect_jet(eval_jet(parse_metric("t^2"), 3.0, 0.0), 9, 6, 2);
}

TEST(EvalJet, ThetaIsPassive) {
  const auto j = eval_jet(parse_metric("t * cos(theta)"), 2.0, 0.5);
  EXPECT_DOUBLE_EQ(j.value, 2.0 * std::cos(0.5));
  EXPECT_DOUBLE_EQ(j.d1, std::cos(0.5));
  EXPECT_DOUBLE_EQ(j.d2, 0.0);
}

TEST(EvalJet, CoshSquaredMatchesFiniteDifferences) {
  const auto e = parse_metric("cosh(t)^2");
  const auto j = eval_jet(e, 0.7, 0.0);
  const auto fd = oracle::fd_derivatives(e.root(), 0.7L, 0.0L);
  ASSERT_TRUE(fd);
  EXPECT_NEAR(j.d1, static_cast<double>(fd->d1), 1e-6 * std::fabs(j.d1));
  EXPECT_NEAR(j.d2, static_cast<double>(fd->d2), 1e-6 * std::fabs(j.d2));
  // closed form: sinh(2t), 2 cosh(2t)
  EXPECT_NEAR(j.d1, std::sinh(1.4), 1e-14);
  EXPECT_NEAR(j.d2, 2 * std::cosh(1.4), 1e-14);
}

TEST(EvalJet, DomainErrors) {
  EXPECT_THROW(eval_jet(parse_metric("log(t)"), -1.0, 0.0), DomainError);
  EXPECT_THROW(eval_jet(parse_metric("log(t)"), 0.0, 0.0), DomainError);
  EXPECT_THROW(eval_jet(parse_metric("sqrt(t)"), -1.0, 0.0), DomainError);
  EXPECT_THROW(eval_jet(parse_metric("1 / t"), 0.0, 0.0), DomainError);
  EXPECT_THROW(eval_jet(parse_metric("t ^ 0.5"), -2.0, 0.0), DomainError);
  EXPECT_THROW(eval_jet(parse_metric("exp(t^2)"), 30.0, 0.0), OverflowError);
}

TEST(EvalJet, LargeArgumentsKeepSecondDerivative) {
  // sqrt and log of huge values: the chain-rule factors underflow if formed
  // directly.
  const auto e = parse_metric("sqrt(exp(t^2))");
  const double t = 23.0;
  const auto j = eval_jet(e, t, 0.0);
  const double f = std::exp(t * t / 2);
  EXPECT_NEAR(j.d2 / f, 1 + t * t, 1e-9 * (1 + t * t));
  const auto l = eval_jet(parse_metric("log(exp(t^2))"), t, 0.0);
  EXPECT_NEAR(l.d2, 2.0, 1e-9);
}

TEST(EvalJet, Deterministic) {
  const auto e = parse_metric("sin(t*theta) + exp(-t)/(1 + t^2)");
  const Jet2 a = eval_jet(e, 1.25, 0.3);
  const Jet2 b = eval_jet(e, 1.25, 0.3);
  EXPECT_EQ(a, b);
}

TEST(Serialize, RoundTripsRandomTrees) {
  oracle::TreeGen gen(0x5eed);
  for (int i = 0; i < 1000; ++i) {
    const MetricExpr e(gen.tree(6));
    const std::string text = serialize(e);
    const MetricExpr back = parse_metric(text);
    ASSERT_TRUE(structurally_equal(e.root(), back.root())) << text;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(EvalJet, MatchesFiniteDifferencesOnRandomTrees) {
  oracle::TreeGen gen(0xd1ff);
  std::uniform_real_distribution<double> t_dist(0.1, 3.0);
  std::uniform_real_distribution<double> th_dist(0.0, 6.283185307179586);
  int accepted = 0;
  int attempts = 0;
  while (accepted < 1000) {
    ASSERT_LT(++attempts, 200000) << "too few well-conditioned samples";
    const MetricExpr e(gen.tree(6));
    const double t = t_dist(gen.rng);
    const double theta = th_dist(gen.rng);
    const auto c = oracle::check_against_fd(e, t, theta);
    if (!c) continue;
    ++accepted;
    ASSERT_LE(c->d1_error, c->d1_tol)
        << serialize(e) << " at t=" << t << " theta=" << theta;
    ASSERT_LE(c->d2_error, c->d2_tol)
        << serialize(e) << " at t=" << t << " theta=" << theta;
  }
}
