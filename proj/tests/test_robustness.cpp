#include "bcdt/error.hpp"
#include "bcdt/robustness.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bcdt;

namespace {

Signal row(std::vector<double> v) { return Signal({std::move(v)}); }

} // namespace

TEST(Robustness, SingleFace) {
  auto f = parse_formula("x1 <= 1");
  EXPECT_DOUBLE_EQ(robustness(*f, row({0, 0}), 0), 1.0);
  EXPECT_TRUE(satisfies(*f, row({0})));
  EXPECT_FALSE(satisfies(*f, row({2})));
}

TEST(Robustness, BoundaryCountsAsSatisfied) {
  std::vector<std::vector<double>> rows(3, std::vector<double>(8, 0.0));
  for (int t = 3; t <= 6; ++t)
    rows[2][t] = 1.0;
  const Signal s(rows);
  auto f = parse_formula("G[3,6](x3 <= 1)");
  EXPECT_EQ(robustness(*f, s, 0), 0.0);
  EXPECT_TRUE(satisfies(*f, s));
}

TEST(Robustness, HandEvaluatedConjunction) {
  auto f = parse_formula("F[0,2](x1 > 2) & G[0,2](x1 <= 5)");
  const Signal s = row({1, 3, 4});
  EXPECT_DOUBLE_EQ(robustness(*f, s, 0), 1.0);
  EXPECT_TRUE(satisfies(*f, s));
}

TEST(Robustness, ConstantsUseTheCap) {
  EXPECT_EQ(robustness(*make_constant(true), row({0}), 0), kRobustnessCap);
  EXPECT_EQ(robustness(*make_constant(false), row({0}), 0), -kRobustnessCap);
}

TEST(Robustness, WeightsDoNotChangeValues) {
  auto plain = parse_formula("(F[0,2](x1 > 2) & G[0,2](x1 <= 5))");
  auto weighted = parse_formula("(F[0,2](x1 > 2) &^{3,0.25} G[0,2](x1 <= 5))");
  const Signal s = row({1, 3, 4});
  EXPECT_EQ(robustness(*plain, s, 0), robustness(*weighted, s, 0));
}

TEST(Robustness, Errors) {
  auto f = parse_formula("G[0,5](x1 > 0)");
  EXPECT_THROW(robustness(*f, row({1, 2, 3}), 0), OutOfHorizon);
  EXPECT_THROW(robustness(*parse_formula("x2 > 0"), row({1}), 0), DimensionMismatch);
  EXPECT_THROW(robustness(*parse_formula("x1 > 0"), row({1}), 3), OutOfHorizon);
}

TEST(Robustness, TraceMatchesPointwise) {
  oracle::FormulaGen gen(5, 2);
  for (int i = 0; i < 100; ++i) {
    auto f = gen.formula(3, 6);
    const Signal s = gen.signal(10);
    const int last = 10 - required_horizon(*f);
    const auto trace = robustness_trace(*f, s, 0, last);
    for (int t = 0; t <= last; ++t)
      ASSERT_EQ(trace[t], oracle::rho(*f, s, t)) << to_string(*f) << " t=" << t;
  }
}

TEST(Robustness, Properties) {
  oracle::FormulaGen gen(9, 3);
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula(3, 5);
    const Signal s = gen.signal(10);
    const int a = gen.integer(0, 2), b = gen.integer(a, 5);
    EXPECT_EQ(robustness(*make_not(f), s, 0), -robustness(*f, s, 0));
    EXPECT_EQ(robustness(*make_always(a, b, f), s, 0), -robustness(*make_eventually(a, b, make_not(f)), s, 0));
    const double r = robustness(*f, s, 0);
    if (r != 0.0) {
      EXPECT_EQ(satisfies(*f, s), r > 0);
    }
  }
}

TEST(Robustness, MonotoneInThreshold) {
  const Signal s = row({0.5, 1.5, 2.5});
  double prev_le = -INFINITY, prev_gt = INFINITY;
  for (double pi = -1; pi <= 4; pi += 0.25) {
    const double le = robustness(*make_always(0, 2, make_predicate(Face{0, Comparator::LessEqual, pi})), s, 0);
    const double gt = robustness(*make_always(0, 2, make_predicate(Face{0, Comparator::Greater, pi})), s, 0);
    EXPECT_GT(le, prev_le);
    EXPECT_LT(gt, prev_gt);
    prev_le = le;
    prev_gt = gt;
  }
}

TEST(Robustness, MatchesNaiveEvaluator) {
  oracle::FormulaGen gen(2024, 3);
  for (int i = 0; i < 500; ++i) {
    auto f = gen.formula(4, 10);
    const Signal s = gen.signal(10);
    ASSERT_NEAR(robustness(*f, s, 0), oracle::rho(*f, s, 0), 1e-9) << to_string(*f);
  }
}
