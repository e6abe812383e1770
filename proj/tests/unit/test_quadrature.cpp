#include <cvlab/curvature.hpp>
#include <cvlab/errors.hpp>
#include <cvlab/quadrature.hpp>
#include <cvlab/zoo.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace cvlab;

namespace {

constexpr double kPi = std::numbers::pi;

double poly(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

double poly_integral(const std::vector<double>& c, double a, double b) {
  std::vector<double> C(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) C[i + 1] = c[i] / (i + 1);
  return poly(C, b) - poly(C, a);
}

Integrand2 density(const EndChart& e) {
  return [&e](double t, double theta) { return curvature_density(e, t, theta); };
}

}  // namespace

TEST(Tolerance, Validation) {
  EXPECT_NO_THROW(Tolerance{}.validate());
  EXPECT_THROW((Tolerance{0.0, 1e-8, 1000}.validate()), InvalidParameter);
  EXPECT_THROW((Tolerance{1e-9, 1.0, 1000}.validate()), InvalidParameter);
  EXPECT_THROW((Tolerance{1e-9, 1e-8, 99}.validate()), InvalidParameter);
}

TEST(GaussKronrod, ExactThroughDegree22) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int degree = 0; degree <= 22; ++degree) {
    std::vector<double> c(degree + 1);
    for (auto& x : c) x = coef(rng);
    const double a = -0.7, b = 1.3;
    const double exact = poly_integral(c, a, b);
    const auto est =
        gauss_kronrod_15([&](double x) { return poly(c, x); }, a, b);
    double scale = 0.0;  // integral of |terms|, the conditioning of `exact`
    for (int i = 0; i <= degree; ++i)
      scale += std::fabs(c[i]) * (std::pow(1.3, i + 1) + std::pow(0.7, i + 1)) /
               (i + 1);
    EXPECT_NEAR(est.kronrod, exact, 1e-13 * scale) << "degree " << degree;
  }
  // degree 24 is not integrated exactly by K15
  const auto est = gauss_kronrod_15([](double x) { return std::pow(x, 24); },
                                    0.0, 1.0);
  EXPECT_GT(std::fabs(est.kronrod - 1.0 / 25), 1e-16);
}

TEST(IntegrateCircle, Examples) {
  const auto one = integrate_circle([](double) { return 1.0; }, {});
  EXPECT_NEAR(one.value, 2 * kPi, 1e-12);
  EXPECT_TRUE(one.converged);
  EXPECT_GT(one.evaluations, 0);
  const auto cos2 = integrate_circle(
      [](double t) { return std::cos(t) * std::cos(t); }, {});
  EXPECT_NEAR(cos2.value, kPi, 1e-10);
}

TEST(IntegrateCircle, ParaboloidCircumference) {
  const auto z = make_paraboloid();
  const auto& e = z.model.ends.front();
  const auto r = integrate_circle(
      [&](double th) { return e.sqrt_g(1.0, th).value; }, {});
  // circumference of the parallel circle at arc length 1: 2 pi r(1), with
  // r(1) the root of (r sqrt(1+r^2) + asinh r)/2 = 1 found by bisection here
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    ((m * std::sqrt(1 + m * m) + std::asinh(m)) / 2 < 1.0 ? lo : hi) = m;
  }
  EXPECT_NEAR(r.value, 2 * kPi * lo, 1e-8);
}

TEST(IntegrateCircle, BudgetExhaustionIsReported) {
  Tolerance tol{1e-15, 1e-15, 100};
  const auto r = integrate_circle(
      [](double t) { return std::fabs(std::sin(7 * t)) * std::exp(std::cos(t)); },
      tol);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.evaluations, 0);
}

TEST(IntegrateCircle, ErrorEstimateCoversConvergedResult) {
  const Tolerance tol;
  const auto r = integrate_circle(
      [](double t) { return std::exp(std::sin(t)); }, tol);
  // I0(1) * 2 pi
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.error_estimate, tol.target(r.value));
  EXPECT_NEAR(r.value, 2 * kPi * std::cyl_bessel_i(0.0, 1.0), 1e-12);
}

TEST(IntegrateAnnulus, Examples) {
  const auto zero = integrate_annulus([](double, double) { return 0.0; }, 0.0,
                                      3.0, {});
  EXPECT_EQ(zero.value, 0.0);
  const auto flat = make_flat_cylinder();
  const auto r = integrate_annulus(density(flat.model.ends[0]), 0.0, 5.0, {});
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  const auto cusp = make_hyperbolic_cusp_cap();
  // int_0^1 int K sqrt G = -2 pi int_0^1 e^-t dt = -2 pi (1 - 1/e)
  const auto c = integrate_annulus(density(cusp.model.ends[0]), 0.0, 1.0, {});
  EXPECT_NEAR(c.value, -2 * kPi * (1 - std::exp(-1.0)), 1e-8);
}

TEST(IntegrateAnnulus, Additivity) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double p = 1 + 3 * u(rng), q = u(rng);
    auto f = [p, q](double t, double th) {
      return std::exp(-q * t) * (p + std::sin(th + t)) / (1 + t * t);
    };
    const double a = 4 * u(rng), b = a + 2 * u(rng) + 0.1,
                 c = b + 3 * u(rng) + 0.1;
    const Tolerance tol;
    const auto ab = integrate_annulus(f, a, b, tol);
    const auto bc = integrate_annulus(f, b, c, tol);
    const auto ac = integrate_annulus(f, a, c, tol);
    EXPECT_LE(std::fabs(ab.value + bc.value - ac.value),
              ab.error_estimate + bc.error_estimate + ac.error_estimate + 1e-15);
  }
}

TEST(IntegrateAnnulus, HalvingToleranceNeverIncreasesTrueError) {
  struct Case {
    ZooEntry z;
    double lo, hi;
  };
  std::vector<Case> cases = {{make_paraboloid(), 0.5, 9.0},
                             {make_capped_cone(0.5), 0.2, 3.0},
                             {make_catenoid(), 0.0, 6.0},
                             {make_hyperbolic_cusp_cap(), 0.0, 4.0}};
  for (const auto& c : cases) {
    // closed form: sum over ends of 2 pi (f'(lo) - f'(hi)), i.e. difference
    // of the oracle truncated curvatures
    const double ends = static_cast<double>(c.z.model.ends.size());
    const double exact =
        (c.z.oracle.c_trunc(c.hi) - c.z.oracle.c_trunc(c.lo)) / ends;
    double previous = HUGE_VAL;
    for (double abs_tol = 1e-3; abs_tol >= 1e-11; abs_tol /= 2) {
      Tolerance tol{abs_tol, 1e-15, 2'000'000};
      const auto r =
          integrate_annulus(density(c.z.model.ends[0]), c.lo, c.hi, tol);
      const double err = std::fabs(r.value - exact);
      // below ~100 ulp of the result the error is rounding, not method
      const double floor = 100 * 2.2e-16 * std::max(1.0, std::fabs(exact));
      EXPECT_LE(err, std::max(previous, floor))
          << c.z.model.name << " abs_tol " << abs_tol;
      previous = std::max(err, floor);
    }
  }
}

TEST(IntegrateImproper, ZeroConverges) {
  const auto r = integrate_improper([](double, double) { return 0.0; }, 0.0, {});
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.result.value, 0.0);
}

TEST(IntegrateImproper, ParaboloidTotalCurvature) {
  const auto z = make_paraboloid();
  const auto f = density(z.model.ends[0]);
  const auto cap = integrate_from_pole(f, 1.0, {});
  const auto tail = integrate_improper(f, 1.0, {});
  ASSERT_TRUE(cap.converged());
  ASSERT_TRUE(tail.converged());
  EXPECT_NEAR(cap.result.value + tail.result.value, 2 * kPi, 1e-6);
  // the trace is recorded
  EXPECT_EQ(tail.window_ends.size(), tail.partial_sums.size());
  EXPECT_FALSE(tail.window_ends.empty());
}

TEST(IntegrateImproper, ExpTSquaredDivergesDownward) {
  const auto e = EndChart::from_expression(parse_metric("exp(t^2)"), 0.0);
  const auto r = integrate_improper(density(e), 0.0, {});
  EXPECT_FALSE(r.converged());
  EXPECT_EQ(r.divergence, Divergence::MinusInfinity);
  EXPECT_FALSE(r.stop_reason.empty());
  // partial sums decrease: -2 pi (f'(T) - f'(0)) with f' = t e^{t^2/2}
  for (std::size_t k = 1; k < r.partial_sums.size(); ++k)
    EXPECT_LT(r.partial_sums[k], r.partial_sums[k - 1]);
}

TEST(IntegrateImproper, LinearGrowthDivergesUpward) {
  const auto r = integrate_improper([](double, double) { return 1.0; }, 0.0,
                                    {}, {1.0, 20});
  EXPECT_FALSE(r.converged());
  EXPECT_EQ(r.divergence, Divergence::PlusInfinity);
}

TEST(IntegrateImproper, OscillationIsNotConvergence) {
  const auto r = integrate_improper(
      [](double t, double) { return std::cos(t); }, 0.0, {}, {1.0, 20});
  EXPECT_FALSE(r.converged());
}

TEST(IntegrateFromPole, PolarPlaneAndCone) {
  const auto plane = make_polar_plane();
  const auto r = integrate_from_pole(density(plane.model.ends[0]), 2.0, {});
  EXPECT_TRUE(r.converged());
  EXPECT_NEAR(r.result.value, 0.0, 1e-12);
  const auto cone = make_capped_cone(0.5);
  const auto c = integrate_from_pole(density(cone.model.ends[0]), 1.0, {});
  EXPECT_NEAR(c.result.value, kPi, 1e-9);
}

TEST(TailLimit, ConstantSequence) {
  std::vector<TailSample> s;
  for (double h : {1.0, 2.0, 4.0, 8.0}) s.push_back({h, 2 * kPi, 0.0});
  const auto L = estimate_tail_limit(s, 1.0);
  EXPECT_DOUBLE_EQ(L.limit, 2 * kPi);
  EXPECT_LE(L.error_bound, 1e-15);
}

TEST(TailLimit, ParaboloidSlopeSamples) {
  // lambda = 2 pi cos(phi(h)) from the closed form, ratio-4 heights.
  const auto z = make_paraboloid();
  std::vector<TailSample> s;
  for (int k = 0; k <= 11; ++k) {
    const double h = std::ldexp(1.0, 2 * k);
    s.push_back({h, z.oracle.lambda(h), 0.0});
  }
  const auto L = estimate_tail_limit(s, 0.0);
  EXPECT_NEAR(L.limit, 0.0, 1e-3);
  EXPECT_LE(std::fabs(L.limit - 0.0), 10 * L.error_bound + 1e-12);
  EXPECT_TRUE(L.accelerated);
}

TEST(TailLimit, CuspIsNotMonotone) {
  std::vector<TailSample> s;
  for (double h : {0.5, 1.0, 2.0, 4.0, 8.0})
    s.push_back({h, -2 * kPi * std::exp(-h), 0.0});
  EXPECT_THROW(estimate_tail_limit(s, 0.0), NotMonotone);
  try {
    estimate_tail_limit(s, 0.0);
  } catch (const NotMonotone& e) {
    EXPECT_GT(e.increase(), 0.0);
  }
}

TEST(TailLimit, NeedsThreeSamples) {
  std::vector<TailSample> s = {{1.0, 1.0, 0.0}, {2.0, 0.5, 0.0}};
  EXPECT_THROW(estimate_tail_limit(s, 0.0), InvalidParameter);
}

TEST(TailLimit, IgnoresOrderOfSamplesBelowThreshold) {
  std::vector<TailSample> s = {{0.1, 9.0, 0.0}, {0.2, -3.0, 0.0},
                               {0.3, 5.0, 0.0}, {1.0, 3.0, 0.0},
                               {2.0, 2.0, 0.0}, {4.0, 1.5, 0.0},
                               {8.0, 1.25, 0.0}};
  const auto reference = estimate_tail_limit(s, 1.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(s.begin(), s.begin() + 3, rng);
    const auto L = estimate_tail_limit(s, 1.0);
    EXPECT_EQ(L.limit, reference.limit);
    EXPECT_EQ(L.error_bound, reference.error_bound);
  }
}

TEST(TailLimit, MonotoneWithinErrorBars) {
  std::vector<TailSample> s = {{1.0, 1.0, 1e-6}, {2.0, 1.000001, 1e-6},
                               {4.0, 0.9, 1e-6}};
  EXPECT_NO_THROW(estimate_tail_limit(s, 0.0));
  EXPECT_TRUE(check_nonincreasing(s).monotone());
}

TEST(ExtrapolateTail, DetectsDivergence) {
  std::vector<TailSample> s;
  for (double h : {1.0, 2.0, 4.0, 8.0, 16.0}) s.push_back({h, h * h, 0.0});
  const auto est = extrapolate_tail(s);
  EXPECT_EQ(est.kind, TailKind::Divergent);
  EXPECT_EQ(est.direction, Divergence::PlusInfinity);
}
