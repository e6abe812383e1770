#include <cvlab/config_file.hpp>
#include <cvlab/errors.hpp>
#include <cvlab/sweep.hpp>
#include <cvlab/zoo.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cvlab;

namespace {

constexpr double kPi = std::numbers::pi;

SweepReport sweep(const ZooEntry& z) {
  return run_sweep(z.model, spaced_schedule(z.h_min, z.h_max, z.steps));
}

VerdictStatus status(const SweepReport& r, const char* key) {
  return r.verdicts.at(key).status;
}

}  // namespace

TEST(Mu, Examples) {
  const Tolerance tol;
  EXPECT_NEAR(mu(make_flat_cylinder().model, 7.0, tol).value, 4 * kPi, 1e-12);
  EXPECT_NEAR(mu(make_polar_plane().model, 3.0, tol).value, 6 * kPi, 1e-12);
  EXPECT_NEAR(mu(make_hyperbolic_cusp_cap().model, 2.0, tol).value,
              2 * kPi * std::exp(-2.0), 1e-9);
}

TEST(LambdaTotal, Examples) {
  const Tolerance tol;
  EXPECT_NEAR(lambda_total(make_flat_cylinder().model, 7.0, tol).value, 0.0,
              1e-12);
  for (double h : {0.5, 3.0, 40.0})
    EXPECT_NEAR(lambda_total(make_polar_plane().model, h, tol).value, 2 * kPi,
                1e-12);
  // r(h) = 1 at h = s(1) = (sqrt 2 + asinh 1) / 2; slope angle pi / 4
  const double h = (std::sqrt(2.0) + std::asinh(1.0)) / 2;
  EXPECT_NEAR(lambda_total(make_paraboloid().model, h, tol).value,
              2 * kPi / std::sqrt(2.0), 1e-6);
}

TEST(TruncatedTotalCurvature, Examples) {
  const Tolerance tol;
  EXPECT_NEAR(
      truncated_total_curvature(make_flat_cylinder().model, 5, tol).value, 0.0,
      1e-12);
  EXPECT_NEAR(truncated_total_curvature(make_polar_plane().model, 5, tol).value,
              0.0, 1e-12);
  const auto p = make_paraboloid();
  for (double h : {0.5, 1.0, 2.0, 8.0, 30.0}) {
    const double r = paraboloid_radius(h);
    const double oracle = 2 * kPi * (1 - 1 / std::sqrt(1 + r * r));
    EXPECT_NEAR(truncated_total_curvature(p.model, h, tol).value, oracle, 1e-6)
        << "h = " << h;
  }
}

TEST(DetectH1, Paraboloid) {
  const auto p = make_paraboloid();
  const auto probe = probe_curvature(p.model, 64.0, 64);
  ASSERT_TRUE(probe.h1.has_value());
  EXPECT_TRUE(probe.at_origin);
  EXPECT_TRUE(probe.positive_somewhere);
  EXPECT_EQ(*probe.h1, p.model.lowest_height());
}

TEST(DetectH1, CuspNotFound) {
  EXPECT_FALSE(detect_h1(make_hyperbolic_cusp_cap().model, 64.0).has_value());
  EXPECT_FALSE(detect_h1(make_catenoid().model, 64.0).has_value());
}

TEST(DetectH1, SignChangeAtFive) {
  // K sqrt G = -f'' with f = 2 + t - (1 + cos(theta)/2)(t - 3) e^-t, so
  // f'' = (1 + cos(theta)/2)(t - 5) e^-t: K < 0 below t = 5, K >= 0 above.
  const auto m = load_surface_config(CVLAB_TEST_DATA "/sign_change.ini");
  const auto h1 = detect_h1(m, 64.0);
  ASSERT_TRUE(h1.has_value());
  EXPECT_NEAR(*h1, 5.0, 64.0 / 64);
  EXPECT_GE(*h1, 5.0 - 64.0 / 4096);
}

TEST(DetectH1, GridValidation) {
  EXPECT_THROW(detect_h1(make_paraboloid().model, 64.0, 4), InvalidParameter);
}

TEST(GaussBonnetTruncated, Examples) {
  const Tolerance tol;
  const auto flat = make_flat_cylinder();
  TruncationSample s{3.0, 4 * kPi, 0.0, 0.0};
  EXPECT_NEAR(check_gauss_bonnet_truncated(s, 0), 0.0, 1e-10);
  TruncationSample plane{3.0, 6 * kPi, 2 * kPi, 0.0};
  EXPECT_NEAR(check_gauss_bonnet_truncated(plane, 1), 0.0, 1e-10);
  const auto p = make_paraboloid();
  for (double h : {1.0, 2.0, 4.0, 8.0}) {
    TruncationSample x;
    x.h = h;
    x.lambda = lambda_total(p.model, h, tol).value;
    x.c_trunc = truncated_total_curvature(p.model, h, tol).value;
    EXPECT_LT(check_gauss_bonnet_truncated(x, 1), 1e-6) << "h = " << h;
  }
}

TEST(LambdaIsMuPrime, ExactCases) {
  const auto plane = make_polar_plane();
  auto r = sweep(plane);
  EXPECT_NEAR(check_lambda_is_mu_prime(r.samples), 0.0, 1e-10 * 1024);
  // uniform spacing keeps the difference quotient well conditioned
  r = run_sweep(plane.model,
                std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_NEAR(check_lambda_is_mu_prime(r.samples), 0.0, 1e-10);
  const auto flat = run_sweep(make_flat_cylinder().model,
                              spaced_schedule(1.0, 64.0, 12));
  EXPECT_NEAR(check_lambda_is_mu_prime(flat.samples), 0.0, 1e-10);
  std::vector<TruncationSample> two(2);
  EXPECT_THROW(check_lambda_is_mu_prime(two), InvalidParameter);
}

TEST(LambdaIsMuPrime, ParaboloidSecondOrder) {
  const auto p = make_paraboloid();
  const auto probe = probe_lambda_mu_prime(p.model, 1.0, 0.1);
  ASSERT_TRUE(probe.resolved);
  EXPECT_NEAR(probe.coarse / probe.fine, 4.0, 0.1);
  EXPECT_GE(probe.order, 1.9);
  // central-difference truncation error mu''' step^2 / 6, mu = 2 pi r(h)
  const double s = 0.05, h = 1.0, d = 1e-3;
  const auto mu_at = [](double x) { return 2 * kPi * paraboloid_radius(x); };
  const double mu3 = (mu_at(h + 2 * d) - 2 * mu_at(h + d) + 2 * mu_at(h - d) -
                      mu_at(h - 2 * d)) /
                     (2 * d * d * d);
  EXPECT_NEAR(probe.fine, std::fabs(mu3) * s * s / 6, 0.02 * probe.fine);
}

TEST(LambdaIsMuPrime, ProbeLeavesChart) {
  EXPECT_THROW(probe_lambda_mu_prime(make_flat_cylinder().model, 0.05, 0.1),
               InvalidParameter);
}

TEST(Schedules, Shapes) {
  const auto g = spaced_schedule(1.0, 1024.0, 11);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_DOUBLE_EQ(g.front(), 1.0);
  EXPECT_DOUBLE_EQ(g.back(), 1024.0);
  EXPECT_NEAR(g[3], 8.0, 1e-12);
  const auto u = spaced_schedule(0.0, 10.0, 6);
  EXPECT_NEAR(u[2], 4.0, 1e-12);
  EXPECT_THROW(spaced_schedule(1.0, 2.0, 2), InvalidParameter);
  EXPECT_THROW(spaced_schedule(2.0, 1.0, 5), InvalidParameter);

  const auto p = make_paraboloid();
  const auto d = default_schedule(p.model, 0.0, 1024.0);
  EXPECT_EQ(d.size(), 11u);
  EXPECT_DOUBLE_EQ(d.front(), 1.0);
  const auto m = load_surface_config(CVLAB_TEST_DATA "/sign_change.ini");
  const auto s = default_schedule(m, 5.0, 1024.0);
  // 8 heights below h1, then h1 + 2^k while <= h_max
  EXPECT_EQ(s.size(), 18u);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_GT(s[k], s[k - 1]);
}

TEST(RunSweep, RejectsBadSchedule) {
  const auto flat = make_flat_cylinder();
  EXPECT_THROW(run_sweep(flat.model, std::vector<double>{}), InvalidParameter);
  EXPECT_THROW(run_sweep(flat.model, std::vector<double>{1.0, 3.0, 2.0}),
               InvalidParameter);
  EXPECT_THROW(run_sweep(flat.model, std::vector<double>{-1.0, 1.0, 2.0}),
               InvalidParameter);
}

TEST(RunSweep, FlatCylinderAllPass) {
  const auto r = run_sweep(make_flat_cylinder().model,
                           spaced_schedule(1.0, 64.0, 12));
  ASSERT_EQ(r.samples.size(), 12u);
  EXPECT_FALSE(r.any_failure());
  for (const auto& [name, v] : r.verdicts)
    EXPECT_NE(v.status, VerdictStatus::Fail) << name;
  EXPECT_EQ(status(r, check::kTheorem), VerdictStatus::Pass);
  EXPECT_EQ(r.L.kind, LimitResult::Kind::Finite);
  EXPECT_NEAR(r.L.value, 0.0, 1e-12);
  ASSERT_EQ(r.c_total.kind, TotalCurvature::Kind::Finite);
  EXPECT_NEAR(r.c_total.value, 0.0, 1e-12);
  // K == 0: no contradiction with chi = 0
  EXPECT_EQ(status(r, check::kCorollary), VerdictStatus::NotApplicable);
}

TEST(RunSweep, ParaboloidEquality) {
  const auto r = sweep(make_paraboloid());
  EXPECT_FALSE(r.any_failure());
  EXPECT_TRUE(r.h1.has_value());
  ASSERT_EQ(r.L.kind, LimitResult::Kind::Finite);
  EXPECT_NEAR(r.L.value, 0.0, 1e-3);
  EXPECT_NEAR(r.c_total.value, 2 * kPi, 1e-3);
  EXPECT_EQ(status(r, check::kTheorem), VerdictStatus::Pass);
  EXPECT_LT(std::fabs(r.verdicts.at(check::kTheorem).residual), 1e-3);
  EXPECT_EQ(status(r, check::kCorollary), VerdictStatus::Pass);
  EXPECT_EQ(status(r, check::kRoutes), VerdictStatus::Pass);
}

TEST(RunSweep, CuspControl) {
  const auto z = make_hyperbolic_cusp_cap();
  const auto r = sweep(z);
  EXPECT_FALSE(r.h1.has_value());
  EXPECT_EQ(status(r, check::kMonotone), VerdictStatus::Fail);
  EXPECT_NE(r.verdicts.at(check::kMonotone).note.find("NotMonotone"),
            std::string::npos);
  EXPECT_EQ(status(r, check::kTheorem), VerdictStatus::NotApplicable);
  EXPECT_EQ(status(r, check::kGaussBonnet), VerdictStatus::Pass);
  // c_trunc = 4 pi - 2 pi (1 - e^-h) -> 2 pi
  EXPECT_NEAR(r.c_total.value, z.oracle.c_total, 1e-3);
}

TEST(RunSweep, CatenoidObservedNotCertified) {
  const auto r = sweep(make_catenoid());
  EXPECT_FALSE(r.h1.has_value());
  const auto& t = r.verdicts.at(check::kTheorem);
  EXPECT_EQ(t.status, VerdictStatus::NotApplicable);
  EXPECT_NEAR(t.residual, 4 * kPi, 1e-3);
  EXPECT_NE(t.note.find("not certified"), std::string::npos);
}

TEST(RunSweep, ExpTSquaredDoesNotConverge) {
  const auto m = load_surface_config(CVLAB_TEST_DATA "/exp_t2.ini");
  const auto r = run_sweep(m, spaced_schedule(1.0, 64.0, 12));
  EXPECT_EQ(r.c_total.kind, TotalCurvature::Kind::DoesNotConverge);
  EXPECT_EQ(r.c_total.direction, Divergence::MinusInfinity);
  // the schedule stops where G overflows
  EXPECT_LT(r.samples.size(), 12u);
  EXPECT_FALSE(r.notes.empty());
}

TEST(RunSweep, SignChangeConfig) {
  const auto m = load_surface_config(CVLAB_TEST_DATA "/sign_change.ini");
  const auto r = run_sweep(m, spaced_schedule(1.0, 256.0, 12));
  ASSERT_TRUE(r.h1.has_value());
  EXPECT_NEAR(*r.h1, 5.0, 0.1);
  EXPECT_FALSE(r.any_failure());
  EXPECT_NEAR(r.L.value, 2 * kPi, 1e-3);
  // 2 pi chi - c_total = L for one end on a disc core
  EXPECT_EQ(status(r, check::kSplit), VerdictStatus::Pass);
}

TEST(RunSweep, SamplesStrictlyIncreasingAndMuPositive) {
  for (const auto& z : make_zoo()) {
    const auto r = sweep(z);
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
      EXPECT_GT(r.samples[k].mu, 0.0) << z.model.name;
      if (k > 0) EXPECT_GT(r.samples[k].h, r.samples[k - 1].h);
    }
    if (!r.h1) EXPECT_NE(status(r, check::kTheorem), VerdictStatus::Pass);
  }
}

TEST(RunSweep, WorkerCountDoesNotChangeResults) {
  const auto z = make_capped_cone(0.5);
  SweepOptions one;
  one.workers = 1;
  SweepOptions many;
  many.workers = 4;
  const auto sched = spaced_schedule(z.h_min, z.h_max, z.steps);
  const auto a = run_sweep(z.model, sched, {}, one);
  const auto b = run_sweep(z.model, sched, {}, many);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    EXPECT_EQ(a.samples[k].mu, b.samples[k].mu);
    EXPECT_EQ(a.samples[k].lambda, b.samples[k].lambda);
    EXPECT_EQ(a.samples[k].c_trunc, b.samples[k].c_trunc);
  }
  EXPECT_EQ(a.L.value, b.L.value);
}

// Invariants over the zoo (hypothesis-satisfying entries).
TEST(SweepInvariants, Zoo) {
  for (const auto& z : make_zoo()) {
    if (!z.oracle.hypothesis_holds) continue;
    const auto r = sweep(z);
    SCOPED_TRACE(z.model.name);
    ASSERT_TRUE(r.h1.has_value());
    EXPECT_EQ(status(r, check::kMonotone), VerdictStatus::Pass);
    ASSERT_EQ(r.L.kind, LimitResult::Kind::Finite);
    EXPECT_GE(r.L.value, -r.L.error_bound);
    EXPECT_NEAR(r.L.value, z.oracle.L, 1e-3);
    EXPECT_GE(2 * kPi * r.chi - r.c_total.value, -1e-6);
    EXPECT_NE(status(r, check::kRoutes), VerdictStatus::Fail);
    EXPECT_EQ(status(r, check::kSplit), VerdictStatus::Pass);
    for (const auto& s : r.samples)
      EXPECT_LE(s.gb_residual, verdict_bound(s.quad_error));
  }
}
