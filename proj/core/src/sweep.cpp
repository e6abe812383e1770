#include <cvlab/sweep.hpp>

#include <cvlab/curvature.hpp>
#include <cvlab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

namespace cvlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Verdict make_verdict(VerdictStatus s, double residual, double bound,
                     std::string note) {
  return {s, residual, bound, std::move(note)};
}

void add(QuadResult& acc, const QuadResult& r) {
  acc.value += r.value;
  acc.error_estimate += r.error_estimate;
  acc.evaluations += r.evaluations;
  acc.converged = acc.converged && r.converged;
}

// Band [lo, hi] of the curvature integrand on one end; lo == 0 on a polar cap
// means "from the pole".
template <class Density>
QuadResult band_integral(const EndChart& end, bool from_pole, double lo,
                         double hi, const Tolerance& tol, Density density) {
  auto f = [&](double t, double theta) { return density(end, t, theta); };
  // Panels of doubling width from lo: a single panel over a long range can
  // step over curvature concentrated near its lower end.
  QuadResult total{0.0, 0.0, 0, true};
  double a = lo;
  double width = std::min(1.0, hi - lo);
  while (a < hi) {
    const double b = hi - a <= 1.5 * width ? hi : a + width;
    if (from_pole && a == 0.0)
      add(total, integrate_from_pole(f, b, tol).result);
    else
      add(total, integrate_annulus(f, a, b, tol));
    a = b;
    width *= 2.0;
  }
  return total;
}

double plus_density(const EndChart& e, double t, double theta) {
  return std::max(curvature_density(e, t, theta), 0.0);
}

double minus_density(const EndChart& e, double t, double theta) {
  return std::max(-curvature_density(e, t, theta), 0.0);
}

double core_curvature(const SurfaceModel& model) {
  if (const auto* a = std::get_if<AnalyticCore>(&model.core))
    return a->total_curvature;
  return 0.0;
}


void check_height(const SurfaceModel& model, double h) {
  if (!std::isfinite(h) || h < model.lowest_height())
    throw InvalidParameter("height " + fmt(h) +
                           " is below the lowest chart height " +
                           fmt(model.lowest_height()));
  if (model.has_polar_cap() && !(h > 0.0))
    throw InvalidParameter("truncation height must be > 0 on a polar cap");
}

}  // namespace

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

VerdictStatus verdict_status_from_string(const std::string& s) {
  if (s == "pass") return VerdictStatus::Pass;
  if (s == "fail") return VerdictStatus::Fail;
  if (s == "not-applicable") return VerdictStatus::NotApplicable;
  throw InvalidParameter("unknown verdict status '" + s + "'");
}

bool SweepReport::any_failure() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const auto& kv) {
    return kv.second.status == VerdictStatus::Fail;
  });
}

double verdict_bound(double combined_error) {
  return 10.0 * combined_error + 1e-9;
}

// ---------------------------------------------------------------------------
// Functionals

QuadResult mu(const SurfaceModel& model, double h, const Tolerance& tol) {
  check_height(model, h);
  QuadResult total{0.0, 0.0, 0, true};
  for (const auto& end : model.ends) {
    add(total, integrate_circle(
                   [&](double theta) { return end.sqrt_g(h, theta).value; },
                   tol));
  }
  if (!(total.value > 0.0)) throw NonPositiveMu(h, total.value);
  return total;
}

QuadResult lambda_total(const SurfaceModel& model, double h,
                        const Tolerance& tol) {
  check_height(model, h);
  QuadResult total{0.0, 0.0, 0, true};
  for (const auto& end : model.ends) {
    add(total, integrate_circle(
                   [&](double theta) {
                     return geodesic_curvature(end, h, theta);
                   },
                   tol));
  }
  return total;
}

QuadResult truncated_total_curvature(const SurfaceModel& model, double h,
                                     const Tolerance& tol) {
  check_height(model, h);
  QuadResult total{core_curvature(model), 0.0, 0, true};
  for (const auto& end : model.ends) {
    if (h == end.t_min()) continue;
    add(total, band_integral(end, model.has_polar_cap(), end.t_min(), h, tol,
                             curvature_density));
  }
  return total;
}

// ---------------------------------------------------------------------------
// h1 detection

CurvatureProbe probe_curvature(const SurfaceModel& model, double h_probe_max,
                               int grid, double k_slack, int theta_samples) {
  if (grid < 8) throw InvalidParameter("h1 grid must have >= 8 intervals");
  CurvatureProbe out;
  const double origin = model.has_polar_cap()
                            ? std::max(model.lowest_height(), kPoleGuard)
                            : model.lowest_height();
  out.grid_origin = origin;
  if (!(h_probe_max > origin))
    throw InvalidParameter("h_probe_max must exceed the lowest chart height");

  out.min_K = HUGE_VAL;
  out.max_K = -HUGE_VAL;
  // Sign of K is judged relative to the size of the terms it is assembled
  // from, |G_tt| / G + (G_t / G)^2, so that decaying curvature stays visible
  // and rounding noise around K = 0 does not.
  auto min_K_at = [&](double t) {
    double lo = HUGE_VAL;
    for (const auto& end : model.ends) {
      for (int k = 0; k < theta_samples; ++k) {
        const double theta = kTwoPi * k / theta_samples;
        try {
          const double K = gauss_curvature(end, t, theta);
          const Jet2 g = end.g(t, theta);
          const double r1 = g.d1 / g.value;
          const double scale = std::fabs(g.d2) / g.value + r1 * r1;
          const double rel = scale > 0.0 ? K / scale : (K == 0.0 ? 0.0 : K);
          lo = std::min(lo, rel);
          out.min_K = std::min(out.min_K, K);
          out.max_K = std::max(out.max_K, K);
          if (rel > k_slack) out.positive_somewhere = true;
        } catch (const DomainError&) {
          // an unevaluable point cannot be certified
          lo = -HUGE_VAL;
        }
      }
    }
    return lo;
  };
  auto ok = [&](double t) { return min_K_at(t) >= -k_slack; };

  // Uniform grid plus points crowding toward the origin, so that features
  // near the bottom of a long range are still sampled.
  std::vector<double> heights;
  for (int i = 0; i <= grid; ++i)
    heights.push_back(origin + (h_probe_max - origin) * i / grid);
  for (int k = 1; k <= 24; ++k)
    heights.push_back(origin + (h_probe_max - origin) * std::ldexp(1.0, -k));
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
  const int n = static_cast<int>(heights.size());
  std::vector<char> good(n);
  for (int i = 0; i < n; ++i) good[i] = ok(heights[i]);
  int first = n;
  for (int i = n - 1; i >= 0 && good[i]; --i) first = i;
  if (first == n) return out;
  if (first == 0) {
    out.h1 = model.lowest_height();
    out.at_origin = true;
    return out;
  }
  double bad = heights[first - 1];
  double fine = heights[first];
  const double resolution = (h_probe_max - origin) / 4096.0;
  while (fine - bad > resolution) {
    const double mid = 0.5 * (bad + fine);
    (ok(mid) ? fine : bad) = mid;
  }
  out.h1 = fine;
  return out;
}

std::optional<double> detect_h1(const SurfaceModel& model, double h_probe_max,
                                int grid, double k_slack) {
  return probe_curvature(model, h_probe_max, grid, k_slack).h1;
}

// ---------------------------------------------------------------------------
// Checks

double check_gauss_bonnet_truncated(const TruncationSample& sample, int chi) {
  return std::fabs(kTwoPi * chi - sample.c_trunc - sample.lambda);
}

double check_lambda_is_mu_prime(std::span<const TruncationSample> samples) {
  if (samples.size() < 3)
    throw InvalidParameter("lambda = mu' check needs at least 3 samples");
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
    const double slope = (samples[k + 1].mu - samples[k - 1].mu) /
                         (samples[k + 1].h - samples[k - 1].h);
    worst = std::max(worst, std::fabs(samples[k].lambda - slope));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Schedules

std::vector<double> default_schedule(const SurfaceModel& model,
                                     std::optional<double> h1, double h_max) {
  const double lowest = model.lowest_height();
  const double base = h1 ? std::max(*h1, lowest) : lowest;
  std::vector<double> out;
  if (base > lowest) {
    for (int i = 1; i <= 8; ++i) out.push_back(lowest + (base - lowest) * i / 9);
  }
  for (int k = 0; k <= 10; ++k) {
    const double h = base + std::ldexp(1.0, k);
    if (h > h_max && !out.empty()) break;
    out.push_back(h);
  }
  return out;
}

std::vector<double> spaced_schedule(double h_min, double h_max, int steps) {
  if (steps < 3) throw InvalidParameter("steps must be >= 3");
  if (!(h_min < h_max)) throw InvalidParameter("h_min must be < h_max");
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    const double s = double(i) / (steps - 1);
    out[i] = h_min > 0.0 ? h_min * std::pow(h_max / h_min, s)
                         : h_min + (h_max - h_min) * s;
  }
  out.front() = h_min;
  out.back() = h_max;
  return out;
}

MuPrimeProbe probe_lambda_mu_prime(const SurfaceModel& model, double h,
                                   double step, const Tolerance& tol) {
  if (!(step > 0.0)) throw InvalidParameter("probe step must be > 0");
  const double lowest = model.has_polar_cap()
                            ? std::max(model.lowest_height(), 1e-3)
                            : model.lowest_height();
  if (h - step < lowest)
    throw InvalidParameter("probe reaches below the lowest chart height");
  const QuadResult lam = lambda_total(model, h, tol);
  auto deviation = [&](double delta, double& err) {
    const QuadResult lo = mu(model, h - delta, tol);
    const QuadResult hi = mu(model, h + delta, tol);
    err += (lo.error_estimate + hi.error_estimate) / (2.0 * delta);
    err += 1e-13 * std::max(std::fabs(lo.value), std::fabs(hi.value)) / delta;
    return std::fabs(lam.value - (hi.value - lo.value) / (2.0 * delta));
  };
  MuPrimeProbe p;
  p.h = h;
  p.step = step / 2;
  double err_coarse = 0.0;
  double err_fine = 0.0;
  p.coarse = deviation(step, err_coarse);
  p.fine = deviation(step / 2, err_fine);
  p.noise = err_fine + lam.error_estimate + 1e-12;
  p.resolved = p.fine > 100.0 * p.noise;
  if (p.resolved) p.order = std::log2(p.coarse / p.fine);
  return p;
}

// ---------------------------------------------------------------------------
// The sweep

namespace {

struct SampleWork {
  QuadResult mu, lambda, band, band_plus, band_minus;
  std::exception_ptr error;
};

Verdict gauss_bonnet_verdict(const std::vector<TruncationSample>& samples) {
  if (samples.empty())
    return make_verdict(VerdictStatus::NotApplicable, kNaN, kNaN,
                        "no samples");
  // Report the sample closest to (or furthest past) its own bound.
  Verdict v = make_verdict(VerdictStatus::Pass, 0.0, 0.0, "");
  double worst_ratio = -1.0;
  double worst_excess = -HUGE_VAL;
  for (const auto& s : samples) {
    const double bound = verdict_bound(s.lambda_error + s.c_error);
    const double ratio = s.gb_residual / bound;
    worst_excess = std::max(worst_excess, s.gb_residual - bound);
    if (!(ratio <= worst_ratio)) {
      worst_ratio = ratio;
      v.residual = s.gb_residual;
      v.bound = bound;
    }
  }
  if (worst_excess > 0.0) {
    v.status = VerdictStatus::Fail;
    v.note = "residual exceeds bound at some height";
  } else {
    v.note = "worst of " + std::to_string(samples.size()) +
             " heights relative to its bound";
  }
  return v;
}

Verdict mu_prime_verdict(const SurfaceModel& model,
                         const std::vector<TruncationSample>& samples,
                         const Tolerance& tol, const SweepOptions& opt) {
  if (samples.empty())
    return make_verdict(VerdictStatus::NotApplicable, kNaN, kNaN,
                        "no samples");
  const double d = opt.mu_prime_step;
  std::vector<std::optional<MuPrimeProbe>> probes(samples.size());
  parallel_for(
      samples.size(),
      [&](std::size_t k) {
        try {
          probes[k] = probe_lambda_mu_prime(model, samples[k].h, d, tol);
        } catch (const InvalidParameter&) {
        } catch (const DomainError&) {
        }
      },
      opt.workers);

  int n_used = 0;
  int n_resolved = 0;
  double min_order = HUGE_VAL;
  double max_dev = 0.0;
  double max_floor = 0.0;
  for (const auto& p : probes) {
    if (!p) continue;
    ++n_used;
    max_dev = std::max(max_dev, p->fine);
    max_floor = std::max(max_floor, 100.0 * p->noise);
    if (p->resolved) {
      ++n_resolved;
      min_order = std::min(min_order, p->order);
    }
  }
  if (n_used == 0)
    return make_verdict(VerdictStatus::NotApplicable, kNaN, kNaN,
                        "no height admits a +/- step probe");
  std::ostringstream note;
  note << "max deviation " << fmt(max_dev) << " at step " << d / 2 << " over "
       << n_used << " probes";
  if (n_resolved == 0) {
    note << "; deviations at roundoff level";
    return make_verdict(VerdictStatus::Pass, max_dev, max_floor, note.str());
  }
  note << "; min order " << fmt(min_order) << " over " << n_resolved
       << " resolved probes";
  return make_verdict(min_order >= opt.mu_prime_min_order
                          ? VerdictStatus::Pass
                          : VerdictStatus::Fail,
                      min_order, opt.mu_prime_min_order, note.str());
}

std::vector<TailSample> lambda_tail(const std::vector<TruncationSample>& s,
                                    double from) {
  std::vector<TailSample> out;
  for (const auto& x : s)
    if (x.h >= from) out.push_back({x.h, x.lambda, x.lambda_error});
  return out;
}

}  // namespace

SweepReport run_sweep(const SurfaceModel& model,
                      const std::vector<double>& schedule, const Tolerance& tol,
                      const SweepOptions& opt) {
  tol.validate();
  ValidationOptions vopt;
  vopt.mode = ValidationMode::Strict;
  validate_surface(model, vopt);
  if (schedule.empty()) throw InvalidParameter("schedule is empty");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    check_height(model, schedule[k]);
    if (k > 0 && !(schedule[k] > schedule[k - 1]))
      throw InvalidParameter("schedule must be strictly increasing");
  }

  SweepReport report;
  report.surface = model.name;
  report.chi = euler_char(model.topology);
  const double two_pi_chi = kTwoPi * report.chi;
  const bool pole = model.has_polar_cap();

  // Samples: every height and every band between consecutive heights is
  // independent; the cumulative sum is taken afterwards in schedule order.
  std::vector<SampleWork> work(schedule.size());
  parallel_for(
      schedule.size(),
      [&](std::size_t k) {
        SampleWork& w = work[k];
        try {
          const double h = schedule[k];
          w.mu = mu(model, h, tol);
          w.lambda = lambda_total(model, h, tol);
          w.band = w.band_plus = w.band_minus = {0.0, 0.0, 0, true};
          for (const auto& end : model.ends) {
            const double lo = k == 0 ? end.t_min() : schedule[k - 1];
            if (lo == h) continue;
            add(w.band, band_integral(end, pole, lo, h, tol, curvature_density));
            add(w.band_plus, band_integral(end, pole, lo, h, tol, plus_density));
            add(w.band_minus,
                band_integral(end, pole, lo, h, tol, minus_density));
          }
        } catch (const DomainError&) {
          w.error = std::current_exception();
        }
      },
      opt.workers);

  QuadResult c{core_curvature(model), 0.0, 0, true};
  QuadResult c_plus{std::max(core_curvature(model), 0.0), 0.0, 0, true};
  QuadResult c_minus{std::max(-core_curvature(model), 0.0), 0.0, 0, true};
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const SampleWork& w = work[k];
    if (w.error) {
      try {
        std::rethrow_exception(w.error);
      } catch (const std::exception& e) {
        report.notes.push_back("schedule truncated at h = " + fmt(schedule[k]) +
                               ": " + e.what());
      }
      break;
    }
    add(c, w.band);
    add(c_plus, w.band_plus);
    add(c_minus, w.band_minus);
    TruncationSample s;
    s.h = schedule[k];
    s.mu = w.mu.value;
    s.lambda = w.lambda.value;
    s.c_trunc = c.value;
    s.lambda_error = w.lambda.error_estimate;
    s.c_error = c.error_estimate;
    s.quad_error =
        w.mu.error_estimate + w.lambda.error_estimate + c.error_estimate;
    s.gb_residual = check_gauss_bonnet_truncated(s, report.chi);
    report.samples.push_back(s);
  }

  const auto& samples = report.samples;
  const double probe_top = samples.empty() ? schedule.back() : samples.back().h;
  CurvatureProbe probe;
  if (probe_top > (pole ? kPoleGuard : model.lowest_height()))
    probe = probe_curvature(model, probe_top, opt.h1_grid, opt.k_slack,
                            opt.theta_samples);
  report.h1 = probe.h1;
  const bool hypothesis = probe.h1.has_value();

  auto& verdicts = report.verdicts;
  verdicts[check::kGaussBonnet] = gauss_bonnet_verdict(samples);
  verdicts[check::kLambdaMuPrime] = mu_prime_verdict(model, samples, tol, opt);

  // Monotonicity of lambda beyond h1; over the whole schedule otherwise.
  {
    const auto tail = lambda_tail(samples, hypothesis ? *probe.h1 : -HUGE_VAL);
    Verdict v;
    if (tail.size() < 2) {
      v = make_verdict(VerdictStatus::NotApplicable, kNaN, kNaN,
                       "fewer than 2 samples beyond h1");
    } else {
      const MonotoneCheck m = check_nonincreasing(tail);
      const double residual = std::max(m.worst_increase, 0.0);
      if (!m.monotone()) {
        v = make_verdict(VerdictStatus::Fail, residual, m.allowed_at_worst,
                         "NotMonotone: lambda increases at h = " +
                             fmt(m.h_at_worst) +
                             (hypothesis ? ""
                                         : " (hypothesis unmet: K < 0 beyond "
                                           "every probed height)"));
      } else if (hypothesis) {
        v = make_verdict(VerdictStatus::Pass, residual, m.allowed_at_worst,
                         "nonincreasing over " + std::to_string(tail.size()) +
                             " heights beyond h1");
      } else {
        v = make_verdict(VerdictStatus::NotApplicable, residual,
                         m.allowed_at_worst,
                         "observed nonincreasing; hypothesis unmet");
      }
    }
    verdicts[check::kMonotone] = v;
  }

  // Limit of lambda.
  {
    const auto tail = lambda_tail(samples, hypothesis ? *probe.h1 : -HUGE_VAL);
    if (tail.size() < 3) {
      report.L.kind = LimitResult::Kind::Unavailable;
      report.notes.push_back("fewer than 3 samples beyond h1; L not estimated");
    } else {
      TailEstimate est;
      bool checked = false;
      if (hypothesis) {
        try {
          est.limit = estimate_tail_limit(tail, *probe.h1);
          checked = true;
        } catch (const NotMonotone& e) {
          report.notes.push_back(std::string("L estimate: ") + e.what());
        }
      }
      if (!checked) est = extrapolate_tail(tail);
      if (est.kind == TailKind::Divergent) {
        report.L.kind = LimitResult::Kind::Divergent;
        report.L.direction = est.direction;
        report.L.value = est.limit.limit;
        report.L.error_bound = HUGE_VAL;
      } else {
        report.L.kind = LimitResult::Kind::Finite;
        report.L.value = est.limit.limit;
        report.L.error_bound = est.limit.error_bound;
        if (est.limit.accelerated)
          report.notes.push_back("L extrapolated (Aitken) from the last samples");
      }
    }
  }

  // Direct improper integration of K dA beyond the last height.
  std::optional<ImproperResult> direct;
  QuadResult direct_total{0.0, 0.0, 0, true};
  if (!samples.empty()) {
    const double top = samples.back().h;
    ImproperOptions iopt;
    iopt.first_window = std::max(1.0, std::fabs(top));
    QuadResult tail_sum{0.0, 0.0, 0, true};
    ImproperResult combined;
    combined.divergence = Divergence::None;
    for (const auto& end : model.ends) {
      ImproperResult r = integrate_improper(
          [&](double t, double theta) {
            return curvature_density(end, t, theta);
          },
          top, tol, iopt);
      add(tail_sum, r.result);
      if (!r.converged() && combined.converged()) {
        combined.divergence = r.divergence;
        combined.stop_reason = r.stop_reason;
      }
    }
    combined.result = tail_sum;
    direct = combined;
    direct_total = {samples.back().c_trunc + tail_sum.value,
                    samples.back().c_error + tail_sum.error_estimate,
                    tail_sum.evaluations, combined.converged()};
  }
  const bool direct_ok = direct && direct->converged();

  // Total curvature.
  {
    TotalCurvature& ct = report.c_total;
    if (report.L.kind == LimitResult::Kind::Finite) {
      ct.kind = TotalCurvature::Kind::Finite;
      ct.value = two_pi_chi - report.L.value;
      ct.error = report.L.error_bound;
      ct.direction = Divergence::None;
    } else if (direct_ok) {
      ct.kind = TotalCurvature::Kind::Finite;
      ct.value = direct_total.value;
      ct.error = direct_total.error_estimate;
      ct.direction = Divergence::None;
      report.notes.push_back("c_total taken from direct improper integration");
    } else if (report.L.kind == LimitResult::Kind::Divergent &&
               report.L.direction == Divergence::MinusInfinity) {
      ct.kind = TotalCurvature::Kind::PlusInfinity;
      ct.direction = Divergence::PlusInfinity;
    } else {
      ct.kind = TotalCurvature::Kind::DoesNotConverge;
      ct.direction = direct ? direct->divergence : Divergence::Unresolved;
      std::string source = "direct integration";
      if ((ct.direction == Divergence::Unresolved ||
           ct.direction == Divergence::None) &&
          report.L.kind == LimitResult::Kind::Divergent) {
        // c(h) = 2 pi chi - lambda(h)
        ct.direction = report.L.direction == Divergence::PlusInfinity
                           ? Divergence::MinusInfinity
                           : Divergence::PlusInfinity;
        source = "lambda diverging to " + to_string(report.L.direction);
      }
      report.notes.push_back("total curvature does not converge (direction " +
                             to_string(ct.direction) + ", from " + source +
                             ")" + (direct ? ": " + direct->stop_reason : ""));
    }
  }

  // Two routes to c_total.
  {
    Verdict v;
    if (report.L.kind == LimitResult::Kind::Finite && direct_ok) {
      const double a = two_pi_chi - report.L.value;
      const double residual = std::fabs(a - direct_total.value);
      const double bound =
          verdict_bound(report.L.error_bound + direct_total.error_estimate);
      v = make_verdict(
          residual <= bound ? VerdictStatus::Pass : VerdictStatus::Fail,
          residual, bound,
          "2 pi chi - L = " + fmt(a) + ", direct integral = " +
              fmt(direct_total.value));
    } else {
      v = make_verdict(
          VerdictStatus::NotApplicable, kNaN, kNaN,
          direct && !direct_ok
              ? "direct improper integration does not converge (direction " +
                    to_string(direct->divergence) + ")"
              : "L is not finite");
    }
    verdicts[check::kRoutes] = v;
  }

  // K+ / K- split.
  {
    Verdict v;
    if (hypothesis && direct_ok && !samples.empty()) {
      const double tail = direct->result.value;
      const double plus = c_plus.value + std::max(tail, 0.0);
      const double minus = c_minus.value + std::max(-tail, 0.0);
      const double residual = std::fabs(plus - minus - direct_total.value);
      const double bound =
          verdict_bound(c_plus.error_estimate + c_minus.error_estimate +
                        direct_total.error_estimate);
      const bool ok = std::isfinite(minus) && residual <= bound;
      v = make_verdict(ok ? VerdictStatus::Pass : VerdictStatus::Fail,
                       residual, bound,
                       "int K+ = " + fmt(plus) + ", int K- = " + fmt(minus));
    } else {
      v = make_verdict(VerdictStatus::NotApplicable, kNaN, kNaN,
                       hypothesis ? "direct total curvature unavailable"
                                  : "K- is not compactly supported within the "
                                    "probed range");
    }
    verdicts[check::kSplit] = v;
  }

  // L >= 0.
  {
    Verdict v;
    const auto& L = report.L;
    if (L.kind == LimitResult::Kind::Finite) {
      const bool holds = L.value >= -L.error_bound;
      const std::string summary = "L = " + fmt(L.value);
      if (hypothesis)
        v = make_verdict(holds ? VerdictStatus::Pass : VerdictStatus::Fail,
                         L.value, L.error_bound, summary);
      else
        v = make_verdict(VerdictStatus::NotApplicable, L.value, L.error_bound,
                         summary + std::string(holds ? " (>= 0" : " (< 0") +
                             " observed; hypothesis unmet)");
    } else {
      v = make_verdict(hypothesis ? VerdictStatus::Fail
                                  : VerdictStatus::NotApplicable,
                       kNaN, kNaN,
                       L.kind == LimitResult::Kind::Divergent
                           ? "lambda diverges (" + to_string(L.direction) + ")"
                           : "L unavailable");
    }
    verdicts[check::kLNonneg] = v;
  }

  // 2 pi chi >= c_total.
  {
    Verdict v;
    const auto& ct = report.c_total;
    if (ct.kind == TotalCurvature::Kind::Finite) {
      const double margin = two_pi_chi - ct.value;
      const double bound = verdict_bound(ct.error);
      const bool holds = margin >= -bound;
      const std::string summary = "margin = " + fmt(margin);
      if (hypothesis)
        v = make_verdict(holds ? VerdictStatus::Pass : VerdictStatus::Fail,
                         margin, bound, summary);
      else
        v = make_verdict(VerdictStatus::NotApplicable, margin, bound,
                         summary + (holds ? " (inequality observed" :
                                            " (inequality violated") +
                             "; hypothesis unmet, not certified)");
    } else {
      v = make_verdict(hypothesis ? VerdictStatus::Fail
                                  : VerdictStatus::NotApplicable,
                       kNaN, kNaN, "total curvature is not finite");
    }
    verdicts[check::kTheorem] = v;
  }

  // K >= 0 everywhere and K > 0 somewhere forces chi >= 1.
  {
    const double core = core_curvature(model);
    const bool everywhere = hypothesis && probe.at_origin && core >= 0.0;
    const bool somewhere = probe.positive_somewhere || (!pole && core > 0.0);
    Verdict v;
    if (everywhere && somewhere) {
      v = make_verdict(report.chi >= 1 ? VerdictStatus::Pass
                                       : VerdictStatus::Fail,
                       report.chi, 1.0,
                       "K >= 0 everywhere sampled, K > 0 somewhere; chi = " +
                           std::to_string(report.chi));
    } else {
      v = make_verdict(VerdictStatus::NotApplicable, kNaN, kNaN,
                       everywhere ? "K vanishes at every sample"
                                  : "K < 0 somewhere");
    }
    verdicts[check::kCorollary] = v;
  }

  return report;
}

SweepReport run_sweep(const SurfaceModel& model, const Tolerance& tol,
                      const SweepOptions& options) {
  const double top = std::max(1024.0, model.lowest_height() + 1024.0);
  const auto h1 = detect_h1(model, top, options.h1_grid, options.k_slack);
  return run_sweep(model, default_schedule(model, h1, top), tol, options);
}

}  // namespace cvlab
