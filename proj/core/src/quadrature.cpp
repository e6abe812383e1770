#include <cvlab/quadrature.hpp>

#include <cvlab/errors.hpp>
#include <cvlab/surface_model.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <utility>

namespace cvlab {

void Tolerance::validate() const {
  if (!(abs_tol > 0.0 && abs_tol < 1.0))
    throw InvalidParameter("abs_tol must lie in (0, 1)");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidParameter("rel_tol must lie in (0, 1)");
  if (max_evaluations < 100)
    throw InvalidParameter("max_evaluations must be >= 100");
}

double Tolerance::target(double value) const {
  return std::max(abs_tol, rel_tol * std::fabs(value));
}

std::string to_string(Divergence d) {
  switch (d) {
    case Divergence::None: return "converged";
    case Divergence::PlusInfinity: return "+inf";
    case Divergence::MinusInfinity: return "-inf";
    case Divergence::Oscillatory: return "oscillatory";
    case Divergence::Unresolved: return "unresolved";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

namespace {

// Kronrod abscissae on [-1, 1] (nonnegative half); odd indices are the Gauss
// nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel make_panel(const Integrand1& f, double a, double b) {
  const PanelEstimate e = gauss_kronrod_15(f, a, b);
  return {a, b, e.kronrod, e.error()};
}

}  // namespace

double PanelEstimate::error() const { return std::fabs(kronrod - gauss); }

PanelEstimate gauss_kronrod_15(const Integrand1& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    if (!std::isfinite(f1) || !std::isfinite(f2))
      throw DomainError("integrand is not finite");
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  if (!std::isfinite(fc)) throw DomainError("integrand is not finite");
  return {kronrod * half, gauss * half};
}

QuadResult integrate_interval(const Integrand1& f, double a, double b,
                              const Tolerance& tol, int initial_panels) {
  tol.validate();
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  initial_panels = std::max(initial_panels, 1);

  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  double value = 0.0;
  double error = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + (b - a) * i / initial_panels;
    const double hi = i + 1 == initial_panels
                          ? b
                          : a + (b - a) * (i + 1) / initial_panels;
    Panel p = make_panel(f, lo, hi);
    value += p.value;
    error += p.error;
    queue.push(p);
  }
  out.evaluations = 15L * initial_panels;

  while (error > tol.target(value) &&
         out.evaluations + 30 <= tol.max_evaluations) {
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further
    queue.pop();
    const Panel left = make_panel(f, worst.a, mid);
    const Panel right = make_panel(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum in panel order; the running sums above are only for steering.
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error;
  }
  out.value = value;
  out.error_estimate = error;
  out.converged = error <= tol.target(value);
  return out;
}

QuadResult integrate_circle(const Integrand1& f, const Tolerance& tol) {
  return integrate_interval(f, 0.0, kTwoPi, tol, 4);
}

QuadResult integrate_annulus(const Integrand2& f, double t_lo, double t_hi,
                             const Tolerance& tol) {
  tol.validate();
  if (!(t_lo < t_hi)) throw InvalidParameter("integrate_annulus needs t_lo < t_hi");

  const double span = t_hi - t_lo;
  Tolerance inner = tol;
  inner.abs_tol = std::max(tol.abs_tol * 0.1 / std::max(1.0, span), 1e-300);
  inner.rel_tol = tol.rel_tol * 0.1;
  inner.max_evaluations = std::max<long>(100, tol.max_evaluations / 100);

  long inner_evaluations = 0;
  double worst_inner_error = 0.0;
  bool inner_converged = true;
  auto slice = [&](double t) {
    const QuadResult r = integrate_circle(
        [&](double theta) { return f(t, theta); }, inner);
    inner_evaluations += r.evaluations;
    worst_inner_error = std::max(worst_inner_error, r.error_estimate);
    inner_converged = inner_converged && r.converged;
    return r.value;
  };

  Tolerance outer = tol;
  outer.max_evaluations = std::max<long>(100, tol.max_evaluations / 60);
  QuadResult r = integrate_interval(slice, t_lo, t_hi, outer, 1);
  r.error_estimate += span * worst_inner_error;
  r.evaluations = inner_evaluations;
  r.converged = r.converged && inner_converged &&
                r.error_estimate <= tol.target(r.value);
  return r;
}

// ---------------------------------------------------------------------------
// Improper integrals

namespace {

// Classifies a run of increments that did not settle.
Divergence trend(const std::vector<double>& increments) {
  const std::size_t n = increments.size();
  if (n < 2) return Divergence::Unresolved;
  const double last = increments[n - 1];
  const double prev = increments[n - 2];
  if (last == 0.0) return Divergence::Unresolved;
  const bool same_sign = (last > 0.0) == (prev > 0.0) && prev != 0.0;
  if (same_sign && std::fabs(last) >= 0.5 * std::fabs(prev))
    return last > 0.0 ? Divergence::PlusInfinity : Divergence::MinusInfinity;
  if (!same_sign) return Divergence::Oscillatory;
  return Divergence::Unresolved;
}

// Geometric tail estimate from the last two increments.
double tail_bound(double prev, double last) {
  const double a = std::fabs(last);
  const double b = std::fabs(prev);
  if (a == 0.0) return 0.0;
  if (b == 0.0) return a;
  const double q = std::min(a / b, 0.9);
  return a * q / (1.0 - q);
}

}  // namespace

ImproperResult integrate_improper(const Integrand2& f, double t_lo,
                                  const Tolerance& tol,
                                  const ImproperOptions& options) {
  tol.validate();
  if (!(options.first_window > 0.0))
    throw InvalidParameter("first_window must be positive");

  ImproperResult out;
  std::vector<double> increments;
  double sum = 0.0;
  double error = 0.0;
  double lo = t_lo;
  int below = 0;
  for (int k = 0; k < options.max_windows; ++k) {
    const double hi = t_lo + std::ldexp(options.first_window, k);
    QuadResult w;
    try {
      w = integrate_annulus(f, lo, hi, tol);
    } catch (const DomainError& e) {
      out.stop_reason = std::string("integrand failed on window [") +
                        std::to_string(lo) + ", " + std::to_string(hi) +
                        "]: " + e.what();
      out.divergence = trend(increments);
      out.result = {sum, error, out.result.evaluations, false};
      return out;
    }
    out.result.evaluations += w.evaluations;
    sum += w.value;
    error += w.error_estimate;
    increments.push_back(w.value);
    out.window_ends.push_back(hi);
    out.partial_sums.push_back(sum);
    lo = hi;

    below = std::fabs(w.value) <= tol.target(sum) ? below + 1 : 0;
    if (below >= 2) {
      const std::size_t n = increments.size();
      out.divergence = Divergence::None;
      out.result.value = sum;
      out.result.error_estimate =
          error + tail_bound(increments[n - 2], increments[n - 1]);
      out.result.converged = true;
      out.stop_reason = "two consecutive window increments below tolerance";
      return out;
    }
  }
  out.divergence = trend(increments);
  out.result.value = sum;
  out.result.error_estimate = error;
  out.result.converged = false;
  out.stop_reason = "window budget exhausted";
  return out;
}

ImproperResult integrate_from_pole(const Integrand2& f, double t_hi,
                                   const Tolerance& tol,
                                   const PoleOptions& options) {
  tol.validate();
  if (!(t_hi > 0.0)) throw InvalidParameter("integrate_from_pole needs t_hi > 0");

  ImproperResult out;
  double eps = std::min(options.first_cutoff, 0.5 * t_hi);
  QuadResult bulk = integrate_annulus(f, eps, t_hi, tol);
  double sum = bulk.value;
  double error = bulk.error_estimate;
  out.result.evaluations = bulk.evaluations;
  out.window_ends.push_back(eps);
  out.partial_sums.push_back(sum);

  std::vector<double> slivers;
  int below = 0;
  while (eps > options.pole_guard) {
    const double next = std::max(0.5 * eps, options.pole_guard);
    const QuadResult s = integrate_annulus(f, next, eps, tol);
    out.result.evaluations += s.evaluations;
    sum += s.value;
    error += s.error_estimate;
    slivers.push_back(s.value);
    out.window_ends.push_back(next);
    out.partial_sums.push_back(sum);
    eps = next;
    below = std::fabs(s.value) <= tol.target(sum) ? below + 1 : 0;
    if (below >= 2) break;
  }
  const std::size_t n = slivers.size();
  const double tail = n >= 2 ? tail_bound(slivers[n - 2], slivers[n - 1])
                             : (n == 1 ? std::fabs(slivers[0]) : 0.0);
  out.result.value = sum;
  out.result.error_estimate = error + tail;
  out.result.converged = below >= 2 || eps <= options.pole_guard;
  out.divergence = out.result.converged ? Divergence::None : trend(slivers);
  out.stop_reason = below >= 2 ? "two consecutive slivers below tolerance"
                               : "reached pole guard";
  return out;
}

// ---------------------------------------------------------------------------
// Tail limits

namespace {

constexpr double kMonotoneFactor = 10.0;
constexpr double kMonotoneFloor = 1e-9;

double allowed_increase(const TailSample& a, const TailSample& b) {
  return kMonotoneFactor * (a.error + b.error) + kMonotoneFloor;
}

std::vector<TailSample> sorted_from(std::span<const TailSample> samples,
                                    double from) {
  std::vector<TailSample> out;
  for (const auto& s : samples)
    if (s.h >= from) out.push_back(s);
  std::sort(out.begin(), out.end(),
            [](const TailSample& x, const TailSample& y) { return x.h < y.h; });
  return out;
}

double aitken(double a, double b, double c) {
  const double d1 = b - a;
  const double d2 = c - b;
  return c - d2 * d2 / (d2 - d1);
}

// Aitken is used only when the differences are clearly resolved above the
// noise and contract with one sign: d2 / d1 in (0, 0.95).
bool aitken_applies(const TailSample& a, const TailSample& b,
                    const TailSample& c) {
  const double d1 = b.value - a.value;
  const double d2 = c.value - b.value;
  const double noise = allowed_increase(a, b) + allowed_increase(b, c);
  if (std::fabs(d2) <= noise || std::fabs(d1) <= noise) return false;
  const double q = d2 / d1;
  return q > 0.0 && q < 0.95;
}

TailLimit limit_of(const std::vector<TailSample>& s) {
  const std::size_t n = s.size();
  double quad = 0.0;
  for (const auto& x : s) quad = std::max(quad, x.error);

  TailLimit out;
  if (n >= 3 && aitken_applies(s[n - 3], s[n - 2], s[n - 1])) {
    out.accelerated = true;
    out.limit = aitken(s[n - 3].value, s[n - 2].value, s[n - 1].value);
    double cauchy = std::fabs(out.limit - s[n - 1].value);
    if (n >= 4 && aitken_applies(s[n - 4], s[n - 3], s[n - 2])) {
      const double prev =
          aitken(s[n - 4].value, s[n - 3].value, s[n - 2].value);
      cauchy = std::fabs(out.limit - prev);
    }
    out.error_bound = std::max(cauchy, quad);
    return out;
  }
  out.limit = s[n - 1].value;
  out.error_bound = std::max(std::fabs(s[n - 1].value - s[n - 2].value), quad);
  return out;
}

}  // namespace

MonotoneCheck check_nonincreasing(std::span<const TailSample> samples) {
  const std::vector<TailSample> s = sorted_from(samples, -HUGE_VAL);
  MonotoneCheck out;
  out.worst_excess = -HUGE_VAL;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double inc = s[k].value - s[k - 1].value;
    const double allowed = allowed_increase(s[k - 1], s[k]);
    if (inc - allowed > out.worst_excess) {
      out.worst_excess = inc - allowed;
      out.worst_increase = inc;
      out.allowed_at_worst = allowed;
      out.h_at_worst = s[k].h;
    }
  }
  if (s.size() < 2) out.worst_excess = 0.0;
  return out;
}

TailLimit estimate_tail_limit(std::span<const TailSample> samples,
                              double monotone_from) {
  const std::vector<TailSample> s = sorted_from(samples, monotone_from);
  if (s.size() < 3)
    throw InvalidParameter(
        "estimate_tail_limit needs at least 3 samples beyond monotone_from");
  const MonotoneCheck mono = check_nonincreasing(s);
  if (!mono.monotone())
    throw NotMonotone(mono.h_at_worst, mono.worst_increase,
                      mono.allowed_at_worst);
  return limit_of(s);
}

TailEstimate extrapolate_tail(std::span<const TailSample> samples) {
  const std::vector<TailSample> s = sorted_from(samples, -HUGE_VAL);
  if (s.size() < 3)
    throw InvalidParameter("extrapolate_tail needs at least 3 samples");
  TailEstimate out;
  const std::size_t n = s.size();
  if (n >= 4) {
    const double d1 = s[n - 3].value - s[n - 4].value;
    const double d2 = s[n - 2].value - s[n - 3].value;
    const double d3 = s[n - 1].value - s[n - 2].value;
    const double noise = allowed_increase(s[n - 2], s[n - 1]);
    const bool resolved = std::fabs(d3) > noise && std::fabs(d2) > noise;
    const bool one_sign = (d1 > 0 && d2 > 0 && d3 > 0) ||
                          (d1 < 0 && d2 < 0 && d3 < 0);
    const bool growing = std::fabs(d3) >= std::fabs(d2) &&
                         std::fabs(d2) >= std::fabs(d1);
    if (resolved && one_sign && growing) {
      out.kind = TailKind::Divergent;
      out.direction =
          d3 > 0 ? Divergence::PlusInfinity : Divergence::MinusInfinity;
      out.limit.limit = d3 > 0 ? HUGE_VAL : -HUGE_VAL;
      out.limit.error_bound = HUGE_VAL;
      return out;
    }
  }
  out.limit = limit_of(s);
  return out;
}

}  // namespace cvlab
