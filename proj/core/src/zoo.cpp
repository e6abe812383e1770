#include <cvlab/zoo.hpp>

#include <cvlab/errors.hpp>
#include <cvlab/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvlab {

namespace {

constexpr double kPi = std::numbers::pi;

Jet2 jet(double v, double d1, double d2) { return {v, d1, d2}; }

// Profile f(t) given as a jet in t; theta is ignored.
template <class F>
EndChart profile(F f, double t_min, std::string description) {
  return EndChart::from_profile(
      [f](double t, double) { return f(t); }, t_min, std::move(description));
}

ZooOracle revolution_oracle(std::function<Jet2(double)> f, int ends, int chi,
                            double core) {
  ZooOracle o;
  o.chi = chi;
  o.K = [f](double t, double) {
    const Jet2 j = f(t);
    return -j.d2 / j.value;
  };
  o.kappa_g = [f](double h) { return f(h).d1; };
  o.mu = [f, ends](double h) { return ends * kTwoPi * f(h).value; };
  o.lambda = [f, ends](double h) { return ends * kTwoPi * f(h).d1; };
  o.c_trunc = [f, ends, core](double h) {
    return core + ends * kTwoPi * (f(0.0).d1 - f(h).d1);
  };
  return o;
}

}  // namespace

double paraboloid_radius(double s) {
  if (!(s >= 0.0) || !std::isfinite(s))
    throw DomainError("paraboloid arc length must be finite and >= 0");
  if (s == 0.0) return 0.0;
  // s(r) is convex and s(r) >= max(r, r^2/2), so Newton started at
  // min(s, sqrt(2 s)) decreases monotonically to the root.
  double r = std::min(s, std::sqrt(2.0 * s));
  for (int i = 0; i < 200; ++i) {
    const double q = std::sqrt(1.0 + r * r);
    const double step = (0.5 * (r * q + std::asinh(r)) - s) / q;
    const double next = r - step;
    if (!(next < r)) break;
    r = next;
    if (step <= 4e-16 * r) break;
  }
  return r;
}

ZooEntry make_flat_cylinder() {
  ZooEntry e;
  auto f = [](double) { return jet(1.0, 0.0, 0.0); };
  e.model.name = "flat-cylinder";
  e.model.topology = {0, 2, true};
  e.model.ends = {profile(f, 0.0, "G = 1"), profile(f, 0.0, "G = 1")};
  e.model.core = AnalyticCore{0.0, {0.0, 0.0}};
  e.oracle = revolution_oracle(f, 2, 0, 0.0);
  e.oracle.L = 0.0;
  e.oracle.c_total = 0.0;
  e.oracle.hypothesis_holds = true;
  e.provenance_note =
      "S^1 x R with the product metric; f = 1 on both halves, so K = 0, "
      "kappa = 0, mu = 2 x 2 pi, lambda = 0 and every truncation has zero "
      "curvature.";
  return e;
}

ZooEntry make_polar_plane() {
  ZooEntry e;
  auto f = [](double t) { return jet(t, 1.0, 0.0); };
  e.model.name = "polar-plane";
  e.model.topology = {0, 1, true};
  e.model.ends = {profile(f, 0.0, "G = t^2")};
  e.model.core = PolarCap{};
  e.oracle = revolution_oracle(f, 1, 1, 0.0);
  e.oracle.L = kTwoPi;
  e.oracle.c_total = 0.0;
  e.oracle.hypothesis_holds = true;
  e.provenance_note =
      "Euclidean plane in polar coordinates; f = t, so mu = 2 pi h, "
      "lambda = 2 pi, K = 0 and c = 2 pi - 2 pi = 0.";
  return e;
}

ZooEntry make_paraboloid() {
  ZooEntry e;
  auto f = [](double t) {
    const double r = paraboloid_radius(t);
    const double q2 = 1.0 + r * r;
    return jet(r, 1.0 / std::sqrt(q2), -r / (q2 * q2));
  };
  e.model.name = "paraboloid";
  e.model.topology = {0, 1, true};
  e.model.ends = {profile(f, 0.0, "z = r^2/2 by meridian arc length")};
  e.model.core = PolarCap{};
  e.oracle = revolution_oracle(f, 1, 1, 0.0);
  e.oracle.L = 0.0;
  e.oracle.c_total = kTwoPi;
  e.oracle.hypothesis_holds = true;
  e.provenance_note =
      "Meridian (r, r^2/2) has slope angle phi with tan phi = r, so "
      "dr/dt = cos phi = 1/sqrt(1+r^2) and K = cos^4 phi = 1/(1+r^2)^2. "
      "lambda = 2 pi cos phi, c = 2 pi (1 - cos phi), both exact in r(h). "
      "r(h) inverts s(r) = (r sqrt(1+r^2) + asinh r)/2 by Newton. The Gauss "
      "map covers an open hemisphere, hence c_total = 2 pi and L = 0.";
  e.h_min = 1.0;
  e.h_max = std::ldexp(1.0, 22);  // 4^11
  e.steps = 12;
  return e;
}

ZooEntry make_capped_cone(double slant) {
  if (!(slant > 0.0 && slant < 1.0))
    throw InvalidParameter("capped-cone slant must lie in (0, 1)");
  constexpr double tc = 1.0;
  const double a = 1.0 - slant;
  const double f_tc = tc * (1.0 - a * 71.0 / 231.0);
  // For t <= tc: f' = 1 - a R(u^2) with R(v) = 10v^3 - 15v^4 + 6v^5 the
  // smoothstep, u = t / tc; R(0) = 0 and R(1) = 1 with two vanishing
  // derivatives at both ends, so f is C^3 across the seam.
  auto f = [a, slant, f_tc](double t) {
    if (t <= tc) {
      const double u = t / tc;
      const double u2 = u * u;
      const double u7 = std::pow(u, 7);
      const double v = u2;
      const double R = v * v * v * (10.0 - 15.0 * v + 6.0 * v * v);
      const double value =
          t - a * tc * u7 * (10.0 / 7.0 - 15.0 / 9.0 * u2 + 6.0 / 11.0 * u2 * u2);
      const double d2 =
          -a * 60.0 * std::pow(u, 5) * (1.0 - u2) * (1.0 - u2) / tc;
      return jet(value, 1.0 - a * R, d2);
    }
    return jet(f_tc + slant * (t - tc), slant, 0.0);
  };
  ZooEntry e;
  e.model.name = "capped-cone";
  e.model.topology = {0, 1, true};
  e.model.ends = {profile(f, 0.0, "cone of slant " + std::to_string(slant) +
                                      " with a smooth cap on t <= 1")};
  e.model.core = PolarCap{};
  e.oracle = revolution_oracle(f, 1, 1, 0.0);
  e.oracle.L = kTwoPi * slant;
  e.oracle.c_total = kTwoPi * (1.0 - slant);
  e.oracle.hypothesis_holds = true;
  e.provenance_note =
      "f'' = -(1-s) 60 u^5 (1-u^2)^2 <= 0 on the cap and 0 on the cone, so "
      "K >= 0 everywhere; lambda = 2 pi f'(h) equals 2 pi s beyond t = 1 and "
      "c = 2 pi (1 - f'(h)). The cone-angle deficit gives c_total = "
      "2 pi (1 - s).";
  return e;
}

ZooEntry make_catenoid() {
  ZooEntry e;
  auto f = [](double t) {
    const double q = std::sqrt(1.0 + t * t);
    return jet(q, t / q, 1.0 / (q * q * q));
  };
  e.model.name = "catenoid";
  e.model.topology = {0, 2, true};
  e.model.ends = {profile(f, 0.0, "G = 1 + t^2"),
                  profile(f, 0.0, "G = 1 + t^2")};
  e.model.core = AnalyticCore{0.0, {0.0, 0.0}};
  e.oracle = revolution_oracle(f, 2, 0, 0.0);
  e.oracle.L = 2.0 * kTwoPi;
  e.oracle.c_total = -2.0 * kTwoPi;
  e.oracle.hypothesis_holds = false;
  e.provenance_note =
      "r = cosh z has meridian arc length t = sinh z from the waist, so "
      "f = sqrt(1+t^2) and K = -1/(1+t^2)^2 < 0 everywhere. Each half "
      "contributes -2 pi t/sqrt(1+t^2); c_total = -4 pi.";
  return e;
}

ZooEntry make_hyperbolic_cusp_cap() {
  ZooEntry e;
  auto f = [](double t) {
    const double v = std::exp(-t);
    return jet(v, -v, v);
  };
  e.model.name = "cusp-cap";
  e.model.topology = {0, 1, true};
  e.model.ends = {profile(f, 0.0, "G = exp(-2t)")};
  e.model.core = AnalyticCore{2.0 * kTwoPi, {0.0}};
  e.oracle = revolution_oracle(f, 1, 1, 2.0 * kTwoPi);
  e.oracle.L = 0.0;
  e.oracle.c_total = kTwoPi;
  e.oracle.hypothesis_holds = false;
  e.provenance_note =
      "f = exp(-t) gives K = -1, lambda = -2 pi e^-h, mu = 2 pi e^-h. The cap "
      "must carry 4 pi for the truncated identity to hold at h = 0 "
      "(2 pi = 4 pi - 2 pi); c = 2 pi + 2 pi e^-h, c_total = 2 pi.";
  e.h_min = 0.5;
  e.h_max = 32.0;
  return e;
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {
      "flat-cylinder", "polar-plane", "paraboloid",
      "capped-cone",   "catenoid",    "cusp-cap"};
  return names;
}

bool is_zoo_name(const std::string& name) {
  const auto& n = zoo_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

ZooEntry make_zoo_entry(const std::string& name) {
  if (name == "flat-cylinder") return make_flat_cylinder();
  if (name == "polar-plane") return make_polar_plane();
  if (name == "paraboloid") return make_paraboloid();
  if (name == "capped-cone") return make_capped_cone();
  if (name == "catenoid") return make_catenoid();
  if (name == "cusp-cap") return make_hyperbolic_cusp_cap();
  throw InvalidParameter("unknown surface '" + name + "'");
}

std::vector<ZooEntry> make_zoo() {
  const auto& names = zoo_names();
  std::vector<ZooEntry> out(names.size());
  parallel_for(names.size(),
               [&](std::size_t i) { out[i] = make_zoo_entry(names[i]); });
  return out;
}

}  // namespace cvlab
