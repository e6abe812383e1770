#pragma once

// Second-order forward-mode jets in one variable.
//
// A Jet2 carries the truncated Taylor coefficients (f, f', f'') of a
// quantity with respect to the chart height t. Arithmetic propagates them
// with the product and chain rules; nothing here checks domains, that is the
// caller's job (see metric_dsl.cpp).

#include <cmath>

namespace cvlab {

struct Jet2 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
  static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }

  friend constexpr bool operator==(const Jet2&, const Jet2&) = default;
};

constexpr Jet2 operator-(Jet2 a) { return {-a.value, -a.d1, -a.d2}; }

constexpr Jet2 operator+(Jet2 a, Jet2 b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

constexpr Jet2 operator-(Jet2 a, Jet2 b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

constexpr Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

constexpr Jet2 operator*(double s, Jet2 a) {
  return {s * a.value, s * a.d1, s * a.d2};
}

constexpr Jet2 operator/(Jet2 a, Jet2 b) {
  const double q = a.value / b.value;
  const double q1 = (a.d1 - q * b.d1) / b.value;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.value;
  return {q, q1, q2};
}

/// Applies a scalar function with known first and second derivatives
/// (g, g', g'' evaluated at a.value) to a jet.
constexpr Jet2 compose(Jet2 a, double g, double dg, double d2g) {
  return {g, dg * a.d1, d2g * a.d1 * a.d1 + dg * a.d2};
}

inline Jet2 exp(Jet2 a) {
  const double e = std::exp(a.value);
  return compose(a, e, e, e);
}

// log and sqrt are written in ratio form; the chain-rule factors -1/a^2 and
// -1/(4 a^1.5) underflow for large a while the terms they multiply do not.
inline Jet2 log(Jet2 a) {
  const double r = a.d1 / a.value;
  return {std::log(a.value), r, a.d2 / a.value - r * r};
}

inline Jet2 sqrt(Jet2 a) {
  const double s = std::sqrt(a.value);
  const double s1 = a.d1 / (2.0 * s);
  return {s, s1, (0.5 * a.d2 - s1 * s1) / s};
}

inline Jet2 sin(Jet2 a) {
  const double s = std::sin(a.value);
  const double c = std::cos(a.value);
  return compose(a, s, c, -s);
}

inline Jet2 cos(Jet2 a) {
  const double s = std::sin(a.value);
  const double c = std::cos(a.value);
  return compose(a, c, -s, -c);
}

inline Jet2 sinh(Jet2 a) {
  const double s = std::sinh(a.value);
  const double c = std::cosh(a.value);
  return compose(a, s, c, s);
}

inline Jet2 cosh(Jet2 a) {
  const double s = std::sinh(a.value);
  const double c = std::cosh(a.value);
  return compose(a, c, s, c);
}

inline Jet2 tanh(Jet2 a) {
  const double th = std::tanh(a.value);
  const double sech2 = 1.0 - th * th;
  return compose(a, th, sech2, -2.0 * th * sech2);
}

/// a^n for an integer exponent; valid for any sign of a.value.
inline Jet2 pow_int(Jet2 a, int n) {
  if (n == 0) return Jet2::constant(1.0);
  const double x = a.value;
  const double g = std::pow(x, n);
  const double dg = n * std::pow(x, n - 1);
  const double d2g = n == 1 ? 0.0 : double(n) * (n - 1) * std::pow(x, n - 2);
  return compose(a, g, dg, d2g);
}

/// a^b = exp(b log a); requires a.value > 0.
inline Jet2 pow(Jet2 a, Jet2 b) {
  const Jet2 m = b * log(a);
  const double e = std::pow(a.value, b.value);
  return {e, e * m.d1, e * (m.d2 + m.d1 * m.d1)};
}

inline bool isfinite(const Jet2& a) {
  return std::isfinite(a.value) && std::isfinite(a.d1) && std::isfinite(a.d2);
}

}  // namespace cvlab
