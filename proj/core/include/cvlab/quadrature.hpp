#pragma once

// Adaptive quadrature used for every integral the sweep needs: boundary
// circles (theta in [0, 2 pi)), end bands [t_lo, t_hi] x [0, 2 pi), improper
// end integrals, and the shrinking-cutoff integral down to a polar cap.
//
// The panel rule is the 7-point Gauss / 15-point Kronrod pair; the panel error
// estimate is |K15 - G7|. Panels are refined largest-error-first, and the
// final sum is accumulated in order of panel position, so results do not
// depend on scheduling.

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cvlab {

struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  long max_evaluations = 2'000'000;

  /// Throws InvalidParameter unless abs_tol, rel_tol in (0, 1) and
  /// max_evaluations >= 100.
  void validate() const;
  double target(double value) const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using Integrand1 = std::function<double(double)>;
using Integrand2 = std::function<double(double t, double theta)>;

struct PanelEstimate {
  double kronrod = 0.0;
  double gauss = 0.0;
  double error() const;
};

/// Single G7/K15 panel on [a, b]. K15 is exact for polynomials of degree 22.
PanelEstimate gauss_kronrod_15(const Integrand1& f, double a, double b);

/// Globally adaptive integration over [a, b] starting from `initial_panels`
/// equal panels.
QuadResult integrate_interval(const Integrand1& f, double a, double b,
                              const Tolerance& tol, int initial_panels = 1);

/// Integral of f over [0, 2 pi).
QuadResult integrate_circle(const Integrand1& f, const Tolerance& tol);

/// Integral of f over [t_lo, t_hi] x [0, 2 pi), nested: adaptive in t with an
/// adaptive circle integral at every t node.
QuadResult integrate_annulus(const Integrand2& f, double t_lo, double t_hi,
                             const Tolerance& tol);

enum class Divergence {
  None,            // converged
  PlusInfinity,
  MinusInfinity,
  Oscillatory,
  Unresolved,      // ran out of windows without a clear trend
};

std::string to_string(Divergence d);

struct ImproperResult {
  /// Partial sum and its error; error includes an estimate of the remaining
  /// tail when converged.
  QuadResult result;
  Divergence divergence = Divergence::Unresolved;
  std::vector<double> window_ends;
  std::vector<double> partial_sums;
  std::string stop_reason;

  bool converged() const { return divergence == Divergence::None; }
};

struct ImproperOptions {
  double first_window = 1.0;
  int max_windows = 80;
};

/// Integral of f over [t_lo, inf) x [0, 2 pi) using doubling windows
/// [t_lo, t_lo + 2^k w0]. Converged once two consecutive window increments are
/// both below tol.target(partial sum). Divergence is reported, not thrown;
/// a DomainError inside a window ends the run and the trend of the increments
/// decides the reported direction.
ImproperResult integrate_improper(const Integrand2& f, double t_lo,
                                  const Tolerance& tol,
                                  const ImproperOptions& options = {});

struct PoleOptions {
  double first_cutoff = 0.25;  // eps_0, clipped to half of t_hi
  double pole_guard = 1e-8;
};

/// Integral of f over (0, t_hi] x [0, 2 pi) for an integrand that is smooth
/// up to a pole at t = 0: cutoffs eps_k = 2^-k eps_0 shrink until two
/// consecutive slivers [eps_{k+1}, eps_k] are below tolerance, or eps reaches
/// the pole guard.
ImproperResult integrate_from_pole(const Integrand2& f, double t_hi,
                                   const Tolerance& tol,
                                   const PoleOptions& options = {});

struct TailSample {
  double h = 0.0;
  double value = 0.0;
  double error = 0.0;  // quadrature error of value
};

struct TailLimit {
  double limit = 0.0;
  double error_bound = 0.0;
  bool accelerated = false;  // Aitken extrapolation was applied
};

/// Limit estimate of a sequence sampled at increasing heights, using only
/// samples with h >= monotone_from. Requires at least 3 such samples and a
/// nonincreasing sequence within 10x the combined quadrature error plus 1e-9;
/// throws NotMonotone otherwise.
///
/// The estimate is the last value, or the Aitken delta-squared extrapolation
/// of the last three values when the differences contract geometrically.
/// error_bound is the last Cauchy difference of whichever sequence was used
/// (raw values, or successive extrapolants), floored by the accumulated
/// quadrature error. For a nonincreasing sequence whose differences contract
/// at least geometrically the limit lies within a small multiple of the bound.
TailLimit estimate_tail_limit(std::span<const TailSample> samples,
                              double monotone_from);

enum class TailKind { Finite, Divergent };

struct TailEstimate {
  TailKind kind = TailKind::Finite;
  TailLimit limit;
  Divergence direction = Divergence::None;
};

/// Same estimator without the monotonicity requirement; used to report on
/// sequences that are outside the hypotheses. Reports divergence when the
/// last three differences share a sign and do not contract.
TailEstimate extrapolate_tail(std::span<const TailSample> samples);

/// Largest increase between consecutive samples, measured against
/// 10 x (err_k + err_{k+1}) + 1e-9. Returns the worst (increase - allowed),
/// negative when monotone.
struct MonotoneCheck {
  double worst_excess = 0.0;
  double worst_increase = 0.0;
  double allowed_at_worst = 0.0;
  double h_at_worst = 0.0;
  bool monotone() const { return worst_excess <= 0.0; }
};
MonotoneCheck check_nonincreasing(std::span<const TailSample> samples);

}  // namespace cvlab
