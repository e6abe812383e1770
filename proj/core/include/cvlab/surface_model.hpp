#pragma once

// Data model for finitely connected, orientable, noncompact surfaces: a
// compact core plus p cylindrical ends, each end carrying coordinates
// (t, theta) in which the metric reads dt^2 + G(t, theta) dtheta^2.
//
// Coefficient convention is G(t, theta), height first, on every end. theta is
// 2*pi periodic; other circumferences are absorbed into G.

#include <cvlab/jet.hpp>
#include <cvlab/metric_dsl.hpp>

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cvlab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Lower cutoff for pointwise evaluation near a polar cap.
inline constexpr double kPoleGuard = 1e-8;

struct Topology {
  int genus = 0;
  int ends = 1;
  bool orientable = true;
};

/// chi(Sigma) = chi(Sigma_1) - p = (2 - 2 genus) - ends.
int euler_char(const Topology& topology);

/// One cylindrical end. Either G or its square root may be supplied as a
/// t-jet; the other is derived. Profile-form charts (sqrt G given) are better
/// conditioned where G is tiny, e.g. next to a pole.
class EndChart {
 public:
  using JetField = std::function<Jet2(double t, double theta)>;

  static EndChart from_metric(JetField g, double t_min, std::string description);
  static EndChart from_profile(JetField sqrt_g, double t_min,
                               std::string description);
  static EndChart from_expression(MetricExpr expr, double t_min);

  /// G and its first two t-derivatives.
  Jet2 g(double t, double theta) const;
  /// sqrt(G) and its first two t-derivatives; throws DomainError if G <= 0.
  Jet2 sqrt_g(double t, double theta) const;

  double t_min() const { return t_min_; }
  int derivative_order() const { return 2; }
  bool has_profile() const { return static_cast<bool>(sqrt_g_); }
  const std::string& description() const { return description_; }

 private:
  EndChart(JetField g, JetField sqrt_g, double t_min, std::string description);

  JetField g_;
  JetField sqrt_g_;
  double t_min_ = 0.0;
  std::string description_;
};

/// End 1 extends smoothly to a pole at t = 0 where sqrt G = 0 and
/// d/dt sqrt G = 1.
struct PolarCap {};

/// Compact core given only through its total curvature.
struct AnalyticCore {
  double total_curvature = 0.0;
  std::vector<double> boundary_heights;  // one per end, equal to t_min
};

using CoreDescriptor = std::variant<PolarCap, AnalyticCore>;

struct SurfaceModel {
  std::string name;
  Topology topology;
  std::vector<EndChart> ends;
  CoreDescriptor core;
  /// Claimed height beyond which K >= 0. Informational only.
  std::optional<double> hypothesis_hint;

  bool has_polar_cap() const {
    return std::holds_alternative<PolarCap>(core);
  }
  /// Smallest height at which a truncation is meaningful for every end.
  double lowest_height() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

enum class ValidationMode { Collect, Strict };

struct ValidationOptions {
  int samples_per_axis = 64;
  /// G is sampled on [t_min, t_min + span] x [0, 2 pi).
  double t_span = 16.0;
  ValidationMode mode = ValidationMode::Collect;
};

/// Lists violated invariants; in Strict mode throws ModelInvalid with the
/// first one instead.
ValidationReport validate_surface(const SurfaceModel& model,
                                  const ValidationOptions& options = {});

}  // namespace cvlab
