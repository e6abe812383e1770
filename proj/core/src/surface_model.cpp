#include <cvlab/surface_model.hpp>

#include <cvlab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace cvlab {

int euler_char(const Topology& topology) {
  return (2 - 2 * topology.genus) - topology.ends;
}

EndChart::EndChart(JetField g, JetField sqrt_g, double t_min,
                   std::string description)
    : g_(std::move(g)),
      sqrt_g_(std::move(sqrt_g)),
      t_min_(t_min),
      description_(std::move(description)) {}

EndChart EndChart::from_metric(JetField g, double t_min,
                               std::string description) {
  return EndChart(std::move(g), nullptr, t_min, std::move(description));
}

EndChart EndChart::from_profile(JetField sqrt_g, double t_min,
                                std::string description) {
  return EndChart(nullptr, std::move(sqrt_g), t_min, std::move(description));
}

EndChart EndChart::from_expression(MetricExpr expr, double t_min) {
  std::string description = "G = " + expr.source();
  return from_metric(
      [e = std::move(expr)](double t, double theta) {
        return eval_jet(e, t, theta);
      },
      t_min, std::move(description));
}

Jet2 EndChart::g(double t, double theta) const {
  if (g_) return g_(t, theta);
  const Jet2 f = sqrt_g_(t, theta);
  return f * f;
}

Jet2 EndChart::sqrt_g(double t, double theta) const {
  if (sqrt_g_) {
    const Jet2 f = sqrt_g_(t, theta);
    if (!(f.value > 0.0) || !isfinite(f))
      throw DomainError("sqrt G is not positive and finite at t = " +
                        std::to_string(t));
    return f;
  }
  const Jet2 g = g_(t, theta);
  if (!(g.value > 0.0) || !isfinite(g))
    throw DomainError("G is not positive and finite at t = " +
                      std::to_string(t));
  return sqrt(g);
}

double SurfaceModel::lowest_height() const {
  double lo = -HUGE_VAL;
  for (const auto& e : ends) lo = std::max(lo, e.t_min());
  return lo;
}

namespace {

std::string at(double t, double theta) {
  std::ostringstream os;
  os << "(t=" << t << ", theta=" << theta << ")";
  return os.str();
}

void check_structure(const SurfaceModel& model, std::vector<std::string>& out) {
  const Topology& top = model.topology;
  if (!top.orientable)
    out.push_back(
        "nonorientable surfaces are not supported; sweep the orientable "
        "double cover instead");
  if (top.genus < 0) out.push_back("genus must be >= 0");
  if (top.ends < 1) out.push_back("ends must be >= 1 (surface is noncompact)");
  if (static_cast<int>(model.ends.size()) != top.ends)
    out.push_back("end count mismatch: topology declares " +
                  std::to_string(top.ends) + " ends, model has " +
                  std::to_string(model.ends.size()) + " charts");

  if (model.has_polar_cap()) {
    if (top.ends != 1 || model.ends.size() != 1)
      out.push_back("PolarCap requires single end");
    if (top.genus != 0) out.push_back("PolarCap requires genus 0");
    for (const auto& e : model.ends)
      if (e.t_min() != 0.0) out.push_back("PolarCap requires t_min = 0");
  } else {
    const auto& core = std::get<AnalyticCore>(model.core);
    if (!std::isfinite(core.total_curvature))
      out.push_back("AnalyticCore total curvature must be finite");
    if (core.boundary_heights.size() != model.ends.size()) {
      out.push_back("AnalyticCore needs one boundary height per end");
    } else {
      for (std::size_t j = 0; j < model.ends.size(); ++j)
        if (core.boundary_heights[j] != model.ends[j].t_min())
          out.push_back("AnalyticCore boundary height of end " +
                        std::to_string(j + 1) + " differs from its t_min");
    }
  }
}

void check_metric(const SurfaceModel& model, const ValidationOptions& opt,
                  std::vector<std::string>& out) {
  const int n = opt.samples_per_axis;
  for (std::size_t j = 0; j < model.ends.size(); ++j) {
    const EndChart& chart = model.ends[j];
    const std::string tag = "end " + std::to_string(j + 1) + ": ";
    const double lo =
        model.has_polar_cap() ? chart.t_min() + kPoleGuard : chart.t_min();
    bool reported = false;
    for (int i = 0; i < n && !reported; ++i) {
      const double t = lo + opt.t_span * i / (n - 1);
      for (int k = 0; k < n && !reported; ++k) {
        const double theta = kTwoPi * k / n;
        try {
          const Jet2 g = chart.g(t, theta);
          if (std::isnan(g.value) || g.value <= 0.0) {
            out.push_back(tag + "G <= 0 at sampled point " + at(t, theta));
            reported = true;
          }
          // Overflow to +inf is still a positive metric; the sweep reports it.
        } catch (const OverflowError&) {
          continue;
        } catch (const DomainError& e) {
          out.push_back(tag + "G cannot be evaluated at " + at(t, theta) +
                        ": " + e.what());
          reported = true;
        }
      }
    }
  }

  if (model.has_polar_cap() && model.ends.size() == 1) {
    const EndChart& chart = model.ends.front();
    for (int k = 0; k < n; ++k) {
      const double theta = kTwoPi * k / n;
      try {
        const Jet2 f = chart.sqrt_g(kPoleGuard, theta);
        if (std::fabs(f.value) > 1e-6 || std::fabs(f.d1 - 1.0) > 1e-6) {
          out.push_back(
              "PolarCap requires sqrt G -> 0 and d/dt sqrt G -> 1 at the pole, "
              "got " +
              std::to_string(f.value) + ", " + std::to_string(f.d1) + " at " +
              at(kPoleGuard, theta));
          break;
        }
      } catch (const DomainError& e) {
        out.push_back(std::string("PolarCap pole cannot be evaluated: ") +
                      e.what());
        break;
      }
    }
  }
}

}  // namespace

ValidationReport validate_surface(const SurfaceModel& model,
                                  const ValidationOptions& options) {
  if (options.samples_per_axis < 4)
    throw InvalidParameter("samples_per_axis must be >= 4");
  ValidationReport report;
  check_structure(model, report.violations);
  if (static_cast<int>(model.ends.size()) == model.topology.ends)
    check_metric(model, options, report.violations);
  if (options.mode == ValidationMode::Strict && !report.ok())
    throw ModelInvalid(model.name + ": " + report.violations.front());
  return report;
}

}  // namespace cvlab
