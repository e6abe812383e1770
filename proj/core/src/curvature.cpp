#include <cvlab/curvature.hpp>

#include <cvlab/errors.hpp>

#include <cmath>
#include <string>

namespace cvlab {

namespace {

double finite_or_throw(double v, const char* what, double t) {
  if (!std::isfinite(v))
    throw DomainError(std::string(what) + " is not finite at t = " +
                      std::to_string(t));
  return v;
}

}  // namespace

CurvatureSample sample_curvature(const EndChart& end, double t, double theta) {
  const Jet2 f = end.sqrt_g(t, theta);
  CurvatureSample s;
  s.t = t;
  s.theta = theta;
  s.area_density = f.value;
  s.geodesic_kappa = finite_or_throw(f.d1, "geodesic curvature", t);
  s.gauss_K = finite_or_throw(-f.d2 / f.value, "Gaussian curvature", t);
  return s;
}

double gauss_curvature(const EndChart& end, double t, double theta) {
  const Jet2 f = end.sqrt_g(t, theta);
  return finite_or_throw(-f.d2 / f.value, "Gaussian curvature", t);
}

double curvature_density(const EndChart& end, double t, double theta) {
  const Jet2 f = end.sqrt_g(t, theta);
  return finite_or_throw(-f.d2, "curvature density", t);
}

double geodesic_curvature(const EndChart& end, double h, double theta) {
  return finite_or_throw(end.sqrt_g(h, theta).d1, "geodesic curvature", h);
}

double geodesic_curvature_from_metric(const EndChart& end, double h,
                                      double theta) {
  const Jet2 g = end.g(h, theta);
  if (!(g.value > 0.0))
    throw DomainError("G is not positive at t = " + std::to_string(h));
  return finite_or_throw(g.d1 / (2.0 * std::sqrt(g.value)),
                         "geodesic curvature", h);
}

CurvatureSplit curvature_split(double K) {
  return {std::max(K, 0.0), std::max(-K, 0.0)};
}

}  // namespace cvlab
