#pragma once

// Pointwise curvature of an end metric g = dt^2 + G dtheta^2.
//
// With f = sqrt(G):
//   Gaussian curvature        K       = -f_tt / f
//   area element              dA      = f dt dtheta
//   geodesic curvature of the circle t = h, oriented by increasing theta,
//   per unit theta            kappa   = f_t = G_t / (2 sqrt G)
//
// Note on symbols: the same letter K is often used for both the Gaussian
// curvature and the geodesic curvature of the boundary; here the latter is
// always called kappa / geodesic_kappa.

#include <cvlab/surface_model.hpp>

#include <utility>

namespace cvlab {

struct CurvatureSample {
  double t = 0.0;
  double theta = 0.0;
  double gauss_K = 0.0;
  double geodesic_kappa = 0.0;
  double area_density = 0.0;
};

CurvatureSample sample_curvature(const EndChart& end, double t, double theta);

/// -(d^2/dt^2 sqrt G) / sqrt G. Throws DomainError if G <= 0 or the result is
/// not finite.
double gauss_curvature(const EndChart& end, double t, double theta);

/// K * sqrt G = -(d^2/dt^2 sqrt G): the curvature integrand against dt dtheta.
double curvature_density(const EndChart& end, double t, double theta);

/// d/dt sqrt G at (h, theta).
double geodesic_curvature(const EndChart& end, double h, double theta);

/// G_t / (2 sqrt G), computed from the G jet alone. Kept as the cross-check
/// for geodesic_curvature.
double geodesic_curvature_from_metric(const EndChart& end, double h,
                                      double theta);

struct CurvatureSplit {
  double plus = 0.0;
  double minus = 0.0;
};

/// (max(K, 0), max(-K, 0)).
CurvatureSplit curvature_split(double K);

}  // namespace cvlab
