#pragma once

// Built-in surfaces with closed forms for every quantity the sweep measures.
//
//   name           chi  ends  core          hypothesis  L          c_total
//   flat-cylinder   0    2    analytic 0    yes         0          0
//   polar-plane     1    1    polar cap     yes         2 pi       0
//   paraboloid      1    1    polar cap     yes         0          2 pi
//   capped-cone     1    1    polar cap     yes         2 pi s     2 pi (1 - s)
//   catenoid        0    2    analytic 0    no          4 pi       -4 pi
//   cusp-cap        1    1    analytic 4pi  no          0          2 pi

#include <cvlab/surface_model.hpp>

#include <functional>
#include <string>
#include <vector>

namespace cvlab {

struct ZooOracle {
  std::function<double(double t, double theta)> K;
  /// Geodesic curvature of the circle t = h on end 1, per unit theta.
  std::function<double(double h)> kappa_g;
  std::function<double(double h)> mu;
  std::function<double(double h)> lambda;
  std::function<double(double h)> c_trunc;
  double L = 0.0;
  double c_total = 0.0;
  int chi = 0;
  bool hypothesis_holds = false;
};

struct ZooEntry {
  SurfaceModel model;
  ZooOracle oracle;
  std::string provenance_note;
  /// Default sweep range; geometric spacing.
  double h_min = 1.0;
  double h_max = 1024.0;
  int steps = 12;
};

ZooEntry make_flat_cylinder();
ZooEntry make_polar_plane();
/// z = r^2 / 2, reparametrized by meridian arc length.
ZooEntry make_paraboloid();
/// Smooth cap of radius 1 blended into a cone; slant = sin(half angle).
/// Throws InvalidParameter unless slant is in (0, 1).
ZooEntry make_capped_cone(double slant = 0.5);
ZooEntry make_catenoid();
/// G = exp(-2t) end on a compact cap of total curvature 4 pi.
ZooEntry make_hyperbolic_cusp_cap();

/// Stable identifiers in listing order.
const std::vector<std::string>& zoo_names();
bool is_zoo_name(const std::string& name);
/// Throws InvalidParameter("unknown surface '...'") for other names.
ZooEntry make_zoo_entry(const std::string& name);
std::vector<ZooEntry> make_zoo();

/// Inverse of the paraboloid meridian arc length s(r) = (r sqrt(1+r^2) +
/// asinh r) / 2.
double paraboloid_radius(double s);

}  // namespace cvlab
