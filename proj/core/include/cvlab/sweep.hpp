#pragma once

// The truncation sweep: cut every end at a common height h, measure
//
//   mu(h)      = sum_j  int_0^{2pi} sqrt(G_j(h, theta)) dtheta
//   lambda(h)  = sum_j  int_0^{2pi} d/dt sqrt(G_j)(h, theta) dtheta
//   c(h)       = core + sum_j int_{t_min}^{h} int_0^{2pi} K sqrt(G_j) dtheta dt
//
// and check them against
//
//   2 pi chi = c(h) + lambda(h)             (Gauss-Bonnet on the truncation)
//   lambda   = mu'                          (boundary length derivative)
//   lambda nonincreasing beyond h1          (K >= 0 beyond h1)
//   L = lim lambda(h) >= 0
//   c_total = 2 pi chi - L <= 2 pi chi
//
// where h1 is a detected height beyond which sampled K >= 0.

#include <cvlab/parallel.hpp>
#include <cvlab/quadrature.hpp>
#include <cvlab/surface_model.hpp>

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cvlab {

struct TruncationSample {
  double h = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double c_trunc = 0.0;
  double quad_error = 0.0;   // mu + lambda + c_trunc error estimates
  double gb_residual = 0.0;  // |2 pi chi - c_trunc - lambda|
  double lambda_error = 0.0;
  double c_error = 0.0;
};

enum class VerdictStatus { Pass, Fail, NotApplicable };

std::string to_string(VerdictStatus s);
VerdictStatus verdict_status_from_string(const std::string& s);

struct Verdict {
  VerdictStatus status = VerdictStatus::NotApplicable;
  double residual = 0.0;  // NaN when nothing was measured
  double bound = 0.0;     // NaN when nothing was measured
  std::string note;
};

struct LimitResult {
  enum class Kind { Finite, Divergent, Unavailable };
  Kind kind = Kind::Unavailable;
  double value = 0.0;
  double error_bound = 0.0;
  Divergence direction = Divergence::None;
};

struct TotalCurvature {
  enum class Kind { Finite, PlusInfinity, DoesNotConverge };
  Kind kind = Kind::DoesNotConverge;
  double value = 0.0;
  double error = 0.0;
  Divergence direction = Divergence::Unresolved;
};

namespace check {
inline constexpr const char* kGaussBonnet = "gauss-bonnet-truncated";
inline constexpr const char* kLambdaMuPrime = "lambda-mu-prime";
inline constexpr const char* kMonotone = "lambda-monotone";
inline constexpr const char* kLNonneg = "L-nonneg";
inline constexpr const char* kTheorem = "theorem";
inline constexpr const char* kCorollary = "corollary";
inline constexpr const char* kRoutes = "total-curvature-routes";
inline constexpr const char* kSplit = "curvature-split";
}  // namespace check

struct SweepReport {
  std::string surface;
  int chi = 0;
  std::vector<TruncationSample> samples;
  std::optional<double> h1;
  LimitResult L;
  TotalCurvature c_total;
  std::map<std::string, Verdict> verdicts;
  std::vector<std::string> notes;

  bool any_failure() const;
};

/// Residual bound used by every verdict: 10 x error estimates + 1e-9.
double verdict_bound(double combined_error);

struct SweepOptions {
  /// Relative slack for the sign of K; see probe_curvature.
  double k_slack = 1e-10;
  int h1_grid = 64;
  int theta_samples = 16;
  /// Coarse step for the lambda = mu' refinement probes; the fine step is half.
  double mu_prime_step = 0.1;
  /// Required decay order of the deviation when the step halves.
  double mu_prime_min_order = 1.9;
  int workers = worker_count();
};

QuadResult mu(const SurfaceModel& model, double h, const Tolerance& tol);
QuadResult lambda_total(const SurfaceModel& model, double h,
                        const Tolerance& tol);
QuadResult truncated_total_curvature(const SurfaceModel& model, double h,
                                     const Tolerance& tol);

struct CurvatureProbe {
  std::optional<double> h1;
  double grid_origin = 0.0;
  bool at_origin = false;
  double min_K = 0.0;
  double max_K = 0.0;
  bool positive_somewhere = false;  // K above the slack at some sample
};

/// Samples K on a (grid + 1)-point uniform height grid from the lowest chart
/// height to h_probe_max, augmented by 24 points at distances 2^-k of the range
/// above the origin (theta_samples angles per height, every end); returns the
/// smallest grid height beyond which every sample has K >= -k_slack * scale,
/// scale = |G_tt| / G + (G_t / G)^2, refined by bisection to
/// h_probe_max / 2^12. When the whole grid qualifies, h1 is the lowest chart
/// height and at_origin is set.
CurvatureProbe probe_curvature(const SurfaceModel& model, double h_probe_max,
                               int grid, double k_slack = 1e-10,
                               int theta_samples = 16);

std::optional<double> detect_h1(const SurfaceModel& model, double h_probe_max,
                                int grid = 64, double k_slack = 1e-10);

/// |2 pi chi - c_trunc - lambda|.
double check_gauss_bonnet_truncated(const TruncationSample& sample, int chi);

/// Worst |lambda(h_k) - (mu(h_{k+1}) - mu(h_{k-1})) / (h_{k+1} - h_{k-1})|
/// over interior samples. Needs >= 3 samples.
double check_lambda_is_mu_prime(std::span<const TruncationSample> samples);

struct MuPrimeProbe {
  double h = 0.0;
  double step = 0.0;    // fine step; the coarse step is twice this
  double coarse = 0.0;  // |lambda(h) - central difference of mu|
  double fine = 0.0;
  double noise = 0.0;   // quadrature + rounding floor of `fine`
  bool resolved = false;
  double order = std::numeric_limits<double>::quiet_NaN();  // when resolved
};

/// Central differences of mu at h with steps `step` and `step / 2` against
/// lambda(h). Throws InvalidParameter when h - step leaves the chart.
MuPrimeProbe probe_lambda_mu_prime(const SurfaceModel& model, double h,
                                   double step, const Tolerance& tol = {});

/// h1 + 2^k (k = 0..10, stopping past h_max), preceded by 8 uniform heights
/// between the lowest chart height and h1 when h1 is above it.
std::vector<double> default_schedule(const SurfaceModel& model,
                                     std::optional<double> h1,
                                     double h_max = 1024.0);

/// `steps` heights from h_min to h_max: geometric when h_min > 0, uniform
/// otherwise.
std::vector<double> spaced_schedule(double h_min, double h_max, int steps);

/// Runs the whole procedure. Throws ModelInvalid for invalid models and
/// InvalidParameter for a bad schedule; every other outcome, including
/// divergence and failed identities, is reported.
SweepReport run_sweep(const SurfaceModel& model,
                      const std::vector<double>& schedule,
                      const Tolerance& tol = {},
                      const SweepOptions& options = {});

/// run_sweep over default_schedule(model, detect_h1(model, 1024)).
SweepReport run_sweep(const SurfaceModel& model, const Tolerance& tol,
                      const SweepOptions& options = {});

}  // namespace cvlab
