#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fixlab {

/// Desired-trajectory generators: a constant clearance, a linear ramp, or
/// sinusoidal hills offset + amplitude * sin(2*pi*xi / wavelength).
struct GammaSpec {
  enum class Kind { flat, ramp, hills, values } kind = Kind::hills;
  double level = 1.0;       // flat
  double slope = 0.01;      // ramp: level + slope * (xi - xi0)
  double amplitude = 0.3;   // hills
  double wavelength = 50.0; // hills
  double offset = 1.0;      // hills
  std::vector<double> values;
};

enum class PlantMode { linear, integral, ode };

std::string plant_mode_name(PlantMode m);

struct OdeCoefficients {
  double a1 = 2.0, a2 = 3.0;
  double b0 = 1.0, b1 = 1.0, b2 = 0.5;
};

/// Configuration of the terrain-following iteration. The learning update is
///   kappa_{n+1}(xi) = -gamma(xi) + kappa_n(xi) + altitude_n(xi),
/// i.e. the summing junction feeds straight through as the next control.
/// Defaults give the linear plant an effective gain scale_g * gain_k = -0.5
/// small enough in gain_k that the inclination clamp stays inactive on the
/// default terrain.
struct TerrainConfig {
  double xi_lo = 0.0;
  double xi_hi = 100.0;
  double step = 0.5;
  GammaSpec gamma{};
  double speed = 1.0;      // aircraft speed, horizontal length per time
  double gain_k = -0.05;   // control -> flight angle
  double scale_g = 10.0;   // flight angle -> altitude
  double delta = 0.5;      // bound parameter in condition F1
  double sigma_max = 1.2;  // inclination clamp, must stay below pi/2
  double p = 1.0;          // metric exponent, >= 1
  double shift_a = 1.0;    // auxiliary shift a > 0
  double omega = 0.5;
  PlantMode plant_mode = PlantMode::linear;
  OdeCoefficients ode{};
  std::size_t max_iterations = 50;
  double tol = 1e-6;
  double blowup = 1e6;     // divergence bound on the tracking error
  std::vector<double> kappa0;  // empty means the zero start

  std::vector<double> grid() const;
  std::vector<double> gamma_samples() const;
  void validate() const;
};

struct PlantOutput {
  std::vector<double> sigma;
  std::vector<double> altitude;
  std::size_t clamp_count = 0;  // grid points where |gain_k * kappa| >= sigma_max
};

/// Applies the plant to a control signal on the grid. sigma is the clamped
/// flight angle gain_k * kappa. Altitude per mode:
///   linear    scale_g * sigma
///   integral  gamma(xi0) + speed * cumulative trapezoid of tan(sigma)
///   ode       sigma from 4th-order fixed-step integration of the
///             third-order plant driven by kappa(t), t = (xi-xi0)/speed,
///             zero initial state, then the integral-mode altitude
/// Throws NumericError if any output is NaN or infinite.
PlantOutput plant_apply(const TerrainConfig& cfg, const std::vector<double>& kappa);

// One learning update, pointwise on the grid.
std::vector<double> ilc_step(const TerrainConfig& cfg, const std::vector<double>& kappa_n);

struct DeltaField {
  std::vector<double> field;  // |kappa_n - kappa_prev - a|^p per grid point
  double max = 0.0;
};

DeltaField delta_field(const TerrainConfig& cfg, const std::vector<double>& kappa_n,
                       const std::vector<double>& kappa_prev);

// Condition F1: (xi_end - xi_0) * speed * delta <= 1 + exp((D_n - D_{n+1} - omega)/p).
bool check_f1(const TerrainConfig& cfg, double delta_max_n, double delta_max_next);

struct F2Result {
  bool ok = true;
  double worst_ratio = 0.0;
  double worst_xi = 0.0;
  std::size_t skipped = 0;  // grid points with a zero denominator
};

/// Condition F2 at every grid point with kappa_n - kappa_prev - a != 0:
///   (G_n - G_{n-1}) / (kappa_n - kappa_prev - a) < -1 + exp((D_n - D_{n+1} - omega)/p),
/// where G is the plant altitude. Zero denominators are skipped and counted.
F2Result check_f2(const TerrainConfig& cfg, const std::vector<double>& kappa_n,
                  const std::vector<double>& kappa_prev, double delta_max_n,
                  double delta_max_next);

// ((D_{n+1} + a^p) / (D_n + a^p)) * exp(D_{n+1} - D_n); stays below
// exp(-omega) exactly while the certificate mechanism is active and
// saturates to 1 as the control settles (D -> a^p).
double contraction_ratio(double delta_max_n, double delta_max_next, double a, double p);

struct ControlIterate {
  std::size_t n = 0;
  std::vector<double> kappa;
  std::vector<double> sigma;
  std::vector<double> altitude;
  std::vector<double> delta;   // defined for n >= 1
  double delta_max = 0.0;
  double tracking_error = 0.0;
  std::size_t clamp_count = 0;
  std::optional<bool> f1_ok;       // needs the next iterate's delta
  std::optional<bool> f2_ok;
  std::optional<double> f2_worst_ratio;  // pointwise worst case behind f2_ok
  std::optional<double> f2_worst_xi;
  std::optional<double> ratio;
};

struct IlcReport {
  std::vector<ControlIterate> iterates;
  bool converged = false;
  bool diverged = false;
  std::size_t diverged_at = 0;
  double final_error = 0.0;
  double fixed_point_residual = 0.0;  // max |scale_g * gain_k * kappa - gamma| at the last iterate
  std::optional<std::size_t> first_f1_violation;
  std::optional<std::size_t> first_f2_violation;
  std::optional<std::size_t> first_ratio_saturation;  // first n with ratio >= exp(-omega)
};

/// Runs the learning loop from kappa0 (zero unless configured) until the
/// tracking error max|altitude - gamma| falls below tol, the error exceeds
/// the blow-up bound (diverged), or max_iterations is reached.
IlcReport simulate(const TerrainConfig& cfg);

}  // namespace fixlab
