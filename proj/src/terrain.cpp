#include "fixlab/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fixlab/errors.hpp"
#include "fixlab/space.hpp"

namespace fixlab {

std::string plant_mode_name(PlantMode m) {
  switch (m) {
    case PlantMode::linear: return "linear";
    case PlantMode::integral: return "integral";
    case PlantMode::ode: return "ode";
  }
  return "?";
}

std::vector<double> TerrainConfig::grid() const { return uniform_grid(xi_lo, xi_hi, step); }

std::vector<double> TerrainConfig::gamma_samples() const {
  auto xi = grid();
  std::vector<double> g(xi.size());
  switch (gamma.kind) {
    case GammaSpec::Kind::flat:
      std::fill(g.begin(), g.end(), gamma.level);
      break;
    case GammaSpec::Kind::ramp:
      for (std::size_t i = 0; i < xi.size(); ++i)
        g[i] = gamma.level + gamma.slope * (xi[i] - xi_lo);
      break;
    case GammaSpec::Kind::hills:
      for (std::size_t i = 0; i < xi.size(); ++i)
        g[i] = gamma.offset +
               gamma.amplitude * std::sin(2.0 * std::numbers::pi * xi[i] / gamma.wavelength);
      break;
    case GammaSpec::Kind::values:
      if (gamma.values.size() != xi.size())
        throw std::invalid_argument("gamma sample count does not match the grid");
      g = gamma.values;
      break;
  }
  return g;
}

void TerrainConfig::validate() const {
  if (!(xi_hi > xi_lo) || !(step > 0.0)) throw std::invalid_argument("invalid xi grid");
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("metric exponent p must be >= 1");
  if (!(shift_a > 0.0)) throw std::invalid_argument("auxiliary shift a must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (!(sigma_max > 0.0 && sigma_max < std::numbers::pi / 2.0))
    throw std::invalid_argument("sigma_max must lie in (0, pi/2)");
  if (!(tol >= 0.0) || !(blowup > 0.0)) throw std::invalid_argument("invalid tol or blow-up bound");
  if (!kappa0.empty() && kappa0.size() != grid().size())
    throw std::invalid_argument("kappa0 sample count does not match the grid");
  if (gamma.kind == GammaSpec::Kind::hills && !(gamma.wavelength > 0.0))
    throw std::invalid_argument("hills wavelength must be positive");
}

namespace {

void ensure_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw NumericError(std::string(what) + " is not finite");
}

// cumulative trapezoid with uniform spacing h, starting at `start`
std::vector<double> cumtrapz(const std::vector<double>& f, double h, double scale, double start) {
  std::vector<double> out(f.size());
  double acc = start;
  out[0] = acc;
  for (std::size_t i = 1; i < f.size(); ++i) {
    acc += scale * 0.5 * h * (f[i - 1] + f[i]);
    out[i] = acc;
  }
  return out;
}

// sigma from the third-order plant
//   sigma''' + a2 sigma'' + a1 sigma' = b2 kappa'' + b1 kappa' - b0 kappa
// integrated by the classical 4th-order scheme with fixed step h/speed and
// zero initial state. kappa derivatives come from central differences on the
// grid; the forcing at half steps is the linear interpolant.
std::vector<double> ode_sigma(const TerrainConfig& cfg, const std::vector<double>& kappa) {
  std::size_t n = kappa.size();
  double dt = cfg.step / cfg.speed;
  std::vector<double> du(n), ddu(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t im = i == 0 ? 0 : i - 1;
    std::size_t ip = i + 1 == n ? n - 1 : i + 1;
    double span = static_cast<double>(ip - im) * dt;
    du[i] = span > 0.0 ? (kappa[ip] - kappa[im]) / span : 0.0;
    if (i > 0 && i + 1 < n)
      ddu[i] = (kappa[ip] - 2.0 * kappa[i] + kappa[im]) / (dt * dt);
  }
  if (n > 2) {
    ddu[0] = ddu[1];
    ddu[n - 1] = ddu[n - 2];
  }
  std::vector<double> force(n);
  for (std::size_t i = 0; i < n; ++i)
    force[i] = cfg.ode.b2 * ddu[i] + cfg.ode.b1 * du[i] - cfg.ode.b0 * kappa[i];

  std::vector<double> sigma(n, 0.0);
  double y0 = 0.0, y1 = 0.0, y2 = 0.0;  // sigma, sigma', sigma''
  auto rhs = [&](double u, double s1, double s2) {
    return u - cfg.ode.a2 * s2 - cfg.ode.a1 * s1;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double u0 = force[i];
    double u1 = force[i + 1];
    double uh = 0.5 * (u0 + u1);

    double k1_0 = y1, k1_1 = y2, k1_2 = rhs(u0, y1, y2);
    double k2_0 = y1 + 0.5 * dt * k1_1;
    double k2_1 = y2 + 0.5 * dt * k1_2;
    double k2_2 = rhs(uh, k2_0, k2_1);
    double k3_0 = y1 + 0.5 * dt * k2_1;
    double k3_1 = y2 + 0.5 * dt * k2_2;
    double k3_2 = rhs(uh, k3_0, k3_1);
    double k4_0 = y1 + dt * k3_1;
    double k4_1 = y2 + dt * k3_2;
    double k4_2 = rhs(u1, k4_0, k4_1);

    y0 += dt / 6.0 * (k1_0 + 2.0 * k2_0 + 2.0 * k3_0 + k4_0);
    y1 += dt / 6.0 * (k1_1 + 2.0 * k2_1 + 2.0 * k3_1 + k4_1);
    y2 += dt / 6.0 * (k1_2 + 2.0 * k2_2 + 2.0 * k3_2 + k4_2);
    sigma[i + 1] = y0;
  }
  return sigma;
}

}  // namespace

PlantOutput plant_apply(const TerrainConfig& cfg, const std::vector<double>& kappa) {
  auto xi = cfg.grid();
  if (kappa.size() != xi.size())
    throw std::invalid_argument("plant_apply: control sample count does not match the grid");
  ensure_finite(kappa, "control signal");

  PlantOutput out;
  out.sigma.resize(kappa.size());
  if (cfg.plant_mode == PlantMode::ode) {
    out.sigma = ode_sigma(cfg, kappa);
    ensure_finite(out.sigma, "integrated flight angle");  // before the clamp can mask it
    for (auto& s : out.sigma) {
      if (std::abs(s) >= cfg.sigma_max) {
        ++out.clamp_count;
        s = std::clamp(s, -cfg.sigma_max, cfg.sigma_max);
      }
    }
  } else {
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      double s = cfg.gain_k * kappa[i];
      if (std::abs(s) >= cfg.sigma_max) {
        ++out.clamp_count;
        s = std::clamp(s, -cfg.sigma_max, cfg.sigma_max);
      }
      out.sigma[i] = s;
    }
  }
  ensure_finite(out.sigma, "flight angle");

  if (cfg.plant_mode == PlantMode::linear) {
    out.altitude.resize(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) out.altitude[i] = cfg.scale_g * out.sigma[i];
  } else {
    // altitude relative to the reference level, anchored at gamma(xi0)
    std::vector<double> tan_sigma(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) tan_sigma[i] = std::tan(out.sigma[i]);
    out.altitude = cumtrapz(tan_sigma, cfg.step, cfg.speed, cfg.gamma_samples().front());
  }
  ensure_finite(out.altitude, "altitude");
  return out;
}

std::vector<double> ilc_step(const TerrainConfig& cfg, const std::vector<double>& kappa_n) {
  auto gamma = cfg.gamma_samples();
  auto plant = plant_apply(cfg, kappa_n);
  std::vector<double> next(kappa_n.size());
  for (std::size_t i = 0; i < kappa_n.size(); ++i)
    next[i] = -gamma[i] + kappa_n[i] + plant.altitude[i];
  ensure_finite(next, "updated control");
  return next;
}

DeltaField delta_field(const TerrainConfig& cfg, const std::vector<double>& kappa_n,
                       const std::vector<double>& kappa_prev) {
  if (kappa_n.size() != kappa_prev.size())
    throw std::invalid_argument("delta_field: sample count mismatch");
  DeltaField d;
  d.field.resize(kappa_n.size());
  for (std::size_t i = 0; i < kappa_n.size(); ++i) {
    d.field[i] = std::pow(std::abs(kappa_n[i] - kappa_prev[i] - cfg.shift_a), cfg.p);
    d.max = std::max(d.max, d.field[i]);
  }
  return d;
}

bool check_f1(const TerrainConfig& cfg, double delta_max_n, double delta_max_next) {
  double lhs = (cfg.xi_hi - cfg.xi_lo) * cfg.speed * cfg.delta;
  double rhs = 1.0 + std::exp((delta_max_n - delta_max_next - cfg.omega) / cfg.p);
  return lhs <= rhs;
}

F2Result check_f2(const TerrainConfig& cfg, const std::vector<double>& kappa_n,
                  const std::vector<double>& kappa_prev, double delta_max_n,
                  double delta_max_next) {
  auto xi = cfg.grid();
  auto g_n = plant_apply(cfg, kappa_n).altitude;
  auto g_prev = plant_apply(cfg, kappa_prev).altitude;
  double bound = -1.0 + std::exp((delta_max_n - delta_max_next - cfg.omega) / cfg.p);
  F2Result result;
  bool first = true;
  for (std::size_t i = 0; i < kappa_n.size(); ++i) {
    double denom = kappa_n[i] - kappa_prev[i] - cfg.shift_a;
    if (denom == 0.0) {
      ++result.skipped;
      continue;
    }
    double ratio = (g_n[i] - g_prev[i]) / denom;
    if (first || ratio > result.worst_ratio) {
      result.worst_ratio = ratio;
      result.worst_xi = xi[i];
      first = false;
    }
    if (!(ratio < bound)) result.ok = false;
  }
  return result;
}

double contraction_ratio(double delta_max_n, double delta_max_next, double a, double p) {
  double ap = std::pow(a, p);
  return ((delta_max_next + ap) / (delta_max_n + ap)) * std::exp(delta_max_next - delta_max_n);
}

IlcReport simulate(const TerrainConfig& cfg) {
  cfg.validate();
  auto gamma = cfg.gamma_samples();
  std::size_t grid_size = gamma.size();
  std::vector<double> kappa = cfg.kappa0.empty() ? std::vector<double>(grid_size, 0.0) : cfg.kappa0;

  IlcReport report;
  double sat_bound = std::exp(-cfg.omega);

  auto make_record = [&](std::size_t n, const std::vector<double>& k) {
    auto plant = plant_apply(cfg, k);
    ControlIterate rec;
    rec.n = n;
    rec.kappa = k;
    rec.sigma = std::move(plant.sigma);
    rec.altitude = std::move(plant.altitude);
    rec.clamp_count = plant.clamp_count;
    for (std::size_t i = 0; i < grid_size; ++i)
      rec.tracking_error = std::max(rec.tracking_error, std::abs(rec.altitude[i] - gamma[i]));
    check_finite(rec.tracking_error, "tracking error");
    return rec;
  };

  report.iterates.push_back(make_record(0, kappa));
  for (std::size_t n = 0;; ++n) {
    ControlIterate& cur = report.iterates.back();
    if (cur.tracking_error < cfg.tol) {
      report.converged = true;
      break;
    }
    if (cur.tracking_error > cfg.blowup) {
      report.diverged = true;
      report.diverged_at = n;
      break;
    }
    if (n == cfg.max_iterations) break;

    std::vector<double> next = ilc_step(cfg, cur.kappa);
    ControlIterate rec = make_record(n + 1, next);
    auto d = delta_field(cfg, rec.kappa, cur.kappa);
    rec.delta = std::move(d.field);
    rec.delta_max = d.max;

    // F1/F2 and the ratio at iterate n compare delta_n against delta_{n+1}
    if (n >= 1) {
      const ControlIterate& prev = report.iterates[report.iterates.size() - 2];
      cur.f1_ok = check_f1(cfg, cur.delta_max, rec.delta_max);
      auto f2 = check_f2(cfg, cur.kappa, prev.kappa, cur.delta_max, rec.delta_max);
      cur.f2_ok = f2.ok;
      if (f2.skipped < cur.kappa.size()) {
        cur.f2_worst_ratio = f2.worst_ratio;
        cur.f2_worst_xi = f2.worst_xi;
      }
      cur.ratio = contraction_ratio(cur.delta_max, rec.delta_max, cfg.shift_a, cfg.p);
      if (!*cur.f1_ok && !report.first_f1_violation) report.first_f1_violation = n;
      if (!*cur.f2_ok && !report.first_f2_violation) report.first_f2_violation = n;
      if (*cur.ratio >= sat_bound && !report.first_ratio_saturation)
        report.first_ratio_saturation = n;
    }
    report.iterates.push_back(std::move(rec));
  }

  const ControlIterate& last = report.iterates.back();
  report.final_error = last.tracking_error;
  for (std::size_t i = 0; i < grid_size; ++i)
    report.fixed_point_residual = std::max(
        report.fixed_point_residual, std::abs(cfg.scale_g * cfg.gain_k * last.kappa[i] - gamma[i]));
  return report;
}

}  // namespace fixlab
