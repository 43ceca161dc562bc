#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixlab/errors.hpp"
#include "fixlab/point_traits.hpp"

namespace fixlab {

/// A point set with a symmetric, point-separating distance and a relaxation
/// coefficient s >= 1. The triangle inequality is only required in the
/// limsup-relaxed sense checked by verify_relaxed_triangle.
///
/// `sample` is the finite set the tool enumerates: the whole domain for
/// finite spaces, a uniform grid for interval spaces. `member` widens
/// domain membership beyond the sample (e.g. any x in [lo,hi]); when unset,
/// membership means "is one of the sampled points".
template <class P>
struct Space {
  std::string name;
  double s = 1.0;
  std::vector<P> sample;
  std::function<double(const P&, const P&)> metric;
  std::function<bool(const P&)> member;

  bool contains(const P& x) const {
    if (member) return member(x);
    for (const auto& p : sample)
      if (PointTraits<P>::equal(p, x)) return true;
    return false;
  }
};

using ScalarSpace = Space<double>;
using FunctionSpace = Space<std::vector<double>>;

enum class AxiomFailureKind { identity, separation, symmetry, triangle };

template <class P>
struct AxiomFailure {
  AxiomFailureKind kind;
  P x, y;
  std::optional<P> z;  // triple checks only
  double d1 = 0.0, d2 = 0.0;
};

template <class P>
struct AxiomReport {
  bool identity_ok = true;
  bool symmetry_ok = true;
  bool triangle_ok = true;
  bool witness_admissible = true;  // relaxed-triangle checks only
  std::vector<AxiomFailure<P>> witnesses;

  bool all_ok() const { return identity_ok && symmetry_ok && triangle_ok; }
};

/// Two sequences with vanishing mutual distance plus a target point, used to
/// exercise the relaxed triangle condition. The condition is existential
/// over sequence families, so verdicts are always per-witness.
template <class P>
struct SequenceWitness {
  std::vector<P> seq_a;
  std::vector<P> seq_b;
  P target;
  std::size_t horizon = 0;
};

inline void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string(what) + " is not finite");
}

template <class P>
double distance(const Space<P>& space, const P& x, const P& y) {
  if (!space.contains(x) || !space.contains(y))
    throw std::invalid_argument("distance: point outside the space domain");
  double d = space.metric(x, y);
  check_finite(d, "distance");
  if (d < 0.0) throw NumericError("distance: metric returned a negative value");
  return d;
}

// Exhaustive identity / separation / symmetry check over a point sample.
template <class P>
AxiomReport<P> verify_point_axioms(const Space<P>& space, const std::vector<P>& sample) {
  if (sample.empty()) throw std::invalid_argument("verify_point_axioms: empty sample");
  AxiomReport<P> report;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double dii = distance(space, sample[i], sample[i]);
    if (dii != 0.0) {
      report.identity_ok = false;
      report.witnesses.push_back({AxiomFailureKind::identity, sample[i], sample[i], {}, dii, 0.0});
    }
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      double dij = distance(space, sample[i], sample[j]);
      double dji = distance(space, sample[j], sample[i]);
      if (dij != dji) {
        report.symmetry_ok = false;
        report.witnesses.push_back({AxiomFailureKind::symmetry, sample[i], sample[j], {}, dij, dji});
      }
      if (!PointTraits<P>::equal(sample[i], sample[j]) && dij == 0.0) {
        report.identity_ok = false;
        report.witnesses.push_back({AxiomFailureKind::separation, sample[i], sample[j], {}, dij, 0.0});
      }
    }
  }
  return report;
}

namespace detail {

// limsup proxy: supremum over the trailing `window` entries.
inline double tail_sup(const std::vector<double>& v, std::size_t window) {
  std::size_t n = v.size();
  std::size_t k = window < n ? window : n;
  double m = 0.0;
  for (std::size_t i = n - k; i < n; ++i) m = m > v[i] ? m : v[i];
  return m;
}

}  // namespace detail

inline constexpr std::size_t kDefaultTailWindow = 16;
inline constexpr double kDefaultTailTol = 1e-9;

/// Relaxed-triangle check on one sequence witness:
///   tail-sup d(seq_b[n], target) <= s * tail-sup d(seq_a[n], target) + tol.
/// The witness is admissible only if d(seq_a[n], seq_b[n]) vanishes over the
/// tail and the sequences actually differ somewhere in the tail; an
/// inadmissible witness is reported as such, never as a triangle failure.
template <class P>
AxiomReport<P> verify_relaxed_triangle(const Space<P>& space, const SequenceWitness<P>& witness,
                                       std::size_t tail_window = kDefaultTailWindow,
                                       double tol = kDefaultTailTol) {
  AxiomReport<P> report;
  std::size_t h = witness.horizon ? witness.horizon : witness.seq_a.size();
  if (witness.seq_a.size() != witness.seq_b.size() || witness.seq_a.size() < h)
    throw std::invalid_argument("verify_relaxed_triangle: sequence lengths inconsistent with horizon");
  if (h < 2 * tail_window)
    throw std::invalid_argument("verify_relaxed_triangle: horizon must be >= 2 * tail_window");

  std::vector<double> dab(h), da(h), db(h);
  std::size_t distinct_tail = 0;
  for (std::size_t n = 0; n < h; ++n) {
    dab[n] = distance(space, witness.seq_a[n], witness.seq_b[n]);
    da[n] = distance(space, witness.seq_a[n], witness.target);
    db[n] = distance(space, witness.seq_b[n], witness.target);
    if (n + tail_window >= h && !PointTraits<P>::equal(witness.seq_a[n], witness.seq_b[n]))
      ++distinct_tail;
  }
  if (detail::tail_sup(dab, tail_window) >= tol || distinct_tail == 0) {
    report.witness_admissible = false;
    return report;
  }
  double lhs = detail::tail_sup(db, tail_window);
  double rhs = space.s * detail::tail_sup(da, tail_window);
  if (lhs > rhs + tol) {
    report.triangle_ok = false;
    report.witnesses.push_back({AxiomFailureKind::triangle, witness.seq_a.back(),
                                witness.seq_b.back(), witness.target, lhs, rhs});
  }
  return report;
}

/// Direct three-point form of the relaxed triangle inequality:
///   d(x,z) <= s * (d(x,y) + d(y,z)) + tol  for every supplied triple.
/// This is the stronger b-metric-style property that the sampled-function
/// metric max|f-g|^p satisfies with s = 2^(p-1); it is the brute-force
/// oracle behind the sequence form.
template <class P>
AxiomReport<P> verify_triangle_triples(const Space<P>& space,
                                       const std::vector<std::array<P, 3>>& triples,
                                       double tol = 0.0) {
  AxiomReport<P> report;
  for (const auto& t : triples) {
    double dxz = distance(space, t[0], t[2]);
    double bound = space.s * (distance(space, t[0], t[1]) + distance(space, t[1], t[2]));
    if (dxz > bound + tol) {
      report.triangle_ok = false;
      report.witnesses.push_back({AxiomFailureKind::triangle, t[0], t[1], t[2], dxz, bound});
    }
  }
  return report;
}

struct CauchyDiagnostic {
  bool cauchy = false;
  std::vector<double> sup_tail;  // sup_tail[n] = max_{n < p < horizon} d(x_n, x_p)
};

// Finite-horizon proxy of the Cauchy condition: verdict is taken from the
// last diagnostic entry.
template <class P>
CauchyDiagnostic is_cauchy(const std::vector<P>& points, const Space<P>& space,
                           std::size_t horizon, double tol) {
  if (horizon < 2 || points.size() < horizon)
    throw std::invalid_argument("is_cauchy: need sequence length >= horizon >= 2");
  CauchyDiagnostic diag;
  diag.sup_tail.resize(horizon - 1);
  for (std::size_t n = 0; n + 1 < horizon; ++n) {
    double m = 0.0;
    for (std::size_t p = n + 1; p < horizon; ++p) {
      double d = distance(space, points[n], points[p]);
      m = m > d ? m : d;
    }
    diag.sup_tail[n] = m;
  }
  diag.cauchy = diag.sup_tail.back() < tol;
  return diag;
}

// --- constructors -----------------------------------------------------------

/// Named scalar metrics loadable from config:
///   euclidean            |x - y|
///   abs-power            |x - y|^p                  (param p)
///   product-unit         the [0,1] metric: x*y off-diagonal in (0,1),
///                        d(0,y) = y, d(1,y) = 1 - y/2
///   sum-ratio            the [0,inf) metric: (x+y)/(1+x+y) off zero,
///                        max(x,y)/2 when exactly one argument is 0
std::function<double(double, double)> named_scalar_metric(const std::string& name, double p = 1.0);

ScalarSpace make_finite_points_space(std::string name, std::vector<double> points,
                                     std::function<double(double, double)> metric, double s);

/// Finite space from an explicit distance table. Asymmetric tables are
/// rejected at load; identity violations are left for verify_point_axioms.
ScalarSpace make_finite_table_space(std::string name, std::vector<double> points,
                                    const std::vector<std::vector<double>>& table, double s);

/// Uniform grid over [lo, hi] with approximately the requested step; grid
/// nodes are lo + i*(hi-lo)/n so that decimal endpoints land exactly.
std::vector<double> uniform_grid(double lo, double hi, double step);

ScalarSpace make_interval_space(std::string name, double lo, double hi, double step,
                                std::function<double(double, double)> metric, double s);

/// Sampled-function space over a fixed grid with metric max_i |f_i - g_i|^p
/// and coefficient s = 2^(p-1).
FunctionSpace make_function_space(std::string name, std::size_t grid_size, double p);

}  // namespace fixlab
