#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fixlab/contraction.hpp"
#include "fixlab/space.hpp"

namespace fixlab {

enum class StopReason { exact_fixed_point, tolerance, max_iterations };

std::string stop_reason_name(StopReason r);

/// One orbit x_{n+1} = T(x_n) together with the quantities the decrement
/// machinery needs:
///   step_dist[n] = d(x_n, x_{n+1})
///   lambda[n]    = d(x_{n+1}, S(x_{n+1}, x_n))
///   eta[n]       = d(x_n,     S(x_{n+1}, x_n))
/// All per-step lists have length iterates.size() - 1.
template <class P>
struct PicardTrace {
  std::vector<P> iterates;
  std::vector<double> step_dist;
  std::vector<double> lambda_seq;
  std::vector<double> eta_seq;
  StopReason stop_reason = StopReason::max_iterations;

  std::size_t steps() const { return step_dist.size(); }
  const P& terminal() const { return iterates.back(); }
};

/// Runs the orbit from x0, stopping at the first exact fixed point, when the
/// step distance falls below tol, or after max_iter applications of T.
/// Throws DomainEscapeError (with the offending index) if T leaves the
/// domain. With tol = 0 only the exact and max-iteration stops apply.
template <class P>
PicardTrace<P> iterate(const Space<P>& space, const SelfMap<P>& T, const P& x0,
                       std::size_t max_iter, double tol, const AuxiliaryMap<P>& S) {
  if (!space.contains(x0)) throw std::invalid_argument("iterate: start outside the domain");
  PicardTrace<P> trace;
  trace.iterates.push_back(x0);
  for (std::size_t n = 0; n < max_iter; ++n) {
    P x = trace.iterates.back();  // by value: push_back below invalidates references
    P next = T.apply(x);
    if (!space.contains(next))
      throw DomainEscapeError("iterate: map left the domain at step " + std::to_string(n), n);
    P s = S.apply(next, x);
    if (!space.contains(s))
      throw DomainEscapeError("iterate: auxiliary map left the domain at step " + std::to_string(n), n);
    double step = distance(space, x, next);
    trace.step_dist.push_back(step);
    trace.lambda_seq.push_back(distance(space, next, s));
    trace.eta_seq.push_back(distance(space, x, s));
    trace.iterates.push_back(next);
    if (PointTraits<P>::equal(next, x)) {
      trace.stop_reason = StopReason::exact_fixed_point;
      return trace;
    }
    if (step < tol) {
      trace.stop_reason = StopReason::tolerance;
      return trace;
    }
  }
  trace.stop_reason = StopReason::max_iterations;
  return trace;
}

// Consecutive-step distances vanish over the tail window. A trace that ends
// in an exact fixed point is regular by definition (the tail is all zeros).
template <class P>
bool asymptotic_regularity(const PicardTrace<P>& trace, double tol = kDefaultTailTol,
                           std::size_t window = kDefaultTailWindow) {
  if (trace.step_dist.empty()) return true;
  if (trace.stop_reason == StopReason::exact_fixed_point) return true;
  return detail::tail_sup(trace.step_dist, window) < tol;
}

struct DecrementResult {
  bool ok = true;
  std::vector<double> margins;  // F(l0+e0) - n*omega - F(ln+en) per checked n
};

/// Checks the telescoped decrement F(lambda_n + eta_n) <= F(lambda_0 +
/// eta_0) - n*omega along a trace, with 1e-9 slack. Indices where the sum is
/// zero signal arrival at the fixed point and are skipped.
template <class P>
DecrementResult decrement_bound(const PicardTrace<P>& trace, const FFunction& F, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("decrement_bound: omega must be positive");
  DecrementResult result;
  if (trace.lambda_seq.empty()) return result;
  double base = trace.lambda_seq[0] + trace.eta_seq[0];
  if (base == 0.0) return result;  // orbit starts at arrival
  double f_base = F.eval(base);
  for (std::size_t n = 1; n < trace.lambda_seq.size(); ++n) {
    double sum = trace.lambda_seq[n] + trace.eta_seq[n];
    if (sum == 0.0) continue;
    double margin = f_base - static_cast<double>(n) * omega - F.eval(sum);
    result.margins.push_back(margin);
    if (margin < -1e-9) result.ok = false;
  }
  return result;
}

// lambda_n + eta_n strictly decreasing until a zero entry.
template <class P>
bool bianchini_monotone(const PicardTrace<P>& trace) {
  for (std::size_t n = 0; n + 1 < trace.lambda_seq.size(); ++n) {
    double cur = trace.lambda_seq[n] + trace.eta_seq[n];
    double next = trace.lambda_seq[n + 1] + trace.eta_seq[n + 1];
    if (cur == 0.0 || next == 0.0) break;
    if (!(next < cur)) return false;
  }
  return true;
}

template <class P>
struct FixedPointSet {
  std::vector<P> points;
  bool unique() const { return points.size() == 1; }
};

// Exact enumeration of {x in sample : T(x) = x}.
template <class P>
FixedPointSet<P> fixed_points(const Space<P>& space, const SelfMap<P>& T) {
  FixedPointSet<P> set;
  for (const auto& x : space.sample)
    if (PointTraits<P>::equal(T.apply(x), x)) set.points.push_back(x);
  return set;
}

/// Convergence of the certified classes additionally needs, at the orbit
/// limit v, that d(T^n u, v) -> 0 forces d(T(T^n u), T v) -> 0. That is not
/// decidable numerically in general; this diagnostic reports whether the
/// tail of d(T(x_n), T(limit)) sits below tol along one concrete orbit, so
/// the hypothesis is checked rather than silently assumed. Continuity of T
/// suffices for it to hold.
template <class P>
bool orbit_continuity_diagnostic(const Space<P>& space, const SelfMap<P>& T,
                                 const PicardTrace<P>& trace, double tol = kDefaultTailTol,
                                 std::size_t window = kDefaultTailWindow) {
  if (trace.iterates.size() < 2) return true;
  // an exact arrival pins the tail at d(T(v), T(v)) = 0
  if (trace.stop_reason == StopReason::exact_fixed_point) return true;
  P t_limit = T.apply(trace.terminal());
  if (!space.contains(t_limit)) return false;
  std::size_t n = trace.iterates.size();
  // never reach past the midpoint: early iterates are not tail evidence
  std::size_t k = std::min({window, (n + 1) / 2, n - 1});
  double worst = 0.0;
  for (std::size_t i = n - 1 - k; i + 1 < n; ++i) {
    P mapped = T.apply(trace.iterates[i]);
    worst = std::max(worst, distance(space, mapped, t_limit));
  }
  return worst < tol;
}

enum class PicardVerdict { converged, not_converged, inconclusive };

std::string picard_verdict_name(PicardVerdict v);

template <class P>
struct PicardCheck {
  PicardVerdict verdict = PicardVerdict::inconclusive;
  struct Row {
    P start;
    P terminal;
    StopReason stop;
    std::size_t steps;
    bool continuity_ok;  // orbit_continuity_diagnostic along this orbit
  };
  std::vector<Row> limits;
};

/// Runs orbits from every start over the full iteration budget. Converged
/// means every orbit settled (exact fixed point, or a passing Cauchy proxy
/// at tol over its tail) and all terminal points coincide within tol under
/// the space's distance. An orbit that spends the budget without its steps
/// ever reaching tol is inconclusive rather than false.
template <class P>
PicardCheck<P> picard_operator_check(const Space<P>& space, const SelfMap<P>& T,
                                     const std::vector<P>& starts, std::size_t max_iter,
                                     double tol, const AuxiliaryMap<P>& S) {
  if (starts.empty()) throw std::invalid_argument("picard_operator_check: no starts");
  PicardCheck<P> check;
  bool any_unsettled = false;
  std::vector<P> terminals;
  for (const auto& x0 : starts) {
    auto trace = iterate(space, T, x0, max_iter, 0.0, S);
    bool settled = trace.stop_reason == StopReason::exact_fixed_point;
    if (!settled && trace.iterates.size() >= 2) {
      std::size_t h = std::min<std::size_t>(trace.iterates.size(), 64);
      settled = is_cauchy(std::vector<P>(trace.iterates.end() - h, trace.iterates.end()),
                          space, h, tol)
                    .cauchy;
    }
    if (!settled) any_unsettled = true;
    bool continuity = orbit_continuity_diagnostic(space, T, trace, std::max(tol, kDefaultTailTol));
    check.limits.push_back({x0, trace.terminal(), trace.stop_reason, trace.steps(), continuity});
    terminals.push_back(trace.terminal());
  }
  for (std::size_t i = 0; i + 1 < terminals.size(); ++i) {
    if (distance(space, terminals[i], terminals[i + 1]) > tol) {
      check.verdict = PicardVerdict::not_converged;
      return check;
    }
  }
  check.verdict = any_unsettled ? PicardVerdict::inconclusive : PicardVerdict::converged;
  return check;
}

}  // namespace fixlab
