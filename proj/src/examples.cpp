#include "fixlab/examples.hpp"

#include <algorithm>
#include <cmath>

namespace fixlab {

namespace {

SelfMap<double> index_shift_down(const std::vector<double>& points) {
  return {"index-shift-down", [points](double x) {
            for (std::size_t i = 0; i < points.size(); ++i)
              if (points[i] == x) return points[i == 0 ? 0 : i - 1];
            throw std::invalid_argument("shift-down: point not in sequence space");
          }};
}

ExampleFixture cube_sum(std::size_t horizon) {
  if (horizon == 0) horizon = 30;
  if (horizon < 3) throw std::invalid_argument("cube-sum: horizon must be >= 3");
  std::vector<double> points(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) {
    double tri = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    points[n - 1] = tri * tri;
  }
  ExampleFixture fx;
  fx.id = "cube-sum";
  fx.horizon = horizon;
  fx.space = make_finite_points_space("cube-sum", points, named_scalar_metric("euclidean"), 1.0);
  fx.map = index_shift_down(points);
  fx.aux = named_scalar_aux("const", 1.0);
  fx.f = builtin_f("ln-plus-id");
  fx.kind = ContractionKind::sf;
  fx.expected_value = 27.0;  // certified gap is a lower bound claim
  fx.expected_verdict = Verdict::certified;
  fx.note = "ratio form increases with the horizon toward 1, so the plain "
            "ratio kind is not certifiable in the limit";
  return fx;
}

ExampleFixture powers_of_three(std::size_t horizon) {
  if (horizon == 0) horizon = 20;
  if (horizon < 4) throw std::invalid_argument("powers-of-three: horizon must be >= 4");
  std::vector<double> points(horizon);
  points[0] = 1.0;
  for (std::size_t n = 2; n <= horizon; ++n) points[n - 1] = std::pow(3.0, static_cast<double>(n));
  ExampleFixture fx;
  fx.id = "powers-of-three";
  fx.horizon = horizon;
  fx.space = make_finite_points_space("powers-of-three", points, named_scalar_metric("euclidean"), 1.0);
  fx.map = index_shift_down(points);
  fx.aux = named_scalar_aux("max");
  fx.f = builtin_f("ln-plus-id");
  fx.kind = ContractionKind::kannan_sf;
  fx.expected_value = 0.5;
  fx.expected_verdict = Verdict::certified;
  fx.note = "mean-form ratio approaches 1/2, the certification boundary of "
            "the kannan-style ratio kind";
  return fx;
}

ExampleFixture unit_interval_sf(double step) {
  if (step == 0.0) step = 5e-4;
  ExampleFixture fx;
  fx.id = "unit-interval-sf";
  fx.grid_step = step;
  fx.space = make_interval_space("unit-interval-sf", 0.0, 1.0, step,
                                 named_scalar_metric("product-unit"), 2.0);
  fx.map = {"quarter", [](double x) { return x == 1.0 ? 0.125 : x / 4.0; }};
  fx.aux = named_scalar_aux("mean");
  fx.f = builtin_f("neg-inv-sqrt");
  fx.kind = ContractionKind::sf;
  fx.expected_value = 4.0 * std::sqrt(2.0) / std::sqrt(5.0) - 1.0;
  fx.expected_verdict = Verdict::certified;
  fx.note = "infimum is approached along pairs (0, z) with z -> 1; the grid "
            "estimate converges from above as the step shrinks";
  return fx;
}

ExampleFixture bianchini_unit(double step) {
  if (step == 0.0) step = 0.01;
  ExampleFixture fx;
  fx.id = "bianchini-unit";
  fx.grid_step = step;
  fx.space = make_interval_space("bianchini-unit", 0.0, 1.0, step,
                                 named_scalar_metric("euclidean"), 1.0);
  fx.map = {"two-level", [](double x) { return x == 1.0 ? 0.7 : 0.95; }};
  fx.aux = named_scalar_aux("min");
  fx.kind = ContractionKind::bianchini_sf;
  fx.expected_value = 0.0;  // F(0.3) - F(0.25), evaluated per gauge at run time
  fx.expected_verdict = Verdict::certified;
  fx.note = "gauge left unspecified in the source construction; each built-in "
            "gauge yields its own F(0.3) - F(0.25)";
  return fx;
}

ExampleFixture finite_four() {
  std::vector<double> points = {1.0, 2.0, 3.0, 4.0};
  std::vector<std::vector<double>> table(4, std::vector<double>(4, 0.0));
  auto dist = [](double x, double y) -> double {
    if (x == y) return 0.0;
    if (x == 1.0 || y == 1.0) {
      double z = x == 1.0 ? y : x;
      double v = 1.0 - z * z * z;
      return v * v;
    }
    return (x - y) * (x - y);
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) table[i][j] = dist(points[i], points[j]);

  ExampleFixture fx;
  fx.id = "finite-four";
  fx.horizon = 4;
  fx.space = make_finite_table_space("finite-four", points, table, 2.0);
  std::vector<double> images = {2.0, 3.0, 3.0, 2.0};
  fx.map = {"table", [images, points](double x) {
              for (std::size_t i = 0; i < points.size(); ++i)
                if (points[i] == x) return images[i];
              throw std::invalid_argument("finite-four map: point not in space");
            }};
  fx.aux = named_scalar_aux("distinct-const", 1.0);
  fx.f = builtin_f("ln");
  fx.kind = ContractionKind::bianchini_sf;
  fx.expected_value = std::log(4018.0) - std::log(725.0);
  fx.expected_verdict = Verdict::refuted;
  fx.note = "exhaustive enumeration finds pairs (1,2) with gap exactly 0 and "
            "(1,3) with gap F(49)-F(725) < 0, contradicting the recorded "
            "claim that all pairs satisfy the inequality";
  return fx;
}

ExampleFixture intro_supermetric(double step) {
  if (step == 0.0) step = 0.01;
  ExampleFixture fx;
  fx.id = "intro-supermetric";
  fx.grid_step = step;
  fx.space = make_interval_space("intro-supermetric", 0.0, 10.0, step,
                                 named_scalar_metric("sum-ratio"), 2.0);
  fx.map = {"identity", [](double x) { return x; }};
  fx.aux = named_scalar_aux("first");
  fx.kind = ContractionKind::sf;
  fx.expected_value = 0.0;
  fx.expected_verdict = Verdict::vacuous;
  fx.note = "space-only fixture: axioms and spot distances";
  return fx;
}

bool close_rel(double a, double b, double rel) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * std::max(scale, 1e-300);
}

ExampleRow value_row(const std::string& id, const std::string& check, double computed,
                     double expected, double rel, std::string detail = "") {
  ExampleRow row{id, check, computed, expected, RowStatus::fail, std::move(detail)};
  if (close_rel(computed, expected, rel)) row.status = RowStatus::pass;
  return row;
}

ExampleRow bound_row(const std::string& id, const std::string& check, double computed,
                     double lower_bound, std::string detail = "") {
  ExampleRow row{id, check, computed, lower_bound, RowStatus::fail, std::move(detail)};
  if (computed >= lower_bound) row.status = RowStatus::pass;
  return row;
}

void append_cube_sum_rows(std::vector<ExampleRow>& rows, std::size_t horizon,
                          const RunAllTolerances& tol) {
  auto fx = cube_sum(horizon);
  auto omega = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f);
  rows.push_back(bound_row(fx.id, "sf omega gap (ln-plus-id) >= 27",
                           omega.certified() ? omega.value : -1.0, fx.expected_value));

  auto beta = certify_beta(ContractionKind::sb, fx.space, fx.map, fx.aux);
  std::size_t n = fx.space.sample.size();
  double expected = (fx.space.sample[n - 2] - 1.0) / (fx.space.sample[n - 1] - 1.0);
  rows.push_back(value_row(fx.id, "sb beta ratio at horizon", beta.value, expected, tol.value_rel));

  auto prev = cube_sum(fx.horizon - 1);
  auto beta_prev = certify_beta(ContractionKind::sb, prev.space, prev.map, prev.aux);
  ExampleRow trend{fx.id, "sb beta ratio increases with horizon", beta.value, beta_prev.value,
                   beta.value > beta_prev.value ? RowStatus::pass : RowStatus::fail, fx.note};
  rows.push_back(trend);
}

void append_powers_rows(std::vector<ExampleRow>& rows, std::size_t horizon,
                        const RunAllTolerances& tol) {
  auto fx = powers_of_three(horizon);
  auto omega = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f);
  rows.push_back(bound_row(fx.id, "kannan-sf omega gap (ln-plus-id) >= 1/2",
                           omega.certified() ? omega.value : -1.0, fx.expected_value));

  auto beta = certify_beta(ContractionKind::sk, fx.space, fx.map, fx.aux);
  std::size_t n = fx.space.sample.size();
  double expected = (fx.space.sample[n - 2] - 1.0) / (2.0 * fx.space.sample[n - 2]);
  rows.push_back(value_row(fx.id, "sk ratio at horizon", beta.value, expected, tol.value_rel,
                           fx.note));

  auto cond = check_condition_i(fx.kind, fx.space, fx.map, fx.aux);
  rows.push_back({fx.id, "condition (i)", cond.ok ? 1.0 : 0.0, 1.0,
                  cond.ok ? RowStatus::pass : RowStatus::fail, ""});
}

void append_unit_interval_rows(std::vector<ExampleRow>& rows, const RunAllTolerances& tol) {
  auto fx = unit_interval_sf(0.0);
  auto omega = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f);
  rows.push_back(value_row(fx.id, "sf omega gap (neg-inv-sqrt)", omega.value, fx.expected_value,
                           1e-3, fx.note));

  auto starts = uniform_grid(0.0, 1.0, 1.0 / 19.0);
  double worst_limit = 0.0, worst_step = 0.0;
  bool decrement_ok = true;
  for (double x0 : starts) {
    auto trace = iterate(fx.space, fx.map, x0, 400, tol.picard_tol / 10.0, fx.aux);
    worst_step = std::max(worst_step, trace.step_dist.back());
    worst_limit = std::max(worst_limit, distance(fx.space, trace.terminal(), 0.0));
    if (!decrement_bound(trace, *fx.f, 1.5).ok) decrement_ok = false;
  }
  rows.push_back({fx.id, "orbits from 20 starts settle at 0", worst_limit, 0.0,
                  worst_limit < 1e-5 && worst_step < tol.picard_tol ? RowStatus::pass
                                                                    : RowStatus::fail,
                  "worst final step " + std::to_string(worst_step)});
  rows.push_back({fx.id, "decrement bound at omega = 1.5", decrement_ok ? 1.0 : 0.0, 1.0,
                  decrement_ok ? RowStatus::pass : RowStatus::fail, ""});
}

void append_bianchini_rows(std::vector<ExampleRow>& rows, const RunAllTolerances& tol) {
  auto fx = bianchini_unit(0.0);
  for (const auto& name : builtin_f_names()) {
    FFunction f = builtin_f(name);
    auto omega = certify_omega(fx.kind, fx.space, fx.map, fx.aux, f);
    double expected = f.eval(0.3) - f.eval(0.25);
    rows.push_back(value_row(fx.id, "bianchini-sf omega gap (" + name + ")",
                             omega.certified() ? omega.value : -1.0, expected, tol.value_rel,
                             fx.note));
  }

  auto ksf = certify_omega(ContractionKind::kannan_sf, fx.space, fx.map, fx.aux, builtin_f("ln"));
  rows.push_back({fx.id, "kannan-sf refuted", ksf.verdict == Verdict::refuted ? 1.0 : 0.0, 1.0,
                  ksf.verdict == Verdict::refuted ? RowStatus::pass : RowStatus::fail,
                  "mean form fails at pairs like (0.8, 1)"});

  bool reached = true;
  for (double x0 : {0.0, 0.3, 0.7, 1.0}) {
    auto trace = iterate(fx.space, fx.map, x0, 10, 0.0, fx.aux);
    std::size_t first = 0;
    while (first < trace.iterates.size() && trace.iterates[first] != 0.95) ++first;
    if (trace.terminal() != 0.95 || first > 2) reached = false;
  }
  rows.push_back({fx.id, "fixed point 0.95 reached in <= 2 steps", reached ? 1.0 : 0.0, 1.0,
                  reached ? RowStatus::pass : RowStatus::fail, ""});
}

void append_finite_four_rows(std::vector<ExampleRow>& rows, const RunAllTolerances& tol) {
  auto fx = finite_four();
  CertifyOptions opt;
  opt.keep_pairs = true;
  auto omega = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f, opt);

  double gap43 = 0.0;
  for (const auto& rec : omega.pairs)
    if (rec.x == 4.0 && rec.y == 3.0) gap43 = rec.score;

  bool zero_at_12 = false, negative_at_13 = false;
  for (const auto& v : omega.violations) {
    if (v.x == 1.0 && v.y == 2.0 && v.score == 0.0) zero_at_12 = true;
    if (v.x == 1.0 && v.y == 3.0 && v.score < 0.0) negative_at_13 = true;
  }
  bool documented = omega.verdict == Verdict::refuted && zero_at_12 && negative_at_13 &&
                    close_rel(gap43, fx.expected_value, tol.value_rel);
  rows.push_back({fx.id, "bianchini-sf gap at (4,3) = F(4018)-F(725)", gap43, fx.expected_value,
                  documented ? RowStatus::discrepancy : RowStatus::fail, fx.note});

  auto fps = fixed_points(fx.space, fx.map);
  bool unique3 = fps.unique() && fps.points[0] == 3.0;
  bool orbits = true;
  for (double x0 : fx.space.sample) {
    auto trace = iterate(fx.space, fx.map, x0, 10, 0.0, fx.aux);
    if (trace.terminal() != 3.0) orbits = false;
  }
  rows.push_back({fx.id, "unique fixed point 3 from every start", unique3 && orbits ? 1.0 : 0.0,
                  1.0, unique3 && orbits ? RowStatus::pass : RowStatus::fail, ""});
}

void append_intro_rows(std::vector<ExampleRow>& rows, const RunAllTolerances& tol) {
  auto fx = intro_supermetric(0.0);
  auto axioms = verify_point_axioms(fx.space, fx.space.sample);
  rows.push_back({fx.id, "identity and symmetry axioms",
                  axioms.identity_ok && axioms.symmetry_ok ? 1.0 : 0.0, 1.0,
                  axioms.identity_ok && axioms.symmetry_ok ? RowStatus::pass : RowStatus::fail,
                  ""});
  rows.push_back(value_row(fx.id, "distance (0,1)", distance(fx.space, 0.0, 1.0), 0.5,
                           tol.value_rel));
  rows.push_back(value_row(fx.id, "distance (2,3)", distance(fx.space, 2.0, 3.0), 5.0 / 6.0,
                           tol.value_rel));

  // two vanishing-pair witness families, checked at the recorded s = 2
  bool witnesses_ok = true;
  for (double target : {0.0, 0.5, 2.0}) {
    SequenceWitness<double> interior, boundary;
    for (int n = 1; n <= 64; ++n) {
      double t = std::pow(2.0, -n);
      interior.seq_a.push_back(t);
      interior.seq_b.push_back(t + t * t);
      boundary.seq_a.push_back(0.0);
      boundary.seq_b.push_back(t);
    }
    interior.target = target;
    boundary.target = target;
    for (const auto* w : {&interior, &boundary}) {
      auto rep = verify_relaxed_triangle(fx.space, *w);
      if (!rep.witness_admissible || !rep.triangle_ok) witnesses_ok = false;
    }
  }
  rows.push_back({fx.id, "relaxed triangle on witness families", witnesses_ok ? 1.0 : 0.0, 1.0,
                  witnesses_ok ? RowStatus::pass : RowStatus::fail, ""});
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {
      "cube-sum", "unit-interval-sf", "powers-of-three",
      "bianchini-unit", "finite-four", "intro-supermetric"};
  return ids;
}

ExampleFixture build_example(const std::string& id, std::size_t horizon, double step) {
  if (id == "cube-sum") return cube_sum(horizon);
  if (id == "unit-interval-sf") return unit_interval_sf(step);
  if (id == "powers-of-three") return powers_of_three(horizon);
  if (id == "bianchini-unit") return bianchini_unit(step);
  if (id == "finite-four") return finite_four();
  if (id == "intro-supermetric") return intro_supermetric(step);
  throw std::invalid_argument("unknown example id: " + id);
}

std::string row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::pass: return "pass";
    case RowStatus::fail: return "fail";
    case RowStatus::discrepancy: return "discrepancy";
  }
  return "?";
}

std::vector<ExampleRow> run_all(const RunAllTolerances& tol, const std::string& only_id,
                                std::size_t horizon_override) {
  std::vector<ExampleRow> rows;
  auto want = [&](const std::string& id) { return only_id.empty() || only_id == id; };
  if (want("cube-sum")) append_cube_sum_rows(rows, horizon_override, tol);
  if (want("unit-interval-sf")) append_unit_interval_rows(rows, tol);
  if (want("powers-of-three")) append_powers_rows(rows, horizon_override, tol);
  if (want("bianchini-unit")) append_bianchini_rows(rows, tol);
  if (want("finite-four")) append_finite_four_rows(rows, tol);
  if (want("intro-supermetric")) append_intro_rows(rows, tol);
  if (rows.empty()) throw std::invalid_argument("unknown example id: " + only_id);
  return rows;
}

}  // namespace fixlab
