#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "fixlab/space.hpp"

using namespace fixlab;

namespace {

ScalarSpace nonneg_sum_ratio(double hi = 10.0) {
  return make_interval_space("intro", 0.0, hi, 0.01, named_scalar_metric("sum-ratio"), 2.0);
}

}  // namespace

TEST_CASE("sum-ratio metric matches the recorded values") {
  auto space = nonneg_sum_ratio();
  CHECK(distance(space, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(distance(space, 2.0, 3.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(distance(space, 4.0, 4.0) == 0.0);
  CHECK_THROWS_AS(distance(space, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("product-unit metric branch order") {
  auto metric = named_scalar_metric("product-unit");
  CHECK(metric(1.0, 0.0) == 1.0);   // x = 1 branch wins over y = 0
  CHECK(metric(0.0, 0.5) == 0.5);
  CHECK(metric(1.0, 0.5) == 0.75);
  CHECK(metric(0.2, 0.6) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(metric(0.3, 0.3) == 0.0);
}

TEST_CASE("point axioms pass on the finite squared/cubed table") {
  std::vector<double> pts = {1, 2, 3, 4};
  std::vector<std::vector<double>> table = {
      {0, 49, 676, 3969}, {49, 0, 1, 4}, {676, 1, 0, 1}, {3969, 4, 1, 0}};
  auto space = make_finite_table_space("finite-four", pts, table, 2.0);
  auto report = verify_point_axioms(space, space.sample);
  CHECK(report.identity_ok);
  CHECK(report.symmetry_ok);
}

TEST_CASE("an injected zero off the diagonal breaks identity") {
  std::vector<double> pts = {1, 2, 3};
  std::vector<std::vector<double>> table = {{0, 0, 2}, {0, 0, 1}, {2, 1, 0}};
  auto space = make_finite_table_space("broken", pts, table, 1.0);
  auto report = verify_point_axioms(space, space.sample);
  CHECK_FALSE(report.identity_ok);
  REQUIRE_FALSE(report.witnesses.empty());
  CHECK(report.witnesses[0].kind == AxiomFailureKind::separation);
  CHECK(report.witnesses[0].x == 1.0);
  CHECK(report.witnesses[0].y == 2.0);
}

TEST_CASE("asymmetric tables are rejected at load") {
  std::vector<double> pts = {1, 2};
  std::vector<std::vector<double>> table = {{0, 1}, {2, 0}};
  CHECK_THROWS_AS(make_finite_table_space("bad", pts, table, 1.0), std::invalid_argument);
}

TEST_CASE("euclidean on 0..10 passes all point axioms") {
  std::vector<double> pts;
  for (int i = 0; i <= 10; ++i) pts.push_back(i);
  auto space = make_finite_points_space("grid", pts, named_scalar_metric("euclidean"), 1.0);
  auto report = verify_point_axioms(space, space.sample);
  CHECK(report.all_ok());
}

TEST_CASE("relaxed triangle holds for vanishing 1/n-style witnesses at s = 1") {
  auto space = make_interval_space("unit", 0.0, 1.0, 0.01, named_scalar_metric("euclidean"), 1.0);
  SequenceWitness<double> w;
  for (int n = 1; n <= 64; ++n) {
    double t = std::pow(2.0, -n);
    w.seq_a.push_back(t);
    w.seq_b.push_back(t + t * t);
  }
  w.target = 0.0;
  auto report = verify_relaxed_triangle(space, w);
  CHECK(report.witness_admissible);
  CHECK(report.triangle_ok);
}

TEST_CASE("non-vanishing witnesses are inadmissible, not failures") {
  auto space = make_interval_space("unit", 0.0, 1.0, 0.01, named_scalar_metric("euclidean"), 1.0);
  SequenceWitness<double> w;
  for (int n = 0; n < 64; ++n) {
    w.seq_a.push_back(0.25);
    w.seq_b.push_back(0.75);
  }
  w.target = 1.0;
  auto report = verify_relaxed_triangle(space, w);
  CHECK_FALSE(report.witness_admissible);
  CHECK(report.triangle_ok);

  // equal tails are rejected as well: the axiom wants distinct sequences
  SequenceWitness<double> same;
  same.seq_a.assign(64, 0.25);
  same.seq_b.assign(64, 0.25);
  same.target = 1.0;
  auto degenerate = verify_relaxed_triangle(space, same);
  CHECK_FALSE(degenerate.witness_admissible);
  CHECK(degenerate.triangle_ok);
}

TEST_CASE("function metric satisfies the relaxed triangle with s = 2^(p-1)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    auto space = make_function_space("fn", 32, p);
    CHECK(space.s == doctest::Approx(std::pow(2.0, p - 1.0)));
    std::vector<std::array<std::vector<double>, 3>> triples;
    for (int i = 0; i < 200; ++i) {
      std::array<std::vector<double>, 3> t;
      for (auto& f : t) {
        f.resize(32);
        for (auto& v : f) v = unif(rng);
      }
      triples.push_back(std::move(t));
    }
    auto report = verify_triangle_triples(space, triples);
    CHECK(report.triangle_ok);
  }
}

TEST_CASE("claimed s = 1 fails the triple check for p = 2") {
  auto space = make_function_space("fn", 4, 2.0);
  space.s = 1.0;  // deliberately wrong claim
  std::vector<double> f(4, 0.0), g(4, 1.0), h(4, 2.0);
  auto report = verify_triangle_triples(space, {{f, g, h}});
  CHECK_FALSE(report.triangle_ok);   // 4 <= 1 * (1 + 1) fails
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0].d1 == 4.0);
  CHECK(report.witnesses[0].d2 == 2.0);
}

TEST_CASE("p = 1 satisfies the plain triangle inequality (s = 1)") {
  auto space = make_function_space("fn", 8, 1.0);
  CHECK(space.s == 1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::array<std::vector<double>, 3>> triples;
  for (int i = 0; i < 200; ++i) {
    std::array<std::vector<double>, 3> t;
    for (auto& f : t) {
      f.resize(8);
      for (auto& v : f) v = unif(rng);
    }
    triples.push_back(std::move(t));
  }
  CHECK(verify_triangle_triples(space, triples).triangle_ok);
}

TEST_CASE("cauchy proxy: geometric decay, alternation, product-metric orbit") {
  auto euclid = make_interval_space("unit", 0.0, 1.0, 0.25, named_scalar_metric("euclidean"), 1.0);

  std::vector<double> geometric;
  for (int n = 0; n < 31; ++n) geometric.push_back(std::pow(0.25, n));
  auto diag = is_cauchy(geometric, euclid, 30, 1e-9);
  CHECK(diag.cauchy);

  std::vector<double> alternating;
  for (int n = 0; n < 30; ++n) alternating.push_back(n % 2 ? 1.0 : 0.0);
  auto alt = is_cauchy(alternating, euclid, 30, 1e-9);
  CHECK_FALSE(alt.cauchy);
  for (double v : alt.sup_tail) CHECK(v == 1.0);

  // the quarter-map orbit from 1 under the product metric
  auto product = make_interval_space("unit-sf", 0.0, 1.0, 0.25,
                                     named_scalar_metric("product-unit"), 2.0);
  std::vector<double> orbit = {1.0};
  for (int n = 0; n < 24; ++n)
    orbit.push_back(orbit.back() == 1.0 ? 0.125 : orbit.back() / 4.0);
  CHECK(is_cauchy(orbit, product, 25, 1e-9).cauchy);
}

TEST_CASE("metric axioms hold on random samples of every built-in metric") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const char* name : {"euclidean", "product-unit", "sum-ratio"}) {
    auto metric = named_scalar_metric(name);
    for (int i = 0; i < 500; ++i) {
      double x = unif(rng), y = unif(rng);
      double dxy = metric(x, y);
      CHECK(dxy >= 0.0);
      CHECK(dxy == metric(y, x));
      CHECK(metric(x, x) == 0.0);
      if (x != y) CHECK(dxy > 0.0);
    }
  }
}

TEST_CASE("uniform grids land on exact decimal nodes") {
  auto grid = uniform_grid(0.0, 1.0, 0.01);
  REQUIRE(grid.size() == 101);
  CHECK(grid[95] == 0.95);
  CHECK(grid[0] == 0.0);
  CHECK(grid.back() == 1.0);
}
