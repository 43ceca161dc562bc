#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fixlab/f_function.hpp"

using namespace fixlab;

TEST_CASE("gauge evaluation matches the recorded values") {
  CHECK(builtin_f("ln").eval(1.0) == 0.0);
  CHECK(builtin_f("ln-plus-id").eval(std::exp(1.0)) ==
        doctest::Approx(3.718281828459045).epsilon(1e-15));
  CHECK(builtin_f("neg-inv-sqrt").eval(0.25) == -2.0);
}

TEST_CASE("evaluation outside (0, inf) is a domain error") {
  auto f = builtin_f("ln");
  CHECK_THROWS_AS(f.eval(0.0), std::domain_error);
  CHECK_THROWS_AS(f.eval(-1.0), std::domain_error);
}

TEST_CASE("w1: ln increases, -t does not, -1/sqrt(t) does") {
  std::vector<double> coarse = {0.1, 0.5, 1.0, 2.0, 10.0};
  CHECK(check_w1(builtin_f("ln"), coarse).ok);

  FFunction neg{"neg", [](double t) { return -t; }, 0.5};
  auto bad = check_w1(neg, {1.0, 2.0, 3.0});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->first == 1.0);
  CHECK(bad.violation->second == 2.0);

  CHECK(check_w1(builtin_f("neg-inv-sqrt"), default_w1_grid()).ok);
}

TEST_CASE("w2: vanishing sequences push F to -inf, bounded F fails") {
  std::vector<double> halving;
  for (int n = 1; n <= 40; ++n) halving.push_back(std::pow(0.5, n));
  CHECK(check_w2(builtin_f("ln"), halving, -20.0));

  std::vector<double> inv_sq;
  for (int n = 1; n <= 40000; ++n) inv_sq.push_back(1.0 / (static_cast<double>(n) * n));
  CHECK(check_w2(builtin_f("ln-plus-id"), inv_sq, -10.0, 1e-8));

  FFunction bounded{"arctan-minus-10", [](double t) { return std::atan(t) - 10.0; }, 0.5};
  CHECK_FALSE(check_w2(bounded, halving, -20.0));

  // both sides large: the biconditional holds vacuously
  std::vector<double> ones(8, 1.0);
  CHECK(check_w2(builtin_f("ln"), ones, -20.0));
}

TEST_CASE("w3: the recorded exponents support the built-ins") {
  // t^(3/4) * (-1/sqrt(t)) = -t^(1/4): about -0.0316 at 1e-6 and shrinking
  std::vector<double> to_micro;
  for (int i = 0; i <= 24; ++i) to_micro.push_back(std::pow(10.0, -i * 0.25));
  CHECK(check_w3(builtin_f("neg-inv-sqrt"), to_micro, 0.05));

  CHECK(check_w3(builtin_f("ln"), default_w3_grid(), kDefaultW3Tol));

  FFunction inv{"neg-inv", [](double t) { return -1.0 / t; }, 0.5};
  for (int i = 1; i <= 19; ++i) {
    inv.w3_exponent = 0.05 * i;
    CHECK_FALSE(check_w3(inv, default_w3_grid(), kDefaultW3Tol));
  }
  CHECK_FALSE(suggest_w3_exponent(inv).has_value());
}

TEST_CASE("all built-ins pass W1-W3 on the default grids") {
  for (const auto& name : builtin_f_names()) {
    auto report = check_all(builtin_f(name));
    CHECK(report.w1_ok);
    CHECK(report.w2_ok);
    CHECK(report.w3_ok);
  }
}

TEST_CASE("w1 implies order preservation across any two grid points") {
  auto grid = default_w1_grid();
  for (const auto& name : builtin_f_names()) {
    auto f = builtin_f(name);
    REQUIRE(check_w1(f, grid).ok);
    for (std::size_t i = 0; i < grid.size(); i += 7)
      for (std::size_t j = i + 1; j < grid.size(); j += 5)
        CHECK(f.eval(grid[i]) < f.eval(grid[j]));
  }
}

TEST_CASE("gauge evaluation is deterministic") {
  auto f = builtin_f("ln-plus-id");
  for (double t : {1e-9, 0.37, 5.0, 4018.0})
    CHECK(f.eval(t) == f.eval(t));
}

TEST_CASE("term form reproduces -1/sqrt(t) and suggests an exponent") {
  auto custom = make_term_f("custom", {{FTerm::Kind::power, -1.0, -0.5}}, 0.75);
  for (double t : {0.25, 1.0, 4.0})
    CHECK(custom.eval(t) == builtin_f("neg-inv-sqrt").eval(t));
  auto k = suggest_w3_exponent(custom);
  REQUIRE(k.has_value());
  CHECK(*k > 0.5);  // any exponent above 1/2 works for this gauge

  auto mixed = make_term_f("lnt", {{FTerm::Kind::log, 1.0, 0.0}, {FTerm::Kind::linear, 1.0, 0.0}},
                           0.5);
  CHECK(mixed.eval(2.0) == doctest::Approx(std::log(2.0) + 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(make_term_f("empty", {}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_term_f("bad-k", {{FTerm::Kind::log, 1.0, 0.0}}, 1.5),
                  std::invalid_argument);
}
