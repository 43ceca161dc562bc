#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixlab/contraction.hpp"
#include "fixlab/examples.hpp"

using namespace fixlab;

namespace {

// small random finite instances: exact integer-valued points, random
// symmetric positive table, random index maps, S with a fixed diagonal
struct RandomInstance {
  ScalarSpace space;
  SelfMap<double> map;
  AuxiliaryMap<double> aux;
};

RandomInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size_dist(3, 6);
  std::uniform_real_distribution<double> dist_dist(0.1, 10.0);
  std::size_t n = size_dist(rng);

  std::vector<double> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = static_cast<double>(i);
  std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) table[i][j] = table[j][i] = dist_dist(rng);

  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::vector<double> images(n);
  for (auto& v : images) v = points[idx(rng)];
  std::vector<std::vector<double>> aux_table(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) aux_table[i][j] = i == j ? points[i] : points[idx(rng)];

  RandomInstance inst;
  inst.space = make_finite_table_space("random", points, table, 1.0);
  inst.map = {"random-map", [images](double x) { return images[static_cast<std::size_t>(x)]; }};
  inst.aux = {"random-aux",
              [aux_table](double x, double y) {
                return aux_table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
              },
              true};
  return inst;
}

}  // namespace

TEST_CASE("pair terms reproduce the finite-four values at (4,3)") {
  auto fx = build_example("finite-four");
  auto terms = pair_terms(ContractionKind::bianchini_sf, fx.space, fx.map, fx.aux, 4.0, 3.0);
  CHECK(terms.lhs == 725.0);
  CHECK(terms.c_term == 4018.0);
  CHECK(terms.d_term == 0.0);
  CHECK(terms.rhs_aggregate == 4018.0);
  CHECK(terms.admissible);
  CHECK(terms.condition_i_ok);
}

TEST_CASE("under the identity map the two sides coincide, so every gap ties at 0") {
  auto fx = build_example("finite-four");
  SelfMap<double> id{"identity", [](double x) { return x; }};
  for (double x : fx.space.sample)
    for (double y : fx.space.sample) {
      auto terms = pair_terms(ContractionKind::sf, fx.space, id, fx.aux, x, y);
      CHECK(terms.lhs == terms.rhs_aggregate);
      if (x == y) CHECK_FALSE(terms.admissible);  // S(x,x) = x here
    }
  auto cert = certify_omega(ContractionKind::sf, fx.space, id, fx.aux, *fx.f);
  CHECK(cert.verdict == Verdict::refuted);  // omega must be strictly positive
  for (const auto& v : cert.violations) CHECK(v.score == 0.0);
}

TEST_CASE("a constant map with diagonal-identity S leaves no admissible pair") {
  auto fx = build_example("finite-four");
  SelfMap<double> to_three{"const-3", [](double) { return 3.0; }};
  auto aux = named_scalar_aux("min");
  for (double x : fx.space.sample)
    for (double y : fx.space.sample)
      CHECK_FALSE(pair_terms(ContractionKind::sf, fx.space, to_three, aux, x, y).admissible);
  auto cert = certify_omega(ContractionKind::sf, fx.space, to_three, aux, *fx.f);
  CHECK(cert.verdict == Verdict::vacuous);
  CHECK(cert.admissible_pairs == 0);
}

TEST_CASE("unit-interval pair terms match the closed-form case") {
  auto fx = build_example("unit-interval-sf");
  // interior pair: both sides reduce to (x+y)^2 scaled by 1/32 and 1/2
  auto terms = pair_terms(ContractionKind::sf, fx.space, fx.map, fx.aux, 0.2, 0.6);
  CHECK(terms.lhs == doctest::Approx(0.64 / 32.0).epsilon(1e-14));
  CHECK(terms.rhs_aggregate == doctest::Approx(0.64 / 2.0).epsilon(1e-14));
}

TEST_CASE("cube-sum gauge certificate: certified with gap 27 + ln(35/8)") {
  auto fx = build_example("cube-sum");
  auto cert = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f);
  CHECK(cert.verdict == Verdict::certified);
  CHECK(cert.value >= 27.0);
  // independent route: the binding pair is (xi_1, xi_3) with sides 8 and 35
  double oracle = (std::log(35.0) + 35.0) - (std::log(8.0) + 8.0);
  CHECK(cert.value == doctest::Approx(oracle).epsilon(1e-15));
  REQUIRE(cert.extremal_pair.has_value());
  CHECK(cert.extremal_pair->first == 1.0);
  CHECK(cert.extremal_pair->second == 36.0);
}

TEST_CASE("cube-sum ratio certificate: exact fraction, increasing in the horizon") {
  auto fx = build_example("cube-sum");
  auto cert = certify_beta(ContractionKind::sb, fx.space, fx.map, fx.aux);
  CHECK(cert.value == doctest::Approx(189224.0 / 216224.0).epsilon(1e-12));

  double prev = 0.0;
  for (std::size_t horizon : {10u, 20u, 30u}) {
    auto f = build_example("cube-sum", horizon);
    auto c = certify_beta(ContractionKind::sb, f.space, f.map, f.aux);
    CHECK(c.value > prev);
    prev = c.value;
  }
}

TEST_CASE("finite-four refutation: exact violating pairs and scores") {
  auto fx = build_example("finite-four");
  CertifyOptions opt;
  opt.keep_pairs = true;
  auto cert = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f, opt);
  CHECK(cert.verdict == Verdict::refuted);
  CHECK(cert.condition_i_failures == 0);

  std::vector<std::pair<double, double>> expected = {{1, 2}, {1, 3}, {2, 1}, {3, 1}};
  std::vector<std::pair<double, double>> found;
  for (const auto& v : cert.violations) found.emplace_back(v.x, v.y);
  std::sort(found.begin(), found.end());
  CHECK(found == expected);

  for (const auto& v : cert.violations) {
    if (v.x == 1.0 && v.y == 2.0) CHECK(v.score == 0.0);
    if (v.x == 1.0 && v.y == 3.0)
      CHECK(v.score == doctest::Approx(std::log(49.0) - std::log(725.0)).epsilon(1e-15));
  }
  for (const auto& rec : cert.pairs)
    if (rec.x == 4.0 && rec.y == 3.0)
      CHECK(rec.score == doctest::Approx(std::log(4018.0) - std::log(725.0)).epsilon(1e-15));
}

TEST_CASE("powers-of-three: kannan-style gauge certified, ratio refuted at the boundary") {
  auto fx = build_example("powers-of-three");
  auto omega = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f);
  CHECK(omega.verdict == Verdict::certified);
  CHECK(omega.value >= 0.5);
  double r = std::pow(3.0, 19.0);
  double oracle = (std::log(r) + r) - (std::log(r - 1.0) + (r - 1.0));
  CHECK(omega.value == doctest::Approx(oracle).epsilon(1e-12));

  auto beta = certify_beta(ContractionKind::sk, fx.space, fx.map, fx.aux);
  CHECK(beta.value == doctest::Approx((r - 1.0) / (2.0 * r)).epsilon(1e-12));
  CHECK(beta.threshold == 0.5);
  // ratio/threshold is within 1e-9 of 1, so the default margin refuses it
  CHECK(beta.verdict == Verdict::refuted);

  auto cond = check_condition_i(fx.kind, fx.space, fx.map, fx.aux);
  CHECK(cond.ok);
  CHECK(cond.checked_pairs > 0);
}

TEST_CASE("banach on the halving map certifies at ratio 1/2") {
  auto space = make_interval_space("unit", 0.0, 1.0, 0.05, named_scalar_metric("euclidean"), 1.0);
  SelfMap<double> half{"half", [](double x) { return x / 2.0; }};
  auto aux = named_scalar_aux("first");
  auto cert = certify_beta(ContractionKind::banach, space, half, aux);
  CHECK(cert.verdict == Verdict::certified);
  CHECK(cert.value == 0.5);
}

TEST_CASE("classical kannan keeps the beta/2 convention") {
  auto space = make_interval_space("unit", 0.0, 1.0, 0.05, named_scalar_metric("euclidean"), 1.0);
  SelfMap<double> half{"half", [](double x) { return x / 2.0; }};
  auto aux = named_scalar_aux("first");
  auto cert = certify_beta(ContractionKind::kannan, space, half, aux);
  // sup |x-y| / (x/2 + y/2) = 1 along the axis pairs, against threshold 1/2
  CHECK(cert.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cert.verdict == Verdict::refuted);
  REQUIRE_FALSE(cert.violations.empty());
  CHECK(cert.violations.back().reason == ViolationReason::ratio_at_least_threshold);
}

TEST_CASE("reich certificates respect the coefficient budget") {
  auto space = make_interval_space("unit", 0.0, 1.0, 0.1, named_scalar_metric("euclidean"), 1.0);
  SelfMap<double> half{"half", [](double x) { return x / 2.0; }};
  auto aux = named_scalar_aux("first");
  CertifyOptions opt;
  opt.reich = {0.2, 0.2, 0.5};
  auto cert = certify_beta(ContractionKind::reich, space, half, aux, opt);
  CHECK(cert.verdict == Verdict::certified);
  CHECK(cert.value < 1.0);

  opt.reich = {0.5, 0.5, 0.5};  // sum >= 1 cannot certify
  auto refused = certify_beta(ContractionKind::reich, space, half, aux, opt);
  CHECK(refused.verdict == Verdict::refuted);

  opt.reich = {-0.1, 0.5, 0.5};
  CHECK_THROWS_AS(certify_beta(ContractionKind::reich, space, half, aux, opt),
                  std::invalid_argument);
}

TEST_CASE("zero right side with positive left side refutes immediately") {
  std::vector<double> pts = {0.0, 1.0};
  std::vector<std::vector<double>> table = {{0, 2}, {2, 0}};
  auto space = make_finite_table_space("two", pts, table, 1.0);
  SelfMap<double> swap{"swap", [](double x) { return 1.0 - x; }};
  auto aux = named_scalar_aux("const", 0.0);
  auto cert = certify_omega(ContractionKind::sf, space, swap, aux, builtin_f("ln"));
  CHECK(cert.verdict == Verdict::refuted);
  bool has_zero_rhs = false;
  for (const auto& v : cert.violations)
    if (v.reason == ViolationReason::zero_rhs && v.x == 0.0 && v.y == 0.0) has_zero_rhs = true;
  CHECK(has_zero_rhs);
}

TEST_CASE("condition (i): vacuous without admissible pairs, violated by the identity map") {
  auto fx = build_example("finite-four");
  SelfMap<double> to_three{"const-3", [](double) { return 3.0; }};
  auto vac = check_condition_i(ContractionKind::bianchini_sf, fx.space, to_three,
                               named_scalar_aux("min"));
  CHECK(vac.ok);
  CHECK(vac.checked_pairs == 0);

  // identity keeps both self-displacement sums at zero while images differ,
  // which is exactly what clause (i) rules out
  SelfMap<double> id{"identity", [](double x) { return x; }};
  std::vector<std::pair<double, double>> bad;
  auto cond = check_condition_i(ContractionKind::bianchini_sf, fx.space, id, fx.aux, {}, &bad);
  CHECK_FALSE(cond.ok);
  CHECK_FALSE(bad.empty());
}

TEST_CASE("condition (i) holds for the bianchini-unit instance") {
  auto fx = build_example("bianchini-unit");
  auto cond = check_condition_i(ContractionKind::bianchini_sf, fx.space, fx.map, fx.aux);
  CHECK(cond.ok);
}

TEST_CASE("gauge-vs-ratio coherence: exp(-gap) equals the ratio under ln") {
  std::mt19937_64 rng(2026);
  auto f = builtin_f("ln");
  std::size_t informative = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_instance(rng);
    auto omega = certify_omega(ContractionKind::sf, inst.space, inst.map, inst.aux, f);
    auto beta = certify_beta(ContractionKind::sb, inst.space, inst.map, inst.aux);
    CHECK(omega.admissible_pairs == beta.admissible_pairs);
    if (omega.verdict == Verdict::vacuous) {
      CHECK(beta.verdict == Verdict::vacuous);
      continue;
    }
    ++informative;
    CHECK(std::exp(-omega.value) == doctest::Approx(beta.value).epsilon(1e-12));
  }
  CHECK(informative >= 150);
}

TEST_CASE("classical kinds equal the S-based kinds specialized at S(x,y) = x") {
  std::mt19937_64 rng(7);
  auto first = named_scalar_aux("first");
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = random_instance(rng);
    for (double x : inst.space.sample)
      for (double y : inst.space.sample) {
        auto sf = pair_terms(ContractionKind::sf, inst.space, inst.map, first, x, y);
        auto fw = pair_terms(ContractionKind::f_wardowski, inst.space, inst.map, inst.aux, x, y);
        CHECK(sf.lhs == fw.lhs);
        CHECK(sf.rhs_aggregate == fw.rhs_aggregate);

        auto sb = pair_terms(ContractionKind::sb, inst.space, inst.map, first, x, y);
        auto ba = pair_terms(ContractionKind::banach, inst.space, inst.map, inst.aux, x, y);
        CHECK(sb.lhs == ba.lhs);
        CHECK(sb.rhs_aggregate == ba.rhs_aggregate);
      }
  }
}

TEST_CASE("mean aggregation never exceeds max aggregation") {
  std::mt19937_64 rng(99);
  auto f = builtin_f("ln-plus-id");
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = random_instance(rng);
    for (double x : inst.space.sample)
      for (double y : inst.space.sample) {
        auto mean = pair_terms(ContractionKind::kannan_sf, inst.space, inst.map, inst.aux, x, y);
        auto maxed = pair_terms(ContractionKind::bianchini_sf, inst.space, inst.map, inst.aux, x, y);
        CHECK(mean.rhs_aggregate <= maxed.rhs_aggregate);
      }
    auto kannan = certify_omega(ContractionKind::kannan_sf, inst.space, inst.map, inst.aux, f);
    if (kannan.verdict == Verdict::certified) {
      auto bianchini =
          certify_omega(ContractionKind::bianchini_sf, inst.space, inst.map, inst.aux, f);
      CHECK(bianchini.verdict == Verdict::certified);
      CHECK(bianchini.value >= kannan.value - 1e-12);
    }
  }
}

TEST_CASE("certificates do not depend on the pair enumeration order") {
  auto fx = build_example("cube-sum", 12);
  auto baseline = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f);

  auto pairs = all_ordered_pairs(fx.space.sample.size());
  std::mt19937_64 rng(5);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  CertifyOptions opt;
  opt.pairs = pairs;
  auto shuffled = certify_omega(fx.kind, fx.space, fx.map, fx.aux, *fx.f, opt);

  CHECK(baseline.value == shuffled.value);  // bit-identical reduction
  CHECK(baseline.verdict == shuffled.verdict);
  CHECK(baseline.admissible_pairs == shuffled.admissible_pairs);
}

TEST_CASE("kind names round-trip") {
  for (auto kind : {ContractionKind::banach, ContractionKind::kannan, ContractionKind::reich,
                    ContractionKind::bianchini_classic, ContractionKind::f_wardowski,
                    ContractionKind::kannan_f, ContractionKind::sb, ContractionKind::sk,
                    ContractionKind::sf, ContractionKind::kannan_sf,
                    ContractionKind::bianchini_sf})
    CHECK(contraction_kind_from_name(contraction_kind_name(kind)) == kind);
  CHECK_THROWS_AS(contraction_kind_from_name("banachh"), std::invalid_argument);
}
