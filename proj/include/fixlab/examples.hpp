#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fixlab/contraction.hpp"
#include "fixlab/f_function.hpp"
#include "fixlab/picard.hpp"
#include "fixlab/space.hpp"

namespace fixlab {

/// The six canonical worked instances shipped with the tool, runnable as
/// fixtures with recorded expected outcomes:
///   cube-sum          xi_n = (n(n+1)/2)^2, |.|, S == 1, T shift-down
///   unit-interval-sf  [0,1] with the product metric, T = x/4 (1 -> 1/8),
///                     S = mean, F = -1/sqrt(t)
///   powers-of-three   xi_1 = 1, xi_n = 3^n, |.|, S = max, T shift-down
///   bianchini-unit    [0,1] euclidean, T -> 0.95 on [0,1), 1 -> 0.7, S = min
///   finite-four       {1,2,3,4} with the squared/cubed distance table
///   intro-supermetric the [0,inf) sum-ratio metric (space only)
struct ExampleFixture {
  std::string id;
  ScalarSpace space;
  SelfMap<double> map;
  AuxiliaryMap<double> aux;
  std::optional<FFunction> f;
  ContractionKind kind = ContractionKind::sf;
  std::size_t horizon = 0;       // sequence fixtures: sample size
  double grid_step = 0.0;        // interval fixtures
  double expected_value = 0.0;   // certificate constant claimed for the fixture
  Verdict expected_verdict = Verdict::certified;
  std::string note;              // known discrepancies, conventions
};

const std::vector<std::string>& example_ids();

/// Builds a fixture with the distance definitions exactly as recorded.
/// `horizon` overrides the default truncation for the sequence fixtures
/// (cube-sum: 30, powers-of-three: 20); `step` overrides the grid step for
/// the interval fixtures (unit-interval-sf: 5e-4, bianchini-unit: 0.01).
ExampleFixture build_example(const std::string& id, std::size_t horizon = 0, double step = 0.0);

enum class RowStatus { pass, fail, discrepancy };

std::string row_status_name(RowStatus s);

struct ExampleRow {
  std::string id;
  std::string check;            // what was evaluated
  double computed = 0.0;
  double expected = 0.0;
  RowStatus status = RowStatus::fail;
  std::string detail;
};

struct RunAllTolerances {
  double value_rel = 1e-9;   // certificate value vs expected constant
  double picard_tol = 1e-12; // orbit settling tolerance
};

/// Runs every fixture (or one, when `only_id` is set) and reports one row
/// per recorded claim. A documented discrepancy (the finite-four violating
/// pairs) is an expected row status, not a tool failure.
std::vector<ExampleRow> run_all(const RunAllTolerances& tol = {},
                                const std::string& only_id = "",
                                std::size_t horizon_override = 0);

}  // namespace fixlab
