#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fixlab {

/// A Wardowski-class gauge function F : (0, inf) -> R together with the
/// exponent k in (0,1) that witnesses condition W3. The three conditions:
///   W1  strictly increasing
///   W2  lambda_n -> 0  iff  F(lambda_n) -> -inf
///   W3  t^k * F(t) -> 0 as t -> 0+
/// are limit statements; the checks below verify them on finite grids and
/// report "supported at horizon", never "proved".
struct FFunction {
  std::string name;
  std::function<double(double)> fn;
  double w3_exponent = 0.5;

  double eval(double t) const;
};

// Built-ins addressable by name in config files: "ln" (k = 1/2),
// "ln-plus-id" (k = 1/2), "neg-inv-sqrt" (k = 3/4).
FFunction builtin_f(const std::string& name);
const std::vector<std::string>& builtin_f_names();

/// Custom F as a sum of c*ln(t), c*t and c*t^q terms.
struct FTerm {
  enum class Kind { log, linear, power } kind;
  double c = 1.0;
  double q = 1.0;  // power terms only
};
FFunction make_term_f(std::string name, std::vector<FTerm> terms, double k);

struct W1Result {
  bool ok = true;
  std::optional<std::pair<double, double>> violation;  // first non-increasing step
};

// Strict monotonicity across consecutive grid entries.
W1Result check_w1(const FFunction& f, const std::vector<double>& grid);

// Bidirectional proxy of W2 on a positive sequence: the tail of lam sits
// below lam_tol exactly when the tail of F(lam) sits below `floor`.
bool check_w2(const FFunction& f, const std::vector<double>& lam, double floor,
              double lam_tol = 1e-9, std::size_t window = 8);

// W3 proxy along a grid decreasing toward 0: |t^k F(t)| must fall below tol
// at the smallest entries and be non-increasing over the final half of the
// grid.
bool check_w3(const FFunction& f, const std::vector<double>& grid_near_zero, double tol);

// Default grids for the three checks.
std::vector<double> default_w1_grid();       // 64 points, geometric, 1e-6 .. 1e2
std::vector<double> default_w2_sequence();   // lam_n = 2^-n, n = 1..48
std::vector<double> default_w3_grid();       // 64 points, geometric, 1 .. 1e-12

inline constexpr double kDefaultW2Floor = -20.0;
inline constexpr double kDefaultW3Tol = 0.01;

struct FCheckReport {
  bool w1_ok = false;
  bool w2_ok = false;
  bool w3_ok = false;
  bool all_ok() const { return w1_ok && w2_ok && w3_ok; }
};

FCheckReport check_all(const FFunction& f);

// Scans k over {0.05, 0.10, ..., 0.95} and returns the first exponent that
// supports W3 on the default grid, if any.
std::optional<double> suggest_w3_exponent(const FFunction& f, double tol = kDefaultW3Tol);

}  // namespace fixlab
