#include "fixlab/f_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fixlab/errors.hpp"

namespace fixlab {

double FFunction::eval(double t) const {
  if (!(t > 0.0)) throw std::domain_error("F is defined on (0, inf) only");
  double v = fn(t);
  if (std::isnan(v)) throw NumericError("F(" + std::to_string(t) + ") is NaN");
  return v;
}

FFunction builtin_f(const std::string& name) {
  if (name == "ln")
    return {"ln", [](double t) { return std::log(t); }, 0.5};
  if (name == "ln-plus-id")
    return {"ln-plus-id", [](double t) { return std::log(t) + t; }, 0.5};
  if (name == "neg-inv-sqrt")
    return {"neg-inv-sqrt", [](double t) { return -1.0 / std::sqrt(t); }, 0.75};
  throw std::invalid_argument("unknown F function: " + name);
}

const std::vector<std::string>& builtin_f_names() {
  static const std::vector<std::string> names = {"ln", "ln-plus-id", "neg-inv-sqrt"};
  return names;
}

FFunction make_term_f(std::string name, std::vector<FTerm> terms, double k) {
  if (terms.empty()) throw std::invalid_argument("custom F needs at least one term");
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("W3 exponent must lie in (0,1)");
  auto fn = [terms = std::move(terms)](double t) {
    double v = 0.0;
    for (const auto& term : terms) {
      switch (term.kind) {
        case FTerm::Kind::log: v += term.c * std::log(t); break;
        case FTerm::Kind::linear: v += term.c * t; break;
        case FTerm::Kind::power: v += term.c * std::pow(t, term.q); break;
      }
    }
    return v;
  };
  return {std::move(name), std::move(fn), k};
}

W1Result check_w1(const FFunction& f, const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("check_w1: grid needs >= 2 entries");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !(grid[i + 1] > grid[i]))
      throw std::invalid_argument("check_w1: grid must be positive and strictly increasing");
    if (!(f.eval(grid[i]) < f.eval(grid[i + 1])))
      return {false, std::make_pair(grid[i], grid[i + 1])};
  }
  return {true, {}};
}

bool check_w2(const FFunction& f, const std::vector<double>& lam, double floor,
              double lam_tol, std::size_t window) {
  if (lam.empty()) throw std::invalid_argument("check_w2: empty sequence");
  std::size_t k = window < lam.size() ? window : lam.size();
  double lam_tail = 0.0, f_tail = -1e308;
  for (std::size_t i = lam.size() - k; i < lam.size(); ++i) {
    lam_tail = std::max(lam_tail, lam[i]);
    f_tail = std::max(f_tail, f.eval(lam[i]));
  }
  bool lam_small = lam_tail < lam_tol;
  bool f_low = f_tail < floor;
  return lam_small == f_low;
}

bool check_w3(const FFunction& f, const std::vector<double>& grid_near_zero, double tol) {
  if (grid_near_zero.size() < 2)
    throw std::invalid_argument("check_w3: grid needs >= 2 entries");
  std::vector<double> g(grid_near_zero.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double t = grid_near_zero[i];
    if (!(t > 0.0)) throw std::invalid_argument("check_w3: grid must be positive");
    if (i > 0 && !(t < grid_near_zero[i - 1]))
      throw std::invalid_argument("check_w3: grid must decrease toward zero");
    g[i] = std::abs(std::pow(t, f.w3_exponent) * f.eval(t));
  }
  if (!(g.back() < tol)) return false;
  for (std::size_t i = g.size() / 2; i + 1 < g.size(); ++i)
    if (g[i + 1] > g[i]) return false;
  return true;
}

namespace {

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(n - 1));
  double v = lo;
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = v;
    v *= ratio;
  }
  grid.back() = hi;
  return grid;
}

}  // namespace

std::vector<double> default_w1_grid() { return geometric_grid(1e-6, 1e2, 64); }

std::vector<double> default_w2_sequence() {
  std::vector<double> lam(48);
  double v = 1.0;
  for (auto& x : lam) {
    v *= 0.5;
    x = v;
  }
  return lam;
}

std::vector<double> default_w3_grid() {
  auto grid = geometric_grid(1e-12, 1.0, 64);
  std::reverse(grid.begin(), grid.end());
  return grid;
}

FCheckReport check_all(const FFunction& f) {
  FCheckReport report;
  report.w1_ok = check_w1(f, default_w1_grid()).ok;
  report.w2_ok = check_w2(f, default_w2_sequence(), kDefaultW2Floor);
  report.w3_ok = check_w3(f, default_w3_grid(), kDefaultW3Tol);
  return report;
}

std::optional<double> suggest_w3_exponent(const FFunction& f, double tol) {
  FFunction probe = f;
  for (int i = 1; i <= 19; ++i) {
    probe.w3_exponent = 0.05 * i;
    if (check_w3(probe, default_w3_grid(), tol)) return probe.w3_exponent;
  }
  return std::nullopt;
}

}  // namespace fixlab
