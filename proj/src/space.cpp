#include "fixlab/space.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fixlab {

std::function<double(double, double)> named_scalar_metric(const std::string& name, double p) {
  if (name == "euclidean") {
    return [](double x, double y) { return std::abs(x - y); };
  }
  if (name == "abs-power") {
    if (p < 1.0) throw std::invalid_argument("abs-power metric requires p >= 1");
    return [p](double x, double y) { return std::pow(std::abs(x - y), p); };
  }
  if (name == "product-unit") {
    return [](double x, double y) {
      if (x == y) return 0.0;
      // the x = 1 branch wins over x = 0 so that d(1, 0) = 1
      if (x == 1.0) return 1.0 - y / 2.0;
      if (y == 1.0) return 1.0 - x / 2.0;
      if (x == 0.0) return y;
      if (y == 0.0) return x;
      return x * y;
    };
  }
  if (name == "sum-ratio") {
    return [](double x, double y) {
      if (x == y) return 0.0;
      if (x == 0.0 || y == 0.0) return std::max(x, y) / 2.0;
      double sum = x + y;  // evaluate once so the value is symmetric in x, y
      return sum / (1.0 + sum);
    };
  }
  throw std::invalid_argument("unknown metric name: " + name);
}

ScalarSpace make_finite_points_space(std::string name, std::vector<double> points,
                                     std::function<double(double, double)> metric, double s) {
  if (s < 1.0) throw std::invalid_argument("space coefficient s must be >= 1");
  ScalarSpace space;
  space.name = std::move(name);
  space.s = s;
  space.sample = std::move(points);
  space.metric = std::move(metric);
  return space;
}

ScalarSpace make_finite_table_space(std::string name, std::vector<double> points,
                                    const std::vector<std::vector<double>>& table, double s) {
  std::size_t n = points.size();
  if (table.size() != n)
    throw std::invalid_argument("distance table size does not match point count");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw std::invalid_argument("distance table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] < 0.0 || !std::isfinite(table[i][j]))
        throw std::invalid_argument("distance table entries must be finite and nonnegative");
      if (table[i][j] != table[j][i])
        throw std::invalid_argument("asymmetric distance table rejected");
    }
  }
  auto pts = points;
  auto tbl = table;
  auto metric = [pts, tbl](double x, double y) {
    auto index_of = [&pts](double v) -> std::size_t {
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i] == v) return i;
      throw std::invalid_argument("point not in finite space");
    };
    return tbl[index_of(x)][index_of(y)];
  };
  return make_finite_points_space(std::move(name), std::move(points), metric, s);
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0))
    throw std::invalid_argument("uniform_grid: need hi > lo and step > 0");
  auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
  if (n < 1) n = 1;
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    grid[i] = lo + (static_cast<double>(i) * (hi - lo)) / static_cast<double>(n);
  return grid;
}

ScalarSpace make_interval_space(std::string name, double lo, double hi, double step,
                                std::function<double(double, double)> metric, double s) {
  if (s < 1.0) throw std::invalid_argument("space coefficient s must be >= 1");
  ScalarSpace space;
  space.name = std::move(name);
  space.s = s;
  space.sample = uniform_grid(lo, hi, step);
  space.metric = std::move(metric);
  space.member = [lo, hi](double x) { return x >= lo && x <= hi; };
  return space;
}

FunctionSpace make_function_space(std::string name, std::size_t grid_size, double p) {
  if (p < 1.0) throw std::invalid_argument("function space requires p >= 1");
  if (grid_size == 0) throw std::invalid_argument("function space requires a nonempty grid");
  FunctionSpace space;
  space.name = std::move(name);
  space.s = std::pow(2.0, p - 1.0);
  space.metric = [p](const std::vector<double>& f, const std::vector<double>& g) {
    if (f.size() != g.size())
      throw std::invalid_argument("function metric: grid size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      m = std::max(m, std::abs(f[i] - g[i]));
    return std::pow(m, p);
  };
  space.member = [grid_size](const std::vector<double>& f) { return f.size() == grid_size; };
  return space;
}

}  // namespace fixlab
