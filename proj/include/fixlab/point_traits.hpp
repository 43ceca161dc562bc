#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace fixlab {

// Point equality is exact: bitwise on scalars, elementwise on grid functions.
// Epsilon comparisons would corrupt the "dist = 0 iff equal" axiom.
template <class P>
struct PointTraits;

template <>
struct PointTraits<double> {
  static bool equal(double a, double b) { return a == b; }
  static std::string repr(double a) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
  }
};

template <>
struct PointTraits<std::vector<double>> {
  static bool equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a == b;
  }
  static std::string repr(const std::vector<double>& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) out += ",";
      out += PointTraits<double>::repr(a[i]);
    }
    out += "]";
    return out;
  }
};

}  // namespace fixlab
