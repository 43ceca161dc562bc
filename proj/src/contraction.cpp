#include "fixlab/contraction.hpp"

#include <algorithm>

namespace fixlab {

ContractionKind contraction_kind_from_name(const std::string& name) {
  if (name == "banach") return ContractionKind::banach;
  if (name == "kannan") return ContractionKind::kannan;
  if (name == "reich") return ContractionKind::reich;
  if (name == "bianchini") return ContractionKind::bianchini_classic;
  if (name == "f") return ContractionKind::f_wardowski;
  if (name == "kannan-f") return ContractionKind::kannan_f;
  if (name == "sb") return ContractionKind::sb;
  if (name == "sk") return ContractionKind::sk;
  if (name == "sf") return ContractionKind::sf;
  if (name == "kannan-sf") return ContractionKind::kannan_sf;
  if (name == "bianchini-sf") return ContractionKind::bianchini_sf;
  throw std::invalid_argument("unknown contraction kind: " + name);
}

std::string contraction_kind_name(ContractionKind kind) {
  switch (kind) {
    case ContractionKind::banach: return "banach";
    case ContractionKind::kannan: return "kannan";
    case ContractionKind::reich: return "reich";
    case ContractionKind::bianchini_classic: return "bianchini";
    case ContractionKind::f_wardowski: return "f";
    case ContractionKind::kannan_f: return "kannan-f";
    case ContractionKind::sb: return "sb";
    case ContractionKind::sk: return "sk";
    case ContractionKind::sf: return "sf";
    case ContractionKind::kannan_sf: return "kannan-sf";
    case ContractionKind::bianchini_sf: return "bianchini-sf";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::vacuous: return "vacuous";
  }
  return "?";
}

std::string violation_reason_name(ViolationReason r) {
  switch (r) {
    case ViolationReason::nonpositive_gap: return "nonpositive-gap";
    case ViolationReason::zero_rhs: return "zero-rhs";
    case ViolationReason::condition_i: return "condition-i";
    case ViolationReason::ratio_at_least_threshold: return "ratio-at-threshold";
  }
  return "?";
}

PairIndexList all_ordered_pairs(std::size_t n) {
  PairIndexList pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

AuxiliaryMap<double> named_scalar_aux(const std::string& name, double param) {
  if (name == "first")
    return {"first", [](double x, double) { return x; }, true};
  if (name == "second")
    return {"second", [](double, double y) { return y; }, true};
  if (name == "mean")
    return {"mean", [](double x, double y) { return (x + y) / 2.0; }, true};
  if (name == "min")
    return {"min", [](double x, double y) { return std::min(x, y); }, true};
  if (name == "max")
    return {"max", [](double x, double y) { return std::max(x, y); }, true};
  if (name == "const")
    return {"const", [param](double, double) { return param; }, false};
  if (name == "distinct-const")
    return {"distinct-const",
            [param](double x, double y) { return x == y ? x : param; }, true};
  if (name == "shift-second") {
    if (!(param > 0.0)) throw std::invalid_argument("shift-second requires a > 0");
    return {"shift-second", [param](double, double y) { return y + param; }, false};
  }
  throw std::invalid_argument("unknown auxiliary map: " + name);
}

}  // namespace fixlab
