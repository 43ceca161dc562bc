#include "fixlab/picard.hpp"

namespace fixlab {

std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::exact_fixed_point: return "exact-fixed-point";
    case StopReason::tolerance: return "tolerance";
    case StopReason::max_iterations: return "max-iterations";
  }
  return "?";
}

std::string picard_verdict_name(PicardVerdict v) {
  switch (v) {
    case PicardVerdict::converged: return "converged";
    case PicardVerdict::not_converged: return "not-converged";
    case PicardVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace fixlab
