#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fixlab/f_function.hpp"
#include "fixlab/space.hpp"

namespace fixlab {

template <class P>
struct SelfMap {
  std::string name;
  std::function<P(const P&)> apply;
};

/// The two-argument auxiliary map S : W x W -> W inserted into distance
/// expressions. S(x,y) = x recovers the classical contractions.
template <class P>
struct AuxiliaryMap {
  std::string name;
  std::function<P(const P&, const P&)> apply;
  bool diagonal_identity = false;  // S(x,x) = x holds for all sampled x
};

enum class ContractionKind {
  banach,
  kannan,
  reich,
  bianchini_classic,
  f_wardowski,
  kannan_f,
  sb,
  sk,
  sf,
  kannan_sf,
  bianchini_sf,
};

ContractionKind contraction_kind_from_name(const std::string& name);
std::string contraction_kind_name(ContractionKind kind);

// Gauge-based kinds are certified by the infimum gap omega; ratio-based
// kinds by the supremum ratio beta.
inline bool is_omega_kind(ContractionKind k) {
  return k == ContractionKind::sf || k == ContractionKind::kannan_sf ||
         k == ContractionKind::bianchini_sf || k == ContractionKind::f_wardowski ||
         k == ContractionKind::kannan_f;
}
inline bool uses_condition_i(ContractionKind k) {
  return k == ContractionKind::kannan_sf || k == ContractionKind::bianchini_sf;
}
// Kannan-style definitions carry the beta/2 convention: the reported ratio
// lhs/(C+D) certifies only below 1/2.
inline double beta_threshold(ContractionKind k) {
  return (k == ContractionKind::kannan || k == ContractionKind::sk) ? 0.5 : 1.0;
}

struct ReichCoefficients {
  double a = 0.0, b = 0.0, c = 0.0;
  double sum() const { return a + b + c; }
};

/// Left and right sides of the kind's inequality at one ordered pair.
/// `admissible` means lhs > 0 (the inequality is only required there).
struct PairTerms {
  double lhs = 0.0;
  double rhs_aggregate = 0.0;
  bool admissible = false;
  bool condition_i_ok = true;  // Kannan/Bianchini S^F clause (i) at this pair
  double c_term = 0.0;         // d(x,S(x,Tx)) + d(Tx,S(x,Tx)), where used
  double d_term = 0.0;         // d(y,S(y,Ty)) + d(Ty,S(y,Ty)), where used
};

namespace detail {

template <class P>
double self_displacement(const Space<P>& space, const SelfMap<P>& T, const AuxiliaryMap<P>& S,
                         const P& u) {
  P tu = T.apply(u);
  P su = S.apply(u, tu);
  return distance(space, u, su) + distance(space, tu, su);
}

}  // namespace detail

template <class P>
PairTerms pair_terms(ContractionKind kind, const Space<P>& space, const SelfMap<P>& T,
                     const AuxiliaryMap<P>& S, const P& x, const P& y,
                     const ReichCoefficients& reich = {}) {
  // Classical kinds are the S-based ones specialized at S(u,v) = u.
  static const AuxiliaryMap<P> first{"first", [](const P& a, const P&) { return a; }, true};
  const AuxiliaryMap<P>& aux = [&]() -> const AuxiliaryMap<P>& {
    switch (kind) {
      case ContractionKind::banach:
      case ContractionKind::kannan:
      case ContractionKind::reich:
      case ContractionKind::bianchini_classic:
      case ContractionKind::f_wardowski:
      case ContractionKind::kannan_f:
        return first;
      default:
        return S;
    }
  }();

  PairTerms terms;
  P tx = T.apply(x);
  P ty = T.apply(y);
  P sxy_t = aux.apply(tx, ty);
  terms.lhs = distance(space, tx, sxy_t) + distance(space, ty, sxy_t);
  terms.admissible = terms.lhs > 0.0;

  switch (kind) {
    case ContractionKind::banach:
    case ContractionKind::sb:
    case ContractionKind::sf:
    case ContractionKind::f_wardowski: {
      P sxy = aux.apply(x, y);
      terms.rhs_aggregate = distance(space, x, sxy) + distance(space, y, sxy);
      break;
    }
    case ContractionKind::kannan:
    case ContractionKind::sk:
    case ContractionKind::kannan_sf:
    case ContractionKind::bianchini_classic:
    case ContractionKind::kannan_f:
    case ContractionKind::bianchini_sf: {
      terms.c_term = detail::self_displacement(space, T, aux, x);
      terms.d_term = detail::self_displacement(space, T, aux, y);
      if (kind == ContractionKind::bianchini_sf || kind == ContractionKind::bianchini_classic)
        terms.rhs_aggregate = std::max(terms.c_term, terms.d_term);
      else if (kind == ContractionKind::kannan || kind == ContractionKind::sk)
        terms.rhs_aggregate = terms.c_term + terms.d_term;  // beta/2 convention
      else
        terms.rhs_aggregate = (terms.c_term + terms.d_term) / 2.0;
      if (uses_condition_i(kind))
        terms.condition_i_ok =
            !terms.admissible || terms.c_term != 0.0 || terms.d_term != 0.0;
      break;
    }
    case ContractionKind::reich: {
      terms.rhs_aggregate = reich.a * detail::self_displacement(space, T, aux, x) +
                            reich.b * detail::self_displacement(space, T, aux, y) +
                            reich.c * distance(space, x, y);
      break;
    }
  }
  return terms;
}

enum class CertificateMode { omega_gap, beta_ratio };
enum class Verdict { certified, refuted, vacuous };

std::string verdict_name(Verdict v);

enum class ViolationReason { nonpositive_gap, zero_rhs, condition_i, ratio_at_least_threshold };

std::string violation_reason_name(ViolationReason r);

template <class P>
struct PairRecord {
  std::size_t i = 0, j = 0;
  P x, y;
  PairTerms terms;
  double score = std::numeric_limits<double>::quiet_NaN();  // gap or ratio
};

template <class P>
struct Violation {
  P x, y;
  double lhs = 0.0, rhs = 0.0;
  double score = std::numeric_limits<double>::quiet_NaN();
  ViolationReason reason = ViolationReason::nonpositive_gap;
};

/// Certificate for one (space, T, S[, F]) instance over one finite pair
/// enumeration. `value` is the infimum gap F(rhs) - F(lhs) in omega mode and
/// the supremum ratio lhs/rhs in beta mode. `truncation` records the finite
/// enumeration the extremum was taken over, so the result is reproducible.
template <class P>
struct ContractionCertificate {
  ContractionKind kind{};
  CertificateMode mode{};
  Verdict verdict = Verdict::vacuous;
  double value = std::numeric_limits<double>::quiet_NaN();
  double threshold = 1.0;  // beta mode: certification compares value/threshold to 1
  std::size_t admissible_pairs = 0;
  std::size_t enumerated_pairs = 0;
  std::size_t condition_i_failures = 0;
  std::optional<std::pair<P, P>> extremal_pair;
  std::vector<Violation<P>> violations;
  std::string truncation;
  std::vector<PairRecord<P>> pairs;  // filled only when requested

  bool certified() const { return verdict == Verdict::certified; }
};

using PairIndexList = std::vector<std::pair<std::size_t, std::size_t>>;

// All n^2 ordered pairs in canonical (i, j) order. The definitions are not
// symmetric in (x, y) for the Kannan/Bianchini kinds, so both orders count.
PairIndexList all_ordered_pairs(std::size_t n);

struct CertifyOptions {
  double margin = 1e-9;       // beta mode: certified iff value/threshold < 1 - margin
  bool keep_pairs = false;
  ReichCoefficients reich{};  // reich kind only
  std::optional<PairIndexList> pairs;  // defaults to all ordered sample pairs
};

namespace detail {

template <class P>
PairIndexList enumeration(const Space<P>& space, const CertifyOptions& opt) {
  if (opt.pairs) {
    for (auto [i, j] : *opt.pairs)
      if (i >= space.sample.size() || j >= space.sample.size())
        throw std::invalid_argument("pair enumeration index out of range");
    return *opt.pairs;
  }
  return all_ordered_pairs(space.sample.size());
}

inline std::string truncation_label(std::size_t sample_size, std::size_t pair_count) {
  return "sample=" + std::to_string(sample_size) + ";ordered-pairs=" + std::to_string(pair_count);
}

}  // namespace detail

/// Searches the infimum of F(rhs) - F(lhs) over admissible pairs. Pairs with
/// rhs = 0 but lhs > 0 refute immediately (F is undefined at 0, so no omega
/// exists), and a zero gap refutes because omega must be strictly positive.
/// The reduction scans pairs in the canonical enumeration order, so the
/// certificate does not depend on how the caller produced the pair list.
template <class P>
ContractionCertificate<P> certify_omega(ContractionKind kind, const Space<P>& space,
                                        const SelfMap<P>& T, const AuxiliaryMap<P>& S,
                                        const FFunction& F, const CertifyOptions& opt = {}) {
  if (!is_omega_kind(kind))
    throw std::invalid_argument("certify_omega: " + contraction_kind_name(kind) +
                                " is a ratio kind; use certify_beta");
  ContractionCertificate<P> cert;
  cert.kind = kind;
  cert.mode = CertificateMode::omega_gap;
  auto pairs = detail::enumeration(space, opt);
  cert.enumerated_pairs = pairs.size();
  cert.truncation = detail::truncation_label(space.sample.size(), pairs.size());

  bool have_value = false;
  for (auto [i, j] : pairs) {
    const P& x = space.sample[i];
    const P& y = space.sample[j];
    PairTerms terms = pair_terms(kind, space, T, S, x, y);
    double score = std::numeric_limits<double>::quiet_NaN();
    if (terms.admissible) {
      ++cert.admissible_pairs;
      if (!terms.condition_i_ok) {
        ++cert.condition_i_failures;
        cert.violations.push_back({x, y, terms.lhs, terms.rhs_aggregate, score,
                                   ViolationReason::condition_i});
      }
      if (terms.rhs_aggregate == 0.0) {
        cert.violations.push_back({x, y, terms.lhs, terms.rhs_aggregate, score,
                                   ViolationReason::zero_rhs});
      } else {
        score = F.eval(terms.rhs_aggregate) - F.eval(terms.lhs);
        check_finite(score, "certificate gap");
        if (score <= 0.0)
          cert.violations.push_back({x, y, terms.lhs, terms.rhs_aggregate, score,
                                     ViolationReason::nonpositive_gap});
        if (!have_value || score < cert.value) {
          cert.value = score;
          cert.extremal_pair = std::make_pair(x, y);
          have_value = true;
        }
      }
    }
    if (opt.keep_pairs) cert.pairs.push_back({i, j, x, y, terms, score});
  }

  if (cert.admissible_pairs == 0)
    cert.verdict = Verdict::vacuous;
  else
    cert.verdict = cert.violations.empty() ? Verdict::certified : Verdict::refuted;
  return cert;
}

/// Searches the supremum of lhs/rhs over admissible pairs and certifies when
/// it stays below the kind's threshold by at least `margin` (relative).
template <class P>
ContractionCertificate<P> certify_beta(ContractionKind kind, const Space<P>& space,
                                       const SelfMap<P>& T, const AuxiliaryMap<P>& S,
                                       const CertifyOptions& opt = {}) {
  if (is_omega_kind(kind))
    throw std::invalid_argument("certify_beta: " + contraction_kind_name(kind) +
                                " is a gauge kind; use certify_omega");
  if (kind == ContractionKind::reich &&
      (opt.reich.a < 0.0 || opt.reich.b < 0.0 || opt.reich.c < 0.0))
    throw std::invalid_argument("reich coefficients must be nonnegative");
  ContractionCertificate<P> cert;
  cert.kind = kind;
  cert.mode = CertificateMode::beta_ratio;
  cert.threshold = beta_threshold(kind);
  auto pairs = detail::enumeration(space, opt);
  cert.enumerated_pairs = pairs.size();
  cert.truncation = detail::truncation_label(space.sample.size(), pairs.size());

  bool have_value = false;
  for (auto [i, j] : pairs) {
    const P& x = space.sample[i];
    const P& y = space.sample[j];
    PairTerms terms = pair_terms(kind, space, T, S, x, y, opt.reich);
    double score = std::numeric_limits<double>::quiet_NaN();
    if (terms.admissible) {
      ++cert.admissible_pairs;
      if (terms.rhs_aggregate == 0.0) {
        cert.violations.push_back({x, y, terms.lhs, terms.rhs_aggregate, score,
                                   ViolationReason::zero_rhs});
      } else {
        score = terms.lhs / terms.rhs_aggregate;
        check_finite(score, "certificate ratio");
        if (!have_value || score > cert.value) {
          cert.value = score;
          cert.extremal_pair = std::make_pair(x, y);
          have_value = true;
        }
      }
    }
    if (opt.keep_pairs) cert.pairs.push_back({i, j, x, y, terms, score});
  }

  if (cert.admissible_pairs == 0) {
    cert.verdict = Verdict::vacuous;
    return cert;
  }
  bool below = have_value && cert.value / cert.threshold < 1.0 - opt.margin;
  if (kind == ContractionKind::reich && opt.reich.sum() >= 1.0) below = false;
  cert.verdict = (cert.violations.empty() && below) ? Verdict::certified : Verdict::refuted;
  if (!below && have_value && cert.extremal_pair) {
    cert.violations.push_back({cert.extremal_pair->first, cert.extremal_pair->second, 0.0, 0.0,
                               cert.value, ViolationReason::ratio_at_least_threshold});
  }
  return cert;
}

struct ConditionIResult {
  bool ok = true;
  std::size_t checked_pairs = 0;
};

/// Clause (i) of the Kannan/Bianchini S^F definitions: whenever the pair is
/// admissible, at least one of the two self-displacement sums is nonzero.
template <class P>
ConditionIResult check_condition_i(ContractionKind kind, const Space<P>& space,
                                   const SelfMap<P>& T, const AuxiliaryMap<P>& S,
                                   const std::optional<PairIndexList>& pair_list = {},
                                   std::vector<std::pair<P, P>>* counterexamples = nullptr) {
  if (!uses_condition_i(kind))
    throw std::invalid_argument("condition (i) applies to the Kannan/Bianchini S^F kinds only");
  CertifyOptions opt;
  opt.pairs = pair_list;
  auto pairs = detail::enumeration(space, opt);
  ConditionIResult result;
  for (auto [i, j] : pairs) {
    PairTerms terms = pair_terms(kind, space, T, S, space.sample[i], space.sample[j]);
    if (!terms.admissible) continue;
    ++result.checked_pairs;
    if (!terms.condition_i_ok) {
      result.ok = false;
      if (counterexamples)
        counterexamples->emplace_back(space.sample[i], space.sample[j]);
    }
  }
  return result;
}

// --- scalar auxiliary-map registry ------------------------------------------

/// Named auxiliary maps loadable from config:
///   first          S(x,y) = x
///   second         S(x,y) = y
///   mean           S(x,y) = (x+y)/2
///   min, max       componentwise choice
///   const          S == value                         (param value)
///   distinct-const S(x,y) = value if x != y, else x   (param value)
///   shift-second   S(x,y) = y + a                     (param a > 0)
AuxiliaryMap<double> named_scalar_aux(const std::string& name, double param = 0.0);

}  // namespace fixlab
