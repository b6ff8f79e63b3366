#pragma once

// Verifiers for the inequalities satisfied by class members: coefficient
// bounds, distortion bounds, the convolution non-vanishing property and the
// partial-sum ratio bounds.

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "merokit/membership.hpp"
#include "merokit/operator.hpp"
#include "merokit/report.hpp"
#include "merokit/series.hpp"

namespace merokit {

// ---------------------------------------------------------------------------
// Coefficient bounds
// ---------------------------------------------------------------------------

/// |a_n| <= 2 p beta (1 - alpha) / ((n + p) Phi_n), stated for n >= 3 - p only.
inline double coeff_bound_general(const OperatorParams& op, const ClassParams& cp, int n) {
  op.validate();
  cp.validate();
  if (n < 3 - op.p) throw std::domain_error("coeff_bound_general: bound is only stated for n >= 3 - p");
  return criterion_rhs(op, cp) / ((n + op.p) * phi(op, n));
}

/// The bound above comes from comparing squared coefficient sums; the
/// comparison needs beta |k + (2 alpha - 1) p| <= k + p for every k >= 1 - p,
/// which reduces to beta (2 p (1 - alpha) - 1) <= 1. Without it the bound can
/// fail for genuine members (p = 3, alpha = 0.46, beta = 1 is an example).
inline bool general_bound_premise(const OperatorParams& op, const ClassParams& cp) {
  return cp.beta * (2.0 * op.p * (1.0 - cp.alpha) - 1.0) <= 1.0 + 1e-15;
}

namespace detail {

inline std::string general_premise_warning(const OperatorParams& op, const ClassParams& cp) {
  std::ostringstream os;
  os.precision(17);
  os << "bound-premise: beta (2p(1-alpha) - 1) = " << cp.beta * (2.0 * op.p * (1.0 - cp.alpha) - 1.0)
     << " > 1; the general-class bound is not established";
  return os.str();
}

// A violated bound whose premise is missing says nothing about f.
inline void apply_general_premise(const OperatorParams& op, const ClassParams& cp, Report& rep) {
  if (general_bound_premise(op, cp)) return;
  rep.warnings.push_back(general_premise_warning(op, cp));
  if (rep.fails()) {
    rep.verdict = Verdict::inconclusive;
    rep.detail += " (premise not met, so no contradiction)";
  }
}

}  // namespace detail

/// Sharp bound for nonnegative coefficients, attained by extremal_fn(n).
inline double coeff_bound_plus(const OperatorParams& op, const ClassParams& cp, int n) {
  op.validate();
  cp.validate();
  if (n < 1 - op.p) throw std::domain_error("coeff_bound_plus: n must be >= 1 - p");
  const double w = criterion_weight(op, cp, n);
  if (!(w > 0.0)) throw std::domain_error("coeff_bound_plus: degenerate criterion weight at n = " + std::to_string(n));
  return criterion_rhs(op, cp) / w;
}

namespace detail {

template <class Bound>
Report coefficient_bound_report(const LaurentSeries& f, int first, int last, Bound bound) {
  Report rep;
  MarginTracker t;
  for (int n = first; n <= std::min(last, f.trunc_order()); ++n) t.observe(bound(n) - std::abs(f.coeff(n)), n);
  if (!t.seen()) {
    rep.detail = "no coefficients in the checked range";
    return rep;
  }
  rep.worst_margin = t.worst();
  if (rep.worst_margin >= -1e-12) {
    rep.verdict = Verdict::holds;
    rep.detail = "coefficient bound holds for n = " + std::to_string(first) + ".." +
                 std::to_string(std::min(last, f.trunc_order()));
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = t.witness();
    rep.detail = "coefficient exceeds the bound at the witness index";
  }
  return rep;
}

}  // namespace detail

/// Checks |a_n| against coeff_bound_general for 3 - p <= n <= n_max.
inline Report check_coeff_bound_general(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                        int n_max) {
  detail::require_pole(op, f.pole_order(), "check_coeff_bound_general");
  auto rep = detail::coefficient_bound_report(f, 3 - op.p, n_max,
                                              [&](int n) { return coeff_bound_general(op, cp, n); });
  detail::apply_general_premise(op, cp, rep);
  return rep;
}

/// Checks a_n against coeff_bound_plus for 1 - p <= n <= n_max (degenerate weights skipped).
inline Report check_coeff_bound_plus(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                     int n_max) {
  detail::require_pole(op, f.pole_order(), "check_coeff_bound_plus");
  int first = 1 - op.p;
  std::vector<int> skipped;
  while (first <= n_max && !(criterion_weight(op, cp, first) > 0.0)) skipped.push_back(first++);
  auto rep = detail::coefficient_bound_report(f, first, n_max, [&](int n) { return coeff_bound_plus(op, cp, n); });
  if (!skipped.empty()) rep.warnings.push_back("degenerate-weight: no bound at k = " + detail::join_indices(skipped));
  return rep;
}

// ---------------------------------------------------------------------------
// Distortion
// ---------------------------------------------------------------------------

enum class DistortionKind { f_general, fprime_general, f_plus };

/// How the infinite sums in the general-class distortion bounds are handled.
struct TailPolicy {
  enum class Mode {
    exact_support,   // sum over 1-p..terms only; valid for series supported there
    tail_estimate,   // partial sum plus certified integral-comparison tail
    divergent_flag,  // like tail_estimate, but divergence yields vacuous bounds
  };
  Mode mode = Mode::divergent_flag;
  int terms = kDefaultTruncation;
};

struct DistortionBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool divergent = false;
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  bool premise_holds = true;  // general kinds: see general_bound_premise
};

namespace detail {

// Phi_k >= scale (k + p)^degree for k >= 1 - p.
struct PhiGrowth {
  int degree = 0;
  double scale = 1.0;
};

inline PhiGrowth phi_growth(const OperatorParams& op) {
  const double lm = op.lambda * op.mu;
  if (op.m == 0) return {0, 1.0};
  if (lm > 0.0) return {2 * op.m, std::pow(lm, op.m)};
  if (op.lambda - op.mu > 0.0) return {op.m, std::pow(op.lambda - op.mu, op.m)};
  return {0, 1.0};
}

}  // namespace detail

/// Lower and upper distortion bounds on |z| = r.
///
/// f_plus uses the closed form with A = 2 p beta (1 - alpha) / weight_{1-p}:
///   r^{-p} -/+ A r^{1-p}.
/// f_general uses  r^{-p} -/+ 2 p beta (1-alpha) r^{1-p} sum_k 1 / ((k+p) Phi_k);
/// fprime_general uses  p r^{-p-1} -/+ 2 p beta (1-alpha) r^e sum_k |k| / ((k+p) Phi_k),
/// with e = -p for p >= 2 and e = 0 for p = 1 (the largest power among the terms).
/// The sums diverge unless Phi_k grows fast enough (never when m = 0).
inline DistortionBounds distortion(const OperatorParams& op, const ClassParams& cp, double r, DistortionKind which,
                                   const TailPolicy& tail = {}) {
  op.validate();
  cp.validate();
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("distortion: r must lie in (0, 1)");
  const int p = op.p;
  const double rhs = criterion_rhs(op, cp);
  DistortionBounds out;

  if (which == DistortionKind::f_plus) {
    const double a = coeff_bound_plus(op, cp, 1 - p);
    out.lower = std::pow(r, -p) - a * std::pow(r, 1 - p);
    out.upper = std::pow(r, -p) + a * std::pow(r, 1 - p);
    out.partial_sum = a;
    return out;
  }

  out.premise_holds = general_bound_premise(op, cp);
  if (tail.terms < 1 - p) throw std::invalid_argument("distortion: tail policy needs terms >= 1 - p");
  const bool derivative = which == DistortionKind::fprime_general;
  double partial = 0.0;
  for (int k = 1 - p; k <= tail.terms; ++k) {
    const double num = derivative ? std::abs(static_cast<double>(k)) : 1.0;
    partial += num / ((k + p) * phi(op, k));
  }
  out.partial_sum = partial;

  if (tail.mode != TailPolicy::Mode::exact_support) {
    const auto g = detail::phi_growth(op);
    const int needed = derivative ? 2 : 1;
    if (g.degree < needed) {
      if (tail.mode == TailPolicy::Mode::tail_estimate)
        throw std::domain_error("distortion: the coefficient series diverges for these parameters; "
                                "use the divergent_flag tail policy");
      out.divergent = true;
      out.lower = 0.0;
      out.upper = std::numeric_limits<double>::infinity();
      out.tail_bound = std::numeric_limits<double>::infinity();
      return out;
    }
    const double kp = static_cast<double>(tail.terms + p);
    out.tail_bound = derivative ? 1.0 / (g.scale * (g.degree - 1) * std::pow(kp, g.degree - 1))
                                : 1.0 / (g.scale * g.degree * std::pow(kp, g.degree));
  }
  const double s = partial + out.tail_bound;
  if (derivative) {
    // |k a_k z^{k-1}| <= |k| |a_k| r^e with e the smallest k - 1 over k >= 1 - p, k != 0.
    const double re = std::pow(r, p == 1 ? 0 : -p);
    out.lower = p * std::pow(r, -p - 1) - rhs * re * s;
    out.upper = p * std::pow(r, -p - 1) + rhs * re * s;
  } else {
    out.lower = std::pow(r, -p) - rhs * std::pow(r, 1 - p) * s;
    out.upper = std::pow(r, -p) + rhs * std::pow(r, 1 - p) * s;
  }
  return out;
}

/// Checks lower <= |f(z)| (or |f'(z)|) <= upper on the circle |z| = r.
inline Report check_distortion(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f, double r,
                               DistortionKind which, const TailPolicy& tail = {}, int angles = 720) {
  detail::require_pole(op, f.pole_order(), "check_distortion");
  const auto b = distortion(op, cp, r, which, tail);
  Report rep;
  if (b.divergent) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "distortion series diverges; bounds are vacuous";
    rep.warnings.push_back("divergent-series");
    return rep;
  }
  const RawLaurent df = derivative(f);
  MarginTracker t;
  for (int j = 0; j < angles; ++j) {
    const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / angles);
    const double v = which == DistortionKind::fprime_general ? std::abs(df.eval(z)) : std::abs(eval(f, z));
    t.observe(std::min(v - b.lower, b.upper - v), z);
  }
  rep.worst_margin = t.worst();
  const double tol = 1e-12 * std::max(1.0, std::abs(b.upper));
  if (rep.worst_margin >= -tol) {
    rep.verdict = Verdict::holds;
    rep.detail = "distortion bounds hold on |z| = " + std::to_string(r);
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = t.witness();
    rep.detail = "distortion bound violated at the witness point";
  }
  if (which != DistortionKind::f_plus) detail::apply_general_premise(op, cp, rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Convolution non-vanishing
// ---------------------------------------------------------------------------

/// (1 - beta e^{i theta}) z (D^m f)'(z) + p (1 - (2 alpha - 1) beta e^{i theta}) D^m f(z).
inline cplx convolution_value(const OperatorQuotient& quot, const ClassParams& cp, int p, cplx z, double theta) {
  const cplx e = std::polar(cp.beta, theta);
  return (1.0 - e) * quot.zd_prime(z) + static_cast<double>(p) * (1.0 - (2.0 * cp.alpha - 1.0) * e) * quot.d(z);
}

/// Kernels z^{-p} / (1 - z) and (-p z^{-p} + (p+1) z^{1-p}) / (1 - z)^2, expanded to z^K.
/// Their Hadamard products with g give g and z g' respectively.
inline std::pair<RawLaurent, RawLaurent> convolution_kernels(int p, int trunc_order) {
  const int n = trunc_order + p;
  if (n < 0) throw std::invalid_argument("convolution_kernels: trunc_order must be >= -p");
  std::vector<cplx> one_minus_z(n + 1), numerator(n + 1);
  one_minus_z[0] = 1.0;
  if (n >= 1) one_minus_z[1] = -1.0;
  numerator[0] = static_cast<double>(-p);
  if (n >= 1) numerator[1] = static_cast<double>(p + 1);
  const PowerSeries inv1 = series_reciprocal(PowerSeries(one_minus_z));
  const PowerSeries k1 = inv1;
  const PowerSeries k2 = cauchy_mul(PowerSeries(numerator), cauchy_mul(inv1, inv1));
  return {RawLaurent(-p, k1.coeffs()), RawLaurent(-p, k2.coeffs())};
}

/// The same quantity as convolution_value, computed as D^m f * (kernel combination).
inline cplx convolution_value_by_kernels(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                         cplx z, double theta) {
  const auto [k1, k2] = convolution_kernels(op.p, f.trunc_order());
  const cplx e = std::polar(cp.beta, theta);
  const RawLaurent kernel = k2.scaled(1.0 - e) + k1.scaled(static_cast<double>(op.p) * (1.0 - (2.0 * cp.alpha - 1.0) * e));
  return hadamard(apply_coeff(op, f.raw()), kernel).eval(z);
}

/// Asserts |convolution_value| > floor for theta_j = 2 pi j / (N + 1), j = 1..N,
/// over every grid point.
inline Report convolution_nonvanishing(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                       const SampleGrid& grid, int theta_count, double floor = 1e-6) {
  op.validate();
  cp.validate();
  if (theta_count < 1) throw std::invalid_argument("convolution_nonvanishing: theta_count must be positive");
  detail::require_pole(op, f.pole_order(), "convolution_nonvanishing");
  const OperatorQuotient quot(op, f);
  Report rep;
  rep.grid_hash = grid.hash();
  MarginTracker t;
  double min_abs = std::numeric_limits<double>::infinity();
  for (cplx z : grid.points()) {
    for (int j = 1; j <= theta_count; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / (theta_count + 1);
      const double v = std::abs(convolution_value(quot, cp, op.p, z, theta));
      min_abs = std::min(min_abs, v);
      t.observe(v - floor, z);
    }
  }
  rep.worst_margin = t.worst();
  std::ostringstream os;
  os.precision(6);
  os << "min |value| = " << min_abs << " over " << theta_count << " angles in (0, 2pi) (grid " << rep.grid_hash << ")";
  rep.detail = os.str();
  if (rep.worst_margin > 0.0) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = t.witness();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Partial sums
// ---------------------------------------------------------------------------

/// k_m(z) = z^{-p} + sum_{k=1-p}^{m_cut-1} a_k z^k (just z^{-p} when m_cut <= 1 - p).
inline LaurentSeries partial_sum(const LaurentSeries& f, int m_cut) {
  const int first = f.first_index();
  const int last = std::min(m_cut - 1, f.trunc_order());
  if (last < first) return LaurentSeries::pole(f.pole_order(), first);
  if (last == f.trunc_order()) return f;
  std::vector<cplx> v(f.coeffs().begin(), f.coeffs().begin() + (last - first + 1));
  return LaurentSeries(f.pole_order(), std::move(v), true);
}

/// theta_k = weight_k / (2 p beta (1 - alpha)).
inline double partial_sum_theta(const OperatorParams& op, const ClassParams& cp, int k) {
  return criterion_weight(op, cp, k) / criterion_rhs(op, cp);
}

/// z^{-p} - z^m / theta_m, for which both ratio bounds are approached.
inline LaurentSeries partial_sum_extremal(const OperatorParams& op, const ClassParams& cp, int m_cut) {
  if (m_cut < 1 - op.p) throw std::domain_error("partial_sum_extremal: m_cut must be >= 1 - p");
  const double th = partial_sum_theta(op, cp, m_cut);
  if (!(th > 0.0)) throw std::domain_error("partial_sum_extremal: theta_m must be positive");
  return LaurentSeries::monomial(op.p, m_cut, -1.0 / th);
}

/// Samples Re{f / k_m} >= 1 - 1/theta_m and Re{k_m / f} >= theta_m / (1 + theta_m)
/// (each up to grid.margin). Requires sum theta_k |a_k| <= 1 and
/// theta_{k+1} > theta_k > 1; either failing makes the report inconclusive.
inline Report partial_sum_bounds(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f, int m_cut,
                                 const SampleGrid& grid) {
  op.validate();
  cp.validate();
  grid.validate();
  detail::require_pole(op, f.pole_order(), "partial_sum_bounds");
  if (m_cut < 1 - op.p) throw std::domain_error("partial_sum_bounds: m_cut must be >= 1 - p");
  Report rep;
  rep.grid_hash = grid.hash();

  // theta is increasing once positive, so checking through max(K, m_cut) + 1 covers the premise.
  const int last = std::max(f.trunc_order(), m_cut) + 1;
  std::vector<int> bad;
  for (int k = 1 - op.p; k <= last; ++k) {
    const double th = partial_sum_theta(op, cp, k);
    const double next = partial_sum_theta(op, cp, k + 1);
    if (!(th > 1.0) || !(next > th)) bad.push_back(k);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "theta-monotonicity: theta_{k+1} > theta_k > 1 fails at k = " << detail::join_indices(bad)
       << " (theta_" << bad.front() << " = " << partial_sum_theta(op, cp, bad.front()) << ")";
    rep.warnings.push_back(os.str());
  }

  if (!f.exact_support()) {
    rep.detail = "series is truncated; the hypothesis sum cannot be certified";
    return rep;
  }
  double hyp = 0.0;
  for (int k = f.first_index(); k <= f.trunc_order(); ++k) hyp += partial_sum_theta(op, cp, k) * std::abs(f.coeff(k));
  if (hyp > 1.0 + 1e-12) {
    rep.detail = "hypothesis sum theta_k |a_k| = " + std::to_string(hyp) + " exceeds 1";
    return rep;
  }
  if (!bad.empty()) {
    rep.detail = "monotonicity premise on theta_k is violated; conclusion not asserted";
    return rep;
  }

  const double th = partial_sum_theta(op, cp, m_cut);
  const double bound_fk = 1.0 - 1.0 / th;
  const double bound_kf = th / (1.0 + th);
  const LaurentSeries km = partial_sum(f, m_cut);
  MarginTracker t;
  for (cplx z : grid.points()) {
    const cplx fv = eval(f, z), kv = eval(km, z);
    if (!(std::abs(fv) > 0.0) || !(std::abs(kv) > 0.0)) {
      rep.verdict = Verdict::fails;
      rep.witness = z;
      rep.detail = "f or its partial sum vanishes at the witness point";
      return rep;
    }
    t.observe(std::min((fv / kv).real() - bound_fk, (kv / fv).real() - bound_kf), z);
  }
  rep.worst_margin = t.worst();
  std::ostringstream os;
  os.precision(12);
  os << "bounds Re{f/k_m} > " << bound_fk << ", Re{k_m/f} > " << bound_kf << " (grid " << rep.grid_hash << ")";
  rep.detail = os.str();
  if (rep.worst_margin >= -grid.margin) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = t.witness();
  }
  return rep;
}

struct PartialSumSharpness {
  double ratio_fk_gap;  // Re{f/k_m} - (1 - 1/theta_m) at z = r
  double ratio_kf_gap;  // Re{k_m/f} - theta_m/(1 + theta_m) at z = r e^{i pi / (m + p)}
};

/// Distance of the extremal function's ratios from the bounds near the boundary.
inline PartialSumSharpness partial_sum_sharpness(const OperatorParams& op, const ClassParams& cp, int m_cut,
                                                 double radius = 0.999) {
  const LaurentSeries f = partial_sum_extremal(op, cp, m_cut);
  const LaurentSeries km = partial_sum(f, m_cut);
  const double th = partial_sum_theta(op, cp, m_cut);
  const cplx z1 = radius;
  const cplx z2 = std::polar(radius, std::numbers::pi / (m_cut + op.p));
  return {(eval(f, z1) / eval(km, z1)).real() - (1.0 - 1.0 / th),
          (eval(km, z2) / eval(f, z2)).real() - th / (1.0 + th)};
}

}  // namespace merokit
