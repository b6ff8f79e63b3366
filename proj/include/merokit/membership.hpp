#pragma once

// Decision procedures for the classes Sigma_{lambda mu m p}(alpha, beta) and
// its nonnegative-coefficient subclass.
//
// Writing q(z) = z (D^m f)'(z) / (p D^m f(z)), a function belongs to the class
// when |q + 1| < beta |q + 2 alpha - 1| throughout the punctured disk. The
// coefficient criteria decide membership exactly (nonnegative case) or
// sufficiently (general case); the grid checks only produce sampled evidence.

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "merokit/operator.hpp"
#include "merokit/report.hpp"
#include "merokit/series.hpp"

namespace merokit {

struct ClassParams {
  double alpha = 0.0;
  double beta = 1.0;

  void validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("ClassParams: alpha must lie in [0, 1)");
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("ClassParams: beta must lie in (0, 1]");
  }
};

/// 2 p beta (1 - alpha), the right-hand side of the coefficient criteria.
inline double criterion_rhs(const OperatorParams& op, const ClassParams& cp) {
  return 2.0 * op.p * cp.beta * (1.0 - cp.alpha);
}

/// [k(beta+1) + p(1 + beta(2 alpha - 1))] Phi_k. Can be zero or negative for small k.
inline double criterion_weight(const OperatorParams& op, const ClassParams& cp, int k) {
  op.validate();
  cp.validate();
  const double linear = k * (cp.beta + 1.0) + op.p * (1.0 + cp.beta * (2.0 * cp.alpha - 1.0));
  return linear * phi(op, k);
}

/// [(k + p) + beta |k + (2 alpha - 1) p|] Phi_k. A weighted coefficient sum
/// below 2 p beta (1 - alpha) with these weights proves the defining
/// inequality by the triangle inequality. It coincides with criterion_weight
/// when k + (2 alpha - 1) p >= 0 and exceeds it otherwise; it is always >= 1.
inline double sufficient_weight(const OperatorParams& op, const ClassParams& cp, int k) {
  op.validate();
  cp.validate();
  const double linear = (k + op.p) + cp.beta * std::abs(k + op.p * (2.0 * cp.alpha - 1.0));
  return linear * phi(op, k);
}

/// Indices in [1-p, K] whose criterion weight is <= 0.
inline std::vector<int> degenerate_weight_indices(const OperatorParams& op, const ClassParams& cp, int trunc_order) {
  std::vector<int> out;
  for (int k = 1 - op.p; k <= trunc_order; ++k)
    if (!(criterion_weight(op, cp, k) > 0.0)) out.push_back(k);
  return out;
}

namespace detail {

inline std::string join_indices(const std::vector<int>& ks) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? ", " : "") << ks[i];
  return os.str();
}

inline constexpr double kCriterionTol = 1e-12;

struct WeightedSums {
  double criterion = 0.0;   // with criterion_weight
  double sufficient = 0.0;  // with sufficient_weight
  int largest_k = 0;        // index of the largest criterion term
};

inline WeightedSums weighted_sums(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                  const std::vector<double>& magnitudes) {
  WeightedSums s;
  s.largest_k = f.first_index();
  double largest = -std::numeric_limits<double>::infinity();
  for (int k = f.first_index(); k <= f.trunc_order(); ++k) {
    const double a = magnitudes[k - f.first_index()];
    if (a == 0.0) continue;
    const double term = criterion_weight(op, cp, k) * a;
    s.criterion += term;
    s.sufficient += sufficient_weight(op, cp, k) * a;
    if (term > largest) {
      largest = term;
      s.largest_k = k;
    }
  }
  return s;
}

inline std::string sums_detail(const WeightedSums& s, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << "weighted sum " << s.criterion << " (sufficient-weight sum " << s.sufficient << ") vs bound " << rhs;
  return os.str();
}

}  // namespace detail

/// Coefficient criterion for nonnegative real coefficients.
///
/// sum criterion_weight_k a_k <= 2 p beta (1 - alpha) is necessary (let z -> 1
/// along the real axis); sum sufficient_weight_k a_k <= 2 p beta (1 - alpha)
/// is sufficient. The two coincide when every nonzero a_k sits at an index
/// with k + (2 alpha - 1) p >= 0, and the criterion is then exact. Otherwise
/// a function between the two bounds is reported inconclusive.
inline Report exact_membership_plus(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f) {
  op.validate();
  cp.validate();
  detail::require_pole(op, f.pole_order(), "exact_membership_plus");
  std::vector<double> a(f.coeffs().size());
  for (int k = f.first_index(); k <= f.trunc_order(); ++k) {
    const cplx c = f.coeff(k);
    if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c.real())))
      throw std::domain_error("exact_membership_plus: coefficient a_" + std::to_string(k) + " is not real");
    if (c.real() < -1e-14)
      throw std::domain_error("exact_membership_plus: coefficient a_" + std::to_string(k) + " is negative");
    a[k - f.first_index()] = std::max(c.real(), 0.0);
  }

  Report rep;
  const double rhs = criterion_rhs(op, cp);
  // A weight <= 0 leaves the necessary sum silent about that coefficient; only
  // the sufficient-weight sum can then establish membership.
  const auto degenerate = degenerate_weight_indices(op, cp, f.trunc_order());
  if (!degenerate.empty())
    rep.warnings.push_back("degenerate-weight: criterion weight <= 0 at k = " + detail::join_indices(degenerate));
  if (!f.exact_support()) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "series is truncated; the tail past K is not certified to vanish";
    return rep;
  }
  const auto sums = detail::weighted_sums(op, cp, f, a);
  rep.worst_margin = rhs - sums.criterion;
  rep.detail = detail::sums_detail(sums, rhs);
  if (sums.criterion > rhs + detail::kCriterionTol) {
    rep.verdict = Verdict::fails;
    rep.witness = sums.largest_k;
  } else if (sums.sufficient <= rhs + detail::kCriterionTol) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.witness = sums.largest_k;
    rep.warnings.push_back("sufficiency-gap: necessary sum met, but nonzero coefficients at k with "
                           "k + (2 alpha - 1) p < 0 push the sufficient-weight sum past the bound");
  }
  return rep;
}

/// Sufficient condition sum sufficient_weight_k |a_k| <= 2 p beta (1 - alpha)
/// for complex coefficients. Never reports `fails`.
inline Report sufficient_condition(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f) {
  op.validate();
  cp.validate();
  detail::require_pole(op, f.pole_order(), "sufficient_condition");
  std::vector<double> a(f.coeffs().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.coeffs()[i]);
  Report rep;
  if (!f.exact_support()) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "series is truncated; the tail past K is not certified to vanish";
    return rep;
  }
  const double rhs = criterion_rhs(op, cp);
  const auto sums = detail::weighted_sums(op, cp, f, a);
  rep.worst_margin = rhs - sums.sufficient;
  rep.detail = detail::sums_detail(sums, rhs);
  if (sums.sufficient <= rhs + detail::kCriterionTol) {
    rep.verdict = Verdict::holds;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.witness = sums.largest_k;
    rep.detail += "; sufficient condition not met, membership undecided";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Grid-sampled checks
// ---------------------------------------------------------------------------

/// Evaluates q(z) = z (D^m f)'(z) / (p D^m f(z)) for a (possibly raw) series.
class OperatorQuotient {
 public:
  OperatorQuotient(const OperatorParams& op, const RawLaurent& f)
      : p_(op.p), d_(apply_coeff(op, f)), zd_(d_.derivative().shifted(1)) {}

  OperatorQuotient(const OperatorParams& op, const LaurentSeries& f) : OperatorQuotient(op, f.raw()) {
    detail::require_pole(op, f.pole_order(), "OperatorQuotient");
  }

  cplx d(cplx z) const { return d_.eval(z); }
  cplx zd_prime(cplx z) const { return zd_.eval(z); }

  /// NaN when D^m f vanishes or overflows at z.
  cplx q(cplx z) const {
    const cplx den = d_.eval(z);
    if (!(std::abs(den) > 0.0) || !std::isfinite(std::abs(den))) return {std::nan(""), std::nan("")};
    return zd_.eval(z) / (static_cast<double>(p_) * den);
  }

  const RawLaurent& d_series() const { return d_; }

 private:
  int p_;
  RawLaurent d_;
  RawLaurent zd_;
};

inline double membership_margin_at(const ClassParams& cp, cplx q) {
  return cp.beta * std::abs(q + (2.0 * cp.alpha - 1.0)) - std::abs(q + 1.0);
}

/// Pointwise beta |q + 2 alpha - 1| - |q + 1| over the grid (NaN where D^m f vanishes).
inline std::vector<double> membership_margins(const OperatorParams& op, const ClassParams& cp, const RawLaurent& f,
                                              const SampleGrid& grid) {
  op.validate();
  cp.validate();
  const OperatorQuotient quot(op, f);
  std::vector<double> out;
  for (cplx z : grid.points()) out.push_back(membership_margin_at(cp, quot.q(z)));
  return out;
}

inline double disk_center(const ClassParams& cp) {
  const double b2 = cp.beta * cp.beta;
  return (1.0 - b2 * (2.0 * cp.alpha - 1.0)) / (1.0 - b2);
}

inline double disk_radius(const ClassParams& cp) {
  return 2.0 * cp.beta * (1.0 - cp.alpha) / (1.0 - cp.beta * cp.beta);
}

/// Pointwise radius - |F - center| with F = -q, for beta < 1.
inline std::vector<double> disk_margins(const OperatorParams& op, const ClassParams& cp, const RawLaurent& f,
                                        const SampleGrid& grid) {
  op.validate();
  cp.validate();
  if (!(cp.beta < 1.0)) throw std::domain_error("disk_characterization: requires beta < 1");
  const double c = disk_center(cp), rad = disk_radius(cp);
  const OperatorQuotient quot(op, f);
  std::vector<double> out;
  for (cplx z : grid.points()) out.push_back(rad - std::abs(-quot.q(z) - c));
  return out;
}

namespace detail {

inline Report grid_report(const std::vector<double>& margins, const SampleGrid& grid, const char* what) {
  Report rep;
  rep.grid_hash = grid.hash();
  const auto pts = grid.points();
  MarginTracker t;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (std::isnan(margins[i])) {
      rep.verdict = Verdict::fails;
      rep.witness = pts[i];
      rep.worst_margin = margins[i];
      rep.detail = std::string(what) + ": D^m f vanishes or overflows at the witness point (grid " + rep.grid_hash + ")";
      return rep;
    }
    t.observe(margins[i], pts[i]);
  }
  rep.worst_margin = t.worst();
  if (rep.worst_margin > grid.margin) {
    rep.verdict = Verdict::holds;
    rep.detail = std::string(what) + ": holds on grid " + rep.grid_hash + " (sampled evidence, not a proof)";
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = t.witness();
    rep.detail = std::string(what) + ": margin below " + std::to_string(grid.margin) + " on grid " + rep.grid_hash;
  }
  return rep;
}

}  // namespace detail

/// Samples the defining inequality on the grid, with strictness buffer grid.margin.
inline Report numeric_membership(const OperatorParams& op, const ClassParams& cp, const RawLaurent& f,
                                 const SampleGrid& grid) {
  return detail::grid_report(membership_margins(op, cp, f, grid), grid, "numeric membership");
}

inline Report numeric_membership(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                 const SampleGrid& grid) {
  detail::require_pole(op, f.pole_order(), "numeric_membership");
  auto rep = numeric_membership(op, cp, f.raw(), grid);
  if (!f.exact_support()) rep.warnings.push_back("truncated-series: values include truncation error");
  return rep;
}

/// The same condition stated as containment of F = -q in a disk (beta < 1 only).
inline Report disk_characterization(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                    const SampleGrid& grid) {
  detail::require_pole(op, f.pole_order(), "disk_characterization");
  return detail::grid_report(disk_margins(op, cp, f.raw(), grid), grid, "disk characterization");
}

/// F(z) = -q(z) at each grid point.
inline std::vector<cplx> quotient_values(const OperatorParams& op, const LaurentSeries& f, const SampleGrid& grid) {
  const OperatorQuotient quot(op, f);
  std::vector<cplx> out;
  for (cplx z : grid.points()) out.push_back(-quot.q(z));
  return out;
}

// ---------------------------------------------------------------------------
// Subordination z^p D^m f(z) < (1 - z)^{2p(1-alpha)}
// ---------------------------------------------------------------------------

namespace detail {

struct BranchState {
  double r = 0.0;
  cplx value{1.0, 0.0};
  double arg = 0.0;  // continuous argument, arg at r = 0 is 0
};

// Continues arg P along the ray at angle theta from state.r to r_to,
// subdividing while the per-step phase change is large.
inline bool continue_branch(const PowerSeries& P, double theta, BranchState& s, double r_to, int depth = 0) {
  const cplx v = P.eval(std::polar(r_to, theta));
  if (!(std::abs(v) > 1e-14)) return false;
  const double step = std::arg(v / s.value);
  if (std::abs(step) > std::numbers::pi / 8 && depth < 40) {
    const double mid = 0.5 * (s.r + r_to);
    return continue_branch(P, theta, s, mid, depth + 1) && continue_branch(P, theta, s, r_to, depth + 1);
  }
  s.arg += step;
  s.value = v;
  s.r = r_to;
  return true;
}

}  // namespace detail

/// Checks the subordination by inverting the target: w = 1 - v^{1/c} with
/// v = z^p D^m f(z), c = 2p(1 - alpha), and requiring |w| < 1 - margin.
///
/// The root uses the branch of v^{1/c} continued radially from v(0) = 1. It
/// coincides with the principal branch whenever |arg v| stays below pi; a
/// warning is attached when it does not.
inline Report subordination_power_target(const OperatorParams& op, double alpha, const LaurentSeries& f,
                                         const SampleGrid& grid) {
  op.validate();
  ClassParams{alpha, 1.0}.validate();
  grid.validate();
  detail::require_pole(op, f.pole_order(), "subordination_power_target");
  const double c = 2.0 * op.p * (1.0 - alpha);

  const RawLaurent d = apply_coeff(op, f.raw());
  Report rep;
  rep.grid_hash = grid.hash();
  if (d.lead() != cplx{1.0, 0.0}) {
    rep.verdict = Verdict::fails;
    rep.witness = 0;
    rep.detail = "z^p D^m f does not take the value 1 at the origin";
    return rep;
  }
  const PowerSeries P(d.coeffs());  // coefficients of z^p D^m f

  MarginTracker t;
  bool beyond_principal = false;
  constexpr double kMaxStep = 0.01;
  for (int j = 0; j < grid.angles; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / grid.angles;
    detail::BranchState s;
    for (double r : grid.radii) {
      while (s.r < r) {
        const double next = std::min(r, s.r + kMaxStep);
        if (!detail::continue_branch(P, theta, s, next)) {
          rep.verdict = Verdict::fails;
          rep.witness = std::polar(next, theta);
          rep.detail = "z^p D^m f vanishes on the continuation path; no admissible preimage";
          return rep;
        }
      }
      if (std::abs(s.arg) > std::numbers::pi) beyond_principal = true;
      const cplx root = std::polar(std::pow(std::abs(s.value), 1.0 / c), s.arg / c);
      const cplx w = 1.0 - root;
      t.observe(1.0 - std::abs(w), std::polar(r, theta));
    }
  }
  if (beyond_principal)
    rep.warnings.push_back("branch: arg(z^p D^m f) left (-pi, pi]; root taken on the radially continued branch");
  rep.worst_margin = t.worst();
  if (rep.worst_margin > grid.margin) {
    rep.verdict = Verdict::holds;
    rep.detail = "preimage |w| < 1 at every grid point; value at origin 1 = target at origin (grid " +
                 rep.grid_hash + ")";
  } else {
    rep.verdict = Verdict::fails;
    rep.witness = t.witness();
    rep.detail = "preimage leaves the unit disk (grid " + rep.grid_hash + ")";
  }
  return rep;
}

}  // namespace merokit
