#pragma once

// Constructions of class members and extremal functions.
//
// Every member is built on the operator side, as D^m f = z^{-p} P(z) for a
// power series P with P(0) = 1, and pulled back with invert() as the last
// step so the result is an exact coefficient preimage.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "merokit/membership.hpp"
#include "merokit/neighborhoods.hpp"
#include "merokit/operator.hpp"
#include "merokit/series.hpp"

namespace merokit {

struct Atom {
  cplx x;         // point on the unit circle
  double weight;  // probability mass
};

/// Finitely supported probability measure on the unit circle.
struct MeasureAtoms {
  std::vector<Atom> atoms;

  void validate() const {
    if (atoms.empty()) throw std::invalid_argument("MeasureAtoms: at least one atom required");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto& a = atoms[i];
      if (std::abs(std::abs(a.x) - 1.0) > 1e-12)
        throw std::invalid_argument("MeasureAtoms: atom " + std::to_string(i) + " is not on the unit circle");
      if (!(a.weight >= 0.0)) throw std::invalid_argument("MeasureAtoms: negative weight at atom " + std::to_string(i));
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("MeasureAtoms: weights must sum to 1");
  }
};

struct CertificateCheck {
  std::string name;
  bool passed;
  double value;
};

/// What was verified while building a series.
struct Certificate {
  std::string generator;
  int trunc_order = 0;
  std::vector<CertificateCheck> checks;
};

struct Construction {
  LaurentSeries series;
  Certificate certificate;
};

/// Schwarz polynomial w(z) = c_1 z + ... + c_d z^d, validated on construction.
class SchwarzPoly {
 public:
  static constexpr int kBoundarySamples = 4096;
  static constexpr double kBoundaryRadius = 0.999;

  explicit SchwarzPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    double sup = 0.0;
    for (int j = 0; j < kBoundarySamples; ++j)
      sup = std::max(sup, std::abs(eval(std::polar(kBoundaryRadius, 2.0 * std::numbers::pi * j / kBoundarySamples))));
    double l1 = 0.0;
    for (cplx c : c_) l1 += std::abs(c);
    sampled_sup_ = sup;
    coeff_l1_ = l1;
    if (!(sup < 1.0))
      throw std::invalid_argument("SchwarzPoly: |w| reaches " + std::to_string(sup) + " on |z| = 0.999");
  }

  /// c_1 .. c_d
  const std::vector<cplx>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()); }

  cplx eval(cplx z) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc + *it) * z;
    return acc;
  }

  double sampled_sup() const { return sampled_sup_; }
  double coeff_l1() const { return coeff_l1_; }
  /// sum |c_i| <= 1 is a sufficient condition for |w| < 1 on the open disk.
  bool cauchy_bound_holds() const { return coeff_l1_ <= 1.0; }

 private:
  std::vector<cplx> c_;
  double sampled_sup_ = 0.0;
  double coeff_l1_ = 0.0;
};

namespace detail {

// f with D^m f = z^{-p} P, given P(0) = 1 to order >= K + p.
inline LaurentSeries pull_back(const OperatorParams& op, const PowerSeries& P, int trunc_order, bool exact) {
  std::vector<cplx> a(trunc_order + op.p);
  for (int k = 1 - op.p; k <= trunc_order; ++k) a[k - (1 - op.p)] = P[k + op.p];
  return invert(op, LaurentSeries(op.p, std::move(a), exact));
}

inline void require_trunc(const OperatorParams& op, int trunc_order) {
  if (trunc_order < 1 - op.p) throw std::invalid_argument("generator: truncation order must be >= 1 - p");
}

}  // namespace detail

/// D^m f = z^{-p} prod_j (1 - x_j z)^{2p(1-alpha) w_j}, a member of the beta = 1 class.
inline Construction construct_herglotz(const OperatorParams& op, double alpha, const MeasureAtoms& mu, int trunc_order) {
  op.validate();
  ClassParams{alpha, 1.0}.validate();
  mu.validate();
  detail::require_trunc(op, trunc_order);
  const int n = trunc_order + op.p;
  const double c = 2.0 * op.p * (1.0 - alpha);

  PowerSeries log_p = PowerSeries::zero(n);
  double degree = 0.0;
  bool polynomial = true;
  double total = 0.0, off_circle = 0.0;
  for (const auto& atom : mu.atoms) {
    log_p = log_p + log_one_minus(atom.x, n).scaled(c * atom.weight);
    const double e = c * atom.weight;
    if (std::abs(e - std::round(e)) > 1e-12) polynomial = false;
    degree += std::round(e);
    total += atom.weight;
    off_circle = std::max(off_circle, std::abs(std::abs(atom.x) - 1.0));
  }
  // P is a polynomial when every exponent is an integer; then nothing is lost past K.
  const bool exact = polynomial && degree <= n;
  const PowerSeries P = series_exp(log_p);

  Certificate cert{"herglotz", trunc_order, {}};
  cert.checks.push_back({"measure-total-mass", std::abs(total - 1.0) <= 1e-12, total});
  cert.checks.push_back({"atoms-on-unit-circle", off_circle <= 1e-12, off_circle});
  cert.checks.push_back({"normalized-at-origin", P[0] == cplx{1.0, 0.0}, std::abs(P[0])});
  cert.checks.push_back({"exact-support", exact, exact ? degree : static_cast<double>(n)});
  return {detail::pull_back(op, P, trunc_order, exact), std::move(cert)};
}

inline LaurentSeries from_herglotz(const OperatorParams& op, double alpha, const MeasureAtoms& mu,
                                   int trunc_order = kDefaultTruncation) {
  return construct_herglotz(op, alpha, mu, trunc_order).series;
}

/// D^m f = z^{-p} exp(-2p(1-alpha) beta int_0^z w(t) / (t (1 - beta w(t))) dt).
///
/// With this sign z (D^m f)' / D^m f = (p(2 alpha - 1) beta w - p) / (1 - beta w),
/// and w(z) = x z, beta = 1 reproduces the single-atom Herglotz member.
inline Construction construct_schwarz(const OperatorParams& op, const ClassParams& cp, const SchwarzPoly& w,
                                      int trunc_order) {
  op.validate();
  cp.validate();
  detail::require_trunc(op, trunc_order);
  const int n = trunc_order + op.p;
  const double c = 2.0 * op.p * (1.0 - cp.alpha);

  std::vector<cplx> w_over_z(n + 1), one_minus_bw(n + 1);
  one_minus_bw[0] = 1.0;
  for (int i = 1; i <= std::min(w.degree(), n + 1); ++i) {
    const cplx ci = w.coeffs()[i - 1];
    if (i - 1 <= n) w_over_z[i - 1] = ci;
    if (i <= n) one_minus_bw[i] = -cp.beta * ci;
  }
  const PowerSeries integrand = cauchy_mul(PowerSeries(w_over_z), series_reciprocal(PowerSeries(one_minus_bw)));
  const PowerSeries P = series_exp(integrate(integrand).scaled(-c * cp.beta));
  const bool exact = w.degree() == 0;

  Certificate cert{"schwarz", trunc_order, {}};
  cert.checks.push_back({"boundary-sup-at-0.999", w.sampled_sup() < 1.0, w.sampled_sup()});
  cert.checks.push_back({"coefficient-l1-bound", w.cauchy_bound_holds(), w.coeff_l1()});
  cert.checks.push_back({"exact-support", exact, static_cast<double>(exact ? 0 : n)});
  return {detail::pull_back(op, P, trunc_order, exact), std::move(cert)};
}

inline LaurentSeries from_schwarz(const OperatorParams& op, const ClassParams& cp, const SchwarzPoly& w,
                                  int trunc_order = kDefaultTruncation) {
  return construct_schwarz(op, cp, w, trunc_order).series;
}

/// Coefficient 2 p beta (1 - alpha) / weight_n of the single-term sharp function.
inline double extremal_coefficient(const OperatorParams& op, const ClassParams& cp, int n) {
  if (n < 1 - op.p) throw std::invalid_argument("extremal_fn: n must be >= 1 - p");
  const double w = criterion_weight(op, cp, n);
  if (!(w > 0.0))
    throw std::domain_error("extremal_fn: degenerate criterion weight " + std::to_string(w) + " at n = " +
                            std::to_string(n));
  return criterion_rhs(op, cp) / w;
}

/// z^{-p} + [2 p beta (1 - alpha) / weight_n] z^n; meets the coefficient criterion with equality.
inline LaurentSeries extremal_fn(const OperatorParams& op, const ClassParams& cp, int n) {
  return LaurentSeries::monomial(op.p, n, extremal_coefficient(op, cp, n));
}

/// (f, g) with f extremal at k = 1 - p and g = f + delta_star_value * a_{1-p}(f) z^{1-p}.
/// g lies at plus-distance delta_star_value from f and fails the criterion.
inline std::pair<LaurentSeries, LaurentSeries> neighborhood_witnesses(const OperatorParams& op, const ClassParams& cp,
                                                                       double delta_star_value) {
  const double delta = delta_star(op);
  if (!(delta_star_value > delta))
    throw std::invalid_argument("neighborhood_witnesses: requires delta* > delta = " + std::to_string(delta));
  const int k = 1 - op.p;
  const double a = extremal_coefficient(op, cp, k);
  return {LaurentSeries::monomial(op.p, k, a), LaurentSeries::monomial(op.p, k, a * (1.0 + delta_star_value))};
}

/// Pair for which the inclusion radius is tight: f sits exactly at the
/// inclusion premise (plus-weighted sum = 1 / Phi_{1-p}(lambda, mu, 1, p)),
/// and g adds delta_star_value of plus-distance at k = 1 - p. g meets the
/// criterion iff delta_star_value <= delta.
inline std::pair<LaurentSeries, LaurentSeries> premise_boundary_witnesses(const OperatorParams& op,
                                                                           const ClassParams& cp,
                                                                           double delta_star_value) {
  if (!(delta_star_value >= 0.0)) throw std::invalid_argument("premise_boundary_witnesses: delta* must be >= 0");
  const int k = 1 - op.p;
  const double a = extremal_coefficient(op, cp, k);
  const double phi1 = phi(op.with_m(1), k);
  return {LaurentSeries::monomial(op.p, k, a / phi1), LaurentSeries::monomial(op.p, k, a / phi1 + a * delta_star_value)};
}

}  // namespace merokit
