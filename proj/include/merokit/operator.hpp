#pragma once

// The differential operator D^m_{lambda,mu,p} on p-valent meromorphic series.
//
// D acts diagonally on coefficients: the z^k coefficient is multiplied by
//   Phi_k = [1 + (k+p)(lambda - mu + (k+p+1) lambda mu)]^m.
// apply_differential() reaches the same result through the literal
// definition
//   D f = lambda mu [z^{p+1} f]'' / z^{p-1} + (lambda - mu) [z^{p+1} f]' / z^p
//         + (1 - lambda + mu) f
// so the two routes can check each other.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "merokit/series.hpp"

namespace merokit {

struct OperatorParams {
  double lambda = 0.0;
  double mu = 0.0;
  int m = 0;  // m = 0 is the identity
  int p = 1;

  void validate() const {
    if (p < 1) throw std::invalid_argument("OperatorParams: p must be a positive integer");
    if (m < 0) throw std::invalid_argument("OperatorParams: m must be nonnegative");
    if (!(mu >= 0.0 && mu <= lambda) || !std::isfinite(lambda))
      throw std::invalid_argument("OperatorParams: requires 0 <= mu <= lambda");
  }

  /// lambda = mu = 0 collapses D to the identity for every m.
  bool degenerate() const { return lambda == 0.0 && mu == 0.0; }

  OperatorParams with_m(int new_m) const {
    OperatorParams q = *this;
    q.m = new_m;
    return q;
  }
};

namespace detail {

inline constexpr int kPowThreshold = 16;

inline double phi_base(const OperatorParams& op, int k) {
  const double kp = static_cast<double>(k + op.p);
  return 1.0 + kp * (op.lambda - op.mu + (kp + 1.0) * op.lambda * op.mu);
}

inline double phi_by_product(double base, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= base;
  return r;
}

inline double phi_by_pow(double base, int m) { return std::pow(base, m); }

/// Multiplier for exponent k >= -p; the pole term (k = -p) always gets 1.
inline double multiplier(const OperatorParams& op, int k) {
  const double base = phi_base(op, k);
  return op.m > kPowThreshold ? phi_by_pow(base, op.m) : phi_by_product(base, op.m);
}

inline void require_pole(const OperatorParams& op, int pole_order, const char* what) {
  if (pole_order != op.p)
    throw std::invalid_argument(std::string(what) + ": series pole_order " + std::to_string(pole_order) +
                                " does not match operator p = " + std::to_string(op.p));
}

}  // namespace detail

/// Phi_k(lambda, mu, m, p) for k >= 1 - p.
inline double phi(const OperatorParams& op, int k) {
  op.validate();
  if (k < 1 - op.p) throw std::domain_error("phi: k must be >= 1 - p");
  return detail::multiplier(op, k);
}

/// D^m f via the coefficient multipliers.
inline LaurentSeries apply_coeff(const OperatorParams& op, const LaurentSeries& f) {
  op.validate();
  detail::require_pole(op, f.pole_order(), "apply_coeff");
  std::vector<cplx> v(f.coeffs());
  for (int k = f.first_index(); k <= f.trunc_order(); ++k) v[k - f.first_index()] *= detail::multiplier(op, k);
  return LaurentSeries(f.pole_order(), std::move(v), f.exact_support());
}

/// Coefficient route on a raw series whose exponents start at -p or later.
/// Used where the leading coefficient has been perturbed away from 1.
inline RawLaurent apply_coeff(const OperatorParams& op, const RawLaurent& f) {
  op.validate();
  if (f.low() < -op.p) throw std::invalid_argument("apply_coeff: raw series has exponents below -p");
  std::vector<cplx> v(f.coeffs());
  for (int j = f.low(); j <= f.high(); ++j) v[j - f.low()] *= detail::multiplier(op, j);
  return RawLaurent(f.low(), std::move(v));
}

/// D^m f via the literal differential definition, iterated m times.
inline LaurentSeries apply_differential(const OperatorParams& op, const LaurentSeries& f) {
  op.validate();
  detail::require_pole(op, f.pole_order(), "apply_differential");
  const int p = op.p;
  RawLaurent g = f.raw();
  for (int step = 0; step < op.m; ++step) {
    const RawLaurent lifted = g.shifted(p + 1);  // z^{p+1} f
    const RawLaurent d1 = lifted.derivative();
    const RawLaurent d2 = d1.derivative();
    g = d2.shifted(-(p - 1)).scaled(op.lambda * op.mu) + d1.shifted(-p).scaled(op.lambda - op.mu) +
        g.scaled(1.0 - op.lambda + op.mu);
  }
  // The pole coefficient is (lambda - mu) + (1 - lambda + mu), which equals 1
  // only up to rounding.
  return LaurentSeries::from_raw(g, p, f.exact_support(), 1e-12);
}

/// Divides each a_k by Phi_k.
inline LaurentSeries invert(const OperatorParams& op, const LaurentSeries& g) {
  op.validate();
  detail::require_pole(op, g.pole_order(), "invert");
  std::vector<cplx> v(g.coeffs());
  for (int k = g.first_index(); k <= g.trunc_order(); ++k) v[k - g.first_index()] /= detail::multiplier(op, k);
  return LaurentSeries(g.pole_order(), std::move(v), g.exact_support());
}

/// h(z) = z^{-p} + sum Phi_k z^k, so that D^m f = f * h (Hadamard product).
inline LaurentSeries kernel_h(const OperatorParams& op, int trunc_order) {
  op.validate();
  if (trunc_order < 1 - op.p) throw std::invalid_argument("kernel_h: trunc_order must be >= 1 - p");
  std::vector<cplx> v(trunc_order + op.p);
  for (int k = 1 - op.p; k <= trunc_order; ++k) v[k - (1 - op.p)] = detail::multiplier(op, k);
  // The kernel itself has infinite support.
  return LaurentSeries(op.p, std::move(v), false);
}

/// Multiplier c / (c + p + k) of the integral operator
/// F(z) = c z^{-(p+c)} int_0^z t^{c+p-1} f(t) dt.
inline double integral_multiplier(int p, double c, int k) {
  if (!(c > 0.0)) throw std::domain_error("integral_operator: c must be > 0");
  return c / (c + static_cast<double>(p + k));
}

inline LaurentSeries integral_operator(const LaurentSeries& f, double c) {
  if (!(c > 0.0)) throw std::domain_error("integral_operator: c must be > 0");
  std::vector<cplx> v(f.coeffs());
  for (int k = f.first_index(); k <= f.trunc_order(); ++k)
    v[k - f.first_index()] *= integral_multiplier(f.pole_order(), c, k);
  return LaurentSeries(f.pole_order(), std::move(v), f.exact_support());
}

}  // namespace merokit
