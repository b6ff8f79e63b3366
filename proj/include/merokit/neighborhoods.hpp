#pragma once

// Weighted-l1 coefficient neighborhoods of a series.
//
//   plus:    s_k = [k(beta+1) + p(1 + beta(2 alpha - 1))] Phi_k / (2 p beta (1 - alpha))
//   general: s_k = [beta(k + |2 alpha - 1| p) + k + p] Phi_k / (2 p beta (1 - alpha))
//
// The general weights are the bound on |c_k| used when the neighborhood
// inclusion is proved; see README for how they were fixed.

#include <cmath>
#include <stdexcept>
#include <string>

#include "merokit/membership.hpp"
#include "merokit/operator.hpp"
#include "merokit/series.hpp"

namespace merokit {

enum class WeightKind { general, plus };

struct WeightSeq {
  WeightKind kind = WeightKind::plus;
  OperatorParams op;
  ClassParams cp;
};

inline double weight(const WeightSeq& seq, int k) {
  seq.op.validate();
  seq.cp.validate();
  if (k < 1 - seq.op.p) throw std::domain_error("weight: k must be >= 1 - p");
  const double rhs = criterion_rhs(seq.op, seq.cp);
  double s;
  if (seq.kind == WeightKind::plus) {
    s = criterion_weight(seq.op, seq.cp, k) / rhs;
  } else {
    const double a = seq.cp.alpha, b = seq.cp.beta;
    const int p = seq.op.p;
    s = (b * (k + std::abs(2.0 * a - 1.0) * p) + k + p) * phi(seq.op, k) / rhs;
  }
  if (!std::isfinite(s)) throw std::overflow_error("weight: s_k overflows (alpha too close to 1?)");
  return s;
}

/// sum s_k |b_k - a_k|. Series of different lengths are compared only when
/// the shorter one is exactly supported.
inline double distance(const WeightSeq& seq, const LaurentSeries& f, const LaurentSeries& g) {
  detail::require_same_pole(f, g, "distance");
  detail::require_pole(seq.op, f.pole_order(), "distance");
  const int kf = f.trunc_order(), kg = g.trunc_order();
  if ((kf < kg && !f.exact_support()) || (kg < kf && !g.exact_support()))
    throw std::invalid_argument("distance: truncation mismatch without an exact-support certificate");
  const int hi = std::max(kf, kg);
  double d = 0.0;
  for (int k = f.first_index(); k <= hi; ++k) {
    const cplx diff = g.coeff(k) - f.coeff(k);
    if (diff != cplx{}) d += weight(seq, k) * std::abs(diff);
  }
  return d;
}

inline bool in_neighborhood(const WeightSeq& seq, const LaurentSeries& f, const LaurentSeries& g, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("in_neighborhood: delta must be > 0");
  return distance(seq, f, g) <= delta + 1e-12;
}

/// Inclusion radius (2 lambda mu + lambda - mu) / (1 + 2 lambda mu + lambda - mu).
/// Zero when lambda = mu = 0.
inline double delta_star(const OperatorParams& op) {
  op.validate();
  const double t = 2.0 * op.lambda * op.mu + op.lambda - op.mu;
  return t / (1.0 + t);
}

}  // namespace merokit
