#pragma once

// Randomized evidence for the neighborhood inclusion properties.
//
// Perturbations are spread over the first `spread` coefficient indices with
// Dirichlet(1,...,1) shares of a target distance; the seed is echoed in the
// report so runs can be replayed.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "merokit/generators.hpp"
#include "merokit/membership.hpp"
#include "merokit/neighborhoods.hpp"
#include "merokit/report.hpp"

namespace merokit {

namespace detail {

// Dirichlet shares over `n` slots; slots with mask false get zero.
inline std::vector<double> dirichlet_shares(std::mt19937_64& rng, const std::vector<bool>& mask) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> s(mask.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) total += (s[i] = expo(rng));
  if (total > 0.0)
    for (double& x : s) x /= total;
  return s;
}

// Uniform in (0, 1].
inline double unit_open_closed(std::mt19937_64& rng) {
  return 1.0 - std::generate_canonical<double, 53>(rng);
}

inline std::string seed_note(std::uint64_t seed) { return "seed " + std::to_string(seed); }

}  // namespace detail

struct InclusionOptions {
  int spread = 16;                    // perturbed coefficient indices 1-p .. 1-p+spread-1
  double witness_factor = 1.0 + 1e-9; // delta* = delta * witness_factor for the sharpness witness
};

/// Premise used by the inclusion argument: sum s_k a_k <= 1 / Phi_{1-p}(lambda, mu, 1, p).
inline double inclusion_premise_bound(const OperatorParams& op) { return 1.0 / phi(op.with_m(1), 1 - op.p); }

/// Samples g in the plus-neighborhood of radius delta_star(op) around f and
/// checks each against the exact criterion, then checks that the sharpness
/// witness at delta* = delta * witness_factor fails.
inline Report verify_inclusion_plus(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                    int trials, std::uint64_t seed, const InclusionOptions& opts = {}) {
  op.validate();
  cp.validate();
  Report rep;
  const double delta = delta_star(op);
  if (delta == 0.0) rep.warnings.push_back("degenerate-delta: lambda = mu = 0 gives delta = 0");

  const Report base = exact_membership_plus(op, cp, f);
  if (!base.holds()) {
    rep.detail = "f does not pass the exact criterion (" + std::string(to_string(base.verdict)) + "); " +
                 detail::seed_note(seed);
    return rep;
  }
  const WeightSeq seq{WeightKind::plus, op, cp};
  double premise = 0.0;
  for (int k = f.first_index(); k <= f.trunc_order(); ++k) premise += weight(seq, k) * f.coeff(k).real();
  const double premise_bound = inclusion_premise_bound(op);
  if (premise > premise_bound + 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "inclusion premise violated: sum s_k a_k = " << premise << " > 1/Phi_{1-p}(lambda,mu,1,p) = "
       << premise_bound << "; " << detail::seed_note(seed);
    rep.detail = os.str();
    rep.warnings.push_back("premise-violated");
    return rep;
  }

  std::mt19937_64 rng(seed);
  const int first = f.first_index();
  const int span = std::max(opts.spread, 1);
  const LaurentSeries fx = f.extended(first + span - 1);
  std::vector<bool> usable(span);
  std::vector<double> s(span);
  for (int i = 0; i < span; ++i) {
    s[i] = weight(seq, first + i);
    usable[i] = s[i] > 0.0;
  }

  double worst = base.worst_margin;
  for (int trial = 0; trial < trials; ++trial) {
    LaurentSeries g = fx;
    for (int attempt = 0;; ++attempt) {
      const double target = delta * detail::unit_open_closed(rng);
      const auto shares = detail::dirichlet_shares(rng, usable);
      std::vector<cplx> b(fx.coeffs());
      for (int i = 0; i < span; ++i)
        if (usable[i]) b[i] += target * shares[i] / s[i];
      g = LaurentSeries(f.pole_order(), std::move(b), true);
      if (distance(seq, fx, g) <= delta + 1e-12 || attempt > 100) break;
    }
    const Report r = exact_membership_plus(op, cp, g);
    worst = std::min(worst, r.worst_margin);
    if (!r.holds()) {
      rep.verdict = r.fails() ? Verdict::fails : Verdict::inconclusive;
      rep.witness = trial;
      rep.worst_margin = r.worst_margin;
      rep.detail = "sampled neighbor (trial " + std::to_string(trial) + ") " +
                   (r.fails() ? "fails the exact criterion" : "is undecided by the exact criterion") + "; " +
                   detail::seed_note(seed);
      rep.warnings.insert(rep.warnings.end(), r.warnings.begin(), r.warnings.end());
      return rep;
    }
  }
  rep.worst_margin = worst;

  std::ostringstream os;
  os << trials << " sampled neighbors pass";
  if (trials == 0) os << " (vacuous: no trials)";
  if (delta > 0.0 && !(criterion_weight(op, cp, 1 - op.p) > 0.0)) {
    rep.verdict = Verdict::inconclusive;
    rep.witness = 1 - op.p;
    rep.detail = os.str() + "; no sharpness witness: the weight at k = 1 - p is not positive; " +
                 detail::seed_note(seed);
    return rep;
  }
  if (delta > 0.0) {
    const double dstar = delta * opts.witness_factor;
    const auto [wf, wg] = neighborhood_witnesses(op, cp, dstar);
    const Report rf = exact_membership_plus(op, cp, wf);
    const Report rg = exact_membership_plus(op, cp, wg);
    const double dist = distance(seq, wf, wg);
    if (!rf.holds() && !rf.fails()) {
      rep.verdict = Verdict::inconclusive;
      rep.witness = 1 - op.p;
      rep.detail = os.str() + "; sharpness witness f is undecided by the exact criterion; " + detail::seed_note(seed);
      return rep;
    }
    if (!rf.holds() || !rg.fails() || std::abs(dist - dstar) > 1e-12 * std::max(1.0, dstar)) {
      rep.verdict = Verdict::fails;
      rep.witness = 1 - op.p;
      rep.detail = os.str() + "; but the sharpness witness does not behave as expected; " + detail::seed_note(seed);
      return rep;
    }
    os.precision(17);
    os << "; sharpness witness at delta* = " << dstar << " fails the criterion";
  }
  os << "; " << detail::seed_note(seed);
  rep.verdict = Verdict::holds;
  rep.detail = os.str();
  return rep;
}

/// Two-phase check of the general-class inclusion:
///  (a) (f + eps z^p)/(1 + eps) passes numeric membership for eps = 0 and
///      eps_trials random |eps| < delta; a failure leaves the inclusion unestablished;
///  (b) eps_trials random g with general-weight distance <= delta pass numeric membership.
inline Report verify_inclusion_general(const OperatorParams& op, const ClassParams& cp, const LaurentSeries& f,
                                       int eps_trials, const SampleGrid& grid, double delta, std::uint64_t seed,
                                       const InclusionOptions& opts = {}) {
  op.validate();
  cp.validate();
  grid.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("verify_inclusion_general: delta must be > 0");
  detail::require_pole(op, f.pole_order(), "verify_inclusion_general");
  Report rep;
  rep.grid_hash = grid.hash();
  std::mt19937_64 rng(seed);
  const int p = op.p;

  if (f.trunc_order() < p && !f.exact_support()) {
    rep.detail = "series truncated below z^p; the perturbation eps z^p cannot be placed";
    return rep;
  }
  const LaurentSeries fx = f.extended(p);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial <= eps_trials; ++trial) {
    cplx eps{};
    if (trial > 0) {
      const double rad = delta * std::sqrt(std::generate_canonical<double, 53>(rng));
      eps = std::polar(rad, 2.0 * std::numbers::pi * std::generate_canonical<double, 53>(rng));
    }
    // Leading coefficient 1/(1 + eps): evaluated on the raw path.
    std::vector<cplx> raw(fx.raw().coeffs());
    raw[p + p] += eps;  // exponent p sits at offset 2p from exponent -p
    const RawLaurent h = RawLaurent(-p, std::move(raw)).scaled(1.0 / (1.0 + eps));
    const Report r = numeric_membership(op, cp, h, grid);
    worst = std::min(worst, r.worst_margin);
    if (!r.holds()) {
      std::ostringstream os;
      os.precision(17);
      os << "hypothesis not established: perturbation eps = " << eps.real() << (eps.imag() < 0 ? "-" : "+")
         << std::abs(eps.imag()) << "i fails numeric membership; " << detail::seed_note(seed);
      rep.verdict = Verdict::inconclusive;
      rep.witness = r.witness;
      rep.worst_margin = r.worst_margin;
      rep.detail = os.str();
      return rep;
    }
  }

  const WeightSeq seq{WeightKind::general, op, cp};
  const int first = f.first_index();
  const int span = f.exact_support() ? std::max(opts.spread, 1) : std::min(opts.spread, f.trunc_order() - first + 1);
  const LaurentSeries fg = f.extended(first + span - 1);
  std::vector<bool> usable(span);
  std::vector<double> s(span);
  for (int i = 0; i < span; ++i) {
    s[i] = weight(seq, first + i);
    usable[i] = s[i] > 0.0;
  }
  for (int trial = 0; trial < eps_trials; ++trial) {
    const double target = delta * detail::unit_open_closed(rng);
    const auto shares = detail::dirichlet_shares(rng, usable);
    std::vector<cplx> b(fg.coeffs());
    for (int i = 0; i < span; ++i)
      if (usable[i])
        b[i] += std::polar(target * shares[i] / s[i], 2.0 * std::numbers::pi * std::generate_canonical<double, 53>(rng));
    const LaurentSeries g(p, std::move(b), fg.exact_support());
    const Report r = numeric_membership(op, cp, g, grid);
    worst = std::min(worst, r.worst_margin);
    if (!r.holds()) {
      rep.verdict = Verdict::fails;
      rep.witness = r.witness;
      rep.worst_margin = r.worst_margin;
      rep.detail = "neighbor (trial " + std::to_string(trial) + ") fails numeric membership although the "
                   "hypothesis held; " + detail::seed_note(seed);
      return rep;
    }
  }
  rep.verdict = Verdict::holds;
  rep.worst_margin = worst;
  rep.detail = "hypothesis held for " + std::to_string(eps_trials + 1) + " perturbations and " +
               std::to_string(eps_trials) + " sampled neighbors pass on grid " + rep.grid_hash + "; " +
               detail::seed_note(seed);
  return rep;
}

}  // namespace merokit
