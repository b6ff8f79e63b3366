#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace merokit;

namespace {

const SampleGrid kCoarse{{0.1, 0.3, 0.5, 0.7, 0.9}, 120, 1e-9};

TEST(Weights, SubstitutionValues) {
  const OperatorParams op{0.5, 0.2, 0, 1};
  const ClassParams cp{0.0, 1.0};
  // The bracket [k(beta+1) + p(1 + beta(2 alpha - 1))] is 2 here; s_k divides it by 2 p beta (1 - alpha) = 2.
  EXPECT_DOUBLE_EQ(weight({WeightKind::plus, op, cp}, 1), 1.0);
  EXPECT_DOUBLE_EQ(weight({WeightKind::general, op, cp}, 1), 2.0);
  EXPECT_THROW(weight({WeightKind::plus, op, cp}, -1), std::domain_error);
}

TEST(Weights, MatchExpandedForms) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 50; ++t) {
    auto s = fixture::random_params(rng);
    const double a = s.cp.alpha, b = s.cp.beta;
    const int p = s.op.p;
    const double rhs = oracle::criterion_rhs(p, a, b);
    for (int k = 1 - p; k <= 10; ++k) {
      const double ph = oracle::phi(s.op.lambda, s.op.mu, s.op.m, p, k);
      const double plus = oracle::criterion_weight(s.op.lambda, s.op.mu, s.op.m, p, a, b, k) / rhs;
      const double general = (b * (k + std::abs(2.0 * a - 1.0) * p) + k + p) * ph / rhs;
      EXPECT_NEAR(weight({WeightKind::plus, s.op, s.cp}, k), plus, 1e-12 * std::max(1.0, std::abs(plus)));
      EXPECT_NEAR(weight({WeightKind::general, s.op, s.cp}, k), general, 1e-12 * std::max(1.0, std::abs(general)));
    }
  }
}

TEST(Weights, TinyDenominatorOverflows) {
  // 2 p beta (1 - alpha) = 1e-300 against Phi_1 = 7^200.
  const OperatorParams op{1.0, 1.0, 200, 1};
  EXPECT_THROW(weight({WeightKind::plus, op, {0.5, 1e-300}}, 1), std::overflow_error);
}

TEST(Distance, MetricProperties) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 30; ++t) {
    auto s = fixture::random_params(rng);
    const WeightSeq seq{WeightKind::general, s.op, s.cp};
    const auto f = fixture::random_series(rng, s.op.p, 10);
    const auto g = fixture::random_series(rng, s.op.p, 10);
    const auto h = fixture::random_series(rng, s.op.p, 10);
    EXPECT_EQ(distance(seq, f, f), 0.0);
    EXPECT_EQ(distance(seq, f, g), distance(seq, g, f));
    EXPECT_GT(distance(seq, f, g), 0.0);
    EXPECT_LE(distance(seq, f, h), (distance(seq, f, g) + distance(seq, g, h)) * (1.0 + 1e-14));
  }
}

TEST(Distance, SingleCoefficientPerturbation) {
  const OperatorParams op{0.7, 0.3, 2, 2};
  const ClassParams cp{0.4, 0.6};
  const WeightSeq seq{WeightKind::plus, op, cp};
  const auto f = LaurentSeries(2, {0.1, 0.2, 0.3, 0.4});
  const cplx d(0.01, -0.02);
  const auto g = f.with_coeff(1, f.coeff(1) + d);
  const double s1 = oracle::criterion_weight(0.7, 0.3, 2, 2, 0.4, 0.6, 1) / oracle::criterion_rhs(2, 0.4, 0.6);
  EXPECT_NEAR(distance(seq, f, g), s1 * std::abs(d), 1e-15);
}

TEST(Distance, TruncationMismatch) {
  const OperatorParams op{0.7, 0.3, 1, 1};
  const WeightSeq seq{WeightKind::plus, op, {0.4, 0.6}};
  const LaurentSeries short_exact(1, {0.1, 0.2}, true), long_series(1, {0.1, 0.2, 0.3}, true);
  const LaurentSeries short_trunc(1, {0.1, 0.2}, false);
  EXPECT_NO_THROW(distance(seq, short_exact, long_series));
  EXPECT_THROW(distance(seq, short_trunc, long_series), std::invalid_argument);
  EXPECT_THROW(distance(seq, short_exact, LaurentSeries::pole(2, 2)), std::invalid_argument);
}

TEST(InNeighborhood, SelfBoundaryOutside) {
  const OperatorParams op{1.0, 0.0, 1, 1};
  const ClassParams cp{0.5, 1.0};
  const WeightSeq seq{WeightKind::plus, op, cp};
  const auto f = LaurentSeries::pole(1, 3);
  const double delta = 0.25;
  const double s2 = oracle::criterion_weight(1.0, 0.0, 1, 1, 0.5, 1.0, 2) / oracle::criterion_rhs(1, 0.5, 1.0);
  EXPECT_TRUE(in_neighborhood(seq, f, f, delta));
  EXPECT_TRUE(in_neighborhood(seq, f, f.with_coeff(2, delta / s2), delta));
  EXPECT_FALSE(in_neighborhood(seq, f, f.with_coeff(2, delta * (1.0 + 1e-6) / s2), delta));
  EXPECT_THROW(in_neighborhood(seq, f, f, 0.0), std::invalid_argument);
  // Monotone in the radius.
  EXPECT_TRUE(in_neighborhood(seq, f, f.with_coeff(2, delta / s2), 2.0 * delta));
}

TEST(DeltaStar, SubstitutionValues) {
  EXPECT_DOUBLE_EQ(delta_star({1.0, 0.0, 1, 1}), 0.5);
  EXPECT_NEAR(delta_star({1.0, 1.0, 1, 1}), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(delta_star({0.0, 0.0, 1, 1}), 0.0);
}

TEST(DeltaStar, IdentityThroughFirstOrderMultiplier) {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 100; ++t) {
    auto s = fixture::random_params(rng);
    EXPECT_NEAR(delta_star(s.op), oracle::delta_from_phi(s.op.lambda, s.op.mu, s.op.p), 1e-12);
  }
}

TEST(InclusionPlus, SampledNeighborsPassAndWitnessFails) {
  const OperatorParams op{1.0, 0.0, 1, 1};
  const ClassParams cp{0.5, 1.0};
  const auto r = verify_inclusion_plus(op, cp, LaurentSeries::pole(1, 0), 100, 42);
  EXPECT_TRUE(r.holds()) << r.detail;
  EXPECT_NE(r.detail.find("seed 42"), std::string::npos);
}

TEST(InclusionPlus, RandomParametersWithSafeIndices) {
  // alpha >= 1 - 1/(2p) keeps every k + (2 alpha - 1) p >= 0, where the criterion is exact.
  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    auto s = fixture::random_params(rng);
    s.op.m = std::max(s.op.m, 1);
    s.op.lambda = std::max(s.op.lambda, 0.2);
    s.cp.alpha = 1.0 - 1.0 / (2.0 * s.op.p) + 0.05 * u(rng);
    const auto r = verify_inclusion_plus(s.op, s.cp, LaurentSeries::pole(s.op.p, 2), 30, 1000 + t);
    EXPECT_TRUE(r.holds()) << r.detail;
  }
}

TEST(InclusionPlus, Vacuous) {
  const auto r = verify_inclusion_plus({1.0, 0.0, 1, 1}, {0.5, 1.0}, LaurentSeries::pole(1, 0), 0, 1);
  EXPECT_TRUE(r.holds());
  EXPECT_NE(r.detail.find("vacuous"), std::string::npos);
}

TEST(InclusionPlus, PremiseViolationIsInconclusive) {
  // The identity operator: Phi_{1-p}(lambda, mu, 1, p) > 1 but the criterion only bounds the sum by 1.
  const OperatorParams op{1.0, 0.0, 1, 1};
  const ClassParams cp{0.5, 1.0};
  const auto f = extremal_fn(op, cp, 1);  // weighted sum exactly 1 > 1/2
  const auto r = verify_inclusion_plus(op, cp, f, 10, 3);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_EQ(r.warnings, std::vector<std::string>{"premise-violated"});
}

TEST(InclusionPlus, NonMemberIsNotAsserted) {
  const OperatorParams op{1.0, 0.0, 1, 1};
  const ClassParams cp{0.5, 1.0};
  const auto f = LaurentSeries::monomial(1, 1, 1.0);
  EXPECT_EQ(verify_inclusion_plus(op, cp, f, 10, 3).verdict, Verdict::inconclusive);
}

TEST(InclusionPlus, DegenerateDelta) {
  const auto r = verify_inclusion_plus({0.0, 0.0, 1, 1}, {0.5, 1.0}, LaurentSeries::pole(1, 0), 5, 9);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings.front().find("degenerate-delta"), std::string::npos);
}

TEST(InclusionPlus, DeterministicInSeed) {
  const OperatorParams op{0.8, 0.4, 2, 2};
  const ClassParams cp{0.7, 0.5};
  const auto a = verify_inclusion_plus(op, cp, LaurentSeries::pole(2, 1), 25, 77);
  const auto b = verify_inclusion_plus(op, cp, LaurentSeries::pole(2, 1), 25, 77);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.worst_margin, b.worst_margin);
  EXPECT_EQ(a.detail, b.detail);
}

TEST(InclusionGeneral, HerglotzMemberNeighborhood) {
  std::mt19937_64 rng(131);
  const OperatorParams op{0.8, 0.3, 2, 1};
  const ClassParams cp{0.3, 1.0};
  // Atoms pulled inside the circle leave room for perturbations.
  MeasureAtoms mu = fixture::random_atoms(rng, 3);
  const auto f = from_herglotz(op, cp.alpha, mu, 64);
  const double delta = 1e-3;
  const auto r = verify_inclusion_general(op, cp, f, 10, kCoarse, delta, 5);
  EXPECT_NE(r.verdict, Verdict::fails) << r.detail;
  EXPECT_EQ(r.grid_hash, kCoarse.hash());
}

TEST(InclusionGeneral, PoleFunctionHoldsForSmallDelta) {
  const OperatorParams op{0.8, 0.3, 1, 2};
  const ClassParams cp{0.4, 0.8};
  const auto r = verify_inclusion_general(op, cp, LaurentSeries::pole(2, 2), 10, kCoarse, 0.05, 11);
  EXPECT_TRUE(r.holds()) << r.detail;
}

TEST(InclusionGeneral, HypothesisFailureIsInconclusive) {
  // f far outside the class already fails at eps = 0.
  const OperatorParams op{0.8, 0.3, 1, 1};
  const ClassParams cp{0.4, 0.8};
  const auto f = LaurentSeries::monomial(1, 1, 5.0);
  const auto r = verify_inclusion_general(op, cp, f, 5, kCoarse, 0.1, 1);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_NE(r.detail.find("hypothesis not established"), std::string::npos);
  EXPECT_THROW(verify_inclusion_general(op, cp, f, 5, kCoarse, 0.0, 1), std::invalid_argument);
}

}  // namespace
