#include "maxdet/registry.hpp"
#include "maxdet/verify.hpp"

#include <gtest/gtest.h>

using namespace maxdet;

TEST(Enumeration, DiagonalMomentsMatchClosedForms)
{
  for (long h : {4L, 8L, 12L}) {
    const auto ms = distinct_constructions(h);
    ASSERT_GE(ms.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto reps = enumerate_diagonal_moments(ms[i]);
      ASSERT_EQ(reps.size(), 4u);
      for (const auto& r : reps) EXPECT_TRUE(r.equal) << h << " " << ms[i].provenance() << " " << r.quantity;
    }
  }
}

TEST(Enumeration, DiagonalMeanEqualsExactMu)
{
  const auto reps = enumerate_diagonal_moments(paley(7));
  bool seen = false;
  for (const auto& r : reps)
    if (r.quantity == "E[g11]") {
      EXPECT_EQ(r.enumerated_value, exact_mu(8));
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST(Enumeration, OffDiagonalMoments)
{
  for (long h : {4L, 8L}) {
    for (const HadamardMatrix& A : distinct_constructions(h)) {
      const auto reps = enumerate_offdiag_moments(A);
      ASSERT_EQ(reps.size(), 2u);
      for (const auto& r : reps) EXPECT_TRUE(r.equal) << h << " " << r.quantity << " " << r.enumerated_value;
    }
  }
}

TEST(Enumeration, RejectsLargeOrders)
{
  EXPECT_THROW(enumerate_diagonal_moments(paley(23)), std::invalid_argument);
  EXPECT_THROW(enumerate_offdiag_moments(paley(11)), std::invalid_argument);
}

TEST(Dependence, SingleBorderHasNoChecks)
{
  const DependenceReport r = check_dependence_structure(paley(11), 1, 1000, 5);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.pass());
}

TEST(Dependence, ProductsBehave)
{
  for (long d : {2L, 3L, 4L}) {
    const DependenceReport r = check_dependence_structure(paley(19), d, 4000, 9);
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << d << " " << c.name << " " << c.estimate;
  }
}

TEST(Perturbation, FixedParameterExamples)
{
  const PerturbationReport a = check_perturbation_lemmas(2, 10000, 1, {true, 0.2, 0.2});
  EXPECT_EQ(a.violations_general, 0);
  EXPECT_EQ(a.violations_symmetric, 0);
  EXPECT_GE(a.min_margin_general, 0);
  const PerturbationReport b = check_perturbation_lemmas(6, 10000, 2, {true, 0.05, 0.15});
  EXPECT_TRUE(b.pass());
}

TEST(Perturbation, RandomParameters)
{
  for (long d = 1; d <= 6; ++d) {
    const PerturbationReport r = check_perturbation_lemmas(d, 2000, static_cast<std::uint64_t>(d));
    EXPECT_TRUE(r.pass()) << d;
  }
}

TEST(Perturbation, RejectsInvalidParameters)
{
  EXPECT_THROW(check_perturbation_lemmas(0, 10, 1), std::invalid_argument);
  EXPECT_THROW(check_perturbation_lemmas(3, 10, 1, {true, 0.5, 0.5}), std::invalid_argument);
}

TEST(Tails, EmpiricalFrequenciesRespectBounds)
{
  const TailReport r = check_tail_inequalities({paley(11), paley(19), sylvester(paley(7))}, 3000, 4);
  EXPECT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.estimate << " > " << c.reference;
}

TEST(Tails, TinyLambdaGivesVacuousBounds)
{
  const TailReport r = check_tail_inequalities({paley(3)}, 500, 1, {1e-3});
  EXPECT_TRUE(r.pass());
}

TEST(Uncond2, HoldsUpTo1000)
{
  const Uncond2Report r = check_uncond2(1000);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.pairs, 999L * 1000L / 2L);
  EXPECT_GT(r.min_gap, 0);
  EXPECT_THROW(check_uncond2(1), std::invalid_argument);
}

TEST(BinomialIdentities, HoldUpTo200)
{
  const BinomialIdentityReport r = check_binomial_identities(200);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.first_failure, -1);
}

TEST(Enclosures, HoldUpTo400)
{
  const EnclosureReport r = check_moment_enclosures(400);
  EXPECT_TRUE(r.pass()) << r.first_failure;
  EXPECT_GE(r.alpha_min, 0);
  EXPECT_LT(r.alpha_max, 0.04491L);
  EXPECT_GE(r.beta_min, 0);
  EXPECT_LT(r.beta_max, 0.23L);
}

TEST(Enclosures, LongDoubleConversion)
{
  EXPECT_EQ(to_long_double(BigRational(3, 4)), 0.75L);
  EXPECT_EQ(to_long_double(BigRational(-1, 8)), -0.125L);
  EXPECT_EQ(to_long_double(BigRational(0)), 0.0L);
  const BigRational huge(pow2(3000), pow2(2999) * 3);
  EXPECT_NEAR(static_cast<double>(to_long_double(huge)), 2.0 / 3.0, 1e-15);
}
