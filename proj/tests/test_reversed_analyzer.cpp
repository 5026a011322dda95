// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>

#include "levymart/errors.hpp"
#include "levymart/martingale_engine.hpp"
#include "levymart/reversed_analyzer.hpp"
#include "oracles.hpp"

using namespace levymart;

namespace {

RationalFunction rf(const MultiPoly& num, const MultiPoly& den) { return RationalFunction(num, den); }
MultiPoly tp(unsigned p, long c) { return oracle::t_poly(p, Rational(c)); }

struct Triple {
  Rational c2, c3, c4;
  int expected_case;
};

// Two points per case where possible; (1,0,0) is the pure-Gaussian end of case 2.
const std::array<Triple, 9> kGrid{{
    {Rational(1), Rational(0), Rational(2), 1},
    {Rational(2), Rational(0), Rational(1), 1},
    {Rational(1), Rational(1), Rational(1), 2},
    {Rational(1), Rational(0), Rational(0), 2},
    {Rational(2), Rational(3), Rational(9, 2), 2},
    {Rational(1), Rational(2), Rational(6), 3},
    {Rational(2), Rational(2), Rational(3), 3},
    {Rational(1), Rational(1), Rational(2), 4},
    {Rational(1), Rational(2), Rational(5), 5},
}};

}  // namespace

TEST(ReversedFeasibility, GaussianThirdOrderFeasible) {
  const ReversedVerdict v = reversed_feasibility(oracle::gaussian_spec(10, Rational(2)), 3);
  EXPECT_TRUE(v.feasible);
  EXPECT_FALSE(v.witness);
  ASSERT_TRUE(v.mu);
  // E[M_3^2] = 6 c2^3 t^3.
  EXPECT_EQ(*v.mu, rf(tp(0, 1), tp(3, 48)));
  EXPECT_EQ(v.forced_zero_cumulants, (std::vector<int>{3, 4, 5}));
}

TEST(ReversedFeasibility, PoissonThirdOrderInfeasible) {
  const ReversedVerdict v = reversed_feasibility(oracle::poisson_spec(8), 3);
  EXPECT_FALSE(v.feasible);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(*v.witness, 3);
}

TEST(ReversedFeasibility, AnyHigherCumulantRulesOutKAtLeastThree) {
  for (int k = 3; k <= 5; ++k) {
    for (int i = 3; i <= 2 * k; ++i) {
      std::vector<Rational> c(static_cast<std::size_t>(2 * k), Rational(0));
      c[1] = Rational(1);
      c[static_cast<std::size_t>(i - 1)] = Rational(1, 3);
      const ReversedVerdict v = reversed_feasibility(CumulantSpec(c), k);
      EXPECT_FALSE(v.feasible) << "k=" << k << " i=" << i;
      ASSERT_TRUE(v.witness);
      EXPECT_EQ(*v.witness, i);
    }
  }
}

TEST(ReversedFeasibility, SecondOrderSymmetricCase) {
  const CumulantSpec spec(std::vector<Rational>{Rational(0), Rational(1), Rational(0), Rational(2)});
  const ReversedVerdict v = reversed_feasibility(spec, 2);
  EXPECT_TRUE(v.feasible);
  ASSERT_TRUE(v.mu);
  EXPECT_EQ(*v.mu, rf(tp(0, 1), tp(2, 2) + tp(1, 2)));

  // Extended by the closure the condition keeps holding at every l the cumulant list covers.
  const ReversedVerdict w = reversed_feasibility(cumulant_closure(Rational(1), Rational(0), Rational(2), 12), 2);
  EXPECT_TRUE(w.feasible);
  EXPECT_TRUE(w.nonconstant_l.empty());

  // A skewed spec fails at l = 1 and names c_3.
  const ReversedVerdict s = reversed_feasibility(oracle::poisson_spec(6), 2);
  EXPECT_FALSE(s.feasible);
  EXPECT_EQ(s.nonconstant_l.front(), 1);
  EXPECT_EQ(*s.witness, 3);

  // c_6 off the closure value is caught at l = 4.
  std::vector<Rational> c = cumulant_closure(Rational(1), Rational(0), Rational(2), 6).values();
  c[5] += Rational(1);
  const ReversedVerdict b = reversed_feasibility(CumulantSpec(c), 2);
  EXPECT_FALSE(b.feasible);
  EXPECT_EQ(b.nonconstant_l, (std::vector<int>{4}));
  EXPECT_EQ(*b.witness, 6);
}

TEST(ReversedFeasibility, Errors) {
  EXPECT_THROW(reversed_feasibility(oracle::poisson_spec(5), 3), TruncationError);
  EXPECT_THROW(reversed_feasibility(oracle::poisson_spec(5), 1), InvalidArgument);
}

TEST(MuFunctions, Examples) {
  const MuFunctions sym = mu_functions(Rational(1), Rational(0), Rational(2), Rational(0));
  EXPECT_TRUE(sym.mu1.is_constant());
  EXPECT_EQ(sym.mu1.constant_value(), Rational(0));
  EXPECT_EQ(sym.mu2, rf(tp(0, 1), tp(2, 2) + tp(1, 2)));

  const MuFunctions p = mu_functions(Rational(1), Rational(1), Rational(1), Rational(0));
  EXPECT_EQ(p.mu2, rf(tp(0, 1), tp(2, 2)));
  EXPECT_EQ(p.mu1, rf(tp(0, -1), tp(2, 2)));

  // beta = c2/c3 zeroes the numerator of mu_2.
  const MuFunctions z = mu_functions(Rational(2), Rational(3), Rational(5), Rational(2, 3));
  EXPECT_TRUE(z.mu2.is_constant());
  EXPECT_EQ(z.mu2.constant_value(), Rational(0));

  // Gaussian with c4 = 0 still has a nonzero denominator 2 c2^3 t^2.
  EXPECT_NO_THROW(mu_functions(Rational(1), Rational(0), Rational(0), Rational(1)));
  EXPECT_THROW(mu_functions(Rational(0), Rational(0), Rational(0), Rational(1)), DegenerateSpec);
}

TEST(MuFunctions, DirectConstancyAtLOneAndTwo) {
  // Independently of the closure: mu_1 E[M_1 M_l] + mu_2 E[M_2 M_l] equals beta at l = 1 and 1 at l = 2.
  const CumulantSpec spec(std::vector<Rational>{Rational(1, 2), Rational(3), Rational(-1), Rational(7)});
  for (const Rational& beta : {Rational(0), Rational(1), Rational(-5, 2)}) {
    const MuFunctions mu = mu_functions(spec.c(2), spec.c(3), spec.c(4), beta);
    const RationalFunction l1 =
        mu.mu1 * oracle::monomial_cross_moment(spec, 1, 1) + mu.mu2 * cross_moment(spec, 2, 1).poly;
    const RationalFunction l2 = mu.mu1 * cross_moment(spec, 1, 2).poly + mu.mu2 * cross_moment(spec, 2, 2).poly;
    ASSERT_TRUE(l1.is_constant());
    ASSERT_TRUE(l2.is_constant());
    EXPECT_EQ(l1.constant_value(), beta);
    EXPECT_EQ(l2.constant_value(), Rational(1));
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(glowne_classify(Rational(1), Rational(0), Rational(2)).case_id, 1);
  EXPECT_EQ(glowne_classify(Rational(1), Rational(1), Rational(1)).case_id, 2);
  const GlowneCase g = glowne_classify(Rational(1), Rational(2), Rational(2));
  EXPECT_EQ(g.printed_case_id, 3);
  EXPECT_EQ(g.case_id, 5);
  EXPECT_FALSE(g.valid_measure);
  EXPECT_EQ(glowne_classify(Rational(1), Rational(0), Rational(0)).case_id, 2);
  EXPECT_EQ(glowne_classify(Rational(1), Rational(0), Rational(0)).printed_case_id, 2);
  EXPECT_THROW(glowne_classify(Rational(0), Rational(1), Rational(1)), InvalidArgument);
  EXPECT_THROW(glowne_classify(Rational(-1), Rational(1), Rational(1)), InvalidArgument);
}

TEST(Classify, GridAndAlpha) {
  for (const Triple& p : kGrid) {
    const GlowneCase g = glowne_classify(p.c2, p.c3, p.c4);
    EXPECT_EQ(g.case_id, p.expected_case) << p.c2.to_string() << "," << p.c3.to_string() << "," << p.c4.to_string();
    EXPECT_TRUE(g.valid_measure);
  }
  // (1,1,2): v = 1, 2v - chi3^2 = 1, alpha = 1/2.
  const GlowneCase g4 = glowne_classify(Rational(1), Rational(1), Rational(2));
  ASSERT_TRUE(g4.alpha_exact);
  EXPECT_EQ(*g4.alpha_exact, Rational(1, 2));
  // (1,2,5): v = 1, chi3^2 - 2v = 2, alpha = sqrt(2)/2 is irrational.
  const GlowneCase g5 = glowne_classify(Rational(1), Rational(2), Rational(5));
  EXPECT_FALSE(g5.alpha_exact);
  EXPECT_NEAR(g5.alpha, std::sqrt(2.0) / 2, 1e-15);
}

TEST(Closure, HandValues) {
  const CumulantSpec a = cumulant_closure(Rational(1), Rational(0), Rational(2), 8);
  EXPECT_EQ(a.c(5), Rational(0));
  EXPECT_EQ(a.c(6), Rational(16));
  EXPECT_EQ(a.c(8), Rational(272));
  EXPECT_EQ(cumulant_closure(Rational(1), Rational(1), Rational(2), 5).c(5), Rational(5));
  const CumulantSpec p = cumulant_closure(Rational(1), Rational(1), Rational(1), 12, Rational(1));
  EXPECT_EQ(p, oracle::poisson_spec(12));
  EXPECT_THROW(cumulant_closure(Rational(1), Rational(0), Rational(2), 3), InvalidArgument);
}

TEST(Closure, AgreesWithOdeSeriesOnGrid) {
  for (const Triple& p : kGrid) {
    for (int N = 4; N <= 12; ++N) {
      EXPECT_EQ(cumulant_closure(p.c2, p.c3, p.c4, N, Rational(1, 3)), ode_series(p.c2, p.c3, p.c4, N, Rational(1, 3)))
          << "N=" << N;
    }
  }
}

TEST(Closure, CaseTwoGeometricPattern) {
  // v = 0: psi = (e^{chi3 r} - 1)/chi3, so chi_k = chi3^(k-2).
  const CumulantSpec s = ode_series(Rational(2), Rational(3), Rational(9, 2), 12);
  for (int k = 2; k <= 12; ++k) EXPECT_EQ(s.c(k), Rational(2) * pow(Rational(3, 2), static_cast<unsigned>(k - 2)));
}

TEST(Closure, CaseOneOddVanishAndEvenRecursion) {
  const Rational c2(3), c4(5);
  const CumulantSpec s = cumulant_closure(c2, Rational(0), c4, 16);
  for (int j = 1; 2 * j + 1 <= 16; ++j) EXPECT_TRUE(s.c(2 * j + 1).is_zero());
  // chi_{2(k+1)} = (chi4/2) sum_{s=1}^{k} C(2k, 2s-1) chi_{2s} chi_{2(k-s+1)}.
  const Rational chi4 = c4 / c2;
  for (int k = 2; 2 * (k + 1) <= 16; ++k) {
    Rational sum(0);
    for (int sidx = 1; sidx <= k; ++sidx) {
      sum += binomial(2 * k, 2 * sidx - 1) * (s.c(2 * sidx) / c2) * (s.c(2 * (k - sidx + 1)) / c2);
    }
    EXPECT_EQ(s.c(2 * (k + 1)) / c2, chi4 / Rational(2) * sum) << k;
  }
}

TEST(Tangent, KnownValues) {
  const std::vector<mpz_class> t = tangent_numbers(6);
  const std::vector<long> expected{1, 2, 16, 272, 7936, 353792};
  ASSERT_EQ(t.size(), expected.size());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i], expected[i]);
}

TEST(Tangent, ClosureRouteAndGrowth) {
  const std::vector<mpz_class> a = tangent_numbers(12);
  const std::vector<mpz_class> b = tangent_numbers_from_closure(12);
  EXPECT_EQ(a, b);
  for (std::size_t i = 2; i < a.size(); ++i) EXPECT_GT(a[i], a[i - 1]);
  EXPECT_EQ(a[9], mpz_class("29088885112832"));
  EXPECT_EQ(a[11], mpz_class("1015423886506852352"));
}

TEST(Tangent, PublishedRecursionDivergesAtFourth) {
  const std::vector<mpz_class> p = tangent_numbers_published(4);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[1], 2);
  EXPECT_EQ(p[2], 16);
  EXPECT_EQ(p[3], 216);
}

TEST(TwoTermConstancy, ClosureSpecsAllCases) {
  for (const Triple& p : kGrid) {
    const CumulantSpec spec = cumulant_closure(p.c2, p.c3, p.c4, 8, Rational(1, 2));
    for (const Rational& beta : {Rational(0), Rational(1)}) {
      const auto rows = two_term_constancy(spec, beta, 6);
      ASSERT_EQ(rows.size(), 6u);
      for (std::size_t l = 0; l < rows.size(); ++l) {
        EXPECT_TRUE(rows[l].second) << "case " << p.expected_case << " l=" << l + 1 << " " << rows[l].first.to_string();
      }
      EXPECT_EQ(rows[0].first.constant_value(), beta);
      EXPECT_EQ(rows[1].first.constant_value(), Rational(1));
    }
  }
}

TEST(TwoTermConstancy, BrokenClosureIsDetected) {
  std::vector<Rational> c = cumulant_closure(Rational(1), Rational(1), Rational(2), 8).values();
  c[6] += Rational(1, 7);  // c_7
  const auto rows = two_term_constancy(CumulantSpec(c), Rational(0), 6);
  for (int l = 1; l <= 4; ++l) EXPECT_TRUE(rows[l - 1].second) << l;
  EXPECT_FALSE(rows[4].second);
}
