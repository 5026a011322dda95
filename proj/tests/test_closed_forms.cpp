// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "levymart/closed_forms.hpp"
#include "levymart/errors.hpp"
#include "levymart/moment_engine.hpp"

using namespace levymart;

namespace {

GlowneCase cls(long c2, long c3, Rational c4, Rational c1 = Rational(0)) {
  return glowne_classify(Rational(c2), Rational(c3), c4, c1);
}

// Truncated Taylor sum of exp(t f) from moments: sum_n m_n(t) x^n / n!.
double mgf_from_moments(const CumulantSpec& spec, double x, double t, int n_max) {
  const MomentTable table = moments(spec, n_max);
  double acc = 0.0, xn = 1.0, fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      xn *= x;
      fact *= n;
    }
    acc += table.m(n).evaluate_double({{kT, t}}) * xn / fact;
  }
  return acc;
}

}  // namespace

TEST(ClosedForms, ValueAtZeroIsOne) {
  for (const GlowneCase& g : {cls(1, 0, Rational(2)), cls(1, 1, Rational(1)), cls(1, 2, Rational(6)),
                              cls(1, 1, Rational(2)), cls(1, 2, Rational(5))}) {
    for (double t : {0.3, 1.0, 4.0}) {
      const ClosedFormValue v = closed_form_eval(g, 0.0, t);
      EXPECT_DOUBLE_EQ(v.series, 1.0);
      EXPECT_DOUBLE_EQ(v.derived, 1.0);
    }
  }
}

TEST(ClosedForms, Radii) {
  EXPECT_NEAR(convergence_radius(cls(1, 0, Rational(2))), std::numbers::pi / 2, 1e-15);
  EXPECT_TRUE(std::isinf(convergence_radius(cls(1, 1, Rational(1)))));
  EXPECT_NEAR(convergence_radius(cls(1, 2, Rational(6))), 1.0, 1e-15);
  // (1,1,2): alpha = 1/2, q = 1, tan(x/2) = 1 first at x = pi/2.
  EXPECT_NEAR(convergence_radius(cls(1, 1, Rational(2))), std::numbers::pi / 2, 1e-14);
}

TEST(ClosedForms, SeriesMatchesMomentTaylorSum) {
  // Independent route: Taylor sum of the moment polynomials at a point well inside the radius.
  for (const GlowneCase& g : {cls(1, 0, Rational(2)), cls(2, 3, Rational(9, 2), Rational(1, 2)), cls(1, 2, Rational(6)),
                              cls(1, 1, Rational(2)), cls(1, 2, Rational(5))}) {
    const CumulantSpec spec = ode_series(g.c2, g.c3, g.c4, 40, g.c1);
    const double x = 0.15 * std::min(convergence_radius(g), 2.0);
    EXPECT_NEAR(series_exponential(g, x, 0.7), mgf_from_moments(spec, x, 0.7, 40), 1e-12) << g.case_id;
  }
}

TEST(ClosedForms, DerivedFormsAgreeWithSeries) {
  const std::vector<GlowneCase> cases{cls(1, 0, Rational(2)), cls(2, 0, Rational(1)),   cls(1, 1, Rational(1)),
                                      cls(1, 0, Rational(0)), cls(2, 3, Rational(9, 2)), cls(1, 2, Rational(6)),
                                      cls(2, 2, Rational(3)), cls(1, 1, Rational(2)),   cls(1, 2, Rational(5)),
                                      cls(3, -2, Rational(7), Rational(-1, 2))};
  for (const GlowneCase& g : cases) {
    const ClosedFormValidation v = validate_closed_forms(g);
    EXPECT_TRUE(v.derived_ok) << g.case_id;
    EXPECT_EQ(v.points.size(), 12u);
  }
}

TEST(ClosedForms, PublishedFormsFlaggedWhereTheyDisagree) {
  EXPECT_FALSE(validate_closed_forms(cls(1, 0, Rational(2), Rational(1))).printed_discrepancy);
  EXPECT_FALSE(validate_closed_forms(cls(1, 1, Rational(1))).printed_discrepancy);
  const ClosedFormValidation c3 = validate_closed_forms(cls(1, 2, Rational(6)));
  EXPECT_TRUE(c3.printed_discrepancy);
  EXPECT_FALSE(c3.notes.empty());
  EXPECT_TRUE(validate_closed_forms(cls(1, 1, Rational(2))).printed_discrepancy);
  EXPECT_TRUE(validate_closed_forms(cls(1, 2, Rational(5))).printed_discrepancy);
}

TEST(ClosedForms, DomainErrors) {
  const GlowneCase g = cls(1, 0, Rational(2));
  EXPECT_THROW(closed_form_eval(g, 1.6, 1.0), DomainError);
  EXPECT_THROW(closed_form_eval(g, -1.6, 1.0), DomainError);
  EXPECT_THROW(closed_form_eval(g, 0.1, 0.0), DomainError);
  EXPECT_THROW(closed_form_eval(cls(1, 2, Rational(6)), 1.0, 1.0), DomainError);
}

TEST(CaseOneDensity, MomentsMatchClosureSpec) {
  const CumulantSpec spec = cumulant_closure(Rational(1), Rational(0), Rational(2), 6);
  const MomentTable table = moments(spec, 6);
  const auto h = [](double y) { return case1_density(1, 2, y); };
  EXPECT_NEAR(density_moment(h, 0), 1.0, 1e-10);
  for (int n : {2, 4, 6}) {
    const double m = table.m(n).evaluate_double({{kT, 1.0}});
    EXPECT_NEAR(density_moment(h, n), m, 1e-9 * m) << n;
  }
  EXPECT_DOUBLE_EQ(table.m(4).evaluate_double({{kT, 1.0}}), 5.0);
  EXPECT_DOUBLE_EQ(table.m(6).evaluate_double({{kT, 1.0}}), 61.0);
}

TEST(CaseOneDensity, GeneralParametersAndPublishedConstant) {
  // t = c4/(2 c2^2) = 3/2 for (c2, c4) = (1, 3).
  const CumulantSpec spec = cumulant_closure(Rational(1), Rational(0), Rational(3), 4);
  const MomentTable table = moments(spec, 4);
  const auto h = [](double y) { return case1_density(1, 3, y); };
  const auto hp = [](double y) { return case1_density_printed(1, 3, y); };
  EXPECT_NEAR(density_moment(h, 0), 1.0, 1e-10);
  EXPECT_NEAR(density_moment(h, 2), table.m(2).evaluate_double({{kT, 1.5}}), 1e-9);
  EXPECT_NEAR(density_moment(h, 4), table.m(4).evaluate_double({{kT, 1.5}}), 1e-8);
  EXPECT_NEAR(density_moment(hp, 0), 1.5, 1e-10);
  // The two constants coincide exactly when c4 = 2 c2.
  EXPECT_DOUBLE_EQ(case1_density(3, 6, 0.7), case1_density_printed(3, 6, 0.7));
}
