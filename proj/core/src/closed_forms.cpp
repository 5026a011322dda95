// SPDX-License-Identifier: Apache-2.0
#include "levymart/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levymart/errors.hpp"

namespace levymart {

namespace {

constexpr double kPi = std::numbers::pi;

struct Params {
  double c1, c2, c3, c4, chi3, v, alpha;
};

Params params(const GlowneCase& g) {
  return Params{g.c1.to_double(), g.c2.to_double(), g.c3.to_double(), g.c4.to_double(),
                g.chi3.to_double(), g.v.to_double(), g.alpha};
}

double rel_error(double value, double reference) {
  if (!std::isfinite(value)) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

int series_terms(double rho) {
  if (rho <= 0.0) return 30;
  if (rho >= 1.0) return 250;
  const double k = std::ceil(40.0 / std::log(1.0 / rho)) + 10.0;
  return static_cast<int>(std::clamp(k, 30.0, 250.0));
}

double derived_value(const GlowneCase& g, double x, double t) {
  const Params p = params(g);
  switch (g.case_id) {
    case 1: {
      const double a = std::sqrt(p.c4 / (2 * p.c2));
      return std::exp(p.c1 * t * x) * std::pow(std::cos(a * x), -2 * t * p.c2 * p.c2 / p.c4);
    }
    case 2: {
      if (p.chi3 == 0.0) return std::exp(t * (p.c1 * x + p.c2 * x * x / 2));
      const double f = p.c1 * x + p.c2 * (std::expm1(p.chi3 * x) - p.chi3 * x) / (p.chi3 * p.chi3);
      return std::exp(t * f);
    }
    case 3: {
      const double q = p.chi3 / 2;
      return std::exp((p.c1 - p.c2 / q) * t * x) * std::pow(1 - q * x, -p.c2 * t / (q * q));
    }
    case 4: {
      const double q = p.chi3 / (2 * p.alpha);
      const double base = std::cos(x * p.alpha) - q * std::sin(x * p.alpha);
      return std::exp(x * t * (p.c1 - p.c2 * p.chi3 / p.v)) * std::pow(base, -2 * p.c2 * t / p.v);
    }
    case 5: {
      const double q = p.chi3 / (2 * p.alpha);
      const double base = std::cosh(x * p.alpha) - q * std::sinh(x * p.alpha);
      return std::exp(x * t * (p.c1 - p.c2 * p.chi3 / p.v)) * std::pow(base, -2 * p.c2 * t / p.v);
    }
    default:
      throw InvalidArgument("unknown case");
  }
}

std::optional<double> printed_value(const GlowneCase& g, double x, double t) {
  const Params p = params(g);
  switch (g.case_id) {
    case 1: {
      const double a = std::sqrt(p.c4 / (2 * p.c2));
      return std::exp(p.c1 * t * x) * std::pow(std::cos(x * a), -2 * t * p.c2 * p.c2 / p.c4);
    }
    case 2:
      return std::nullopt;
    case 3:
      return std::exp((p.c1 - 2 * p.c3 / p.c2) * t * x) *
             std::pow(1 / (1 - p.c3 * x / (2 * p.c2)), 4 * t * p.c3 * p.c3 / (p.c2 * p.c2));
    case 4:
    case 5: {
      const bool trig = g.case_id == 4;
      const double a = p.alpha;
      const double q = p.chi3 / (2 * a);
      const double tn = trig ? std::tan(x * a) : std::tanh(x * a);
      const double c2x = trig ? std::cos(2 * x * a) : std::cosh(2 * x * a);
      const double drift = p.c1 - p.c3 * p.c2 / (p.c4 * p.c2 - p.c3 * p.c3);
      const double bracket = (1 + q * tn) / (1 - q * tn) /
                             (2 * a * a - p.chi3 * p.chi3 / 2 + (2 * a * a + p.chi3 * p.chi3 / 2) * c2x);
      return std::exp(x * t * drift) * std::pow(bracket, 2 * t / (4 * a * a - p.chi3 * p.chi3));
    }
    default:
      throw InvalidArgument("unknown case");
  }
}

}  // namespace

double convergence_radius(const GlowneCase& g) {
  const Params p = params(g);
  switch (g.case_id) {
    case 1:
      return kPi / 2 * std::sqrt(2 * p.c2 / p.c4);
    case 2:
      return std::numeric_limits<double>::infinity();
    case 3:
      return std::abs(2 / p.chi3);
    case 4: {
      const double q = p.chi3 / (2 * p.alpha);
      return (kPi / 2 - std::abs(std::atan(q))) / p.alpha;
    }
    case 5: {
      const double q = p.chi3 / (2 * p.alpha);
      if (q == 0.0) return kPi / (2 * p.alpha);
      // Nearest zero of cosh(z a) - q sinh(z a): tanh(z a) = 1/q.
      const std::complex<double> z = std::atanh(std::complex<double>(1 / q, 0.0));
      return std::abs(z) / p.alpha;
    }
    default:
      throw InvalidArgument("unknown case");
  }
}

double series_exponential(const GlowneCase& g, double x, double t) {
  const double r = convergence_radius(g);
  if (!(std::abs(x) < r)) throw DomainError("x outside the convergence domain |x| < " + std::to_string(r));
  const int K = std::isinf(r) ? std::max(30, static_cast<int>(std::ceil(3 * std::abs(x * g.chi3.to_double()))) + 40)
                              : series_terms(std::abs(x) / r);
  const std::vector<Rational> a = psi_series(g.chi3, g.v, std::min(K, 250));
  // f(x) = c1 x + c2 sum_k a_k x^{k+1}/(k+1); Horner from the top.
  double acc = 0.0;
  for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) acc = acc * x + a[static_cast<std::size_t>(k)].to_double() / (k + 1);
  const double f = g.c1.to_double() * x + g.c2.to_double() * acc * x;
  return std::exp(t * f);
}

ClosedFormValue closed_form_eval(const GlowneCase& g, double x, double t, double tol) {
  if (!(t > 0.0)) throw DomainError("closed forms need t > 0");
  ClosedFormValue out;
  out.x = x;
  out.t = t;
  out.series = series_exponential(g, x, t);
  out.derived = derived_value(g, x, t);
  out.derived_rel_error = rel_error(out.derived, out.series);
  out.printed = printed_value(g, x, t);
  if (out.printed) {
    out.printed_rel_error = rel_error(*out.printed, out.series);
    out.printed_discrepancy = !(*out.printed_rel_error <= tol);
  }
  return out;
}

ClosedFormValidation validate_closed_forms(const GlowneCase& g, double tol) {
  ClosedFormValidation out;
  out.case_info = g;
  out.tolerance = tol;
  out.radius = convergence_radius(g);
  const std::vector<double> xs = std::isinf(out.radius)
                                     ? std::vector<double>{-1.0, -0.5, 0.5, 1.0}
                                     : std::vector<double>{-out.radius / 2, -out.radius / 4, out.radius / 4,
                                                           out.radius / 2};
  for (double t : {0.5, 1.0, 2.0}) {
    for (double x : xs) {
      ClosedFormValue v = closed_form_eval(g, x, t, tol);
      if (!(v.derived_rel_error <= tol)) out.derived_ok = false;
      if (v.printed_discrepancy) out.printed_discrepancy = true;
      out.points.push_back(v);
    }
  }
  if (out.printed_discrepancy) {
    switch (g.case_id) {
      case 3:
        out.notes.push_back("published case-3 form uses drift c1 - 2 c3/c2 and exponent 4 t c3^2/c2^2; integrating psi "
                            "gives drift c1 - 2 c2^2/c3 and exponent 4 c2^3 t/c3^2");
        break;
      case 4:
      case 5:
        out.notes.push_back("published bracket equals 1/(4 alpha^2 (cos - q sin)^2) up to the hyperbolic variant and "
                            "is not normalised to 1 at x = 0; drift uses c3 c2/(c4 c2 - c3^2) instead of c2 chi3/v");
        break;
      default:
        break;
    }
  }
  if (!out.derived_ok) out.notes.push_back("derived closed form disagrees with the cumulant series");
  return out;
}

double case1_density(double c2, double c4, double y) {
  return std::sqrt(c2 / (2 * c4)) / std::cosh(kPi * y * std::sqrt(2 * c2) / (2 * std::sqrt(c4)));
}

double case1_density_printed(double c2, double c4, double y) {
  return std::sqrt(c4) / (std::sqrt(8 * c2) * std::cosh(kPi * y * std::sqrt(2 * c2) / (2 * std::sqrt(c4))));
}

double density_moment(const std::function<double(double)>& h, int n, double half_width) {
  if (n < 0) throw InvalidArgument("moment order must be nonnegative");
  const auto weighted = [&](double y) {
    const double w = h(y);
    return w == 0.0 ? 0.0 : std::pow(y, n) * w;
  };
  // Split at 0 so each panel sees a monotone tail.
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  return Rule::integrate(weighted, -half_width, 0.0, 20, 1e-14) + Rule::integrate(weighted, 0.0, half_width, 20, 1e-14);
}

}  // namespace levymart
