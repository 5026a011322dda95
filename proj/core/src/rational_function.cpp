// SPDX-License-Identifier: Apache-2.0
#include "levymart/rational_function.hpp"

#include "levymart/errors.hpp"

namespace levymart {

namespace {

const char* const kTime = "t";

MultiPoly in_t(const MultiPoly& p) { return p.lift({kTime}); }

Rational leading(const MultiPoly& p) {
  return p.coefficient({static_cast<std::uint32_t>(p.degree(kTime))});
}

}  // namespace

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(in_t(num)), den_(in_t(den)) {
  if (den_.is_zero()) throw DegenerateSpec("rational function with an identically zero denominator");
  const Rational scale = Rational(1) / leading(den_);
  num_ *= scale;
  den_ *= scale;
}

bool RationalFunction::is_constant() const {
  return (num_.derivative(kTime) * den_ - num_ * den_.derivative(kTime)).is_zero();
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw InvalidArgument("rational function is not constant");
  if (num_.is_zero()) return Rational(0);
  return leading(num_) / leading(den_);
}

Rational RationalFunction::evaluate(const Rational& t) const {
  const Rational d = den_.evaluate_at({{kTime, t}});
  if (d.is_zero()) throw DomainError("rational function evaluated at a pole");
  return num_.evaluate_at({{kTime, t}}) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const MultiPoly& p) {
  return RationalFunction(a.num_ * in_t(p), a.den_);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

std::string RationalFunction::to_string() const {
  const std::string n = num_.is_zero() ? "0" : num_.to_string();
  return "(" + n + ")/(" + den_.to_string() + ")";
}

}  // namespace levymart
