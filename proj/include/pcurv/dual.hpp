#pragma once

#include <iosfwd>

#include "pcurv/field.hpp"

namespace pcurv {

// Element body + slope * eps of F_q[eps]/(eps^2).
struct Dual {
  Fq body, slope;

  Dual() = default;
  Dual(const GaloisField& f, long long n) : body(f, n), slope(f, 0) {}
  explicit Dual(Fq b) : body(b), slope() {}
  Dual(Fq b, Fq s) : body(b), slope(s) {}

  const GaloisField* field() const { return body.field() ? body.field() : slope.field(); }
  bool is_zero() const { return body.is_zero() && slope.is_zero(); }
  bool is_one() const { return body.is_one() && slope.is_zero(); }
  bool is_unit() const { return body.is_unit(); }

  Dual inverse() const {
    Fq bi = body.inverse();
    return {bi, -(slope * bi * bi)};
  }
  Dual times(long long n) const { return {body.times(n), slope.times(n)}; }

  Dual operator-() const { return {-body, -slope}; }
  Dual& operator+=(const Dual& o) {
    body += o.body;
    slope += o.slope;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    body -= o.body;
    slope -= o.slope;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    slope = body * o.slope + slope * o.body;
    body *= o.body;
    return *this;
  }
  Dual& operator/=(const Dual& o) { return *this *= o.inverse(); }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.body == b.body && a.slope == b.slope; }
};

std::ostream& operator<<(std::ostream& os, const Dual& a);

// Uniform access for code templated over Fq and Dual.
inline Fq body_of(const Fq& a) { return a; }
inline Fq body_of(const Dual& a) { return a.body; }

template <class R>
R embed(const Fq& a);
template <>
inline Fq embed<Fq>(const Fq& a) { return a; }
template <>
inline Dual embed<Dual>(const Fq& a) { return Dual(a); }

}  // namespace pcurv
