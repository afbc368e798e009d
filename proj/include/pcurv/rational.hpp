#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "pcurv/poly.hpp"
#include "pcurv/series.hpp"

namespace pcurv {

// A point of P^1(F_q).
class PointOnLine {
 public:
  PointOnLine() = default;  // infinity
  explicit PointOnLine(Fq a) : a_(a) {}
  static PointOnLine infinity() { return PointOnLine(); }

  bool is_infinity() const { return !a_.has_value(); }
  const Fq& value() const;
  friend bool operator==(const PointOnLine& a, const PointOnLine& b) { return a.a_ == b.a_; }

 private:
  std::optional<Fq> a_;
};

std::ostream& operator<<(std::ostream& os, const PointOnLine& a);

// num/den in lowest terms with den monic.
class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(PolyF num, PolyF den);
  static RationalMap constant(const Fq& a) { return RationalMap(PolyF::constant(a), PolyF::constant(Fq(*a.field(), 1))); }
  static RationalMap identity(const GaloisField& f) { return RationalMap(PolyF::x(f), PolyF::constant(Fq(f, 1))); }
  // (a y + b) / (c y + d) as a map y -> value.
  static RationalMap mobius(const Fq& a, const Fq& b, const Fq& c, const Fq& d);

  const PolyF& num() const { return num_; }
  const PolyF& den() const { return den_; }
  const GaloisField* field() const { return den_.field(); }
  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  PointOnLine eval(const PointOnLine& at) const;
  RationalMap derivative() const;
  // this(g(x)).
  RationalMap compose(const RationalMap& g) const;

  friend RationalMap operator+(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator-(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator*(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator/(const RationalMap& a, const RationalMap& b);
  RationalMap operator-() const { return RationalMap(-num_, den_); }
  friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  PolyF num_, den_;
};

bool is_separable(const RationalMap& f);
// Ramification index of f at a point; f must be separable and non-constant.
int ram_index(const RationalMap& f, const PointOnLine& at);
// Laurent expansion of f at a point in the local coordinate (x - a, or 1/x at
// infinity), with `terms` coefficients starting at the order of f.
SeriesF series_expand(const RationalMap& f, const PointOnLine& at, int terms);
// Order of vanishing of f at a point (negative for poles).
int order_at(const RationalMap& f, const PointOnLine& at);

}  // namespace pcurv
