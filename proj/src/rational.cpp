#include "pcurv/rational.hpp"

#include <ostream>

namespace pcurv {

const Fq& PointOnLine::value() const {
  if (!a_) throw PreconditionError("point at infinity has no affine coordinate");
  return *a_;
}

std::ostream& operator<<(std::ostream& os, const PointOnLine& a) {
  if (a.is_infinity()) return os << "inf";
  return os << a.value();
}

RationalMap::RationalMap(PolyF num, PolyF den) {
  if (den.is_zero()) throw std::domain_error("rational map with zero denominator");
  if (num.is_zero()) {
    num_ = PolyF();
    den_ = PolyF::constant(Fq(*den.field(), 1));
    return;
  }
  PolyF g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  Fq s = den_.leading().inverse();
  num_ = s * num_;
  den_ = s * den_;
}

RationalMap RationalMap::mobius(const Fq& a, const Fq& b, const Fq& c, const Fq& d) {
  if ((a * d - b * c).is_zero()) throw PreconditionError("degenerate Mobius transformation");
  return RationalMap(PolyF({b, a}), PolyF({d, c}));
}

PointOnLine RationalMap::eval(const PointOnLine& at) const {
  if (at.is_infinity()) {
    if (num_.degree() > den_.degree()) return PointOnLine::infinity();
    if (num_.degree() < den_.degree()) return PointOnLine(Fq(*field(), 0));
    return PointOnLine(num_.leading() / den_.leading());
  }
  Fq d = den_.eval(at.value());
  if (d.is_zero()) return PointOnLine::infinity();
  return PointOnLine(num_.eval(at.value()) / d);
}

RationalMap RationalMap::derivative() const {
  return RationalMap(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalMap RationalMap::compose(const RationalMap& g) const {
  const int e = degree();
  auto homog = [&](const PolyF& h) {
    PolyF acc;
    for (int i = 0; i <= h.degree(); ++i) acc += h[i] * (g.num_.pow(i) * g.den_.pow(e - i));
    return acc;
  };
  return RationalMap(homog(num_), homog(den_));
}

RationalMap operator+(const RationalMap& a, const RationalMap& b) {
  return RationalMap(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RationalMap operator-(const RationalMap& a, const RationalMap& b) {
  return RationalMap(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RationalMap operator*(const RationalMap& a, const RationalMap& b) {
  return RationalMap(a.num_ * b.num_, a.den_ * b.den_);
}
RationalMap operator/(const RationalMap& a, const RationalMap& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero rational map");
  return RationalMap(a.num_ * b.den_, a.den_ * b.num_);
}

bool is_separable(const RationalMap& f) { return !(f.num().derivative() * f.den() - f.num() * f.den().derivative()).is_zero(); }

int order_at(const RationalMap& f, const PointOnLine& at) {
  if (f.is_zero()) throw PreconditionError("order of the zero map");
  if (at.is_infinity()) return f.den().degree() - f.num().degree();
  return ord_at(f.num(), at.value()) - ord_at(f.den(), at.value());
}

int ram_index(const RationalMap& f, const PointOnLine& at) {
  if (f.is_constant()) throw PreconditionError("ramification index of a constant map");
  if (!is_separable(f)) throw PreconditionError("ramification index of an inseparable map");
  PointOnLine v = f.eval(at);
  const GaloisField& fld = *f.field();
  RationalMap h = v.is_infinity() ? RationalMap::constant(Fq(fld, 1)) / f : f - RationalMap::constant(v.value());
  return order_at(h, at);
}

SeriesF series_expand(const RationalMap& f, const PointOnLine& at, int terms) {
  if (f.is_zero()) return SeriesF::zero(terms);
  PolyF n, d;
  int shift = 0;
  if (at.is_infinity()) {
    std::vector<Fq> rn(f.num().coeffs().rbegin(), f.num().coeffs().rend());
    std::vector<Fq> rd(f.den().coeffs().rbegin(), f.den().coeffs().rend());
    n = PolyF(rn);
    d = PolyF(rd);
    shift = f.den().degree() - f.num().degree();
  } else {
    n = f.num().shift(at.value());
    d = f.den().shift(at.value());
  }
  int vn = 0, vd = 0;
  while (n[vn].is_zero()) ++vn;
  while (d[vd].is_zero()) ++vd;
  std::vector<Fq> nc(n.coeffs().begin() + vn, n.coeffs().end());
  std::vector<Fq> dc(d.coeffs().begin() + vd, d.coeffs().end());
  SeriesF ns(0, nc, terms), ds(0, dc, terms);
  SeriesF s = ns * ds.inverse();
  return s.mul_tpow(shift + vn - vd);
}

}  // namespace pcurv
