#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pcurv/dual.hpp"
#include "pcurv/error.hpp"
#include "pcurv/field.hpp"

namespace pcurv {

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
template <class R>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const R& a) { return Poly(std::vector<R>{a}); }
  static Poly monomial(const R& a, int deg) {
    std::vector<R> c(deg + 1);
    c[deg] = a;
    return Poly(std::move(c));
  }
  static Poly x(const GaloisField& f) { return monomial(R(f, 1), 1); }
  // Integer coefficients reduced into f, low to high.
  static Poly from_ints(const GaloisField& f, std::initializer_list<long long> coeffs) {
    std::vector<R> c;
    for (long long v : coeffs) c.push_back(R(f, v));
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coeffs() const { return c_; }
  R operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : R(); }
  R leading() const { return c_.empty() ? R() : c_.back(); }
  const GaloisField* field() const {
    for (const R& a : c_)
      if (a.field()) return a.field();
    return nullptr;
  }

  R eval(const R& x) const {
    R acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    std::vector<R> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i].times(static_cast<long long>(i)));
    return Poly(std::move(d));
  }

  // f(x + a).
  Poly shift(const R& a) const {
    Poly out;
    Poly lin({a, R(*field_or(a), 1)});
    for (size_t i = c_.size(); i-- > 0;) out = out * lin + constant(c_[i]);
    return out;
  }

  // x^k * f.
  Poly mul_xpow(int k) const {
    if (is_zero()) return *this;
    std::vector<R> c(k, R());
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  // Coefficients of degree < n.
  Poly truncate(int n) const {
    std::vector<R> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), std::max(n, 0)));
    return Poly(std::move(c));
  }

  // f(x^k).
  Poly inflate(int k) const {
    if (is_zero()) return *this;
    std::vector<R> c(static_cast<size_t>(degree()) * k + 1);
    for (size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return Poly(std::move(c));
  }

  Poly operator-() const {
    Poly r = *this;
    for (R& a : r.c_) a = -a;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const R& s, Poly a) {
    for (R& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned e) const {
    if (is_zero()) return Poly();
    Poly result = constant(R(*field_or(R()), 1));
    Poly base = *this;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  // Division with remainder; the divisor must have a unit leading coefficient.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (!b.leading().is_unit()) throw std::domain_error("polynomial divisor has non-unit leading coefficient");
    R inv = b.leading().inverse();
    std::vector<R> r = a.c_;
    const int db = b.degree();
    std::vector<R> q(std::max<int>(a.degree() - db + 1, 0));
    for (int i = a.degree(); i >= db; --i) {
      R coef = r[i] * inv;
      q[i - db] = coef;
      if (coef.is_zero()) continue;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= coef * b.c_[j];
    }
    r.resize(std::min<size_t>(r.size(), std::max(db, 0)));
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  const GaloisField* field_or(const R& a) const {
    const GaloisField* f = field();
    if (!f) f = a.field();
    if (!f) throw PreconditionError("polynomial has no field context");
    return f;
  }

  std::vector<R> c_;
};

using PolyF = Poly<Fq>;
using PolyD = Poly<Dual>;

inline PolyF body_of(const PolyD& a) {
  std::vector<Fq> c;
  for (const Dual& x : a.coeffs()) c.push_back(x.body);
  return PolyF(std::move(c));
}
inline PolyF slope_of(const PolyD& a) {
  std::vector<Fq> c;
  for (const Dual& x : a.coeffs()) c.push_back(x.slope);
  return PolyF(std::move(c));
}
inline PolyD make_dual(const PolyF& body, const PolyF& slope) {
  size_t n = std::max(body.coeffs().size(), slope.coeffs().size());
  std::vector<Dual> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = Dual(body[static_cast<int>(i)], slope[static_cast<int>(i)]);
  return PolyD(std::move(c));
}
inline PolyF body_of(const PolyF& a) { return a; }

// Algorithms over F_q[x].
PolyF monic(const PolyF& a);
PolyF gcd(const PolyF& a, const PolyF& b);
struct ExtGcd {
  PolyF g, u, v;  // g = u a + v b, g monic (zero when a = b = 0)
};
ExtGcd ext_gcd(const PolyF& a, const PolyF& b);
bool divides(const PolyF& d, const PolyF& a);
// Multiplicity of the root a (infinite multiplicity reported as -1 for the zero polynomial).
int ord_at(const PolyF& f, const Fq& a);
// The unique r with deg r < deg(prod m_i) and r = r_i mod m_i; moduli pairwise coprime.
PolyF crt(const std::vector<PolyF>& residues, const std::vector<PolyF>& moduli);
// prod (x - a_i)^e.
PolyF power_product(const GaloisField& f, const std::vector<Fq>& roots, int e);
// True when every exponent with a nonzero coefficient is divisible by p.
bool is_pth_power_poly(const PolyF& f);

}  // namespace pcurv
