#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pcurv/error.hpp"
#include "pcurv/poly.hpp"

namespace pcurv {

// Laurent series in t known modulo t^precision: sum coeffs[i] t^(low + i).
template <class R>
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int low, std::vector<R> coeffs, int precision) : low_(low), c_(std::move(coeffs)), prec_(precision) {
    normalize();
  }
  static TruncatedSeries zero(int precision) { return TruncatedSeries(precision, {}, precision); }
  static TruncatedSeries from_poly(const Poly<R>& f, int precision) {
    return TruncatedSeries(0, f.truncate(precision).coeffs(), precision);
  }

  int precision() const { return prec_; }
  int low() const { return low_; }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(int k) const {
    if (k >= prec_) throw PrecisionError("series coefficient beyond precision");
    if (k < low_ || k - low_ >= static_cast<int>(c_.size())) return R();
    return c_[k - low_];
  }
  // Exponent of the first nonzero known coefficient.
  std::optional<int> valuation() const {
    if (c_.empty()) return std::nullopt;
    return low_;
  }
  bool is_zero() const { return c_.empty(); }
  // Lower bound for the true valuation.
  int valuation_bound() const { return c_.empty() ? prec_ : low_; }

  // Polynomial in t of the known coefficients; requires low >= 0.
  Poly<R> to_poly() const {
    if (c_.empty()) return Poly<R>();
    if (low_ < 0) throw PreconditionError("series has negative exponents");
    return Poly<R>(c_).mul_xpow(low_);
  }

  TruncatedSeries truncate(int n) const { return TruncatedSeries(low_, c_, std::min(n, prec_)); }
  TruncatedSeries mul_tpow(int k) const { return TruncatedSeries(low_ + k, c_, prec_ + k); }

  TruncatedSeries derivative() const {
    std::vector<R> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = c_[i].times(low_ + static_cast<long long>(i));
    return TruncatedSeries(low_ - 1, std::move(d), prec_ - 1);
  }

  TruncatedSeries inverse() const {
    if (c_.empty()) throw PrecisionError("inverse of a series that is zero to precision");
    if (!c_[0].is_unit()) throw std::domain_error("series leading coefficient is not a unit");
    const int n = prec_ - low_;
    std::vector<R> inv(n);
    R a0 = c_[0].inverse();
    inv[0] = a0;
    for (int k = 1; k < n; ++k) {
      R acc;
      for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) acc += c_[j] * inv[k - j];
      inv[k] = -(acc * a0);
    }
    return TruncatedSeries(-low_, std::move(inv), n - low_);
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (R& a : r.c_) a = -a;
    return r;
  }
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, false); }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, true); }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int prec = std::min(a.prec_ + b.valuation_bound(), b.prec_ + a.valuation_bound());
    if (a.c_.empty() || b.c_.empty()) return zero(prec);
    const int low = a.low_ + b.low_;
    const int n = std::max(prec - low, 0);
    std::vector<R> c(n);
    for (size_t i = 0; i < a.c_.size() && static_cast<int>(i) < n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return TruncatedSeries(low, std::move(c), prec);
  }
  friend TruncatedSeries operator*(const R& s, const TruncatedSeries& a) {
    TruncatedSeries r = a;
    for (R& x : r.c_) x = s * x;
    r.normalize();
    return r;
  }
  // Equality of the known parts up to the smaller precision.
  friend bool agree(const TruncatedSeries& a, const TruncatedSeries& b) { return (a - b).is_zero(); }

 private:
  static TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, bool subtract) {
    const int prec = std::min(a.prec_, b.prec_);
    const int low = std::min(a.low_, b.low_);
    std::vector<R> c(std::max(prec - low, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      int k = a.low_ + static_cast<int>(i) - low;
      if (k < static_cast<int>(c.size())) c[k] += a.c_[i];
    }
    for (size_t i = 0; i < b.c_.size(); ++i) {
      int k = b.low_ + static_cast<int>(i) - low;
      if (k < static_cast<int>(c.size())) c[k] = subtract ? c[k] - b.c_[i] : c[k] + b.c_[i];
    }
    return TruncatedSeries(low, std::move(c), prec);
  }
  void normalize() {
    if (low_ + static_cast<int>(c_.size()) > prec_) c_.resize(std::max(prec_ - low_, 0));
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      low_ = prec_;
      return;
    }
    c_.erase(c_.begin(), c_.begin() + lead);
    low_ += static_cast<int>(lead);
    while (c_.back().is_zero()) c_.pop_back();
  }

  int low_ = 0;
  std::vector<R> c_;
  int prec_ = 0;
};

using SeriesF = TruncatedSeries<Fq>;
using SeriesD = TruncatedSeries<Dual>;

// Expansion of a polynomial at x = center + t, modulo t^precision.
template <class R>
TruncatedSeries<R> taylor_expand(const Poly<R>& f, const R& center, int precision) {
  return TruncatedSeries<R>::from_poly(f.shift(center), precision);
}

// Order of the first nonzero coefficient and whether its body is nonzero.
struct UniformOrder {
  int order;
  bool uniform;
};
UniformOrder uniform_order(const SeriesD& s);

}  // namespace pcurv
