#pragma once

#include <optional>
#include <vector>

#include "pcurv/series.hpp"

namespace pcurv {

// Square matrix of power series in t, every entry known modulo t^precision.
// Entries are stored as polynomials of degree < precision.
template <class R>
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int size, int precision) : n_(size), prec_(precision), a_(static_cast<size_t>(size) * size) {}
  static SeriesMatrix identity(const GaloisField& f, int size, int precision) {
    SeriesMatrix m(size, precision);
    for (int i = 0; i < size; ++i) m(i, i) = Poly<R>::constant(R(f, 1));
    return m;
  }

  int size() const { return n_; }
  int precision() const { return prec_; }
  Poly<R>& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Poly<R>& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  TruncatedSeries<R> series(int i, int j) const { return TruncatedSeries<R>::from_poly((*this)(i, j), prec_); }
  // Order of an entry, or -1 when it vanishes modulo t^precision.
  int order(int i, int j) const {
    const Poly<R>& e = (*this)(i, j);
    for (int k = 0; k <= e.degree(); ++k)
      if (!e[k].is_zero()) return k;
    return -1;
  }
  void reduce() {
    for (auto& e : a_) e = e.truncate(prec_);
  }
  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    SeriesMatrix c(a.n_, std::min(a.prec_, b.prec_));
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        Poly<R> acc;
        for (int k = 0; k < a.n_; ++k) acc += (a(i, k) * b(k, j)).truncate(c.prec_);
        c(i, j) = acc;
      }
    return c;
  }
  // Agreement modulo t^min(precisions).
  friend bool agree(const SeriesMatrix& a, const SeriesMatrix& b) {
    const int n = std::min(a.prec_, b.prec_);
    for (size_t i = 0; i < a.a_.size(); ++i)
      if (!(a.a_[i].truncate(n) == b.a_[i].truncate(n))) return false;
    return true;
  }

 private:
  int n_ = 0, prec_ = 0;
  std::vector<Poly<R>> a_;
};

// Upper triangular form with diagonal t^e[i] and entries above the diagonal
// of degree < e[j], related to the input by left * S * right.
template <class R>
struct TriangularForm {
  std::vector<int> e;
  SeriesMatrix<R> form;
  SeriesMatrix<R> left;
  SeriesMatrix<R> right;
  // Set by pth_power_reduce when a term of exponent = e_i mod p lies below e_i.
  bool unreachable_terms = false;
};

// left * S * P * U(c) = diag(t^e) with U(c) constant upper unitriangular and
// P the column permutation perm (column j of S*P is column perm[j] of S).
// Over F_q the permutation is always the identity.
template <class R>
struct DiagonalCertificate {
  std::vector<int> e;
  std::vector<std::vector<R>> c;
  SeriesMatrix<R> left;
  std::vector<int> perm;
};

template <class R>
Poly<R> determinant(const SeriesMatrix<R>& s);

template <class R>
TriangularForm<R> triangular_normal_form(const SeriesMatrix<R>& s);

template <class R>
TriangularForm<R> pth_power_reduce(TriangularForm<R> t, int p);

template <class R>
std::optional<DiagonalCertificate<R>> diagonalize_kernel_matrix(const SeriesMatrix<R>& s, int p);

// Expansion of a polynomial matrix at x = center + t.
template <class R>
SeriesMatrix<R> expand_matrix(const std::vector<Poly<R>>& entries, int size, const R& center, int precision) {
  SeriesMatrix<R> m(size, precision);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = entries[static_cast<size_t>(i) * size + j].shift(center).truncate(precision);
  return m;
}

}  // namespace pcurv

#include "pcurv/normal_form_impl.hpp"
