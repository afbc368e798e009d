#pragma once

#include <vector>

#include "pcurv/poly.hpp"

namespace pcurv {

// Square matrix of polynomials.
template <class R>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(int size) : n_(size), a_(static_cast<size_t>(size) * size) {}
  PolyMatrix(int size, std::vector<Poly<R>> entries) : n_(size), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(size) * size) throw PreconditionError("matrix entry count mismatch");
  }
  static PolyMatrix identity(const GaloisField& f, int size) {
    PolyMatrix m(size);
    for (int i = 0; i < size; ++i) m(i, i) = Poly<R>::constant(R(f, 1));
    return m;
  }

  int size() const { return n_; }
  Poly<R>& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Poly<R>& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<Poly<R>>& entries() const { return a_; }
  const GaloisField* field() const {
    for (const auto& e : a_)
      if (const GaloisField* f = e.field()) return f;
    return nullptr;
  }

  PolyMatrix derivative() const {
    PolyMatrix d(n_);
    for (size_t i = 0; i < a_.size(); ++i) d.a_[i] = a_[i].derivative();
    return d;
  }
  Poly<R> det() const {
    std::vector<int> cols(n_);
    for (int i = 0; i < n_; ++i) cols[i] = i;
    return det_rec(cols, 0);
  }
  // adj * M = M * adj = det * I.
  PolyMatrix adjugate() const {
    PolyMatrix adj(n_);
    if (n_ == 1) {
      adj(0, 0) = Poly<R>::constant(R(*field(), 1));
      return adj;
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        PolyMatrix minor(n_ - 1);
        for (int r = 0, rr = 0; r < n_; ++r) {
          if (r == j) continue;
          for (int c = 0, cc = 0; c < n_; ++c) {
            if (c == i) continue;
            minor(rr, cc++) = (*this)(r, c);
          }
          ++rr;
        }
        Poly<R> m = minor.det();
        adj(i, j) = (i + j) % 2 ? -m : m;
      }
    return adj;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        Poly<R> acc;
        for (int k = 0; k < a.n_; ++k) acc += a(i, k) * b(k, j);
        c(i, j) = acc;
      }
    return c;
  }
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix c(a.n_);
    for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix c(a.n_);
    for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
  }
  friend PolyMatrix operator*(const Poly<R>& s, const PolyMatrix& a) {
    PolyMatrix c(a.n_);
    for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
    return c;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

 private:
  Poly<R> det_rec(std::vector<int>& cols, int row) const {
    if (row == n_) return Poly<R>::constant(R(*field(), 1));
    Poly<R> acc;
    int sign = 1;
    for (size_t k = 0; k < cols.size(); ++k) {
      int c = cols[k];
      if (!(*this)(row, c).is_zero()) {
        cols.erase(cols.begin() + static_cast<long>(k));
        Poly<R> term = (*this)(row, c) * det_rec(cols, row + 1);
        cols.insert(cols.begin() + static_cast<long>(k), c);
        acc = sign > 0 ? acc + term : acc - term;
      }
      sign = -sign;
    }
    return acc;
  }

  int n_ = 0;
  std::vector<Poly<R>> a_;
};

using PolyMatrixF = PolyMatrix<Fq>;
using PolyMatrixD = PolyMatrix<Dual>;

}  // namespace pcurv
