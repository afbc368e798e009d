#include "pcurv/linalg.hpp"

#include "pcurv/error.hpp"

namespace pcurv {

FqMatrix::FqMatrix(const GaloisField& f, int rows, int cols)
    : f_(&f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Fq(f, 0)) {}

void FqMatrix::append_row(const std::vector<Fq>& row) {
  if (static_cast<int>(row.size()) != cols_) throw PreconditionError("row length mismatch");
  for (const Fq& x : row) a_.push_back(x.field() ? x : Fq(*f_, 0));
  ++rows_;
}

Rref rref(FqMatrix a) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(piv, j));
    Fq inv = a(r, c).inverse();
    for (int j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Fq s = a(i, c);
      for (int j = c; j < a.cols(); ++j) a(i, j) -= s * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

int rank(const FqMatrix& a) { return static_cast<int>(rref(a).pivots.size()); }

std::vector<std::vector<Fq>> nullspace(const FqMatrix& a) {
  Rref r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<Fq>> basis;
  for (int fcol = 0; fcol < a.cols(); ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<Fq> v(a.cols(), Fq(a.field(), 0));
    v[fcol] = Fq(a.field(), 1);
    for (size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.m(static_cast<int>(i), fcol);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve(const FqMatrix& a, const std::vector<Fq>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw PreconditionError("right-hand side length mismatch");
  FqMatrix aug(a.field(), a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i].field() ? b[i] : Fq(a.field(), 0);
  }
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(a.cols(), Fq(a.field(), 0));
  for (size_t i = 0; i < r.pivots.size(); ++i) sol.particular[r.pivots[i]] = r.m(static_cast<int>(i), a.cols());
  sol.kernel = nullspace(a);
  return sol;
}

}  // namespace pcurv
