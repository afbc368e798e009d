#pragma once

#include <optional>
#include <vector>

#include "pcurv/field.hpp"

namespace pcurv {

// Dense matrix over F_q.
class FqMatrix {
 public:
  FqMatrix(const GaloisField& f, int rows, int cols);

  const GaloisField& field() const { return *f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Fq& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Fq& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  void append_row(const std::vector<Fq>& row);

 private:
  const GaloisField* f_;
  int rows_, cols_;
  std::vector<Fq> a_;
};

struct Rref {
  FqMatrix m;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

Rref rref(FqMatrix a);
int rank(const FqMatrix& a);
// Basis of {v : A v = 0}.
std::vector<std::vector<Fq>> nullspace(const FqMatrix& a);

struct AffineSolution {
  std::vector<Fq> particular;
  std::vector<std::vector<Fq>> kernel;
};
// Solutions of A v = b, or nullopt when inconsistent.
std::optional<AffineSolution> solve(const FqMatrix& a, const std::vector<Fq>& b);

// Projective points of span(basis), each normalised so the first nonzero
// coordinate is 1, enumerated in a fixed order. Calls visit until it returns false.
template <class Visit>
void for_each_projective_point(const GaloisField& f, const std::vector<std::vector<Fq>>& basis, Visit visit);

}  // namespace pcurv

#include "pcurv/linalg_impl.hpp"
