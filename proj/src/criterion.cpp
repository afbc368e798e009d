#include "pcurv/criterion.hpp"

#include "pcurv/linalg.hpp"

namespace pcurv {
namespace {

template <class R>
void check_det_order(const SeriesMatrix<R>& s, int p) {
  if (s.size() != 2) throw PreconditionError("column constant needs a 2x2 matrix");
  if (s.precision() <= p) throw PrecisionError("precision must exceed p");
  Poly<R> det = determinant(s);
  for (int k = 0; k < p; ++k)
    if (!det[k].is_zero()) throw PreconditionError("determinant does not vanish to order p");
  if (det[p].is_zero()) throw PreconditionError("determinant vanishes to order greater than p");
  if (!det[p].is_unit()) throw PreconditionError("determinant does not vanish uniformly to order p");
}

template <class R>
int column_order(const SeriesMatrix<R>& s, int col) {
  int a = -1;
  for (int i = 0; i < 2; ++i) {
    int o = s.order(i, col);
    if (o >= 0 && (a < 0 || o < a)) a = o;
  }
  return a < 0 ? s.precision() : a;
}

// Unknowns: the coordinates of c over F_q (one for F_q, two for k[eps]).
void add_equations(FqMatrix& a, std::vector<Fq>& b, const Fq& u, const Fq& v) {
  // u c = v
  a.append_row({u});
  b.push_back(v);
}
void add_equations(FqMatrix& a, std::vector<Fq>& b, const Dual& u, const Dual& v) {
  // (u0 + eps u1)(c0 + eps c1) = v0 + eps v1
  a.append_row({u.body, Fq(a.field(), 0)});
  b.push_back(v.body);
  a.append_row({u.slope, u.body});
  b.push_back(v.slope);
}
template <class R>
constexpr int unknowns() {
  return std::is_same_v<R, Dual> ? 2 : 1;
}
Fq assemble(const std::vector<Fq>& x, Fq*) { return x[0]; }
Dual assemble(const std::vector<Fq>& x, Dual*) { return Dual(x[0], x[1]); }

template <class R>
const GaloisField& any_field(const SeriesMatrix<R>& s) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (const GaloisField* f = s(i, j).field()) return *f;
  throw PreconditionError("series matrix is zero");
}

}  // namespace

const char* to_string(Determinacy d) {
  switch (d) {
    case Determinacy::Unique: return "unique";
    case Determinacy::Arbitrary: return "arbitrary";
    case Determinacy::Partial: return "partial";
    case Determinacy::None: return "none";
  }
  return "none";
}

template <class R>
ColumnConstant<R> find_column_constant(const SeriesMatrix<R>& s, int p, bool mirror) {
  check_det_order(s, p);
  const GaloisField& f = any_field(s);
  const int fixed = mirror ? 1 : 0, moved = mirror ? 0 : 1;
  const int a = column_order(s, fixed);
  FqMatrix lhs(f, 0, unknowns<R>());
  std::vector<Fq> rhs;
  for (int k = 0; k < p - a; ++k)
    for (int i = 0; i < 2; ++i) add_equations(lhs, rhs, s(i, fixed)[k], s(i, moved)[k]);
  ColumnConstant<R> out;
  auto sol = solve(lhs, rhs);
  if (!sol) return out;
  out.value = assemble(sol->particular, static_cast<R*>(nullptr));
  const int dim = static_cast<int>(sol->kernel.size());
  out.determinacy = dim == 0 ? Determinacy::Unique : dim == unknowns<R>() ? Determinacy::Arbitrary : Determinacy::Partial;
  return out;
}

template ColumnConstant<Fq> find_column_constant(const SeriesMatrix<Fq>&, int, bool);
template ColumnConstant<Dual> find_column_constant(const SeriesMatrix<Dual>&, int, bool);

SeriesMatrix<Fq> local_expansion(const KernelMap& s, const PointOnLine& at, int precision) {
  if (at.is_infinity()) return expand_matrix(chart_at_infinity(s).entries(), 2, Fq(s.field(), 0), precision);
  return expand_matrix(s.matrix().entries(), 2, at.value(), precision);
}

ColumnConstant<Fq> find_column_constant(const KernelMap& s, const PointOnLine& at, bool mirror) {
  const int p = s.params().p;
  ColumnConstant<Fq> c = find_column_constant(local_expansion(s, at, 2 * p + 2), p, mirror);
  c.point = at;
  return c;
}

bool rank2_pole_ok(const KernelMap& s, const PointOnLine& at) {
  return find_column_constant(s, at, false).determinacy != Determinacy::None ||
         find_column_constant(s, at, true).determinacy != Determinacy::None;
}

}  // namespace pcurv
