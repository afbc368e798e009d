#include "pcurv/kernel_map.hpp"

#include <set>

namespace pcurv {

int BundleParams::degree_bound(int i, int j) const {
  return row_exponents()[i] - col_exponents()[j];
}

void KernelMap::check_shape(const BundleParams& params, const GaloisField& field, const std::vector<Fq>& points,
                            const std::array<PolyF, 4>& g) {
  if (static_cast<int>(field.characteristic()) != params.p) throw PreconditionError("field characteristic differs from p");
  if (params.n < 0 || static_cast<int>(points.size()) != params.n) throw PreconditionError("number of marked points differs from n");
  if (params.delta != 0 && params.delta != 1) throw PreconditionError("delta must be 0 or 1");
  if (params.m * params.p < -params.d || params.m * params.p > params.n * params.p - params.d)
    throw PreconditionError("m violates -d <= mp <= np - d");
  std::set<uint32_t> seen;
  for (const Fq& a : points) {
    if (a.field() != &field) throw PreconditionError("marked point lies in a different field");
    if (!seen.insert(a.value()).second) throw PreconditionError("marked points are not distinct");
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const PolyF& e = g[2 * i + j];
      if (const GaloisField* f = e.field(); f && f != &field) throw PreconditionError("entry lies in a different field");
      if (!e.is_zero() && e.degree() > params.degree_bound(i, j)) throw PreconditionError("entry exceeds its degree bound");
    }
}

KernelMap::KernelMap(const BundleParams& params, const GaloisField& field, std::vector<Fq> points, std::array<PolyF, 4> g)
    : params_(params), field_(&field), points_(std::move(points)), g_(std::move(g)) {
  check_shape(params_, field, points_, g_);
  PolyF det = g_[0] * g_[3] - g_[1] * g_[2];
  PolyF target = power_product(field, points_, params_.p);
  if (det.is_zero() || det.degree() != target.degree()) throw PreconditionError("determinant is not c * prod (x - lambda_i)^p");
  Fq c = det.leading();
  if (!(c * target == det)) throw PreconditionError("determinant is not c * prod (x - lambda_i)^p");
  Fq ci = c.inverse();
  g_[0] = ci * g_[0];
  g_[1] = ci * g_[1];
}

PolyF KernelMap::point_polynomial() const { return power_product(*field_, points_, 1); }

PolyMatrixF chart_at_infinity(const KernelMap& s) {
  const BundleParams& bp = s.params();
  PolyMatrixF out(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const int e = bp.degree_bound(i, j);
      const PolyF& g = s.g(i, j);
      if (e < 0) continue;
      std::vector<Fq> c(e + 1);
      for (int k = 0; k <= g.degree(); ++k) c[e - k] = g[k];
      out(i, j) = PolyF(std::move(c));
    }
  return out;
}

namespace {

bool constant_nonzero(const PolyF& a) { return a.degree() == 0; }

void check_poly_in_xp(const PolyF& a, int bound, int p, const char* what) {
  if (a.is_zero()) return;
  if (a.degree() > bound) throw PreconditionError(std::string(what) + " exceeds its degree bound");
  for (int k = 0; k <= a.degree(); ++k)
    if (k % p != 0 && !a[k].is_zero()) throw PreconditionError(std::string(what) + " is not a polynomial in x^p");
}

}  // namespace

void check_transport(const BundleParams& bp, const TransportElement& t) {
  if (t.m.size() != 2) throw PreconditionError("transport element must be 2x2");
  const PolyF &a = t.m(0, 0), &u = t.m(0, 1), &l = t.m(1, 0), &b = t.m(1, 1);
  if (t.side == Side::Left) {
    if (a.degree() > 0 || b.degree() > 0) throw PreconditionError("left transport diagonal must be scalars");
    if (!u.is_zero() && u.degree() > bp.delta * bp.p - 2 * bp.d) throw PreconditionError("left transport upper-right entry too large");
    if (!l.is_zero() && l.degree() > 2 * bp.d - bp.delta * bp.p) throw PreconditionError("left transport lower-left entry too large");
    if (!constant_nonzero(a * b - u * l)) throw PreconditionError("left transport is not invertible");
    return;
  }
  const int up = (bp.n - bp.delta - 2 * bp.m) * bp.p;
  const int low = (2 * bp.m - bp.n + bp.delta) * bp.p;
  if (a.degree() > 0 || b.degree() > 0) throw PreconditionError("right transport diagonal must be scalars");
  check_poly_in_xp(u, up, bp.p, "right transport upper-right entry");
  check_poly_in_xp(l, low, bp.p, "right transport lower-left entry");
  PolyF det = a * b - u * l;
  if (det.degree() != 0) throw PreconditionError("right transport is not invertible");
}

KernelMap apply_transport(const KernelMap& s, const TransportElement& t) {
  check_transport(s.params(), t);
  PolyMatrixF r = t.side == Side::Left ? t.m * s.matrix() : s.matrix() * t.m;
  return KernelMap(s.params(), s.field(), s.points(), {r(0, 0), r(0, 1), r(1, 0), r(1, 1)});
}

}  // namespace pcurv
