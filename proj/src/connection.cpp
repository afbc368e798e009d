#include "pcurv/connection.hpp"

#include <algorithm>

#include "pcurv/linalg.hpp"

namespace pcurv {
namespace {

std::vector<RationalMap> minus_derivative_times_inverse(const PolyMatrixF& s, const GaloisField& f) {
  const int r = s.size();
  PolyF det = s.det();
  if (det.is_zero()) throw PreconditionError("matrix is not generically invertible");
  PolyMatrixF num = s.derivative() * s.adjugate();
  std::vector<RationalMap> out;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out.push_back(RationalMap(-num(i, j), det));
  (void)f;
  return out;
}

// T_inf(y) = -T(1/y) / y^2.
std::vector<RationalMap> trivial_chart_at_infinity(const std::vector<RationalMap>& t, const GaloisField& f) {
  RationalMap inv_y(PolyF::constant(Fq(f, 1)), PolyF::x(f));
  RationalMap scale(PolyF::constant(Fq(f, -1)), PolyF::monomial(Fq(f, 1), 2));
  std::vector<RationalMap> out;
  for (const auto& e : t) out.push_back(e.is_zero() ? e : e.compose(inv_y) * scale);
  return out;
}

// F_q-rational roots with multiplicities.
std::vector<std::pair<Fq, int>> rational_roots(const PolyF& a, const GaloisField& f) {
  std::vector<std::pair<Fq, int>> out;
  if (a.degree() <= 0) return out;
  for (const Fq& x : elements(f))
    if (a.eval(x).is_zero()) out.push_back({x, ord_at(a, x)});
  return out;
}

int pole_order_at_zero(const RationalMap& e) {
  if (e.is_zero()) return 0;
  return std::max(0, ord_at(e.den(), Fq(*e.field(), 0)));
}

const GaloisField& field_of(const ConnectionMatrix& t) {
  for (const auto& e : t.x_chart)
    if (const GaloisField* f = e.field()) return *f;
  throw PreconditionError("connection matrix has no field context");
}

int representative(const Fq& a, int p) {
  // Elements of the prime field are packed as 0..p-1.
  return static_cast<int>(a.value()) < p ? static_cast<int>(a.value()) : -1;
}

// Sum of representatives of -eigenvalues, or -1 if some eigenvalue is not in F_p.
int saturation_sum(const ResidueData& r, int p, int rank) {
  if (!r.split || static_cast<int>(r.eigenvalues.size()) != rank) return -1;
  int sum = 0;
  for (const Fq& e : r.eigenvalues) {
    int v = representative(-e, p);
    if (v < 0) return -1;
    sum += v;
  }
  return sum;
}

bool curvature_route(const ConnectionMatrix& t, const PolyF& det, std::optional<int> det_order_at_infinity, int p) {
  const GaloisField& f = field_of(t);
  PoleDivisor poles = pole_divisor(t);
  if (poles.max_order() > 1 || !poles.irrational_simple) return false;
  if (!is_zero_matrix(p_curvature(t))) return false;
  auto roots = rational_roots(det, f);
  int total = 0;
  for (auto& [a, k] : roots) total += k;
  if (total != det.degree()) throw PreconditionError("determinant has zeros that are not F_q-rational");
  for (auto& [a, k] : roots)
    if (saturation_sum(residue(t, PointOnLine(a)), p, t.rank) != k) return false;
  if (det_order_at_infinity && saturation_sum(residue(t, PointOnLine::infinity()), p, t.rank) != *det_order_at_infinity)
    return false;
  return true;
}

std::optional<DiagonalCertificate<Fq>> local_certificate(const PolyMatrixF& s, const Fq& at, int det_order, int p) {
  const int prec = default_precision(p, det_order);
  return diagonalize_kernel_matrix(expand_matrix(s.entries(), s.size(), at, prec), p);
}

}  // namespace

int default_precision(int p, int det_order) { return std::max(2 * p + 2, det_order + 2); }

int PoleDivisor::max_order() const {
  int m = irrational.degree() > 0 ? (irrational_simple ? 1 : 2) : 0;
  for (auto& [pt, k] : points) m = std::max(m, k);
  return m;
}

ConnectionMatrix connection_from_matrix(int rank, std::vector<RationalMap> entries) {
  if (static_cast<int>(entries.size()) != rank * rank) throw PreconditionError("connection matrix entry count mismatch");
  ConnectionMatrix t;
  t.rank = rank;
  t.x_chart = std::move(entries);
  t.inf_chart = trivial_chart_at_infinity(t.x_chart, field_of(t));
  return t;
}

ConnectionMatrix connection_matrix(const PolyMatrixF& s) {
  const GaloisField* f = s.field();
  if (!f) throw PreconditionError("matrix is zero");
  return connection_from_matrix(s.size(), minus_derivative_times_inverse(s, *f));
}

ConnectionMatrix connection_matrix(const KernelMap& s) {
  ConnectionMatrix t;
  t.rank = 2;
  t.x_chart = minus_derivative_times_inverse(s.matrix(), s.field());
  t.inf_chart = minus_derivative_times_inverse(chart_at_infinity(s), s.field());
  return t;
}

PoleDivisor pole_divisor(const ConnectionMatrix& t) {
  const GaloisField& f = field_of(t);
  PolyF l = PolyF::constant(Fq(f, 1));
  for (const auto& e : t.x_chart) l = l * (e.den() / gcd(l, e.den()));
  PoleDivisor out;
  PolyF rest = l;
  for (auto& [a, k] : rational_roots(l, f)) {
    out.points.push_back({PointOnLine(a), k});
    rest = rest / PolyF({-a, Fq(f, 1)}).pow(k);
  }
  out.irrational = monic(rest);
  out.irrational_simple = rest.degree() <= 0 || gcd(rest, rest.derivative()).degree() == 0;
  int inf = 0;
  for (const auto& e : t.inf_chart) inf = std::max(inf, pole_order_at_zero(e));
  if (inf > 0) out.points.push_back({PointOnLine::infinity(), inf});
  return out;
}

ResidueData residue(const ConnectionMatrix& t, const PointOnLine& at) {
  const GaloisField& f = field_of(t);
  const int r = t.rank;
  const std::vector<RationalMap>& chart = at.is_infinity() ? t.inf_chart : t.x_chart;
  const Fq center = at.is_infinity() ? Fq(f, 0) : at.value();
  ResidueData out;
  for (const auto& e : chart) {
    if (e.is_zero()) {
      out.matrix.push_back(Fq(f, 0));
      continue;
    }
    int ord = ord_at(e.num(), center) - ord_at(e.den(), center);
    if (ord < -1) throw PreconditionError("residue at a pole of order greater than one");
    if (ord >= 0) {
      out.matrix.push_back(Fq(f, 0));
      continue;
    }
    // (x - a) num / den at a: leading coefficients of the shifted expansions.
    PolyF n = e.num().shift(center), d = e.den().shift(center);
    out.matrix.push_back(n[0] / d[1]);
  }
  PolyMatrixF xa(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Fq a = out.matrix[static_cast<size_t>(i) * r + j];
      xa(i, j) = i == j ? PolyF({-a, Fq(f, 1)}) : PolyF::constant(-a);
    }
  PolyF charpoly = xa.det();
  int mult_total = 0;
  bool diag = true;
  for (auto& [lam, k] : rational_roots(charpoly, f)) {
    for (int i = 0; i < k; ++i) out.eigenvalues.push_back(lam);
    mult_total += k;
    FqMatrix shifted(f, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) shifted(i, j) = out.matrix[static_cast<size_t>(i) * r + j] - (i == j ? lam : Fq(f, 0));
    if (r - rank(shifted) != k) diag = false;
  }
  out.split = mult_total == r;
  out.diagonalizable = out.split && diag;
  return out;
}

std::vector<RationalMap> p_curvature(const ConnectionMatrix& t) {
  const GaloisField& f = field_of(t);
  const int r = t.rank, p = static_cast<int>(f.characteristic());
  PolyF d = PolyF::constant(Fq(f, 1));
  for (const auto& e : t.x_chart) d = d * (e.den() / gcd(d, e.den()));
  PolyMatrixF num(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const RationalMap& e = t(i, j);
      num(i, j) = e.num() * (d / e.den());
    }
  // B_k = P_k / d^k with B_1 = T and B_{k+1} = B_k' + T B_k.
  PolyMatrixF pk = num;
  const PolyF dd = d.derivative();
  for (int k = 1; k < p; ++k) {
    PolyMatrixF next = d * pk.derivative() - Fq(f, k) * dd * pk;
    next = next + num * pk;
    pk = next;
  }
  PolyF dp = d.pow(p);
  std::vector<RationalMap> out;
  for (const auto& e : pk.entries()) out.push_back(RationalMap(e, dp));
  return out;
}

bool is_zero_matrix(const std::vector<RationalMap>& m) {
  return std::all_of(m.begin(), m.end(), [](const RationalMap& e) { return e.is_zero(); });
}

LogVanishingReport is_log_vanishing(const KernelMap& s) {
  const int p = s.params().p;
  LogVanishingReport out;
  out.valid = true;
  for (const Fq& a : s.points()) {
    auto cert = local_certificate(s.matrix(), a, p, p);
    out.valid = out.valid && cert.has_value();
    out.poles.push_back({PointOnLine(a), std::move(cert)});
  }
  PolyMatrixF inf = chart_at_infinity(s);
  PolyF dinf = inf.det();
  const int ord_inf = ord_at(dinf, Fq(s.field(), 0));
  if (ord_inf > 0) {
    auto cert = local_certificate(inf, Fq(s.field(), 0), ord_inf, p);
    out.valid = out.valid && cert.has_value();
    out.poles.push_back({PointOnLine::infinity(), std::move(cert)});
  }
  return out;
}

LogVanishingReport is_log_vanishing(const PolyMatrixF& s) {
  const GaloisField* f = s.field();
  if (!f) throw PreconditionError("matrix is zero");
  const int p = static_cast<int>(f->characteristic());
  PolyF det = s.det();
  if (det.is_zero()) throw PreconditionError("matrix is not generically invertible");
  auto roots = rational_roots(det, *f);
  int total = 0;
  for (auto& [a, k] : roots) total += k;
  if (total != det.degree()) throw PreconditionError("determinant has zeros that are not F_q-rational");
  LogVanishingReport out;
  out.valid = true;
  for (auto& [a, k] : roots) {
    auto cert = local_certificate(s, a, k, p);
    out.valid = out.valid && cert.has_value();
    out.poles.push_back({PointOnLine(a), std::move(cert)});
  }
  return out;
}

bool log_vanishing_by_curvature(const KernelMap& s) {
  PolyF dinf = chart_at_infinity(s).det();
  return curvature_route(connection_matrix(s), s.matrix().det(), ord_at(dinf, Fq(s.field(), 0)), s.params().p);
}

bool log_vanishing_by_curvature(const PolyMatrixF& s) {
  const GaloisField* f = s.field();
  if (!f) throw PreconditionError("matrix is zero");
  ConnectionMatrix t = connection_matrix(s);
  // Without frames only the finite part is meaningful.
  ConnectionMatrix finite = t;
  for (auto& e : finite.inf_chart) e = RationalMap(PolyF(), PolyF::constant(Fq(*f, 1)));
  return curvature_route(finite, s.det(), std::nullopt, static_cast<int>(f->characteristic()));
}

}  // namespace pcurv
