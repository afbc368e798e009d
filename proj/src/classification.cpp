#include "pcurv/classification.hpp"

#include <climits>
#include <stdexcept>
#include <string>

#include "pcurv/census.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/linalg.hpp"

namespace pcurv {

namespace {

int translation_bound(const BundleParams& b) { return (b.n - b.delta - 2 * b.m) * b.p; }

PolyF one(const GaloisField& f) { return PolyF::constant(Fq(f, 1)); }

PolyF alpha_product(const GaloisField& f, const std::vector<Fq>& pts, const std::vector<int>& alpha) {
  PolyF a = one(f);
  for (size_t i = 0; i < pts.size(); ++i) a = a * power_product(f, {pts[i]}, alpha[i]);
  return a;
}

KernelMap with_entries(const KernelMap& s, std::array<PolyF, 4> g) {
  return KernelMap(s.params(), s.field(), s.points(), std::move(g));
}

// Coefficients of the Taylor expansion at a, up to t^(n-1).
std::vector<Fq> local_coeffs(const PolyF& f, const Fq& a, int n) {
  PolyF s = f.shift(a);
  std::vector<Fq> c(n, Fq(*a.field(), 0));
  for (int k = 0; k < n; ++k) c[k] = s[k];
  return c;
}

PointOnLine add_at(const PointOnLine& g, const Fq& c) { return g.is_infinity() ? g : PointOnLine(g.value() + c); }

}  // namespace

PointOnLine gamma_of(const Fq& c) { return c.is_zero() ? PointOnLine::infinity() : PointOnLine(c.inverse()); }

Fq c_of(const PointOnLine& gamma) {
  if (gamma.is_infinity()) return Fq();
  if (gamma.value().is_zero()) throw PreconditionError("gamma = 0 has no finite column constant");
  return gamma.value().inverse();
}

void ClassDatum::validate() const {
  const BundleParams& b = params;
  const int p = b.p, n = b.n;
  auto fail = [](const std::string& what) { throw PreconditionError("class datum: " + what); };
  if (field == nullptr) fail("missing field");
  if (b.d < 1) fail("degenerate parameters: d < 1");
  if (b.m > b.n - b.delta - b.m) fail("m > n - delta - m");
  if (b.m * p < -b.d || b.m * p > n * p - b.d) fail("kernel splitting out of range");
  if (static_cast<int>(points.size()) != n || static_cast<int>(alpha.size()) != n ||
      static_cast<int>(beta.size()) != n || static_cast<int>(c.size()) != n)
    fail("sequence lengths differ from n");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (points[i] == points[j]) fail("marked points are not distinct");
  int sum = 0;
  for (int i = 0; i < n; ++i) {
    if (alpha[i] < 1 || 2 * alpha[i] >= p) fail("alpha_i outside 1..(p-1)/2");
    if (beta[i] < 0 || beta[i] > p - 2 * alpha[i]) fail("beta_i outside 0..p-2alpha_i");
    sum += alpha[i] + beta[i];
  }
  if (f.field() == nullptr || f.is_constant()) fail("f is constant");
  if (!is_separable(f)) fail("f is inseparable");
  if (f.degree() != (n - b.m) * p - b.d - sum) fail("deg f differs from (n-m)p - d - sum alpha - sum beta");
  for (int i = 0; i < n; ++i) {
    const int need = p - 2 * alpha[i] - beta[i];
    const int e = ram_index(f, PointOnLine(points[i]));
    if (e < need) fail("ramification at lambda_" + std::to_string(i) + " below p - 2alpha_i - beta_i");
    if (beta[i] > 0 && need > 0 && e != need) fail("ramification at lambda_" + std::to_string(i) + " not exact");
    const bool full = beta[i] == p - 2 * alpha[i];
    if (full != c[i].has_value()) fail("c_i given exactly when beta_i = p - 2alpha_i");
    if (full && gamma_of(*c[i]) == f.eval(PointOnLine(points[i]))) fail("c_i f(lambda_i) = 1");
  }
  const int tb = translation_bound(b);
  if (tb > 0) {
    if (!f.eval(PointOnLine::infinity()).is_infinity()) fail("f does not fix infinity");
    if (ram_index(f, PointOnLine::infinity()) < tb) fail("ramification at infinity below (n-delta-2m)p");
  }
}

ClassDatum ClassDatum::main_theorem(const GaloisField& field, int n, int delta, std::vector<Fq> points,
                                    std::vector<int> alpha, RationalMap f) {
  const int p = field.characteristic();
  if ((n + delta) % 2 != 0) throw PreconditionError("class datum: n and delta differ in parity");
  ClassDatum d;
  d.params = BundleParams{p, n, (n + delta * p) / 2 - 1, (n - delta) / 2, delta};
  d.field = &field;
  d.points = std::move(points);
  d.alpha = std::move(alpha);
  d.beta.assign(n, 0);
  d.c.assign(n, std::nullopt);
  d.f = std::move(f);
  d.validate();
  return d;
}

Invariants extract_invariants(const KernelMap& s) {
  const GaloisField& field = s.field();
  const auto& pts = s.points();
  Invariants inv;
  for (const Fq& l : pts) {
    int a = INT_MAX;
    for (const PolyF& e : s.entries())
      if (!e.is_zero()) a = std::min(a, ord_at(e, l));
    inv.alpha.push_back(a);
  }
  const PolyF a = alpha_product(field, pts, inv.alpha);
  std::vector<PolyF> hat;
  for (const PolyF& e : s.entries()) hat.push_back(e / a);
  inv.hat = PolyMatrixF(2, hat);
  inv.g1 = gcd(hat[0], hat[1]);
  for (const Fq& l : pts) inv.beta.push_back(ord_at(inv.g1, l));

  const PolyF& g11 = s.g(0, 0);
  const PolyF& g12 = s.g(0, 1);
  if (g11.is_zero()) {
    inv.constant = true;
  } else if (g12.is_zero()) {
    inv.constant = true;
    inv.constant_value = PointOnLine(Fq(field, 0));
  } else {
    RationalMap f(g12, g11);
    if (f.is_constant()) {
      inv.constant = true;
      inv.constant_value = PointOnLine(f.num()[0]);
    } else if (!is_separable(f)) {
      inv.inseparable = true;
      // A polynomial in x^p within the translation bound is removed by a column operation.
      if (f.den().degree() == 0 && f.num().degree() <= translation_bound(s.params())) {
        inv.constant = true;
        inv.constant_value = PointOnLine(f.num()[0]);
      } else {
        inv.fg = f;
      }
    } else {
      inv.fg = f;
    }
  }
  for (const Fq& l : pts) inv.c.push_back(find_column_constant(s, PointOnLine(l), true));
  return inv;
}

namespace {

ClassDatum datum_from(const KernelMap& s, const Invariants& inv) {
  if (inv.constant) throw PreconditionError("f_g can be made constant; no class datum");
  if (inv.inseparable) throw PreconditionError("f_g is inseparable; no class datum");
  ClassDatum d;
  d.params = s.params();
  d.field = &s.field();
  d.points = s.points();
  d.alpha = inv.alpha;
  d.beta = inv.beta;
  d.f = inv.fg;
  const int p = s.params().p;
  for (size_t i = 0; i < d.points.size(); ++i) {
    if (d.beta[i] == p - 2 * d.alpha[i] && inv.c[i].determinacy == Determinacy::Unique)
      d.c.push_back(inv.c[i].value);
    else
      d.c.push_back(std::nullopt);
  }
  return d;
}

bool normalized_with(const KernelMap& s, const std::vector<int>& alpha, const std::vector<int>& beta) {
  const BundleParams& b = s.params();
  if (s.g(0, 1).degree() != (b.n - b.m) * b.p - b.d) return false;
  for (size_t i = 0; i < alpha.size(); ++i) {
    const Fq& l = s.points()[i];
    if (ord_at(s.g(0, 1), l) != alpha[i] + beta[i]) return false;
    if (ord_at(s.g(1, 1), l) != alpha[i]) return false;
  }
  return true;
}

// Adds b times row 1 to row 2 so that ord g22 = alpha_i everywhere, if possible.
std::optional<KernelMap> fix_second_row(const KernelMap& s, const std::vector<int>& alpha,
                                        const std::vector<int>& beta) {
  if (normalized_with(s, alpha, beta)) return s;
  const BundleParams& b = s.params();
  const int room = 2 * b.d - b.delta * b.p;
  if (room < 0) return std::nullopt;
  const GaloisField& field = s.field();
  auto row_op = [&](const PolyF& h) {
    auto g = s.entries();
    g[2] = g[2] + h * g[0];
    g[3] = g[3] + h * g[1];
    return with_entries(s, g);
  };
  for (const Fq& c : elements(field)) {
    if (c.is_zero()) continue;
    KernelMap t = row_op(PolyF::constant(c));
    if (normalized_with(t, alpha, beta)) return t;
  }
  // Interpolate values avoiding the bad value at each point where g12 has order alpha_i.
  const PolyF a = alpha_product(field, s.points(), alpha);
  const PolyF h12 = s.g(0, 1) / a, h22 = s.g(1, 1) / a;
  std::vector<PolyF> residues, moduli;
  for (size_t i = 0; i < alpha.size(); ++i) {
    const Fq& l = s.points()[i];
    if (beta[i] > 0) continue;
    const Fq bad = -(h22.eval(l) / h12.eval(l));
    residues.push_back(PolyF::constant(bad.is_zero() ? Fq(field, 1) : Fq(field, 0)));
    moduli.push_back(PolyF::x(field) - PolyF::constant(l));
  }
  if (residues.empty() || static_cast<int>(residues.size()) > room + 1) return std::nullopt;
  KernelMap t = row_op(crt(residues, moduli));
  if (normalized_with(t, alpha, beta)) return t;
  return std::nullopt;
}

}  // namespace

ClassDatum datum_of(const KernelMap& s) { return datum_from(s, extract_invariants(s)); }

bool is_normalized(const KernelMap& s) {
  Invariants inv = extract_invariants(s);
  return normalized_with(s, inv.alpha, inv.beta);
}

KernelMap normalize_kernel_map(const KernelMap& s) {
  const Invariants inv = extract_invariants(s);
  if (inv.constant) throw PreconditionError("normalization: f_g can be made constant");
  const BundleParams& b = s.params();
  const GaloisField& field = s.field();
  const int tb = translation_bound(b);
  const std::vector<Fq> elems = elements(field);
  const std::vector<Fq> zero_only{Fq(field, 0)};
  const std::vector<Fq>& tops = tb > 0 ? elems : zero_only;
  for (const Fq& c0 : elems) {
    for (int swap = 0; swap < (b.balanced() ? 2 : 1); ++swap) {
      for (const Fq& c1 : tops) {
        auto g = s.entries();
        if (swap) {
          std::swap(g[0], g[1]);
          std::swap(g[2], g[3]);
        }
        PolyF h = PolyF::constant(c0) + PolyF::monomial(c1, tb > 0 ? tb : 0);
        if (tb <= 0) h = PolyF::constant(c0);
        g[1] = g[1] + h * g[0];
        g[3] = g[3] + h * g[2];
        if (auto t = fix_second_row(with_entries(s, g), inv.alpha, inv.beta)) return *t;
      }
    }
  }
  throw PreconditionError("normalization impossible: no constant operations reach deg g12 = (n-m)p-d "
                          "with ord g12 = alpha+beta and ord g22 = alpha");
}

std::optional<KernelMap> fill_in(const ClassDatum& datum, const PolyF& g11_hat, const PolyF& g12_hat) {
  const BundleParams& b = datum.params;
  const GaloisField& field = *datum.field;
  const int p = b.p;
  const auto& pts = datum.points;
  const size_t n = pts.size();
  if (g11_hat.is_zero() || g12_hat.is_zero()) throw PreconditionError("fill_in: top row has a zero entry");
  const PolyF g1 = gcd(g11_hat, g12_hat);
  const PolyF a = g11_hat / g1, bb = g12_hat / g1;
  if (!(RationalMap(bb, a) == datum.f)) throw PreconditionError("fill_in: top row does not realize f");
  int sum_beta = 0;
  for (size_t i = 0; i < n; ++i) {
    if (ord_at(g1, pts[i]) != datum.beta[i]) throw PreconditionError("fill_in: ord g1 differs from beta");
    if (bb.eval(pts[i]).is_zero()) throw PreconditionError("fill_in: top row not normalized at a marked point");
    sum_beta += datum.beta[i];
  }
  if (g1.degree() != sum_beta) throw PreconditionError("fill_in: g1 vanishes away from the marked points");

  PolyF delta = one(field);
  for (size_t i = 0; i < n; ++i) {
    if (datum.beta[i] > p - 2 * datum.alpha[i]) throw PreconditionError("fill_in: beta exceeds p - 2alpha");
    delta = delta * power_product(field, {pts[i]}, p - 2 * datum.alpha[i]);
  }
  const PolyF delta1 = delta / g1;
  const ExtGcd eg = ext_gcd(a, bb);  // u a + v b = 1
  const PolyF h1 = -(eg.v * delta1), h2 = eg.u * delta1;

  std::vector<PolyF> residues, moduli;
  for (size_t i = 0; i < n; ++i) {
    const Fq& l = pts[i];
    const int al = datum.alpha[i], be = datum.beta[i], full = p - 2 * al;
    Fq c;
    if (be < full) {
      c = a.eval(l) / bb.eval(l);
    } else {
      if (!datum.c[i]) throw PreconditionError("fill_in: missing c_i");
      c = *datum.c[i];
    }
    const PolyF w = a - PolyF::constant(c) * bb;
    const int r = ord_at(w, l);
    if (be == 0 && r < full) return std::nullopt;
    if (be > 0 && r != full - be) return std::nullopt;
    if (be == 0) continue;
    // q mod (x - l)^be with ord(h1 - c h2 + q w) >= p - 2alpha.
    const auto e = local_coeffs(h1 - PolyF::constant(c) * h2, l, full);
    const auto ws = local_coeffs(w, l, full);
    FqMatrix m(field, 0, be);
    std::vector<Fq> rhs;
    for (int k = 0; k < full; ++k) {
      std::vector<Fq> row(be, Fq(field, 0));
      for (int j = 0; j < be && j <= k; ++j) row[j] = ws[k - j];
      m.append_row(row);
      rhs.push_back(-e[k]);
    }
    auto sol = solve(m, rhs);
    if (!sol || !sol->kernel.empty()) return std::nullopt;
    residues.push_back(PolyF(sol->particular).shift(-l));
    moduli.push_back(power_product(field, {l}, be));
  }
  const PolyF q = residues.empty() ? PolyF() : crt(residues, moduli);
  PolyF b21 = h1 + q * a, b22 = h2 + q * bb;
  const PolyF k = b22 / g12_hat;
  b21 = b21 - k * g11_hat;
  b22 = b22 - k * g12_hat;

  const PolyF am = alpha_product(field, pts, datum.alpha);
  KernelMap s(b, field, pts, {am * g11_hat, am * g12_hat, am * b21, am * b22});
  if (!is_log_vanishing(s).valid) throw std::logic_error("fill_in produced a kernel map failing the criterion");
  return s;
}

KernelMap theorem_forward(const ClassDatum& datum) {
  datum.validate();
  const GaloisField& field = *datum.field;
  const auto& pts = datum.points;
  PolyF g1 = one(field);
  for (size_t i = 0; i < pts.size(); ++i) g1 = g1 * power_product(field, {pts[i]}, datum.beta[i]);
  // Translate f by a constant so the numerator has full degree and no zero at a marked point.
  for (const Fq& c0 : elements(field)) {
    ClassDatum d = datum;
    d.f = datum.f + RationalMap::constant(c0);
    if (d.f.num().degree() < d.f.den().degree()) continue;
    bool ok = true;
    for (size_t i = 0; i < pts.size() && ok; ++i) {
      if (d.f.eval(PointOnLine(pts[i])) == PointOnLine(Fq(field, 0))) ok = false;
      if (datum.c[i]) {
        PointOnLine g = add_at(gamma_of(*datum.c[i]), c0);
        if (!g.is_infinity() && g.value().is_zero()) ok = false;
        else d.c[i] = c_of(g);
      }
    }
    if (!ok) continue;
    auto s = fill_in(d, g1 * d.f.den(), g1 * d.f.num());
    if (!s) throw PreconditionError("theorem_forward: datum admits no kernel map");
    return *s;
  }
  throw PreconditionError("theorem_forward: no translation of f avoids zeros at the marked points");
}

std::optional<MobiusMatch> mobius_equivalent(const RationalMap& f, const RationalMap& g, int bound,
                                             const std::vector<ValueConstraint>& constraints) {
  const GaloisField& field = *f.field();
  const Fq zero(field, 0), unit(field, 1);
  if (f.is_constant() || g.is_constant()) {
    if (!(f.is_constant() && g.is_constant()) || !constraints.empty()) return std::nullopt;
    return MobiusMatch{RationalMap::mobius(unit, g.num()[0] - f.num()[0], zero, unit), PolyF()};
  }
  const int p = field.characteristic();
  const int jmax = bound < p ? 0 : bound / p;
  const PolyF &fn = f.num(), &fd = f.den(), &gn = g.num(), &gd = g.den();
  std::vector<PolyF> shifted;
  for (int j = 1; j <= jmax; ++j) shifted.push_back(fd.mul_xpow(j * p));
  int top = std::max({fn.degree(), fd.degree(), gn.degree(), gd.degree()});
  if (jmax > 0) top = std::max(top, shifted.back().degree());

  // F_d = s G_n + r G_d.
  FqMatrix m1(field, 0, 2);
  std::vector<Fq> b1;
  for (int k = 0; k <= top; ++k) {
    m1.append_row({gn[k], gd[k]});
    b1.push_back(fd[k]);
  }
  auto sr = solve(m1, b1);
  if (!sr) return std::nullopt;
  const Fq s = sr->particular[0], r = sr->particular[1];

  // F_n + sum b_j x^(jp) F_d = s' G_n + r' G_d, unknowns (s', r', b_1..b_J).
  const int cols = 2 + jmax;
  FqMatrix m2(field, 0, cols);
  std::vector<Fq> b2;
  for (int k = 0; k <= top; ++k) {
    std::vector<Fq> row{gn[k], gd[k]};
    for (int j = 0; j < jmax; ++j) row.push_back(-shifted[j][k]);
    m2.append_row(row);
    b2.push_back(fn[k]);
  }
  for (const ValueConstraint& vc : constraints) {
    std::vector<Fq> lp;  // lambda^(jp)
    for (int j = 1; j <= jmax; ++j) lp.push_back(vc.lambda.pow(static_cast<long long>(j) * p));
    const bool fi = vc.gamma_f.is_infinity(), gi = vc.gamma_g.is_infinity();
    if (fi) {
      // nu(gamma_g) must be infinite.
      if (gi ? !s.is_zero() : !(s * vc.gamma_g.value() + r).is_zero()) return std::nullopt;
      continue;
    }
    const Fq gf = vc.gamma_f.value();
    std::vector<Fq> row(cols, zero);
    if (gi) {
      row[0] = unit;
      for (int j = 0; j < jmax; ++j) row[2 + j] = -(s * lp[j]);
      b2.push_back(s * gf);
    } else {
      const Fq gg = vc.gamma_g.value();
      const Fq den = s * gg + r;
      row[0] = gg;
      row[1] = unit;
      for (int j = 0; j < jmax; ++j) row[2 + j] = -(den * lp[j]);
      b2.push_back(gf * den);
    }
    m2.append_row(row);
  }
  auto sol = solve(m2, b2);
  if (!sol) return std::nullopt;
  // det [[s', r'], [s, r]] = s' r - r' s is linear in the unknowns.
  auto det = [&](const std::vector<Fq>& z) { return z[0] * r - z[1] * s; };
  std::vector<Fq> z = sol->particular;
  if (det(z).is_zero()) {
    bool found = false;
    for (const auto& k : sol->kernel) {
      if (det(k).is_zero()) continue;
      for (int i = 0; i < cols; ++i) z[i] += k[i];
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  PolyF f0;
  for (int j = 0; j < jmax; ++j) f0 = f0 + PolyF::monomial(z[2 + j], (j + 1) * p);
  MobiusMatch out{RationalMap::mobius(r, -z[1], -s, z[0]), f0};
  if (!(out.mu.compose(f + RationalMap(f0, one(field))) == g))
    throw std::logic_error("mobius_equivalent: solution does not verify");
  return out;
}

bool data_equivalent(const ClassDatum& a, const ClassDatum& b) {
  if (!(a.params == b.params) || a.field != b.field || a.points != b.points) return false;
  if (a.alpha != b.alpha || a.beta != b.beta) return false;
  std::vector<ValueConstraint> cons;
  for (size_t i = 0; i < a.points.size(); ++i) {
    if (a.c[i].has_value() != b.c[i].has_value()) return false;
    if (a.c[i]) cons.push_back({a.points[i], gamma_of(*a.c[i]), gamma_of(*b.c[i])});
  }
  return mobius_equivalent(a.f, b.f, translation_bound(a.params), cons).has_value();
}

bool kernel_maps_equivalent(const KernelMap& a, const KernelMap& b) {
  if (!(a.params() == b.params()) || &a.field() != &b.field() || a.points() != b.points())
    throw PreconditionError("kernel_maps_equivalent: parameters differ");
  if (!a.params().standard()) throw PreconditionError("kernel_maps_equivalent: requires delta p < 2d");
  const Invariants ia = extract_invariants(a), ib = extract_invariants(b);
  if (ia.alpha != ib.alpha || ia.beta != ib.beta) return false;
  if (ia.constant || ib.constant) return ia.constant && ib.constant && constant_classes_equivalent(a, b);
  return data_equivalent(datum_from(a, ia), datum_from(b, ib));
}

}  // namespace pcurv
