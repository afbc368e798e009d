#include "pcurv/deformation.hpp"

#include "pcurv/classification.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/linalg.hpp"
#include "pcurv/normal_form.hpp"

namespace pcurv {
namespace {

PolyMatrixD dual_matrix(const std::array<PolyF, 4>& body, const std::array<PolyF, 4>& slope) {
  PolyMatrixD m(2);
  for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = make_dual(body[k], slope[k]);
  return m;
}

std::array<PolyF, 4> entries_of(const PolyMatrixF& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

// Entry (i, j) in the chart y = 1/x with the frames of the splittings.
PolyF chart_entry(const BundleParams& bp, int i, int j, const PolyF& g) {
  const int e = bp.degree_bound(i, j);
  if (e < 0 || g.is_zero()) return PolyF();
  std::vector<Fq> c(e + 1);
  for (int k = 0; k <= g.degree(); ++k) c[e - k] = g[k];
  return PolyF(std::move(c));
}

std::array<PolyF, 4> chart_entries(const BundleParams& bp, const std::array<PolyF, 4>& g) {
  std::array<PolyF, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = chart_entry(bp, k / 2, k % 2, g[k]);
  return out;
}

struct BodyPole {
  PointOnLine point;
  DiagonalCertificate<Fq> cert;
  int det_order;
};

std::vector<BodyPole> body_poles(const KernelMap& s) {
  LogVanishingReport report = is_log_vanishing(s);
  if (!report.valid) throw PreconditionError("deformed map: body is not log vanishing");
  const int p = s.params().p;
  const PolyF dinf = chart_at_infinity(s).det();
  const int ord_inf = ord_at(dinf, Fq(s.field(), 0));
  std::vector<BodyPole> out;
  for (auto& pc : report.poles) {
    for (int e : pc.certificate->e)
      if (e == 0) throw PreconditionError("deformed map: body has a zero exponent at a pole");
    out.push_back({pc.point, *pc.certificate, pc.point.is_infinity() ? ord_inf : p});
  }
  return out;
}

// Local expansion of the eps-parts at a body pole.
SeriesMatrix<Fq> local_h(const BundleParams& bp, const std::array<PolyF, 4>& h, const BodyPole& pole, const GaloisField& f) {
  const int prec = default_precision(bp.p, pole.det_order);
  if (pole.point.is_infinity()) {
    auto c = chart_entries(bp, h);
    return expand_matrix(std::vector<PolyF>(c.begin(), c.end()), 2, Fq(f, 0), prec);
  }
  return expand_matrix(std::vector<PolyF>(h.begin(), h.end()), 2, pole.point.value(), prec);
}

// P U0 as a constant matrix.
std::array<Fq, 4> right_constant(const DiagonalCertificate<Fq>& cert, const GaloisField& f) {
  std::array<Fq, 4> pu{Fq(f, 0), Fq(f, 0), Fq(f, 0), Fq(f, 0)};
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (cert.perm[k] == r) pu[2 * r + j] += cert.c[k][j];
  return pu;
}

bool order_condition(const SeriesMatrix<Fq>& fm, const std::vector<int>& e, int p) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < e[j]; ++l)
        if ((e[i] - l) % p != 0 && !fm(i, j)[l].is_zero()) return false;
  return true;
}

void check_slope_shape(const BundleParams& bp, Side side, const PolyMatrixF& m) {
  auto bounded = [](const PolyF& a, int b) { return a.is_zero() || a.degree() <= b; };
  if (m(0, 0).degree() > 0 || m(1, 1).degree() > 0) throw PreconditionError("transport eps-part diagonal must be scalars");
  if (side == Side::Left) {
    if (!bounded(m(0, 1), bp.delta * bp.p - 2 * bp.d) || !bounded(m(1, 0), 2 * bp.d - bp.delta * bp.p))
      throw PreconditionError("transport eps-part exceeds its degree bound");
    return;
  }
  const int up = (bp.n - bp.delta - 2 * bp.m) * bp.p, low = (2 * bp.m - bp.n + bp.delta) * bp.p;
  for (auto [a, b] : {std::pair{&m(0, 1), up}, std::pair{&m(1, 0), low}}) {
    if (!bounded(*a, b)) throw PreconditionError("transport eps-part exceeds its degree bound");
    for (int k = 0; k <= a->degree(); ++k)
      if (k % bp.p != 0 && !(*a)[k].is_zero()) throw PreconditionError("right transport eps-part is not in x^p");
  }
}

// Coordinates of the eps-part entries below their degree bounds.
struct Layout {
  std::array<int, 4> offset{}, size{};
  int total = 0;
  explicit Layout(const BundleParams& bp) {
    for (int k = 0; k < 4; ++k) {
      offset[k] = total;
      size[k] = std::max(0, bp.degree_bound(k / 2, k % 2) + 1);
      total += size[k];
    }
  }
  std::vector<Fq> flatten(const std::array<PolyF, 4>& h, const GaloisField& f) const {
    std::vector<Fq> v(total, Fq(f, 0));
    for (int k = 0; k < 4; ++k) {
      if (!h[k].is_zero() && h[k].degree() >= size[k]) throw std::logic_error("eps-part exceeds the layout");
      for (int u = 0; u < size[k]; ++u) v[offset[k] + u] = h[k][u];
    }
    return v;
  }
  std::array<PolyF, 4> unflatten(const std::vector<Fq>& v) const {
    std::array<PolyF, 4> h;
    for (int k = 0; k < 4; ++k) h[k] = PolyF(std::vector<Fq>(v.begin() + offset[k], v.begin() + offset[k] + size[k]));
    return h;
  }
};

}  // namespace

DeformedKernelMap::DeformedKernelMap(KernelMap body, std::array<PolyF, 4> h) : body_(std::move(body)), h_(std::move(h)) {
  const BundleParams& bp = body_.params();
  for (int k = 0; k < 4; ++k) {
    if (const GaloisField* f = h_[k].field(); f && f != &body_.field())
      throw PreconditionError("deformed map: eps-part lies in a different field");
    if (!h_[k].is_zero() && h_[k].degree() > bp.degree_bound(k / 2, k % 2))
      throw PreconditionError("deformed map: eps-part exceeds its degree bound");
  }
}

DeformedKernelMap DeformedKernelMap::from_matrix(const BundleParams& params, const GaloisField& field, std::vector<Fq> points,
                                                 const PolyMatrixD& m) {
  std::array<PolyF, 4> b, h;
  for (int k = 0; k < 4; ++k) {
    b[k] = body_of(m(k / 2, k % 2));
    h[k] = slope_of(m(k / 2, k % 2));
  }
  const PolyF det = b[0] * b[3] - b[1] * b[2];
  if (det.is_zero()) throw PreconditionError("deformed map: body is degenerate");
  const Fq ci = det.leading().inverse();
  for (int k = 0; k < 2; ++k) {
    b[k] = ci * b[k];
    h[k] = ci * h[k];
  }
  return DeformedKernelMap(KernelMap(params, field, std::move(points), b), h);
}

PolyMatrixD DeformedKernelMap::matrix() const { return dual_matrix(entries_of(body_.matrix()), h_); }

DeformedKernelMap apply_transport(const DeformedKernelMap& s, Side side, const PolyMatrixD& m) {
  PolyMatrixF body(2), slope(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      body(i, j) = body_of(m(i, j));
      slope(i, j) = slope_of(m(i, j));
    }
  const BundleParams& bp = s.body().params();
  check_transport(bp, {side, body});
  check_slope_shape(bp, side, slope);
  const PolyMatrixD r = side == Side::Left ? m * s.matrix() : s.matrix() * m;
  return DeformedKernelMap::from_matrix(bp, s.body().field(), s.body().points(), r);
}

bool deformed_valid(const DeformedKernelMap& s) {
  const KernelMap& body = s.body();
  const BundleParams& bp = body.params();
  const GaloisField& f = body.field();
  const Dual zero(Fq(f, 0), Fq(f, 0));
  for (const BodyPole& pole : body_poles(body)) {
    const int prec = default_precision(bp.p, pole.det_order);
    SeriesMatrix<Dual> local;
    if (pole.point.is_infinity()) {
      PolyMatrixD chart = dual_matrix(entries_of(chart_at_infinity(body)), chart_entries(bp, s.h()));
      local = expand_matrix(chart.entries(), 2, zero, prec);
    } else {
      local = expand_matrix(s.matrix().entries(), 2, Dual(pole.point.value(), Fq(f, 0)), prec);
    }
    auto cert = diagonalize_kernel_matrix(local, bp.p);
    if (!cert) return false;
  }
  return true;
}

bool deformed_valid_by_order_test(const DeformedKernelMap& s) {
  const KernelMap& body = s.body();
  const GaloisField& f = body.field();
  for (const BodyPole& pole : body_poles(body)) {
    const SeriesMatrix<Fq> h = local_h(body.params(), s.h(), pole, f);
    const std::array<Fq, 4> pu = right_constant(pole.cert, f);
    SeriesMatrix<Fq> right(2, h.precision());
    for (int k = 0; k < 4; ++k) right(k / 2, k % 2) = PolyF::constant(pu[k]);
    if (!order_condition(pole.cert.left * h * right, pole.cert.e, body.params().p)) return false;
  }
  return true;
}

KernelReduction kernel_reduction(const DeformedKernelMap& s, int twist) {
  if (!deformed_valid(s)) throw PreconditionError("kernel reduction: deformation is not valid");
  const KernelMap& body = s.body();
  const BundleParams& bp = body.params();
  const GaloisField& f = body.field();
  const auto rows = bp.row_exponents();
  const auto cols = bp.col_exponents();

  KernelReduction out;
  for (int j = 0; j < 2; ++j)
    if (twist + cols[j] >= 0) out.expected += (twist + cols[j]) / bp.p + 1;

  // L(a) = det * a' - S' adj(S) a over k[eps], split into body and eps parts.
  const PolyMatrixF s0 = body.matrix();
  PolyMatrixF s1(2);
  for (int k = 0; k < 4; ++k) s1(k / 2, k % 2) = s.h()[k];
  const PolyF d0 = s0.det();
  const PolyF d1 = s0(0, 0) * s1(1, 1) + s1(0, 0) * s0(1, 1) - s0(0, 1) * s1(1, 0) - s1(0, 1) * s0(1, 0);
  const PolyMatrixF w0 = s0.derivative() * s0.adjugate();
  const PolyMatrixF w1 = s1.derivative() * s0.adjugate() + s0.derivative() * s1.adjugate();

  std::vector<std::pair<int, int>> unknowns;  // (component, power)
  for (int i = 0; i < 2; ++i)
    for (int u = 0; u <= twist + rows[i]; ++u) unknowns.push_back({i, u});
  const int n = static_cast<int>(unknowns.size());
  std::vector<std::array<PolyF, 2>> l0(n), l1(n);
  int len = 1;
  for (int k = 0; k < n; ++k) {
    auto [c, u] = unknowns[k];
    const PolyF mono = PolyF::monomial(Fq(f, 1), u);
    for (int i = 0; i < 2; ++i) {
      PolyF a0 = -(w0(i, c) * mono), a1 = -(w1(i, c) * mono);
      if (i == c) {
        a0 += d0 * mono.derivative();
        a1 += d1 * mono.derivative();
      }
      l0[k][i] = a0;
      l1[k][i] = a1;
      len = std::max({len, a0.degree() + 1, a1.degree() + 1});
    }
  }
  FqMatrix a0(f, 2 * len, n), big(f, 4 * len, 2 * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < 2; ++i)
      for (int e = 0; e < len; ++e) {
        a0(i * len + e, k) = l0[k][i][e];
        big(i * len + e, k) = l0[k][i][e];
        big(2 * len + i * len + e, k) = l1[k][i][e];
        big(2 * len + i * len + e, n + k) = l0[k][i][e];
      }
  for (int r = 0; r < big.rows(); ++r)
    for (int c = 0; c < big.cols(); ++c)
      if (!big(r, c).field()) big(r, c) = Fq(f, 0);
  for (int r = 0; r < a0.rows(); ++r)
    for (int c = 0; c < a0.cols(); ++c)
      if (!a0(r, c).field()) a0(r, c) = Fq(f, 0);
  out.body_dim = n - rank(a0);
  const auto m = nullspace(big);
  out.module_dim = static_cast<int>(m.size());
  FqMatrix proj(f, static_cast<int>(m.size()), n);
  for (size_t r = 0; r < m.size(); ++r)
    for (int c = 0; c < n; ++c) proj(static_cast<int>(r), c) = m[r][c];
  out.lift_dim = m.empty() ? 0 : rank(proj);
  out.free = out.module_dim == 2 * out.lift_dim;
  out.reduction_iso = out.lift_dim == out.body_dim;
  return out;
}

bool kernel_reduction_check(const DeformedKernelMap& s, int twist) { return kernel_reduction(s, twist).ok(); }

DeformationSpace deformation_space(const KernelMap& s) {
  const BundleParams& bp = s.params();
  const GaloisField& f = s.field();
  const Layout lay(bp);
  const std::vector<BodyPole> poles = body_poles(s);
  const std::array<PolyF, 4> g = entries_of(s.matrix());

  FqMatrix cons(f, 0, lay.total);
  // Eps-part of the determinant.
  {
    std::vector<std::vector<Fq>> cols;
    int len = 0;
    for (int k = 0; k < 4; ++k)
      for (int u = 0; u < lay.size[k]; ++u) {
        std::array<PolyF, 4> h;
        h[k] = PolyF::monomial(Fq(f, 1), u);
        PolyF d1 = g[0] * h[3] + h[0] * g[3] - g[1] * h[2] - h[1] * g[2];
        len = std::max(len, d1.degree() + 1);
        std::vector<Fq> c;
        for (int e = 0; e <= d1.degree(); ++e) c.push_back(d1[e]);
        cols.push_back(std::move(c));
      }
    for (int e = 0; e < len; ++e) {
      std::vector<Fq> row(lay.total, Fq(f, 0));
      for (int c = 0; c < lay.total; ++c)
        if (e < static_cast<int>(cols[c].size())) row[c] = cols[c][e];
      cons.append_row(row);
    }
  }
  // Order conditions at the poles of the body.
  for (const BodyPole& pole : poles) {
    std::vector<SeriesMatrix<Fq>> images;
    for (int k = 0; k < 4; ++k)
      for (int u = 0; u < lay.size[k]; ++u) {
        std::array<PolyF, 4> h;
        h[k] = PolyF::monomial(Fq(f, 1), u);
        const SeriesMatrix<Fq> hl = local_h(bp, h, pole, f);
        const std::array<Fq, 4> pu = right_constant(pole.cert, f);
        SeriesMatrix<Fq> right(2, hl.precision());
        for (int t = 0; t < 4; ++t) right(t / 2, t % 2) = PolyF::constant(pu[t]);
        images.push_back(pole.cert.left * hl * right);
      }
    const auto& e = pole.cert.e;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < e[j]; ++l) {
          if ((e[i] - l) % bp.p == 0) continue;
          std::vector<Fq> row(lay.total, Fq(f, 0));
          for (int c = 0; c < lay.total; ++c) row[c] = images[c](i, j)[l];
          cons.append_row(row);
        }
  }
  DeformationSpace out;
  for (const auto& v : nullspace(cons)) out.valid.push_back(lay.unflatten(v));

  // Infinitesimal transports L S + S R with tr L + tr R = 0.
  const PolyMatrixF sm = s.matrix();
  std::vector<std::vector<Fq>> gens;
  std::vector<int> trace;
  auto add = [&](Side side, int i, int j, int power) {
    PolyMatrixF e(2);
    e(i, j) = PolyF::monomial(Fq(f, 1), power);
    gens.push_back(lay.flatten(entries_of(side == Side::Left ? e * sm : sm * e), f));
    trace.push_back(i == j ? 1 : 0);
  };
  const int up = (bp.n - bp.delta - 2 * bp.m) * bp.p, low = (2 * bp.m - bp.n + bp.delta) * bp.p;
  for (Side side : {Side::Left, Side::Right}) {
    add(side, 0, 0, 0);
    add(side, 1, 1, 0);
  }
  for (int k = 0; k <= bp.delta * bp.p - 2 * bp.d; ++k) add(Side::Left, 0, 1, k);
  for (int k = 0; k <= 2 * bp.d - bp.delta * bp.p; ++k) add(Side::Left, 1, 0, k);
  for (int k = 0; k * bp.p <= up; ++k) add(Side::Right, 0, 1, k * bp.p);
  for (int k = 0; k * bp.p <= low; ++k) add(Side::Right, 1, 0, k * bp.p);

  FqMatrix tr(f, 1, static_cast<int>(gens.size()));
  for (size_t k = 0; k < gens.size(); ++k) tr(0, static_cast<int>(k)) = Fq(f, trace[k]);
  FqMatrix acc(f, 0, lay.total);
  for (const auto& coeffs : nullspace(tr)) {
    std::vector<Fq> v(lay.total, Fq(f, 0));
    for (size_t k = 0; k < gens.size(); ++k)
      for (int c = 0; c < lay.total; ++c) v[c] += coeffs[k] * gens[k][c];
    const int before = rank(acc);
    acc.append_row(v);
    if (rank(acc) > before) out.orbit.push_back(lay.unflatten(v));
  }
  return out;
}

int deformation_space_dim(const KernelMap& s) {
  const BundleParams& bp = s.params();
  if (bp.m != bp.n - bp.delta - bp.m) throw PreconditionError("deformation space: bundle is not balanced");
  const Invariants inv = extract_invariants(s);
  if (inv.constant || inv.inseparable) throw PreconditionError("deformation space: f_g must be separable and non-constant");
  for (int b : inv.beta)
    if (b != 0) throw PreconditionError("deformation space: extra ramification is not supported");
  return deformation_space(s).dim();
}

}  // namespace pcurv
