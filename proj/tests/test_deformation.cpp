#include <gtest/gtest.h>

#include "pcurv/census.hpp"
#include "pcurv/classification.hpp"
#include "pcurv/deformation.hpp"
#include "pcurv/linalg.hpp"
#include "support.hpp"

using namespace pcurv;
using namespace pcurv::testing;

namespace {

using Slope = std::array<PolyF, 4>;

const GaloisField& F3() { return GaloisField::get(3, 1); }
const GaloisField& F5() { return GaloisField::get(5, 1); }
const GaloisField& F25() { return GaloisField::get(5, 2); }

KernelMap worked() {
  const auto& f = F3();
  return KernelMap({3, 1, 1, 0, 1}, f, {Fq(f, 0)}, {P(f, {0, 1}), P(f, {0, 1, 1}), P(f, {0, 2}), P(f, {0, 2})});
}

std::vector<Fq> pts(const GaloisField& f, std::initializer_list<long long> v) {
  std::vector<Fq> out;
  for (long long a : v) out.emplace_back(f, a);
  return out;
}

std::vector<KernelMap> theorem_maps(const GaloisField& f, const std::vector<Fq>& lambda, const std::vector<int>& alpha) {
  const int p = f.characteristic(), n = static_cast<int>(lambda.size());
  int sum = 0;
  for (int a : alpha) sum += a;
  std::vector<RamificationConstraint> cons;
  for (int i = 0; i < n; ++i) cons.push_back({PointOnLine(lambda[i]), p - 2 * alpha[i]});
  std::vector<KernelMap> out;
  for (const RationalMap& m : search_ramified_maps(f, n * (p - 1) / 2 + 1 - sum, cons))
    out.push_back(theorem_forward(ClassDatum::main_theorem(f, n, 0, lambda, alpha, m)));
  return out;
}

// Valid bodies over F3 and F5, including transported copies.
std::vector<KernelMap> bodies(Rng& rng) {
  std::vector<KernelMap> out{worked()};
  for (auto alpha : {std::vector<int>{1, 1, 1, 1}, {2, 1, 1, 1}, {2, 2, 1, 1}, {2, 2, 2, 2}})
    for (const KernelMap& s : theorem_maps(F5(), pts(F5(), {0, 1, 2, 3}), alpha)) out.push_back(s);
  for (auto e : {std::vector<int>{2, 1}, {2, 2, 1}})
    for (const BundleParams& bp : all_diagonal_params(5, e))
      out.push_back(diagonal_kernel_map(F5(), bp, e.size() == 2 ? pts(F5(), {0, 1}) : pts(F5(), {0, 1, 2}), e));
  const size_t base = out.size();
  for (size_t i = 0; i < base; ++i) {
    const KernelMap& s = out[i];
    out.push_back(apply_transport(apply_transport(s, random_left(rng, s.field(), s.params())),
                                  random_right(rng, s.field(), s.params())));
  }
  return out;
}

Slope random_slope(Rng& rng, const KernelMap& s) {
  Slope h;
  for (int k = 0; k < 4; ++k) h[k] = rng.poly(s.field(), s.params().degree_bound(k / 2, k % 2));
  return h;
}

Slope combine(Rng& rng, const GaloisField& f, const std::vector<Slope>& basis) {
  Slope h;
  for (const Slope& b : basis) {
    const Fq c = rng.element(f);
    for (int k = 0; k < 4; ++k) h[k] += c * b[k];
  }
  return h;
}

// A legal transport over k[eps]: legal body, eps-part in the Lie algebra.
PolyMatrixD random_dual_transport(Rng& rng, const KernelMap& s, Side side) {
  const GaloisField& f = s.field();
  const BundleParams& bp = s.params();
  const TransportElement body = side == Side::Left ? random_left(rng, f, bp) : random_right(rng, f, bp);
  PolyMatrixF slope(2);
  slope(0, 0) = PolyF::constant(rng.element(f));
  slope(1, 1) = PolyF::constant(rng.element(f));
  if (side == Side::Left) {
    slope(0, 1) = rng.poly(f, bp.delta * bp.p - 2 * bp.d);
    slope(1, 0) = rng.poly(f, 2 * bp.d - bp.delta * bp.p);
  } else {
    slope(0, 1) = random_in_xp(rng, f, (bp.n - bp.delta - 2 * bp.m) * bp.p, bp.p);
    slope(1, 0) = random_in_xp(rng, f, (2 * bp.m - bp.n + bp.delta) * bp.p, bp.p);
  }
  PolyMatrixD m(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = make_dual(body.m(i, j), slope(i, j));
  return m;
}

// Smallest twist at which the kernel has a section.
int min_twist(const KernelMap& s) {
  const auto cols = s.params().col_exponents();
  return -std::max(cols[0], cols[1]);
}

bool is_zero(const Slope& h) {
  for (const PolyF& a : h)
    if (!a.is_zero()) return false;
  return true;
}

}  // namespace

TEST(Deformation, ZeroSlopeIsValid) {
  Rng rng(1);
  for (const KernelMap& s : bodies(rng)) {
    DeformedKernelMap d(s, {});
    EXPECT_TRUE(deformed_valid(d));
    EXPECT_TRUE(deformed_valid_by_order_test(d));
    const int base = min_twist(s);
    for (int twist = base; twist <= base + 2 * s.params().p; ++twist) {
      KernelReduction r = kernel_reduction(d, twist);
      EXPECT_TRUE(r.ok()) << twist << " " << r.expected << " " << r.body_dim << " " << r.lift_dim;
      EXPECT_GT(r.expected, 0);
    }
  }
}

TEST(Deformation, WorkedInstanceUnitInUpperRightIsInvalid) {
  const auto& f = F3();
  DeformedKernelMap d(worked(), {PolyF(), P(f, {1}), PolyF(), PolyF()});
  EXPECT_FALSE(deformed_valid(d));
  EXPECT_FALSE(deformed_valid_by_order_test(d));
  EXPECT_THROW(kernel_reduction(d, 0), PreconditionError);
}

TEST(Deformation, RightLieDirectionKeepsConnection) {
  Rng rng(2);
  for (const KernelMap& s : bodies(rng)) {
    const PolyMatrixD n = random_dual_transport(rng, s, Side::Right);
    PolyMatrixD one = PolyMatrixD::identity(s.field(), 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) one(i, j) = make_dual(body_of(one(i, j)), slope_of(n(i, j)));
    const DeformedKernelMap d = apply_transport(DeformedKernelMap(s, {}), Side::Right, one);
    EXPECT_TRUE(deformed_valid(d));
    EXPECT_TRUE(deformed_valid_by_order_test(d));
    // S_d' adj(S_d) / det S_d = S' adj(S) / det S.
    const PolyMatrixD sd = d.matrix();
    PolyMatrixD s0(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s0(i, j) = make_dual(s.g(i, j), PolyF());
    const PolyMatrixD lhs = sd.derivative() * sd.adjugate();
    const PolyMatrixD rhs = s0.derivative() * s0.adjugate();
    const PolyD dd = sd.det(), d0 = s0.det();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_EQ(lhs(i, j) * d0, rhs(i, j) * dd);
  }
}

TEST(Deformation, RoutesAgreeAndReductionHolds) {
  Rng rng(3);
  int valid = 0, invalid = 0;
  for (const KernelMap& s : bodies(rng)) {
    const DeformationSpace space = deformation_space(s);
    for (int it = 0; it < 15; ++it) {
      Slope h = combine(rng, s.field(), space.valid);
      if (it % 3 == 1) {
        const Slope r = random_slope(rng, s);
        for (int k = 0; k < 4; ++k) h[k] += r[k];
      }
      const DeformedKernelMap d(s, h);
      const bool v = deformed_valid(d);
      EXPECT_EQ(v, deformed_valid_by_order_test(d));
      if (it % 3 != 1) {
        EXPECT_TRUE(v);
      }
      if (v) {
        for (int extra : {0, s.params().p + 1, 2 * s.params().p + 3}) {
          const KernelReduction r = kernel_reduction(d, min_twist(s) + extra);
          EXPECT_TRUE(r.ok());
          EXPECT_GT(r.lift_dim, 0);
        }
      }
      (v ? valid : invalid)++;
    }
  }
  EXPECT_GE(valid + invalid, 100);
  EXPECT_GT(invalid, 10);
}

TEST(Deformation, InvariantUnderDualTransport) {
  Rng rng(4);
  for (const KernelMap& s : bodies(rng)) {
    const DeformationSpace space = deformation_space(s);
    for (int it = 0; it < 6; ++it) {
      Slope h = it % 2 ? random_slope(rng, s) : combine(rng, s.field(), space.valid);
      const DeformedKernelMap d(s, h);
      const bool v = deformed_valid(d);
      const DeformedKernelMap moved =
          apply_transport(apply_transport(d, Side::Left, random_dual_transport(rng, s, Side::Left)), Side::Right,
                          random_dual_transport(rng, s, Side::Right));
      EXPECT_EQ(deformed_valid(moved), v);
      EXPECT_EQ(deformed_valid_by_order_test(moved), v);
    }
  }
}

TEST(Deformation, ValidSlopesVanishToAlpha) {
  Rng rng(5);
  for (const KernelMap& s : bodies(rng)) {
    const Invariants inv = extract_invariants(s);
    const DeformationSpace space = deformation_space(s);
    for (const Slope& h : space.valid)
      for (size_t i = 0; i < s.points().size(); ++i)
        for (const PolyF& e : h)
          if (!e.is_zero()) {
            EXPECT_GE(ord_at(e, s.points()[i]), inv.alpha[i]);
          }
  }
}

TEST(Deformation, OrbitLiesInValidSpace) {
  Rng rng(6);
  for (const KernelMap& s : bodies(rng)) {
    const DeformationSpace space = deformation_space(s);
    EXPECT_LE(space.orbit.size(), space.valid.size());
    for (const Slope& h : space.orbit) {
      const DeformedKernelMap d(s, h);
      EXPECT_TRUE(deformed_valid(d));
      const PolyF det1 = s.g(0, 0) * h[3] + h[0] * s.g(1, 1) - s.g(0, 1) * h[2] - h[1] * s.g(1, 0);
      EXPECT_TRUE(det1.is_zero());
    }
  }
}

// First-order expansion of f_g keeps the degree and the ramification.
TEST(Deformation, FirstOrderMapKeepsRamification) {
  Rng rng(7);
  int checked = 0;
  for (const KernelMap& s : bodies(rng)) {
    if (s.params().p != 5) continue;
    const Invariants inv = extract_invariants(s);
    PolyF common = PolyF::constant(Fq(s.field(), 1));
    for (size_t i = 0; i < s.points().size(); ++i) common *= PolyF({-s.points()[i], Fq(s.field(), 1)}).pow(inv.alpha[i]);
    const DeformationSpace space = deformation_space(s);
    for (int it = 0; it < 5; ++it) {
      const Slope h = combine(rng, s.field(), space.valid);
      const PolyD num = make_dual(inv.hat(0, 1), h[1] / common), den = make_dual(inv.hat(0, 0), h[0] / common);
      EXPECT_TRUE((h[1] % common).is_zero());
      EXPECT_TRUE((h[0] % common).is_zero());
      for (size_t i = 0; i < s.points().size(); ++i) {
        const Dual at(s.points()[i], Fq(s.field(), 0));
        const PolyD w = PolyD::constant(num.eval(at)) * den - PolyD::constant(den.eval(at)) * num;
        const int need = 5 - 2 * inv.alpha[i];
        const PolyD local = w.shift(at);
        for (int k = 0; k < need; ++k) EXPECT_TRUE(local[k].is_zero());
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Deformation, BottomRowFixedUpToTopRowMultiples) {
  Rng rng(8);
  for (const KernelMap& s : bodies(rng)) {
    const DeformationSpace space = deformation_space(s);
    for (int it = 0; it < 5; ++it) {
      const Slope h = combine(rng, s.field(), space.valid);
      // Slopes with the same top row lie in the valid space iff their difference does.
      if (!h[0].is_zero() || !h[1].is_zero()) continue;
      const auto [q, r] = divmod(h[2], s.g(0, 0).is_zero() ? s.g(0, 1) : s.g(0, 0));
      (void)r;
      EXPECT_EQ(h[2], q * s.g(0, 0));
      EXPECT_EQ(h[3], q * s.g(0, 1));
    }
    // The top-row-free part of the valid space.
    FqMatrix top(s.field(), 0, static_cast<int>(space.valid.size()));
    std::vector<std::vector<Fq>> rows;
    for (int k = 0; k < 2; ++k)
      for (int e = 0; e <= s.params().degree_bound(0, k); ++e) {
        std::vector<Fq> row;
        for (const Slope& h : space.valid) row.push_back(h[k][e]);
        top.append_row(row);
      }
    for (const auto& v : nullspace(top)) {
      Slope h;
      for (size_t b = 0; b < v.size(); ++b)
        for (int k = 0; k < 4; ++k) h[k] += v[b] * space.valid[b][k];
      if (is_zero(h)) continue;
      const PolyF& lead = s.g(0, 0).is_zero() ? s.g(0, 1) : s.g(0, 0);
      const PolyF& other = s.g(0, 0).is_zero() ? h[3] : h[2];
      const auto [q, r] = divmod(other, lead);
      EXPECT_TRUE(r.is_zero());
      EXPECT_EQ(h[2], q * s.g(0, 0));
      EXPECT_EQ(h[3], q * s.g(0, 1));
    }
  }
}

TEST(Deformation, RigidOverF25) {
  Rng rng(9);
  for (int it = 0; it < 5; ++it) {
    const auto lambda = distinct_points(rng, F25(), 4);
    const auto maps = theorem_maps(F25(), lambda, {2, 2, 2, 2});
    ASSERT_FALSE(maps.empty());
    for (const KernelMap& s : maps) EXPECT_EQ(deformation_space_dim(s), 0);
  }
}

TEST(Deformation, RigidOverF5) {
  for (auto alpha : {std::vector<int>{1, 1, 1, 1}, {2, 1, 1, 1}, {2, 2, 1, 1}, {2, 2, 2, 2}})
    for (const KernelMap& s : theorem_maps(F5(), pts(F5(), {0, 1, 2, 3}), alpha)) EXPECT_EQ(deformation_space_dim(s), 0);
}

TEST(Deformation, Gates) {
  const auto& f = F5();
  const BundleParams bp = *diagonal_params(5, {2, 1});
  const KernelMap diag = diagonal_kernel_map(f, bp, pts(f, {0, 1}), {2, 1});
  EXPECT_THROW(deformation_space_dim(diag), PreconditionError);
  const KernelMap w = worked();
  EXPECT_THROW(DeformedKernelMap(w, {PolyF(), PolyF(), P(F3(), {0, 0, 1}), PolyF()}), PreconditionError);
  EXPECT_THROW(DeformedKernelMap(w, {P(F5(), {1}), PolyF(), PolyF(), PolyF()}), PreconditionError);
}
