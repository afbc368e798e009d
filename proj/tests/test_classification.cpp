#include <gtest/gtest.h>

#include "pcurv/census.hpp"
#include "pcurv/classification.hpp"
#include "pcurv/connection.hpp"
#include "support.hpp"

using namespace pcurv;
using namespace pcurv::testing;

namespace {

const GaloisField& F3() { return GaloisField::get(3, 1); }
const GaloisField& F5() { return GaloisField::get(5, 1); }
const GaloisField& F25() { return GaloisField::get(5, 2); }

const BundleParams kWorked{3, 1, 1, 0, 1};

KernelMap worked() {
  const auto& f = F3();
  return KernelMap(kWorked, f, {Fq(f, 0)}, {P(f, {0, 1}), P(f, {0, 1, 1}), P(f, {0, 2}), P(f, {0, 2})});
}

std::vector<Fq> pts(const GaloisField& f, std::initializer_list<long long> v) {
  std::vector<Fq> out;
  for (long long a : v) out.emplace_back(f, a);
  return out;
}

RationalMap rat(const PolyF& n, const PolyF& d) { return RationalMap(n, d); }

// Theorem data over a field with points lambda and exponents alpha, one per searched map.
std::vector<ClassDatum> theorem_data(const GaloisField& f, const std::vector<Fq>& lambda, const std::vector<int>& alpha) {
  const int p = f.characteristic(), n = static_cast<int>(lambda.size());
  int sum = 0;
  for (int a : alpha) sum += a;
  std::vector<RamificationConstraint> cons;
  for (int i = 0; i < n; ++i) cons.push_back({PointOnLine(lambda[i]), p - 2 * alpha[i]});
  std::vector<ClassDatum> out;
  for (const RationalMap& m : search_ramified_maps(f, n * (p - 1) / 2 + 1 - sum, cons))
    out.push_back(ClassDatum::main_theorem(f, n, 0, lambda, alpha, m));
  return out;
}

std::vector<std::vector<int>> alpha_patterns_p5() {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> a;
    for (int i = 0; i < 4; ++i) a.push_back(mask >> i & 1 ? 2 : 1);
    out.push_back(a);
  }
  return out;
}

}  // namespace

TEST(Extract, WorkedInstance) {
  const Invariants inv = extract_invariants(worked());
  EXPECT_EQ(inv.alpha, std::vector<int>{1});
  EXPECT_EQ(inv.beta, std::vector<int>{0});
  ASSERT_FALSE(inv.constant);
  EXPECT_EQ(inv.fg, rat(P(F3(), {1, 1}), P(F3(), {1})));
  EXPECT_EQ(inv.c[0].determinacy, Determinacy::Unique);
}

TEST(Extract, AntidiagonalIsConstantInfinity) {
  const auto& f = F3();
  KernelMap s(kWorked, f, {Fq(f, 0)}, {PolyF(), P(f, {0, 0, 1}), P(f, {0, 1}), PolyF()});
  const Invariants inv = extract_invariants(s);
  EXPECT_TRUE(inv.constant);
  EXPECT_TRUE(inv.constant_value.is_infinity());
}

TEST(Extract, DiagonalIsConstantZero) {
  const auto& f = F5();
  const BundleParams bp = *diagonal_params(5, {2, 1});
  const Invariants inv = extract_invariants(diagonal_kernel_map(f, bp, pts(f, {0, 1}), {2, 1}));
  EXPECT_TRUE(inv.constant);
  EXPECT_EQ(inv.constant_value, PointOnLine(Fq(f, 0)));
}

TEST(FillIn, WorkedInstance) {
  const auto& f = F3();
  ClassDatum d{kWorked, &f, pts(f, {0}), {1}, {0}, rat(P(f, {1, 1}), P(f, {1})), {std::nullopt}};
  auto s = fill_in(d, P(f, {1}), P(f, {1, 1}));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->entries(), worked().entries());
  EXPECT_EQ(s->matrix().det(), P(f, {0, 0, 0, 1}));
}

TEST(FillIn, ExtraRamificationGivesNone) {
  const auto& f = GaloisField::get(7, 1);
  // beta = 2 < p - 2alpha = 5 demands ramification exactly 3; 1 + x^4 has 4.
  ClassDatum d{{7, 1, 1, 0, 1}, &f, pts(f, {0}), {1}, {2}, rat(P(f, {1, 0, 0, 0, 1}), P(f, {1})), {std::nullopt}};
  EXPECT_FALSE(fill_in(d, P(f, {0, 0, 1}), P(f, {0, 0, 1, 0, 0, 0, 1})).has_value());
}

namespace {

// p = 5, n = 6, delta = 0, m = 3, d = 1: f of degree one with a column constant at lambda_1.
ClassDatum c_point_datum(const Fq& c) {
  const auto& f = F25();
  std::vector<Fq> lambda = elements(f);
  lambda.assign(lambda.begin() + 1, lambda.begin() + 7);
  ClassDatum d{{5, 6, 1, 3, 0}, &f, lambda, std::vector<int>(6, 2), {1, 0, 0, 0, 0, 0},
               rat(PolyF::x(f), P(f, {1})), std::vector<std::optional<Fq>>(6)};
  d.c[0] = c;
  return d;
}

}  // namespace

TEST(FillIn, ColumnConstantAtInverseValueGivesNone) {
  const auto& f = F25();
  ClassDatum good = c_point_datum(Fq(f, 0));
  good.validate();
  const Fq l = good.points[0];
  const PolyF g1 = PolyF({-l, Fq(f, 1)});
  // With f = x the forbidden constant is 1/lambda_1.
  ClassDatum bad = good;
  bad.c[0] = l.inverse();
  EXPECT_THROW(bad.validate(), PreconditionError);
  EXPECT_FALSE(fill_in(bad, g1, g1 * PolyF::x(f)).has_value());
  auto s = fill_in(good, g1, g1 * PolyF::x(f));
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(is_log_vanishing(*s).valid);
  EXPECT_TRUE(data_equivalent(good, datum_of(*s)));
}

TEST(FillIn, BetaBeyondBoundIsAnError) {
  const auto& f = F5();
  ClassDatum d{{5, 1, 1, 0, 1}, &f, pts(f, {0}), {2}, {2}, rat(P(f, {1, 1}), P(f, {1})), {std::nullopt}};
  EXPECT_THROW(fill_in(d, P(f, {0, 0, 1}), P(f, {0, 0, 1, 1})), PreconditionError);
}

TEST(TheoremForward, P5Example) {
  const auto& f = F5();
  const auto lambda = pts(f, {0, 1, 2, 3});
  ClassDatum d = ClassDatum::main_theorem(f, 4, 0, lambda, {2, 2, 2, 2}, RationalMap::identity(f));
  EXPECT_EQ(d.params, (BundleParams{5, 4, 1, 2, 0}));
  EXPECT_EQ(d.f.degree(), 1);
  const KernelMap s = theorem_forward(d);
  EXPECT_EQ(s.matrix().det(), power_product(f, lambda, 5));
  const ConnectionMatrix t = connection_matrix(s);
  const PoleDivisor poles = pole_divisor(t);
  EXPECT_EQ(poles.points.size(), 4u);
  for (const auto& [pt, ord] : poles.points) {
    EXPECT_FALSE(pt.is_infinity());
    EXPECT_EQ(ord, 1);
    auto r = residue(t, pt);
    std::vector<Fq> ev = r.eigenvalues;
    std::sort(ev.begin(), ev.end());
    EXPECT_EQ(ev, (std::vector<Fq>{Fq(f, 2), Fq(f, 3)}));
  }
  EXPECT_TRUE(is_zero_matrix(p_curvature(t)));
  EXPECT_FALSE(s.g(0, 1).is_zero());
  EXPECT_TRUE(is_separable(extract_invariants(s).fg));
}

TEST(TheoremForward, InseparableRejected) {
  const auto& f = F5();
  EXPECT_THROW(ClassDatum::main_theorem(f, 4, 0, pts(f, {0, 1, 2, 3}), {2, 2, 2, 2}, rat(P(f, {0, 0, 0, 0, 0, 1}), P(f, {1}))),
               PreconditionError);
  EXPECT_THROW(ClassDatum::main_theorem(f, 4, 0, pts(f, {0, 1, 1, 3}), {2, 2, 2, 2}, RationalMap::identity(f)),
               PreconditionError);
}

TEST(TheoremForward, SearchedDegreeFiveOverExtension) {
  const auto& f = F25();
  const auto data = theorem_data(f, pts(f, {0, 1, 2, 3}), {1, 1, 1, 1});
  ASSERT_FALSE(data.empty());
  for (const ClassDatum& d : data) {
    EXPECT_EQ(d.f.degree(), 5);
    const KernelMap s = theorem_forward(d);
    EXPECT_TRUE(is_log_vanishing(s).valid);
    EXPECT_TRUE(log_vanishing_by_curvature(s));
  }
}

TEST(TheoremForward, RoundTripAndInvariantProperties) {
  const auto& f = F25();
  Rng rng(11);
  int samples = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto lambda = distinct_points(rng, f, 4);
    for (const auto& alpha : alpha_patterns_p5()) {
      for (const ClassDatum& d : theorem_data(f, lambda, alpha)) {
        const KernelMap s = theorem_forward(d);
        const Invariants inv = extract_invariants(s);
        EXPECT_TRUE(data_equivalent(d, datum_of(s)));
        const auto report = is_log_vanishing(s);
        ASSERT_TRUE(report.valid);
        for (size_t i = 0; i < lambda.size(); ++i) {
          EXPECT_LE(inv.beta[i], 5 - 2 * inv.alpha[i]);
          const auto& cert = report.poles[i].certificate;
          ASSERT_TRUE(cert.has_value());
          EXPECT_EQ(std::min(cert->e[0], cert->e[1]), inv.alpha[i]);
        }
        ++samples;
      }
    }
  }
  EXPECT_GE(samples, 20);
}

TEST(Mobius, Examples) {
  const auto& f = F5();
  const RationalMap x = RationalMap::identity(f);
  auto same = mobius_equivalent(x, x, -1);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->mu, x);
  EXPECT_TRUE(same->f0.is_zero());

  const RationalMap g = rat(P(f, {1, 1}), P(f, {-1, 1}));
  auto m = mobius_equivalent(x, g, -1);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->mu, g);

  EXPECT_FALSE(mobius_equivalent(x, rat(P(f, {0, 0, 1}), P(f, {1})), -1).has_value());
}

TEST(Mobius, InseparableTranslation) {
  const auto& f = F3();
  const RationalMap a = rat(P(f, {0, 1, 0, 1}), P(f, {1}));  // x^3 + x
  const RationalMap x = RationalMap::identity(f);
  EXPECT_FALSE(mobius_equivalent(a, x, -1).has_value());
  EXPECT_FALSE(mobius_equivalent(a, x, 2).has_value());
  auto m = mobius_equivalent(a, x, 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->f0, P(f, {0, 0, 0, -1}));
}

TEST(Mobius, AgreesWithEnumeration) {
  const auto& f = F5();
  Rng rng(3);
  std::vector<RationalMap> group;
  for (const Fq& a : elements(f))
    for (const Fq& b : elements(f))
      for (const Fq& c : elements(f))
        for (const Fq& d : elements(f))
          if (!(a * d - b * c).is_zero()) group.push_back(RationalMap::mobius(a, b, c, d));
  int hits = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto random_map = [&] {
      while (true) {
        const PolyF num = rng.poly(f, 2), den = rng.poly(f, 2);
        if (den.is_zero()) continue;
        RationalMap r(num, den);
        if (r.degree() == 2 && is_separable(r)) return r;
      }
    };
    const RationalMap a = random_map();
    const RationalMap b = trial % 2 ? group[rng.below(group.size())].compose(a) : random_map();
    bool expected = false;
    for (const RationalMap& mu : group)
      if (mu.compose(a) == b) expected = true;
    auto got = mobius_equivalent(a, b, -1);
    EXPECT_EQ(got.has_value(), expected);
    if (got) {
      EXPECT_EQ(got->mu.compose(a), b);
      ++hits;
    }
  }
  EXPECT_GE(hits, 30);
}

TEST(Normalize, AlreadyNormalizedUnchanged) {
  EXPECT_TRUE(is_normalized(worked()));
  EXPECT_EQ(normalize_kernel_map(worked()).entries(), worked().entries());
}

TEST(Normalize, ReswapsColumnSwappedInstance) {
  const KernelMap s = worked();
  auto g = s.entries();
  std::swap(g[0], g[1]);
  std::swap(g[2], g[3]);
  const KernelMap swapped(kWorked, F3(), s.points(), g);
  EXPECT_FALSE(is_normalized(swapped));
  EXPECT_EQ(normalize_kernel_map(swapped).entries(), s.entries());
}

TEST(Normalize, RowOperationRestoresOrder) {
  const auto& f = F5();
  const auto lambda = pts(f, {0, 1, 2, 3});
  const KernelMap s = normalize_kernel_map(theorem_forward(ClassDatum::main_theorem(f, 4, 0, lambda, {2, 2, 2, 2}, RationalMap::identity(f))));
  ASSERT_TRUE(is_normalized(s));
  // Make g22 vanish one order too deep at lambda_1 by a legal row operation.
  const PolyF a = power_product(f, lambda, 2);
  const Fq b = -((s.g(1, 1) / a).eval(lambda[0]) / (s.g(0, 1) / a).eval(lambda[0]));
  PolyMatrixF l = PolyMatrixF::identity(f, 2);
  l(1, 0) = PolyF::constant(b);
  const KernelMap bent = apply_transport(s, {Side::Left, l});
  EXPECT_GT(ord_at(bent.g(1, 1), lambda[0]), 2);
  const KernelMap fixed = normalize_kernel_map(bent);
  EXPECT_TRUE(is_normalized(fixed));
  EXPECT_EQ(ord_at(fixed.g(1, 1), lambda[0]), 2);
  EXPECT_TRUE(transport_equivalent_bruteforce(bent, fixed));
}

TEST(Normalize, ConstantClassRejected) {
  const auto& f = F3();
  KernelMap s(kWorked, f, {Fq(f, 0)}, {PolyF(), P(f, {0, 0, 1}), P(f, {0, 1}), PolyF()});
  EXPECT_THROW(normalize_kernel_map(s), PreconditionError);
}

TEST(Equivalence, TransportOrbitAndBruteForce) {
  const auto& f = F5();
  const auto lambda = pts(f, {0, 1, 2, 3});
  Rng rng(5);
  std::vector<KernelMap> maps;
  for (const auto& alpha : alpha_patterns_p5())
    for (const ClassDatum& d : theorem_data(f, lambda, alpha)) maps.push_back(theorem_forward(d));
  ASSERT_GE(maps.size(), 4u);
  for (const KernelMap& s : maps) {
    for (int k = 0; k < 3; ++k) {
      KernelMap t = apply_transport(apply_transport(s, random_left(rng, f, s.params())), random_right(rng, f, s.params()));
      EXPECT_TRUE(kernel_maps_equivalent(s, t));
      EXPECT_TRUE(transport_equivalent_bruteforce(s, t));
    }
  }
  for (size_t i = 0; i < maps.size(); ++i)
    for (size_t j = i + 1; j < maps.size(); ++j) {
      KernelMap t = apply_transport(maps[j], random_right(rng, f, maps[j].params()));
      EXPECT_EQ(kernel_maps_equivalent(maps[i], t), transport_equivalent_bruteforce(maps[i], t));
    }
}

TEST(Equivalence, MobiusImageOfF) {
  const auto& f = F25();
  const auto lambda = pts(f, {0, 1, 2, 3});
  Rng rng(9);
  for (const ClassDatum& d : theorem_data(f, lambda, {1, 1, 1, 1})) {
    ClassDatum e = d;
    while (true) {
      RationalMap mu = RationalMap::mobius(rng.element(f), rng.element(f), rng.element(f), rng.element(f));
      if (mu.degree() != 1) continue;
      e.f = mu.compose(d.f);
      break;
    }
    EXPECT_TRUE(kernel_maps_equivalent(theorem_forward(d), theorem_forward(e)));
  }
  const auto a = theorem_data(f, lambda, {1, 1, 1, 1});
  const auto b = theorem_data(f, lambda, {2, 2, 2, 2});
  ASSERT_FALSE(a.empty());
  ASSERT_FALSE(b.empty());
  EXPECT_NE(a[0].f.degree(), b[0].f.degree());
  EXPECT_FALSE(kernel_maps_equivalent(theorem_forward(a[0]), theorem_forward(b[0])));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      EXPECT_FALSE(kernel_maps_equivalent(theorem_forward(a[i]), theorem_forward(a[j])));
}

TEST(Equivalence, ColumnConstantsDistinguishClasses) {
  const auto& f = F25();
  const KernelMap s0 = theorem_forward(c_point_datum(Fq(f, 0)));
  const KernelMap s1 = theorem_forward(c_point_datum(Fq(f, 3)));
  EXPECT_FALSE(kernel_maps_equivalent(s0, s1));
  // Moving f by mu moves gamma = 1/c by the same mu.
  ClassDatum d = c_point_datum(Fq(f, 3));
  const RationalMap mu = RationalMap::mobius(Fq(f, 1), Fq(f, 2), Fq(f, 1), Fq(f, 1));
  ClassDatum e = d;
  e.f = mu.compose(d.f);
  e.c[0] = c_of(mu.eval(gamma_of(*d.c[0])));
  EXPECT_TRUE(kernel_maps_equivalent(theorem_forward(d), theorem_forward(e)));
}

TEST(Equivalence, UniqueFillInUpToTransport) {
  const auto& f = F5();
  const auto lambda = pts(f, {0, 1, 2, 3});
  for (const ClassDatum& d : theorem_data(f, lambda, {1, 1, 2, 2})) {
    const KernelMap s = theorem_forward(d);
    const PolyF a = power_product(f, lambda, 1) * power_product(f, {lambda[2], lambda[3]}, 1);
    // The same top row scaled differs from s only by transport.
    auto t = fill_in(datum_of(s), Fq(f, 2) * (s.g(0, 0) / a), Fq(f, 2) * (s.g(0, 1) / a));
    ASSERT_TRUE(t.has_value());
    EXPECT_TRUE(transport_equivalent_bruteforce(s, *t));
    EXPECT_TRUE(kernel_maps_equivalent(s, *t));
  }
}

TEST(Equivalence, ConstantDetectionUnderTransport) {
  const auto& f = F5();
  const BundleParams bp{5, 4, 1, 2, 0};
  const auto lambda = pts(f, {0, 1, 2, 3});
  Rng rng(21);
  // Antidiagonal g12 g21 = -prod (x - lambda)^5 with deg g21 = mp + d = 11.
  const PolyF g21 = power_product(f, {lambda[0], lambda[1], lambda[2]}, 3) * power_product(f, {lambda[3]}, 2);
  const PolyF g12 = -(power_product(f, lambda, 5) / g21);
  const KernelMap anti(bp, f, lambda, {PolyF(), g12, g21, PolyF()});
  for (int k = 0; k < 5; ++k) {
    KernelMap t = apply_transport(apply_transport(anti, random_left(rng, f, bp)), random_right(rng, f, bp));
    EXPECT_TRUE(extract_invariants(t).constant);
    EXPECT_TRUE(kernel_maps_equivalent(anti, t));
  }
  for (const auto& alpha : alpha_patterns_p5())
    for (const ClassDatum& d : theorem_data(f, lambda, alpha)) {
      const KernelMap s = theorem_forward(d);
      EXPECT_FALSE(extract_invariants(s).constant);
      EXPECT_FALSE(kernel_maps_equivalent(s, anti));
    }
}
