#pragma once

#include <optional>

#include "pcurv/kernel_map.hpp"
#include "pcurv/random.hpp"

namespace pcurv::testing {

inline PolyF P(const GaloisField& f, std::initializer_list<long long> c) { return PolyF::from_ints(f, c); }

// All parameters admitting the diagonal kernel map with first-row exponents e.
inline std::vector<BundleParams> all_diagonal_params(int p, const std::vector<int>& e) {
  const int n = static_cast<int>(e.size());
  int sum = 0;
  for (int x : e) sum += x;
  std::vector<BundleParams> out;
  for (int delta = 0; delta <= 1; ++delta)
    for (int m = -n; m <= n; ++m) {
      BundleParams bp{p, n, (m + delta) * p - sum, m, delta};
      if (bp.m * p >= -bp.d && bp.m * p <= n * p - bp.d) out.push_back(bp);
    }
  return out;
}

inline std::optional<BundleParams> diagonal_params(int p, const std::vector<int>& e) {
  auto all = all_diagonal_params(p, e);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline KernelMap diagonal_kernel_map(const GaloisField& f, const BundleParams& bp, const std::vector<Fq>& pts,
                                     const std::vector<int>& e) {
  PolyF g11 = PolyF::constant(Fq(f, 1)), g22 = g11;
  for (size_t i = 0; i < pts.size(); ++i) {
    PolyF lin({-pts[i], Fq(f, 1)});
    g11 *= lin.pow(e[i]);
    g22 *= lin.pow(bp.p - e[i]);
  }
  return KernelMap(bp, f, pts, {g11, PolyF(), PolyF(), g22});
}

inline std::vector<Fq> distinct_points(Rng& rng, const GaloisField& f, int n) {
  std::vector<Fq> all = elements(f);
  std::shuffle(all.begin(), all.end(), rng.engine());
  return std::vector<Fq>(all.begin(), all.begin() + n);
}

inline PolyF random_in_xp(Rng& rng, const GaloisField& f, int bound, int p) {
  if (bound < 0) return PolyF();
  return rng.poly(f, bound / p).inflate(p);
}

inline TransportElement random_left(Rng& rng, const GaloisField& f, const BundleParams& bp) {
  PolyMatrixF m(2);
  while (true) {
    m(0, 0) = PolyF::constant(rng.nonzero(f));
    m(1, 1) = PolyF::constant(rng.nonzero(f));
    m(0, 1) = rng.poly(f, bp.delta * bp.p - 2 * bp.d);
    m(1, 0) = rng.poly(f, 2 * bp.d - bp.delta * bp.p);
    if ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).degree() == 0) return {Side::Left, m};
  }
}

inline TransportElement random_right(Rng& rng, const GaloisField& f, const BundleParams& bp) {
  PolyMatrixF m(2);
  const int up = (bp.n - bp.delta - 2 * bp.m) * bp.p, low = (2 * bp.m - bp.n + bp.delta) * bp.p;
  while (true) {
    m(0, 0) = PolyF::constant(rng.element(f));
    m(1, 1) = PolyF::constant(rng.element(f));
    m(0, 1) = random_in_xp(rng, f, up, bp.p);
    m(1, 0) = random_in_xp(rng, f, low, bp.p);
    if ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).degree() == 0) return {Side::Right, m};
  }
}

// Elements of the right transport group over a small field.
inline std::vector<PolyMatrixF> right_group(const GaloisField& f, const BundleParams& bp) {
  const int up = (bp.n - bp.delta - 2 * bp.m) * bp.p, low = (2 * bp.m - bp.n + bp.delta) * bp.p;
  const int nu = up < 0 ? 0 : up / bp.p + 1, nl = low < 0 ? 0 : low / bp.p + 1;
  const std::vector<Fq> el = elements(f);
  const size_t q = el.size();
  std::vector<size_t> idx(2 + nu + nl, 0);
  std::vector<PolyMatrixF> out;
  while (true) {
    PolyMatrixF m(2);
    m(0, 0) = PolyF::constant(el[idx[0]]);
    m(1, 1) = PolyF::constant(el[idx[1]]);
    for (int j = 0; j < nu; ++j) m(0, 1) += PolyF::monomial(el[idx[2 + j]], j * bp.p);
    for (int j = 0; j < nl; ++j) m(1, 0) += PolyF::monomial(el[idx[2 + nu + j]], j * bp.p);
    if (m.det().degree() == 0) out.push_back(m);
    size_t i = 0;
    while (i < idx.size() && idx[i] == q - 1) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  return out;
}

// Is b = L a R for legal L and R? Enumerates R; L is then forced.
inline bool transport_equivalent_bruteforce(const KernelMap& a, const KernelMap& b) {
  const PolyMatrixF sa = a.matrix(), sb = b.matrix();
  for (const PolyMatrixF& r : right_group(a.field(), a.params())) {
    const PolyMatrixF ar = sa * r;
    const PolyF det = ar.det();
    const PolyMatrixF m = sb * ar.adjugate();
    PolyMatrixF l(2);
    bool exact = true;
    for (int i = 0; i < 2 && exact; ++i)
      for (int j = 0; j < 2 && exact; ++j) {
        auto [quo, rem] = divmod(m(i, j), det);
        exact = rem.is_zero();
        l(i, j) = quo;
      }
    if (!exact) continue;
    try {
      check_transport(a.params(), {Side::Left, l});
      return true;
    } catch (const PreconditionError&) {
    }
  }
  return false;
}

}  // namespace pcurv::testing
