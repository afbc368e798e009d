#include "pcurv/census.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "pcurv/classification.hpp"
#include "pcurv/criterion.hpp"
#include "pcurv/linalg.hpp"

namespace pcurv {

namespace {

int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw BudgetError("count exceeds 64-bit range");
  return static_cast<int64_t>(v);
}

// C(a, b), zero when a < b or b < 0.
int64_t binom(int64_t a, int64_t b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  __int128 r = 1;
  for (int64_t i = 1; i <= b; ++i) r = checked(r * (a - b + i)) / i;
  return checked(r);
}

// Number of compositions of s into n parts in 1..h-1.
int64_t count_bounded(int h, int n, int s) {
  if (n == 0) return s == 0 ? 1 : 0;
  __int128 total = 0;
  for (int i = 0; i <= n; ++i) {
    __int128 term = static_cast<__int128>(binom(n, i)) * binom(static_cast<int64_t>(s) - static_cast<int64_t>(i) * (h - 1) - 1, n - 1);
    total += (i % 2 == 0) ? term : -term;
  }
  return checked(total);
}

int64_t projective_points(int64_t q, int dim) {
  if (dim < 0) return 0;
  __int128 r = 0, pw = 1;
  for (int i = 0; i <= dim; ++i) {
    r += pw;
    pw = checked(pw * q);
  }
  return checked(r);
}

}  // namespace

int64_t count_np(int p, int n, int s) {
  if (n < 1) throw PreconditionError("count_np: n must be positive");
  return count_bounded(p, n, s);
}

int64_t count_npd(int p, int n, int s, int D) {
  if (D < 0 || D > n) throw PreconditionError("count_npd: D outside 0..n");
  const int h = (p + 1) / 2, shift = (n - D) * (p - 1) / 2;
  __int128 total = 0;
  for (int j = 0; j <= s; ++j) total += static_cast<__int128>(count_bounded(h, D, j)) * count_bounded(h, n - D, s - j - shift);
  return checked(total * binom(n, D));
}

int64_t oracle_np(int p, int n, int s, std::optional<int> D, int64_t budget) {
  __int128 size = 1;
  for (int i = 0; i < n; ++i) {
    size *= p - 1;
    if (size > budget) throw BudgetError("oracle_np: enumeration exceeds budget");
  }
  int64_t count = 0;
  std::vector<int> e(n, 1);
  while (true) {
    int sum = 0, small = 0;
    for (int v : e) {
      sum += v;
      if (2 * v < p) ++small;
    }
    if (sum == s && (!D || small == *D)) ++count;
    int i = 0;
    while (i < n && e[i] == p - 1) e[i++] = 1;
    if (i == n) break;
    ++e[i];
  }
  return count;
}

CensusReport constant_class_census(int p, int n, int m, int d, int delta, int64_t q) {
  if (delta * p >= 2 * d) throw PreconditionError("census: requires delta p < 2d");
  if (m > n - delta - m) throw PreconditionError("census: requires m <= n - delta - m");
  if (q < 2) throw PreconditionError("census: q must be a prime power");
  CensusReport r;
  r.params = BundleParams{p, n, d, m, delta};
  r.q = q;
  r.first_two_exhaust = m * p + delta < d;
  auto add = [&](int first, int s, int dim_shift) {
    CensusCase c{first, s, count_np(p, n, s), {}};
    r.cases.push_back(c);
    CensusCase fam{first + 1, s, 0, {}};
    for (int D = 0; D <= n; ++D) {
      const int dim = D + dim_shift;
      fam.families.push_back({D, count_npd(p, n, s, D), dim, projective_points(q, dim)});
    }
    r.cases.push_back(fam);
  };
  add(1, m * p + d, -2 - n + delta + 2 * m);
  if (m != n - delta - m) add(3, (n - delta - m) * p + d, -1);
  return r;
}

KernelMap reduce_constant_class(const KernelMap& s) {
  const Invariants inv = extract_invariants(s);
  if (!inv.constant) throw PreconditionError("f_g cannot be made constant");
  if (s.g(0, 0).is_zero()) return s;
  auto g = s.entries();
  // g12 = h g11 with h constant or a polynomial in x^p.
  const PolyF h = g[1] / g[0];
  g[1] = g[1] - h * g[0];
  g[3] = g[3] - h * g[2];
  if (s.params().balanced()) {
    std::swap(g[0], g[1]);
    std::swap(g[2], g[3]);
  }
  return KernelMap(s.params(), s.field(), s.points(), g);
}

namespace {

// Is there sigma != 0 and f0 in span{x^(jp) : jp <= bound} (bound < 0: f0 = 0)
// with c2 = sigma c1 + f0(lambda) at every listed point?
bool affine_related(const GaloisField& field, const std::vector<Fq>& pts, const std::vector<Fq>& c1,
                    const std::vector<Fq>& c2, int bound) {
  const int p = field.characteristic();
  const int terms = bound < 0 ? 0 : bound / p + 1;
  FqMatrix m(field, 0, 1 + terms);
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<Fq> row{c1[i]};
    for (int j = 0; j < terms; ++j) row.push_back(pts[i].pow(static_cast<uint64_t>(j) * p));
    m.append_row(row);
  }
  auto sol = solve(m, c2);
  if (!sol) return false;
  if (!sol->particular[0].is_zero()) return true;
  for (const auto& k : sol->kernel)
    if (!k[0].is_zero()) return true;
  return false;
}

}  // namespace

bool constant_classes_equivalent(const KernelMap& a, const KernelMap& b) {
  if (!(a.params() == b.params()) || &a.field() != &b.field() || a.points() != b.points())
    throw PreconditionError("constant_classes_equivalent: parameters differ");
  const KernelMap ra = reduce_constant_class(a), rb = reduce_constant_class(b);
  const bool a11 = ra.g(0, 0).is_zero(), b11 = rb.g(0, 0).is_zero();
  if (a11 != b11) return false;
  const BundleParams& pr = a.params();
  const int p = pr.p;
  // With g11 = 0 the direct constants are determined where ord g21 < p/2 and
  // move by scaling and translation; with g12 = 0 the mirror constants are
  // determined where ord g11 > p/2 and only scale.
  const int row = a11 ? 1 : 0, col = 0;
  std::vector<Fq> pts, c1, c2;
  for (const Fq& l : a.points()) {
    const int oa = ord_at(ra.g(row, col), l), ob = ord_at(rb.g(row, col), l);
    if (oa != ob) return false;
    const bool determined = a11 ? 2 * oa < p : 2 * oa > p;
    if (!determined) continue;
    auto ca = find_column_constant(ra, PointOnLine(l), !a11);
    auto cb = find_column_constant(rb, PointOnLine(l), !a11);
    if (ca.determinacy != Determinacy::Unique || cb.determinacy != Determinacy::Unique)
      throw std::logic_error("constant class: expected a determined column constant");
    pts.push_back(l);
    c1.push_back(*ca.value);
    c2.push_back(*cb.value);
  }
  if (pts.empty()) return true;
  return affine_related(a.field(), pts, c1, c2, a11 ? (pr.n - pr.delta - 2 * pr.m) * p : -1);
}

namespace {

// Monic polynomials of degree <= t in a fixed order.
void for_each_monic(const std::vector<Fq>& elems, int t, const std::function<void(const PolyF&)>& visit) {
  const Fq unit = elems[1];
  const size_t q = elems.size();
  for (int deg = 0; deg <= t; ++deg) {
    std::vector<size_t> idx(deg, 0);
    while (true) {
      std::vector<Fq> c(deg + 1);
      for (int i = 0; i < deg; ++i) c[i] = elems[idx[i]];
      c[deg] = unit;
      visit(PolyF(c));
      int i = 0;
      while (i < deg && idx[i] == q - 1) idx[i++] = 0;
      if (i == deg) break;
      ++idx[i];
    }
  }
}

// Polynomials of degree <= e with coefficient `skip` zero, first nonzero from the top equal to 1.
void for_each_projective_complement(const std::vector<Fq>& elems, int e, int skip,
                                    const std::function<void(const PolyF&)>& visit) {
  const Fq unit = elems[1];
  const size_t q = elems.size();
  for (int lead = 0; lead <= e; ++lead) {
    if (lead == skip) continue;
    std::vector<int> free;
    for (int i = 0; i < lead; ++i)
      if (i != skip) free.push_back(i);
    std::vector<size_t> idx(free.size(), 0);
    while (true) {
      std::vector<Fq> c(lead + 1, elems[0]);
      for (size_t i = 0; i < free.size(); ++i) c[free[i]] = elems[idx[i]];
      c[lead] = unit;
      visit(PolyF(c));
      size_t i = 0;
      while (i < idx.size() && idx[i] == q - 1) idx[i++] = 0;
      if (i == idx.size()) break;
      ++idx[i];
    }
  }
}

// The factor forcing order k at a point and the remaining degree allowance.
std::pair<PolyF, int> vanishing_factor(const GaloisField& f, const RamificationConstraint& c, int e) {
  if (c.point.is_infinity()) return {PolyF::constant(Fq(f, 1)), e - c.min_index};
  return {power_product(f, {c.point.value()}, c.min_index), e - c.min_index};
}

__int128 monic_count(int64_t q, int t) {
  __int128 r = 0, pw = 1;
  for (int i = 0; i <= t; ++i) {
    r += pw;
    pw *= q;
  }
  return r;
}

}  // namespace

std::vector<RationalMap> search_ramified_maps(const GaloisField& field, int degree,
                                              const std::vector<RamificationConstraint>& constraints,
                                              std::optional<int> infinity_min_index, int64_t budget) {
  if (degree < 1) throw PreconditionError("search_ramified_maps: degree must be positive");
  std::vector<RamificationConstraint> all;
  if (infinity_min_index) all.push_back({PointOnLine::infinity(), *infinity_min_index});
  std::vector<RamificationConstraint> rest = constraints;
  std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.min_index > b.min_index; });
  for (const auto& c : rest) {
    for (const auto& o : all)
      if (o.point == c.point) throw PreconditionError("search_ramified_maps: repeated constraint point");
    all.push_back(c);
  }
  for (const PointOnLine& pad : {PointOnLine::infinity(), PointOnLine(Fq(field, 0)), PointOnLine(Fq(field, 1))}) {
    if (all.size() >= 2) break;
    if (std::none_of(all.begin(), all.end(), [&](const auto& c) { return c.point == pad; })) all.push_back({pad, 1});
  }
  const int64_t q = field.order();
  const auto [phi1, t1] = vanishing_factor(field, all[0], degree);
  const auto [phi2, t2] = vanishing_factor(field, all[1], degree);
  const int t12 = degree - all[0].min_index - all[1].min_index;
  __int128 cost = (t1 >= 0 && t2 >= 0 ? monic_count(q, t1) * monic_count(q, t2) : 0) +
                  (t12 >= 0 ? monic_count(q, t12) * monic_count(q, degree - 1) : 0);
  if (cost > budget)
    throw BudgetError("search_ramified_maps: " + std::to_string(static_cast<int64_t>(cost)) +
                      " candidates exceed the budget; tighten the ramification constraints");

  const std::vector<Fq> elems = elements(field);
  // Taylor coefficients at the remaining finite constraint points give a cheap
  // linear test: ram_P(B/A) >= k iff B(P) A - A(P) B has order >= k at P.
  std::vector<std::pair<Fq, int>> local;
  for (size_t i = 2; i < all.size(); ++i)
    if (!all[i].point.is_infinity()) local.push_back({all[i].point.value(), all[i].min_index});
  struct Candidate {
    PolyF poly;
    std::vector<std::vector<Fq>> taylor;
  };
  auto candidate = [&](PolyF f) {
    Candidate c{std::move(f), {}};
    for (const auto& [pt, k] : local) {
      const PolyF sh = c.poly.shift(pt);
      std::vector<Fq> t(k);
      for (int j = 0; j < k; ++j) t[j] = sh[j];
      c.taylor.push_back(std::move(t));
    }
    return c;
  };
  std::vector<RationalMap> out;
  auto consider = [&](const Candidate& a, const Candidate& b) {
    if (std::max(a.poly.degree(), b.poly.degree()) != degree) return;
    for (size_t i = 0; i < local.size(); ++i) {
      const auto &ta = a.taylor[i], &tb = b.taylor[i];
      for (size_t j = 1; j < ta.size(); ++j)
        if (tb[0] * ta[j] != ta[0] * tb[j]) return;
    }
    if (gcd(a.poly, b.poly).degree() != 0) return;
    RationalMap f(b.poly, a.poly);
    if (!is_separable(f)) return;
    for (const auto& c : all)
      if (ram_index(f, c.point) < c.min_index) return;
    out.push_back(f);
  };
  // Distinct members carry the first two constraints.
  if (t1 >= 0 && t2 >= 0) {
    std::vector<Candidate> bs;
    for_each_monic(elems, t2, [&](const PolyF& r) { bs.push_back(candidate(phi2 * r)); });
    for_each_monic(elems, t1, [&](const PolyF& r) {
      const Candidate a = candidate(phi1 * r);
      for (const Candidate& b : bs) consider(a, b);
    });
  }
  // One member carries both; the other ranges over a fixed complement.
  if (t12 >= 0) {
    for_each_monic(elems, t12, [&](const PolyF& r) {
      const Candidate a = candidate(phi1 * phi2 * r);
      for_each_projective_complement(elems, degree, a.poly.degree(),
                                     [&](const PolyF& b) { consider(a, candidate(b)); });
    });
  }
  return out;
}

}  // namespace pcurv
