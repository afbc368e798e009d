#pragma once

#include <algorithm>
#include <stdexcept>

namespace pcurv {
namespace detail {

template <class R>
const GaloisField& field_of(const SeriesMatrix<R>& s) {
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j)
      if (const GaloisField* f = s(i, j).field()) return *f;
  throw PreconditionError("series matrix is zero");
}

// Coefficients of degree >= k divided by t^k.
template <class R>
Poly<R> drop_low(const Poly<R>& a, int k) {
  if (a.degree() < k) return Poly<R>();
  return Poly<R>(std::vector<R>(a.coeffs().begin() + k, a.coeffs().end()));
}

// Inverse of a unit power series modulo t^n.
template <class R>
Poly<R> unit_inverse(const Poly<R>& u, int n) {
  return TruncatedSeries<R>::from_poly(u, n).inverse().to_poly();
}

template <class R>
void swap_rows(SeriesMatrix<R>& m, int a, int b) {
  for (int j = 0; j < m.size(); ++j) std::swap(m(a, j), m(b, j));
}

// row[dst] -= mult * row[src].
template <class R>
void row_axpy(SeriesMatrix<R>& m, int dst, int src, const Poly<R>& mult) {
  for (int j = 0; j < m.size(); ++j) m(dst, j) = (m(dst, j) - (mult * m(src, j)).truncate(m.precision()));
}

template <class R>
void row_scale(SeriesMatrix<R>& m, int row, const Poly<R>& mult) {
  for (int j = 0; j < m.size(); ++j) m(row, j) = (mult * m(row, j)).truncate(m.precision());
}

// col[dst] -= mult * col[src].
template <class R>
void col_axpy(SeriesMatrix<R>& m, int dst, int src, const Poly<R>& mult) {
  for (int i = 0; i < m.size(); ++i) m(i, dst) = (m(i, dst) - (mult * m(i, src)).truncate(m.precision()));
}

template <class R>
Poly<R> det_rec(const SeriesMatrix<R>& s, std::vector<int>& cols, int row) {
  const int n = s.size();
  if (row == n) return Poly<R>::constant(R(field_of(s), 1));
  Poly<R> acc;
  int sign = 1;
  for (size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    if (!s(row, c).is_zero()) {
      cols.erase(cols.begin() + static_cast<long>(k));
      Poly<R> term = (s(row, c) * det_rec(s, cols, row + 1)).truncate(s.precision());
      cols.insert(cols.begin() + static_cast<long>(k), c);
      acc = sign > 0 ? acc + term : acc - term;
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace detail

template <class R>
Poly<R> determinant(const SeriesMatrix<R>& s) {
  std::vector<int> cols(s.size());
  for (int i = 0; i < s.size(); ++i) cols[i] = i;
  return detail::det_rec(s, cols, 0);
}

template <class R>
TriangularForm<R> triangular_normal_form(const SeriesMatrix<R>& s) {
  const int n = s.size(), prec = s.precision();
  const GaloisField& f = detail::field_of(s);
  Poly<R> det = determinant(s);
  if (det.is_zero()) throw PrecisionError("determinant vanishes to the working precision");
  int det_ord = 0;
  while (det[det_ord].is_zero()) ++det_ord;
  if (det_ord + 1 > prec) throw PrecisionError("precision must exceed the order of the determinant");

  SeriesMatrix<R> t = s, m = SeriesMatrix<R>::identity(f, n, prec);
  t.reduce();
  std::vector<int> e(n);
  for (int c = 0; c < n; ++c) {
    int best = -1, best_ord = -1, min_ord = -1;
    for (int i = c; i < n; ++i) {
      int o = t.order(i, c);
      if (o < 0) continue;
      if (min_ord < 0 || o < min_ord) min_ord = o;
      if (t(i, c)[o].is_unit() && (best < 0 || o < best_ord)) {
        best = i;
        best_ord = o;
      }
    }
    if (min_ord < 0) throw PrecisionError("pivot column vanishes to the working precision");
    if (best < 0 || best_ord > min_ord) throw NormalFormError("column ideal is not principal over the coefficient ring");
    detail::swap_rows(t, c, best);
    detail::swap_rows(m, c, best);
    e[c] = best_ord;
    Poly<R> uinv = detail::unit_inverse(detail::drop_low(t(c, c), best_ord), prec - best_ord);
    detail::row_scale(t, c, uinv);
    detail::row_scale(m, c, uinv);
    for (int i = c + 1; i < n; ++i) {
      if (t(i, c).is_zero()) continue;
      Poly<R> q = detail::drop_low(t(i, c), best_ord).truncate(prec - best_ord);
      detail::row_axpy(t, i, c, q);
      detail::row_axpy(m, i, c, q);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Poly<R> q = detail::drop_low(t(i, j), e[j]);
      if (q.is_zero()) continue;
      detail::row_axpy(t, i, j, q);
      detail::row_axpy(m, i, j, q);
    }
  TriangularForm<R> out;
  out.e = std::move(e);
  out.form = std::move(t);
  out.left = std::move(m);
  out.right = SeriesMatrix<R>::identity(f, n, prec);
  return out;
}

template <class R>
TriangularForm<R> pth_power_reduce(TriangularForm<R> tf, int p) {
  const int n = tf.form.size();
  for (int j = 1; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      const int ei = tf.e[i];
      for (int k = ei % p; k < tf.e[j]; k += p) {
        R a = tf.form(i, j)[k];
        if (a.is_zero()) continue;
        if (k < ei) {
          tf.unreachable_terms = true;
          continue;
        }
        Poly<R> mult = Poly<R>::monomial(a, k - ei);
        detail::col_axpy(tf.form, j, i, mult);
        detail::col_axpy(tf.right, j, i, mult);
      }
    }
  return tf;
}

namespace detail {

template <class R>
std::optional<DiagonalCertificate<R>> diagonalize_in_order(const SeriesMatrix<R>& s, int p) {
  TriangularForm<R> tf = triangular_normal_form(s);
  for (int e : tf.e)
    if (e >= p) return std::nullopt;
  tf = pth_power_reduce(std::move(tf), p);
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!tf.form(i, j).is_zero()) return std::nullopt;
  DiagonalCertificate<R> cert;
  cert.e = tf.e;
  cert.c.assign(n, std::vector<R>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (tf.right(i, j).degree() > 0) throw std::logic_error("p-th power reduction produced a non-constant column operation");
      cert.c[i][j] = tf.right(i, j)[0];
    }
  SeriesMatrix<R> diag(n, s.precision());
  const GaloisField& f = detail::field_of(s);
  for (int i = 0; i < n; ++i) diag(i, i) = Poly<R>::monomial(R(f, 1), tf.e[i]);
  if (!agree(tf.left * s * tf.right, diag)) throw std::logic_error("diagonal certificate does not reproduce the input");
  cert.left = std::move(tf.left);
  return cert;
}

}  // namespace detail

// Over k[eps] a column ideal may fail to be principal in one column order and
// not another, so every column order is tried; a non-principal column in all
// of them means no certificate.
template <class R>
std::optional<DiagonalCertificate<R>> diagonalize_kernel_matrix(const SeriesMatrix<R>& s, int p) {
  const int n = s.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    SeriesMatrix<R> sp(n, s.precision());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sp(i, j) = s(i, perm[j]);
    try {
      auto cert = detail::diagonalize_in_order(sp, p);
      if (cert) cert->perm = perm;
      return cert;
    } catch (const NormalFormError&) {
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace pcurv
