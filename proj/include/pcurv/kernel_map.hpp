#pragma once

#include <array>
#include <vector>

#include "pcurv/poly_matrix.hpp"
#include "pcurv/rational.hpp"

namespace pcurv {

// Kernel map O(-mp) + O((m-n+delta)p) -> O(delta p - d) + O(d) with n marked points.
struct BundleParams {
  int p = 0, n = 0, d = 0, m = 0, delta = 0;

  // Degree bound of g_ij (negative: entry must vanish).
  int degree_bound(int i, int j) const;
  // Splitting degrees of the target (rows) and source (columns).
  std::array<int, 2> row_exponents() const { return {delta * p - d, d}; }
  std::array<int, 2> col_exponents() const { return {-m * p, (m - n + delta) * p}; }
  bool balanced() const { return m == n - delta - m; }
  // The inequality delta p < 2d of the standard setting.
  bool standard() const { return delta * p < 2 * d; }
  friend bool operator==(const BundleParams&, const BundleParams&) = default;
};

// A validated 2x2 kernel map: entries within degree bounds, distinct finite
// marked points and det = prod (x - lambda_i)^p (a scalar is removed from the
// first row on construction).
class KernelMap {
 public:
  KernelMap(const BundleParams& params, const GaloisField& field, std::vector<Fq> points, std::array<PolyF, 4> g);
  // Checks everything except the determinant shape.
  static void check_shape(const BundleParams& params, const GaloisField& field, const std::vector<Fq>& points,
                          const std::array<PolyF, 4>& g);

  const BundleParams& params() const { return params_; }
  const GaloisField& field() const { return *field_; }
  const std::vector<Fq>& points() const { return points_; }
  const PolyF& g(int i, int j) const { return g_[2 * i + j]; }
  const std::array<PolyF, 4>& entries() const { return g_; }
  PolyMatrixF matrix() const { return PolyMatrixF(2, {g_[0], g_[1], g_[2], g_[3]}); }
  // prod (x - lambda_i).
  PolyF point_polynomial() const;

 private:
  BundleParams params_;
  const GaloisField* field_;
  std::vector<Fq> points_;
  std::array<PolyF, 4> g_;
};

// The kernel map in the chart y = 1/x, in the frames of the splittings:
// entry (i, j) is y^(a_i - b_j) g_ij(1/y).
PolyMatrixF chart_at_infinity(const KernelMap& s);

enum class Side { Left, Right };

// A legal automorphism acting on a kernel map from the left (target bundle)
// or the right (source bundle).
struct TransportElement {
  Side side;
  PolyMatrixF m;
};

// Throws PreconditionError when the element is not in the transport group.
void check_transport(const BundleParams& params, const TransportElement& t);
KernelMap apply_transport(const KernelMap& s, const TransportElement& t);

}  // namespace pcurv
