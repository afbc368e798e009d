#pragma once

#include <array>
#include <vector>

#include "pcurv/dual.hpp"
#include "pcurv/kernel_map.hpp"

namespace pcurv {

// S + eps H with S a kernel map and H within the same degree bounds.
class DeformedKernelMap {
 public:
  DeformedKernelMap(KernelMap body, std::array<PolyF, 4> h);
  // Splits a dual matrix; the first row is rescaled so the body has det prod (x - lambda_i)^p.
  static DeformedKernelMap from_matrix(const BundleParams& params, const GaloisField& field, std::vector<Fq> points,
                                       const PolyMatrixD& m);

  const KernelMap& body() const { return body_; }
  const std::array<PolyF, 4>& h() const { return h_; }
  const PolyF& h(int i, int j) const { return h_[2 * i + j]; }
  PolyMatrixD matrix() const;

 private:
  KernelMap body_;
  std::array<PolyF, 4> h_;
};

// Transport by a k[eps]-valued element whose body and eps-part both have the legal shape.
DeformedKernelMap apply_transport(const DeformedKernelMap& s, Side side, const PolyMatrixD& m);

// A k[eps] diagonal certificate at every pole of the body.
bool deformed_valid(const DeformedKernelMap& s);
// The explicit test: with M0 S0 P U0 = diag(t^e) at a pole and
// F = M0 H P U0, ord(e_i f_ij - t f_ij') >= e_j for all i, j.
bool deformed_valid_by_order_test(const DeformedKernelMap& s);

struct KernelReduction {
  int expected = 0;     // rank of the body kernel in the degree box
  int body_dim = 0;     // horizontal sections of the body
  int lift_dim = 0;     // body sections that lift over k[eps]
  int module_dim = 0;   // F_q-dimension of the k[eps] solution module
  bool free = false;
  bool reduction_iso = false;
  bool ok() const { return body_dim == expected && free && reduction_iso; }
};

// Horizontal sections s with deg s_i <= twist + (row exponent i).
KernelReduction kernel_reduction(const DeformedKernelMap& s, int twist);
bool kernel_reduction_check(const DeformedKernelMap& s, int twist);

struct DeformationSpace {
  std::vector<std::array<PolyF, 4>> valid;   // basis of valid eps-parts with det fixed
  std::vector<std::array<PolyF, 4>> orbit;   // basis of infinitesimal transports with det fixed
  int dim() const { return static_cast<int>(valid.size()) - static_cast<int>(orbit.size()); }
};

DeformationSpace deformation_space(const KernelMap& s);
// Requires m = n - delta - m, every beta_i = 0 and separable non-constant f_g.
int deformation_space_dim(const KernelMap& s);

}  // namespace pcurv
