#pragma once

#include <optional>
#include <vector>

#include "pcurv/criterion.hpp"
#include "pcurv/kernel_map.hpp"

namespace pcurv {

// Classification data of a kernel map with separable non-constant f.
// c[i] is set exactly when beta[i] = p - 2 alpha[i]; it is the constant of the
// mirror criterion at lambda_i.
struct ClassDatum {
  BundleParams params;
  const GaloisField* field = nullptr;
  std::vector<Fq> points;
  std::vector<int> alpha, beta;
  RationalMap f;
  std::vector<std::optional<Fq>> c;

  // Throws PreconditionError naming the first violated condition.
  void validate() const;
  // beta = 0, d = (n + delta p)/2 - 1, m = (n - delta)/2.
  static ClassDatum main_theorem(const GaloisField& field, int n, int delta, std::vector<Fq> points,
                                 std::vector<int> alpha, RationalMap f);
};

struct Invariants {
  std::vector<int> alpha, beta;
  PolyMatrixF hat;  // S / prod (x - lambda_i)^alpha_i
  PolyF g1;         // gcd of the first row of hat
  bool constant = false;
  PointOnLine constant_value;  // the value of g12/g11 when constant
  bool inseparable = false;
  RationalMap fg;  // g12/g11 when non-constant
  std::vector<ColumnConstant<Fq>> c;  // mirror criterion at each lambda_i
};

Invariants extract_invariants(const KernelMap& s);
// The classification datum read off a kernel map with non-constant f_g.
ClassDatum datum_of(const KernelMap& s);

KernelMap normalize_kernel_map(const KernelMap& s);
bool is_normalized(const KernelMap& s);

std::optional<KernelMap> fill_in(const ClassDatum& datum, const PolyF& g11_hat, const PolyF& g12_hat);
KernelMap theorem_forward(const ClassDatum& datum);

// mu o (f + f0) = g with mu of degree one and f0 a polynomial in x^p without
// constant term and of degree <= bound (constants are absorbed into mu).
struct MobiusMatch {
  RationalMap mu;
  PolyF f0;
};
// Additionally require mu(gamma_f + f0(lambda)) = gamma_g.
struct ValueConstraint {
  Fq lambda;
  PointOnLine gamma_f, gamma_g;
};
std::optional<MobiusMatch> mobius_equivalent(const RationalMap& f, const RationalMap& g, int bound,
                                             const std::vector<ValueConstraint>& constraints = {});

bool data_equivalent(const ClassDatum& a, const ClassDatum& b);
bool kernel_maps_equivalent(const KernelMap& a, const KernelMap& b);

// gamma = 1/c on P^1.
PointOnLine gamma_of(const Fq& c);
Fq c_of(const PointOnLine& gamma);

}  // namespace pcurv
