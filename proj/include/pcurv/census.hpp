#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcurv/kernel_map.hpp"

namespace pcurv {

// Number of exponent vectors in {1..p-1}^n with sum s; count_npd further
// requires exactly D exponents below p/2.
int64_t count_np(int p, int n, int s);
int64_t count_npd(int p, int n, int s, int D);
// Exhaustive enumeration of the same counts.
int64_t oracle_np(int p, int n, int s, std::optional<int> D = std::nullopt, int64_t budget = 50'000'000);

struct CensusFamily {
  int D = 0;
  int64_t families = 0;
  int dimension = 0;       // projective dimension; negative means empty
  int64_t points = 0;      // F_q points of one family (0 when empty)
};

struct CensusCase {
  int index = 0;  // 1..4
  int total_degree = 0;
  int64_t classes = 0;                // cases 1 and 3
  std::vector<CensusFamily> families;  // cases 2 and 4
};

struct CensusReport {
  BundleParams params;
  int64_t q = 0;
  std::vector<CensusCase> cases;
  bool first_two_exhaust = false;
};

CensusReport constant_class_census(int p, int n, int m, int d, int delta, int64_t q);

// Transport equivalence of two kernel maps whose f_g can be made constant.
bool constant_classes_equivalent(const KernelMap& a, const KernelMap& b);
// A transport-equivalent map with g11 = 0, or g12 = 0 when that is the only
// possibility (m < n - delta - m); throws if f_g cannot be made constant.
KernelMap reduce_constant_class(const KernelMap& s);

struct RamificationConstraint {
  PointOnLine point;
  int min_index = 1;
};

// Separable maps of the given degree over F_q meeting every constraint, one
// per orbit under post-composition with PGL2. With an infinity constraint the
// representatives satisfy f(inf) = inf.
std::vector<RationalMap> search_ramified_maps(const GaloisField& field, int degree,
                                              const std::vector<RamificationConstraint>& constraints,
                                              std::optional<int> infinity_min_index = std::nullopt,
                                              int64_t budget = 20'000'000);

}  // namespace pcurv
