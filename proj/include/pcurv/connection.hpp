#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcurv/kernel_map.hpp"
#include "pcurv/normal_form.hpp"

namespace pcurv {

// Connection matrix T with nabla = d + T dx, together with its expression in
// the chart y = 1/x (nabla = d + T_inf dy).
struct ConnectionMatrix {
  int rank = 0;
  std::vector<RationalMap> x_chart;    // row-major
  std::vector<RationalMap> inf_chart;  // row-major, in y

  const RationalMap& operator()(int i, int j) const { return x_chart[static_cast<size_t>(i) * rank + j]; }
};

// T = S d(S^-1) = -S' S^-1; the chart at infinity uses trivial frames.
ConnectionMatrix connection_matrix(const PolyMatrixF& s);
// The chart at infinity uses the frames of the splittings of the bundles.
ConnectionMatrix connection_matrix(const KernelMap& s);
// A connection given directly by its matrix in the x chart.
ConnectionMatrix connection_from_matrix(int rank, std::vector<RationalMap> entries);

struct PoleDivisor {
  std::vector<std::pair<PointOnLine, int>> points;  // F_q-rational poles and their orders
  PolyF irrational;                                 // product of the remaining pole factors
  bool irrational_simple = true;                    // those poles are simple
  int max_order() const;
};
PoleDivisor pole_divisor(const ConnectionMatrix& t);

struct ResidueData {
  std::vector<Fq> matrix;            // row-major
  std::vector<Fq> eigenvalues;       // with multiplicity; complete when split
  bool split = false;                // characteristic polynomial splits over F_q
  bool diagonalizable = false;
};
ResidueData residue(const ConnectionMatrix& t, const PointOnLine& at);

// Entries of psi(d/dx) in the x chart (row-major).
std::vector<RationalMap> p_curvature(const ConnectionMatrix& t);
bool is_zero_matrix(const std::vector<RationalMap>& m);

struct PoleCertificate {
  PointOnLine point;
  std::optional<DiagonalCertificate<Fq>> certificate;
};
struct LogVanishingReport {
  bool valid = false;
  std::vector<PoleCertificate> poles;
};

// Local normal form route: at every point where S degenerates, S is
// transport-diagonalizable with exponents < p.
LogVanishingReport is_log_vanishing(const KernelMap& s);
// Same test for an arbitrary polynomial matrix at its finite degeneracy points,
// which must be F_q-rational.
LogVanishingReport is_log_vanishing(const PolyMatrixF& s);

// Global route: simple poles, vanishing p-curvature, and at every degeneracy
// point ord det S = sum of the representatives in [0, p) of minus the residue
// eigenvalues.
bool log_vanishing_by_curvature(const KernelMap& s);
bool log_vanishing_by_curvature(const PolyMatrixF& s);

// Working precision for local expansions at a point where det S has the given order.
int default_precision(int p, int det_order);

}  // namespace pcurv
