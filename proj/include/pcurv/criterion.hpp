#pragma once

#include <optional>

#include "pcurv/kernel_map.hpp"
#include "pcurv/normal_form.hpp"

namespace pcurv {

// unique: exactly one value works; arbitrary: every value works; none: no
// value works; partial (k[eps] only): the solutions form a proper affine line.
enum class Determinacy { Unique, Arbitrary, Partial, None };

const char* to_string(Determinacy d);

template <class R>
struct ColumnConstant {
  PointOnLine point;
  std::optional<R> value;  // a solution (0 when arbitrary); empty when none
  Determinacy determinacy = Determinacy::None;
};

// Local test on a 2x2 series matrix with det of order exactly p. Direct form:
// column 2 minus c times column 1; mirror form: column 1 minus c times column 2.
// The criterion is min ord(column 1) + min ord(column 2) >= p afterwards.
template <class R>
ColumnConstant<R> find_column_constant(const SeriesMatrix<R>& s, int p, bool mirror);

ColumnConstant<Fq> find_column_constant(const KernelMap& s, const PointOnLine& at, bool mirror);
bool rank2_pole_ok(const KernelMap& s, const PointOnLine& at);

// The local expansion of S at a point (the frame chart at infinity).
SeriesMatrix<Fq> local_expansion(const KernelMap& s, const PointOnLine& at, int precision);

}  // namespace pcurv
