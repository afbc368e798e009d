#include "pcurv/series.hpp"

namespace pcurv {

UniformOrder uniform_order(const SeriesD& s) {
  if (s.is_zero()) throw PrecisionError("series is zero to precision");
  int k = *s.valuation();
  return {k, s.coeff(k).is_unit()};
}

}  // namespace pcurv
