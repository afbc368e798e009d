#pragma once

namespace pcurv {

template <class Visit>
void for_each_projective_point(const GaloisField& f, const std::vector<std::vector<Fq>>& basis, Visit visit) {
  const int k = static_cast<int>(basis.size());
  if (k == 0) return;
  const size_t n = basis[0].size();
  const uint32_t q = f.order();
  // Coefficient vectors whose first nonzero entry is 1.
  for (int lead = 0; lead < k; ++lead) {
    const int free = k - lead - 1;
    std::vector<uint32_t> digits(free, 0);
    while (true) {
      std::vector<Fq> v(n, Fq(f, 0));
      for (size_t t = 0; t < n; ++t) v[t] = basis[lead][t];
      for (int j = 0; j < free; ++j) {
        Fq c = Fq::packed(f, digits[j]);
        if (c.is_zero()) continue;
        for (size_t t = 0; t < n; ++t) v[t] += c * basis[lead + 1 + j][t];
      }
      if (!visit(v)) return;
      int j = 0;
      while (j < free && ++digits[j] == q) digits[j++] = 0;
      if (j == free) break;
    }
  }
}

}  // namespace pcurv
