#include "pcurv/poly.hpp"

namespace pcurv {

PolyF monic(const PolyF& a) {
  if (a.is_zero()) return a;
  return a.leading().inverse() * a;
}

PolyF gcd(const PolyF& a, const PolyF& b) { return ext_gcd(a, b).g; }

ExtGcd ext_gcd(const PolyF& a, const PolyF& b) {
  const GaloisField* f = a.field() ? a.field() : b.field();
  if (!f) return {PolyF(), PolyF(), PolyF()};
  PolyF r0 = a, r1 = b;
  PolyF u0 = PolyF::constant(Fq(*f, 1)), u1;
  PolyF v0, v1 = PolyF::constant(Fq(*f, 1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PolyF u2 = u0 - q * u1, v2 = v0 - q * v1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  Fq s = r0.leading().inverse();
  return {s * r0, s * u0, s * v0};
}

bool divides(const PolyF& d, const PolyF& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

int ord_at(const PolyF& f, const Fq& a) {
  if (f.is_zero()) return -1;
  PolyF g = f.shift(a);
  int k = 0;
  while (g[k].is_zero()) ++k;
  return k;
}

PolyF crt(const std::vector<PolyF>& residues, const std::vector<PolyF>& moduli) {
  if (residues.size() != moduli.size()) throw PreconditionError("crt: residue and modulus counts differ");
  PolyF result, modulus;
  for (size_t i = 0; i < moduli.size(); ++i) {
    if (i == 0) {
      modulus = moduli[0];
      result = residues[0] % modulus;
      continue;
    }
    auto eg = ext_gcd(modulus, moduli[i]);
    if (eg.g.degree() != 0) throw PreconditionError("crt: moduli not coprime");
    // result + modulus * u * (r_i - result), since u * modulus = 1 mod m_i.
    PolyF t = (eg.u * (residues[i] - result)) % moduli[i];
    result = result + modulus * t;
    modulus = modulus * moduli[i];
    result = result % modulus;
  }
  return result;
}

PolyF power_product(const GaloisField& f, const std::vector<Fq>& roots, int e) {
  PolyF out = PolyF::constant(Fq(f, 1));
  for (const Fq& a : roots) out *= PolyF({-a, Fq(f, 1)}).pow(e);
  return out;
}

bool is_pth_power_poly(const PolyF& f) {
  const GaloisField* fld = f.field();
  if (!fld) return true;
  const int p = static_cast<int>(fld->characteristic());
  for (int i = 0; i <= f.degree(); ++i)
    if (i % p != 0 && !f[i].is_zero()) return false;
  return true;
}

}  // namespace pcurv
