#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace pcurv {

// Finite field F_q, q = p^k. Elements are packed integers sum d_i p^i where
// d_i are the coefficients of the residue class modulo the field modulus.
// Instances are interned and live for the whole program.
class GaloisField {
 public:
  static constexpr uint32_t kMaxOrder = 1u << 20;

  // Uses the first monic modulus (in packed order) whose root is primitive.
  static const GaloisField& get(uint32_t p, uint32_t k = 1);
  // modulus: monic irreducible polynomial over F_p, coefficients low to high.
  static const GaloisField& get(uint32_t p, const std::vector<uint32_t>& modulus);

  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return k_; }
  uint32_t order() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  uint32_t generator() const { return exp_[1]; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t from_int(long long n) const;

  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

 private:
  GaloisField(uint32_t p, std::vector<uint32_t> modulus);
  uint32_t slow_mul(uint32_t a, uint32_t b) const;
  bool build_tables_from(uint32_t g);

  uint32_t p_, k_, q_;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_;  // exp_[i] = g^i, length 2(q-1)
  std::vector<uint32_t> log_;
  std::vector<uint32_t> neg_;
  std::vector<uint32_t> add_;  // q*q table for small extension fields
};

class Fq {
 public:
  // The zero element of no particular field; arithmetic adopts the other
  // operand's field.
  Fq() = default;
  Fq(const GaloisField& f, long long n) : f_(&f), v_(f.from_int(n)) {}
  static Fq packed(const GaloisField& f, uint32_t v);

  const GaloisField* field() const { return f_; }
  uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_unit() const { return v_ != 0; }

  Fq inverse() const;
  Fq pow(uint64_t e) const;
  Fq times(long long n) const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o) { return *this *= o.inverse(); }
  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }

  friend bool operator==(const Fq& a, const Fq& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Fq& a, const Fq& b) { return a.v_ <=> b.v_; }

 private:
  const GaloisField* adopt(const Fq& o) const { return f_ ? f_ : o.f_; }

  const GaloisField* f_ = nullptr;
  uint32_t v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fq& a);

// All elements of the field, in packed order.
std::vector<Fq> elements(const GaloisField& f);

}  // namespace pcurv
