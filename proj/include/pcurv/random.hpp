#pragma once

#include <cstdint>
#include <random>

#include "pcurv/poly.hpp"

namespace pcurv {

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t below(uint64_t n) { return std::uniform_int_distribution<uint64_t>(0, n - 1)(gen_); }
  bool coin(double p_true = 0.5) { return std::bernoulli_distribution(p_true)(gen_); }
  Fq element(const GaloisField& f) { return Fq::packed(f, static_cast<uint32_t>(below(f.order()))); }
  Fq nonzero(const GaloisField& f) { return Fq::packed(f, 1 + static_cast<uint32_t>(below(f.order() - 1))); }
  Dual dual(const GaloisField& f) { return Dual(element(f), element(f)); }
  // Uniform polynomial of degree <= deg (zero when deg < 0).
  PolyF poly(const GaloisField& f, int deg) {
    std::vector<Fq> c;
    for (int i = 0; i <= deg; ++i) c.push_back(element(f));
    return PolyF(std::move(c));
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pcurv
