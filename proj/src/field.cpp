#include "pcurv/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "pcurv/error.hpp"

namespace pcurv {
namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<uint32_t> digits_of(uint32_t v, uint32_t p, uint32_t k) {
  std::vector<uint32_t> d(k);
  for (uint32_t i = 0; i < k; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

// Remainder of a modulo b over F_p; b monic. Both low to high.
std::vector<uint32_t> poly_rem(std::vector<uint32_t> a, const std::vector<uint32_t>& b, uint32_t p) {
  const size_t db = b.size() - 1;
  while (a.size() > db) {
    uint32_t lead = a.back();
    size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    a.pop_back();
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..k/2.
bool is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  const uint32_t k = static_cast<uint32_t>(f.size() - 1);
  for (uint32_t d = 1; 2 * d <= k; ++d) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    for (uint64_t m = 0; m < count; ++m) {
      std::vector<uint32_t> g = digits_of(static_cast<uint32_t>(m), p, d);
      g.push_back(1);
      auto r = poly_rem(f, g, p);
      bool zero = true;
      for (uint32_t c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<uint32_t, std::vector<uint32_t>>, std::unique_ptr<GaloisField>> fields;
  std::map<std::pair<uint32_t, uint32_t>, const GaloisField*> defaults;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

GaloisField::GaloisField(uint32_t p, std::vector<uint32_t> modulus)
    : p_(p), k_(static_cast<uint32_t>(modulus.size() - 1)), q_(1), modulus_(std::move(modulus)) {
  for (uint32_t i = 0; i < k_; ++i) q_ *= p_;
  neg_.resize(q_);
  for (uint32_t a = 0; a < q_; ++a) {
    auto d = digits_of(a, p_, k_);
    uint32_t v = 0;
    for (uint32_t i = k_; i-- > 0;) v = v * p_ + (p_ - d[i]) % p_;
    neg_[a] = v;
  }
  if (k_ > 1 && q_ <= 1024) {
    add_.resize(static_cast<size_t>(q_) * q_);
    for (uint32_t a = 0; a < q_; ++a) {
      auto da = digits_of(a, p_, k_);
      for (uint32_t b = 0; b < q_; ++b) {
        auto db = digits_of(b, p_, k_);
        uint32_t v = 0;
        for (uint32_t i = k_; i-- > 0;) v = v * p_ + (da[i] + db[i]) % p_;
        add_[static_cast<size_t>(a) * q_ + b] = v;
      }
    }
  }
}

uint32_t GaloisField::slow_mul(uint32_t a, uint32_t b) const {
  auto da = digits_of(a, p_, k_);
  auto db = digits_of(b, p_, k_);
  std::vector<uint32_t> prod(2 * k_ - 1, 0);
  for (uint32_t i = 0; i < k_; ++i)
    for (uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  auto r = poly_rem(prod, modulus_, p_);
  uint32_t v = 0;
  for (size_t i = r.size(); i-- > 0;) v = v * p_ + r[i];
  return v;
}

bool GaloisField::build_tables_from(uint32_t g) {
  if (g == 0) return false;
  exp_.assign(2 * static_cast<size_t>(q_ - 1), 0);
  log_.assign(q_, 0);
  uint32_t x = 1;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    if (i > 0 && x == 1) return false;
    exp_[i] = x;
    log_[x] = i;
    x = slow_mul(x, g);
  }
  if (x != 1) return false;
  for (uint32_t i = 0; i < q_ - 1; ++i) exp_[i + q_ - 1] = exp_[i];
  return true;
}

const GaloisField& GaloisField::get(uint32_t p, uint32_t k) {
  if (!is_prime(p)) throw PreconditionError("field characteristic must be prime");
  if (k == 0) throw PreconditionError("extension degree must be positive");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw PreconditionError("field order too large");
  }
  auto& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.defaults.find({p, k});
    if (it != reg.defaults.end()) return *it->second;
  }
  for (uint32_t m = 0; m < q; ++m) {
    std::vector<uint32_t> mod = digits_of(m, p, k);
    mod.push_back(1);
    GaloisField probe(p, mod);
    uint32_t x = k == 1 ? (p - mod[0]) % p : p;
    if (!probe.build_tables_from(x)) continue;
    const GaloisField& f = get(p, mod);
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.defaults[{p, k}] = &f;
    return f;
  }
  throw PreconditionError("no primitive modulus found");
}

const GaloisField& GaloisField::get(uint32_t p, const std::vector<uint32_t>& modulus) {
  if (!is_prime(p)) throw PreconditionError("field characteristic must be prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw PreconditionError("field modulus must be monic of positive degree");
  for (uint32_t c : modulus)
    if (c >= p) throw PreconditionError("field modulus coefficient out of range");
  uint64_t q = 1;
  for (size_t i = 1; i < modulus.size(); ++i) {
    q *= p;
    if (q > kMaxOrder) throw PreconditionError("field order too large");
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, modulus);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return *it->second;
  if (!is_irreducible(modulus, p)) throw PreconditionError("field modulus is not irreducible");
  std::unique_ptr<GaloisField> f(new GaloisField(p, modulus));
  uint32_t g = f->k_ == 1 ? (p - modulus[0]) % p : p;
  if (!f->build_tables_from(g)) {
    bool found = false;
    for (uint32_t c = 1; c < f->q_ && !found; ++c) found = f->build_tables_from(c);
    if (!found) throw PreconditionError("field modulus is not irreducible");
  }
  const GaloisField& ref = *f;
  reg.fields.emplace(key, std::move(f));
  return ref;
}

uint32_t GaloisField::add(uint32_t a, uint32_t b) const {
  if (k_ == 1) {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (!add_.empty()) return add_[static_cast<size_t>(a) * q_ + b];
  uint32_t v = 0, scale = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    v += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return v;
}

uint32_t GaloisField::neg(uint32_t a) const { return neg_[a]; }

uint32_t GaloisField::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
  return exp_[log_[a] + log_[b]];
}

uint32_t GaloisField::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t GaloisField::pow(uint32_t a, uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

uint32_t GaloisField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<uint32_t>(r);
}

Fq Fq::packed(const GaloisField& f, uint32_t v) {
  if (v >= f.order()) throw PreconditionError("packed field element out of range");
  Fq a;
  a.f_ = &f;
  a.v_ = v;
  return a;
}

Fq Fq::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero");
  return packed(*f_, f_->inv(v_));
}

Fq Fq::pow(uint64_t e) const {
  if (!f_) return e == 0 ? Fq() : *this;
  return packed(*f_, f_->pow(v_, e));
}

Fq Fq::times(long long n) const {
  if (!f_) return *this;
  return packed(*f_, f_->mul(v_, f_->from_int(n)));
}

Fq Fq::operator-() const {
  if (!f_) return *this;
  return packed(*f_, f_->neg(v_));
}

Fq& Fq::operator+=(const Fq& o) {
  f_ = adopt(o);
  if (f_) v_ = f_->add(v_, o.v_);
  return *this;
}

Fq& Fq::operator-=(const Fq& o) {
  f_ = adopt(o);
  if (f_) v_ = f_->sub(v_, o.v_);
  return *this;
}

Fq& Fq::operator*=(const Fq& o) {
  f_ = adopt(o);
  if (f_) v_ = f_->mul(v_, o.v_);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Fq& a) { return os << a.value(); }

std::vector<Fq> elements(const GaloisField& f) {
  std::vector<Fq> out;
  out.reserve(f.order());
  for (uint32_t v = 0; v < f.order(); ++v) out.push_back(Fq::packed(f, v));
  return out;
}

}  // namespace pcurv
