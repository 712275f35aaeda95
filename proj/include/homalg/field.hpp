#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homalg {

struct NotPrimeField : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient field for all exact linear algebra: either GF(p) for a prime p,
// or the rationals.
struct FieldSpec {
  enum class Kind { PrimeField, Rationals };

  Kind kind = Kind::Rationals;
  uint32_t p = 0;  // meaningful only for PrimeField

  static FieldSpec gf(uint32_t p);
  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }

  bool is_prime_field() const { return kind == Kind::PrimeField; }
  uint32_t characteristic() const { return is_prime_field() ? p : 0; }
  std::string str() const;

  bool operator==(const FieldSpec&) const = default;
};

bool is_prime_u32(uint32_t n);

// Modular arithmetic helpers for GF(p), p < 2^31.  Values are canonical
// representatives in [0, p).
struct Fp {
  uint64_t p;

  explicit Fp(uint32_t p_) : p(p_) {}

  uint32_t reduce(int64_t x) const {
    int64_t r = x % static_cast<int64_t>(p);
    if (r < 0) r += static_cast<int64_t>(p);
    return static_cast<uint32_t>(r);
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint64_t s = static_cast<uint64_t>(a) + b;
    return static_cast<uint32_t>(s >= p ? s - p : s);
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : static_cast<uint32_t>(a + p - b);
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : static_cast<uint32_t>(p - a); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
  }
  uint32_t pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1 % static_cast<uint32_t>(p);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint32_t inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("Fp::inv of zero");
    return pow(a, p - 2);
  }
};

}  // namespace homalg
