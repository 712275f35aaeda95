#include "homalg/field.hpp"

namespace homalg {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::gf(uint32_t p) {
  if (!is_prime_u32(p))
    throw NotPrimeField("GF(" + std::to_string(p) + "): modulus is not prime");
  if (p >= (1u << 31)) throw NotPrimeField("GF(p): modulus too large");
  return FieldSpec{Kind::PrimeField, p};
}

std::string FieldSpec::str() const {
  return is_prime_field() ? "GF(" + std::to_string(p) + ")" : "Q";
}

}  // namespace homalg
