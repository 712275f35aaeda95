#pragma once

#include <cstdint>
#include <vector>

#include "homalg/errors.hpp"

namespace homalg {

// A morphism [n] -> [m] of the p-cyclic category, stored as the values
// f(0..n-1) of a monotone lift f : Z -> Z with f(x+n) = f(x)+m, taken modulo
// the shift by p*m (so normalized to 0 <= f(0) < p*m).  p = 1 gives the
// cyclic category itself.
struct LambdaMor {
  uint32_t p = 1;
  uint32_t n = 1;  // source object [n]
  uint32_t m = 1;  // target object [m]
  std::vector<int64_t> v;

  // normalizes and validates (monotone, f(n-1) <= f(0)+m, objects >= 1)
  static LambdaMor make(uint32_t p, uint32_t n, uint32_t m, std::vector<int64_t> values);
  static LambdaMor identity(uint32_t p, uint32_t n);
  // the rotation f(x) = x+1
  static LambdaMor tau(uint32_t p, uint32_t n);
  // face [n] -> [n-1], 0 <= i <= n-1: merge positions i, i+1 (wrapping at
  // i = n-1); matches the Hochschild convention under evaluation
  static LambdaMor face(uint32_t p, uint32_t n, uint32_t i);
  // degeneracy [n] -> [n+1], 0 <= i <= n-1: output position i+1 is skipped
  static LambdaMor degen(uint32_t p, uint32_t n, uint32_t i);

  int64_t at(int64_t x) const;  // value of the lift at any integer
  bool operator==(const LambdaMor&) const = default;
};

// g after f; requires matching p and g.n == f.m.
LambdaMor mor_compose(const LambdaMor& g, const LambdaMor& f);

// The embedding of the p-cyclic category into the cyclic one, [n] -> [np]:
// extend the lift p-periodically and reinterpret.
LambdaMor functor_i(const LambdaMor& f);

// The projection to the cyclic category, identical on objects: quotient by
// sigma instead of sigma^p.
LambdaMor functor_pi(const LambdaMor& f);

// All morphisms [n] -> [m] for small hom-sets (used by tests and the
// evaluation of collapse maps); deterministic order.
std::vector<LambdaMor> enumerate_mors(uint32_t p, uint32_t n, uint32_t m);

}  // namespace homalg
