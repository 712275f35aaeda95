#include "homalg/lambda.hpp"

#include <stdexcept>
#include <string>

namespace homalg {

namespace {

int64_t floordiv(int64_t a, int64_t b) {
  int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

LambdaMor LambdaMor::make(uint32_t p, uint32_t n, uint32_t m, std::vector<int64_t> values) {
  if (p < 1 || n < 1 || m < 1) throw std::invalid_argument("LambdaMor: objects and p must be >= 1");
  if (values.size() != n) throw std::invalid_argument("LambdaMor: expected " + std::to_string(n) + " values");
  for (uint32_t x = 0; x + 1 < n; ++x)
    if (values[x] > values[x + 1]) throw std::invalid_argument("LambdaMor: values not monotone");
  if (values[n - 1] > values[0] + int64_t(m))
    throw std::invalid_argument("LambdaMor: lift not monotone across the period");
  int64_t period = int64_t(p) * m;
  int64_t shift = floordiv(values[0], period) * period;
  for (auto& x : values) x -= shift;
  LambdaMor f;
  f.p = p;
  f.n = n;
  f.m = m;
  f.v = std::move(values);
  return f;
}

LambdaMor LambdaMor::identity(uint32_t p, uint32_t n) {
  std::vector<int64_t> v(n);
  for (uint32_t x = 0; x < n; ++x) v[x] = x;
  return make(p, n, n, std::move(v));
}

LambdaMor LambdaMor::tau(uint32_t p, uint32_t n) {
  std::vector<int64_t> v(n);
  for (uint32_t x = 0; x < n; ++x) v[x] = x + 1;
  return make(p, n, n, std::move(v));
}

LambdaMor LambdaMor::face(uint32_t p, uint32_t n, uint32_t i) {
  if (n < 2 || i >= n) throw std::invalid_argument("LambdaMor::face: bad index");
  std::vector<int64_t> v(n);
  if (i == n - 1) {
    // wrap face: position n-1 merges onto position 0 of the next period
    for (uint32_t x = 0; x < n; ++x) v[x] = x < n - 1 ? x : n - 1;
  } else {
    for (uint32_t x = 0; x < n; ++x) v[x] = x <= i ? int64_t(x) : int64_t(x) - 1;
  }
  return make(p, n, n - 1, std::move(v));
}

LambdaMor LambdaMor::degen(uint32_t p, uint32_t n, uint32_t i) {
  if (i >= n) throw std::invalid_argument("LambdaMor::degen: bad index");
  std::vector<int64_t> v(n);
  for (uint32_t x = 0; x < n; ++x) v[x] = x <= i ? int64_t(x) : int64_t(x) + 1;
  return make(p, n, n + 1, std::move(v));
}

int64_t LambdaMor::at(int64_t x) const {
  int64_t q = floordiv(x, n);
  return v[size_t(x - q * int64_t(n))] + q * int64_t(m);
}

LambdaMor mor_compose(const LambdaMor& g, const LambdaMor& f) {
  if (g.p != f.p) throw std::invalid_argument("mor_compose: mismatched p");
  if (g.n != f.m) throw std::invalid_argument("mor_compose: source/target mismatch");
  std::vector<int64_t> v(f.n);
  for (uint32_t x = 0; x < f.n; ++x) v[x] = g.at(f.v[x]);
  return LambdaMor::make(f.p, f.n, g.m, std::move(v));
}

LambdaMor functor_i(const LambdaMor& f) {
  uint32_t n = f.p * f.n, m = f.p * f.m;
  std::vector<int64_t> v(n);
  for (uint32_t x = 0; x < n; ++x) v[x] = f.v[x % f.n] + int64_t(x / f.n) * f.m;
  return LambdaMor::make(1, n, m, std::move(v));
}

LambdaMor functor_pi(const LambdaMor& f) {
  return LambdaMor::make(1, f.n, f.m, f.v);
}

std::vector<LambdaMor> enumerate_mors(uint32_t p, uint32_t n, uint32_t m) {
  std::vector<LambdaMor> out;
  std::vector<int64_t> v(n);
  // non-decreasing sequences with v[0] in [0, p*m) and v[n-1] <= v[0] + m
  auto rec = [&](auto&& self, uint32_t pos) -> void {
    if (pos == n) {
      out.push_back(LambdaMor::make(p, n, m, v));
      return;
    }
    int64_t lo = pos == 0 ? 0 : v[pos - 1];
    int64_t hi = pos == 0 ? int64_t(p) * m - 1 : v[0] + int64_t(m);
    for (int64_t x = lo; x <= hi; ++x) {
      v[pos] = x;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace homalg
