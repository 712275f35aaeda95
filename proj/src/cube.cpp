#include "homalg/cube.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "homalg/errors.hpp"
#include "homalg/field.hpp"

namespace homalg {

namespace {

uint64_t ipow_capped(uint64_t base, uint32_t exp, uint64_t cap, const char* what) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < exp; ++i) {
    if (r > cap / base)
      throw SizeBudgetExceeded(std::string(what) + ": size exceeds " + std::to_string(cap));
    r *= base;
  }
  return r;
}

// Digitwise base-p scalar multiple of an encoded tuple of GF(p) digits.
uint64_t scale_digits(uint64_t w, uint32_t lam, uint32_t p) {
  uint64_t r = 0, pw = 1;
  while (w) {
    r += ((w % p) * lam % p) * pw;
    w /= p;
    pw *= p;
  }
  return r;
}

Matrix unit_column(FieldSpec f, uint32_t n, uint32_t i) {
  return Matrix::from_triplets(f, n, 1, {{i, 0, 1, 1}});
}

}  // namespace

uint32_t FiniteVS::size() const {
  uint64_t s = ipow_capped(p, d, UINT32_MAX, "FiniteVS::size");
  return static_cast<uint32_t>(s);
}

uint32_t FiniteVS::add(uint32_t a, uint32_t b) const {
  uint32_t r = 0, pw = 1;
  for (uint32_t i = 0; i < d; ++i) {
    r += ((a % p + b % p) % p) * pw;
    a /= p;
    b /= p;
    pw *= p;
  }
  return r;
}

uint32_t FiniteVS::scale(uint32_t lam, uint32_t a) const {
  return static_cast<uint32_t>(scale_digits(a, lam % p, p));
}

uint32_t CubeComplex::slab_quotient_dim(uint32_t n) const {
  return static_cast<uint32_t>(full_dim.at(n)) - slabs.at(n).dim();
}

CubeComplex build_cube(FiniteVS V, uint32_t D, uint64_t budget) {
  if (!is_prime_u32(V.p)) throw std::invalid_argument("build_cube: p must be prime");
  if (V.d == 0) throw std::invalid_argument("build_cube: zero-dimensional V");
  const uint32_t p = V.p;
  const uint32_t P = V.size();
  const FieldSpec f = FieldSpec::gf(p);
  Fp fp(p);

  CubeComplex C;
  C.V = V;
  C.D = D;
  // Report every level size up front, before any allocation.
  for (uint32_t n = 0; n <= D; ++n) {
    uint64_t full = ipow_capped(P, 1u << n, budget + 1, "build_cube level size") - 1;
    if (full > budget)
      throw SizeBudgetExceeded("build_cube: level " + std::to_string(n) + " needs " +
                               std::to_string(full) + " basis elements, budget " +
                               std::to_string(budget));
    C.full_dim.push_back(full);
  }

  std::vector<uint32_t> red_dims;
  std::vector<Matrix> red_diffs;
  for (uint32_t n = 0; n <= D; ++n) {
    const uint32_t cells = 1u << n;
    const uint64_t W = C.full_dim[n] + 1;  // P^{2^n}
    const uint32_t dim = static_cast<uint32_t>(C.full_dim[n]);

    std::vector<uint32_t> corners(cells);
    std::vector<Triplet> slab_rows, rel_rows;
    uint32_t slab_count = 0, rel_count = 0;
    std::vector<Triplet> diff;

    for (uint64_t w = 1; w < W; ++w) {
      {
        uint64_t t = w;
        for (uint32_t c = 0; c < cells; ++c) {
          corners[c] = static_cast<uint32_t>(t % P);
          t /= P;
        }
      }
      // Slab: supported entirely on the front or back face of some axis.
      bool slab = false;
      for (uint32_t a = 0; a < n && !slab; ++a) {
        bool front_zero = true, back_zero = true;
        for (uint32_t c = 0; c < cells; ++c) {
          if (c & (1u << a))
            back_zero = back_zero && corners[c] == 0;
          else
            front_zero = front_zero && corners[c] == 0;
        }
        slab = front_zero || back_zero;
      }
      if (slab) {
        slab_rows.push_back({slab_count++, static_cast<uint32_t>(w - 1), 1, 1});
        rel_rows.push_back({rel_count++, static_cast<uint32_t>(w - 1), 1, 1});
      }
      // Rescaling coinvariants: [w] - lam^{-1} [lam w] dies in the quotient.
      for (uint32_t lam = 2; lam < p; ++lam) {
        uint64_t lw = scale_digits(w, lam, p);
        rel_rows.push_back({rel_count, static_cast<uint32_t>(w - 1), 1, 1});
        rel_rows.push_back({rel_count, static_cast<uint32_t>(lw - 1),
                            -static_cast<int64_t>(fp.inv(lam)), 1});
        ++rel_count;
      }
      // Differential: alternating sum over axes of front + back - facewise sum.
      if (n > 0) {
        const uint32_t half = cells >> 1;
        for (uint32_t a = 0; a < n; ++a) {
          const int64_t s = (a % 2 == 0) ? 1 : -1;  // (-1)^(axis-1), axes 1-based
          uint64_t fr = 0, bk = 0, sm = 0, pw = 1;
          const uint32_t lo_mask = (1u << a) - 1;
          for (uint32_t c2 = 0; c2 < half; ++c2) {
            uint32_t base = ((c2 & ~lo_mask) << 1) | (c2 & lo_mask);
            uint32_t vf = corners[base];
            uint32_t vb = corners[base | (1u << a)];
            fr += static_cast<uint64_t>(vf) * pw;
            bk += static_cast<uint64_t>(vb) * pw;
            sm += static_cast<uint64_t>(V.add(vf, vb)) * pw;
            pw *= P;
          }
          if (fr) diff.push_back({static_cast<uint32_t>(fr - 1), static_cast<uint32_t>(w - 1), s, 1});
          if (bk) diff.push_back({static_cast<uint32_t>(bk - 1), static_cast<uint32_t>(w - 1), s, 1});
          if (sm) diff.push_back({static_cast<uint32_t>(sm - 1), static_cast<uint32_t>(w - 1), -s, 1});
        }
      }
    }

    C.slabs.push_back(Subspace::from_rows(Matrix::from_triplets(f, slab_count, dim, slab_rows)));
    C.rels.push_back(Subspace::from_rows(Matrix::from_triplets(f, rel_count, dim, rel_rows)));
    C.proj.push_back(C.rels.back().quotient_projection());
    C.sect.push_back(C.rels.back().quotient_section());
    red_dims.push_back(C.proj.back().rows());
    if (n > 0) {
      C.d_full.push_back(Matrix::from_triplets(f, static_cast<uint32_t>(C.full_dim[n - 1]), dim, diff));
      Matrix dbar = C.proj[n - 1] * (C.d_full.back() * C.sect[n]);
      // Well-definedness of the descended differential.
      if (!(dbar * C.proj[n] == C.proj[n - 1] * C.d_full.back()))
        throw std::logic_error("build_cube: differential does not descend to the quotient");
      red_diffs.push_back(std::move(dbar));
    }
  }
  // d_full is indexed 1..D in the header's terms; pad index 0.
  C.d_full.insert(C.d_full.begin(), Matrix(f, 0, static_cast<uint32_t>(C.full_dim[0])));
  C.reduced = ChainComplex::build(f, 0, red_dims, red_diffs);  // validates d^2 = 0
  return C;
}

std::vector<uint32_t> cube_homology(const CubeComplex& C) {
  if (C.D == 0) throw DegreeOutOfRange("cube_homology: need depth >= 1");
  return C.reduced.homology_dims(0, static_cast<int>(C.D) - 1);
}

std::vector<uint32_t> cube_homology(FiniteVS V, uint32_t D, uint64_t budget) {
  return cube_homology(build_cube(V, D, budget));
}

FlatComplex flat_complex(FiniteVS V, uint64_t budget) {
  FlatComplex fl;
  fl.cube = build_cube(V, 2, budget);
  fl.dim0 = fl.cube.reduced_dim(0);
  Subspace im2 = Subspace::from_rows(fl.cube.reduced.diff(2).transpose());
  fl.proj1 = im2.quotient_projection();
  fl.sect1 = im2.quotient_section();
  fl.dim1 = fl.proj1.rows();
  fl.d = fl.cube.reduced.diff(1) * fl.sect1;
  if (!(fl.d * fl.proj1 == fl.cube.reduced.diff(1)))
    throw std::logic_error("flat_complex: differential does not factor through the quotient");
  uint32_t r = rank(fl.d);
  fl.h0 = fl.dim0 - r;
  fl.h1 = fl.dim1 - r;
  if (fl.h0 != V.d || fl.h1 != V.d)
    throw std::logic_error("flat_complex: homology dimensions differ from dim V");
  return fl;
}

Matrix FlatComplex::class0(uint32_t v) const {
  FieldSpec f = FieldSpec::gf(cube.V.p);
  if (v == 0) return Matrix(f, dim0, 1);
  return cube.proj[0] * unit_column(f, static_cast<uint32_t>(cube.full_dim[0]), v - 1);
}

Matrix FlatComplex::cocycle(uint32_t v, uint32_t w) const {
  FieldSpec f = FieldSpec::gf(cube.V.p);
  uint64_t enc = static_cast<uint64_t>(v) + static_cast<uint64_t>(cube.V.size()) * w;
  if (enc == 0) return Matrix(f, dim1, 1);
  return proj1 * (cube.proj[1] *
                  unit_column(f, static_cast<uint32_t>(cube.full_dim[1]), static_cast<uint32_t>(enc - 1)));
}

Matrix flat_mul10(const FlatComplex& fl, const Matrix& x1, const Matrix& y0) {
  const FiniteVS& V = fl.cube.V;
  if (V.d != 1) throw std::invalid_argument("flat_mul10: requires one-dimensional V");
  const uint32_t p = V.p;
  FieldSpec f = FieldSpec::gf(p);
  if (x1.rows() != fl.dim1 || x1.cols() != 1 || y0.rows() != fl.dim0 || y0.cols() != 1)
    throw std::invalid_argument("flat_mul10: bad operand shape");
  Matrix X = fl.cube.sect[1] * (fl.sect1 * x1);  // level-1 coordinates, dim p^2-1
  Matrix Y = fl.cube.sect[0] * y0;               // level-0 coordinates, dim p-1
  std::vector<Triplet> ts;
  for (uint32_t i = 0; i < X.rows(); ++i) {
    uint32_t alpha = X.fp_at(i, 0);
    if (alpha == 0) continue;
    uint32_t u = (i + 1) % p, u2 = (i + 1) / p;
    for (uint32_t j = 0; j < Y.rows(); ++j) {
      uint32_t beta = Y.fp_at(j, 0);
      if (beta == 0) continue;
      uint32_t y = j + 1;
      uint32_t enc = (u * y) % p + p * ((u2 * y) % p);
      if (enc == 0) continue;
      ts.push_back({enc - 1, 0, static_cast<int64_t>(alpha) * beta, 1});
    }
  }
  Matrix Z = Matrix::from_triplets(f, p * p - 1, 1, ts);
  return fl.proj1 * (fl.cube.proj[1] * Z);
}

uint64_t CanonicalExtension::add(uint64_t e1, uint64_t e2) const {
  const uint32_t p = flat.cube.V.p;
  const uint64_t pt = order / flat.cube.V.size();
  uint64_t x1 = e1 % pt, x2 = e2 % pt;
  uint32_t v1 = static_cast<uint32_t>(e1 / pt), v2 = static_cast<uint32_t>(e2 / pt);
  Matrix c = flat.cocycle(v1, v2);
  uint64_t x = 0, pw = 1;
  for (uint32_t i = 0; i < t; ++i) {
    x += ((x1 % p + x2 % p + c.fp_at(i, 0)) % p) * pw;
    x1 /= p;
    x2 /= p;
    pw *= p;
  }
  return x + pt * flat.cube.V.add(v1, v2);
}

uint64_t CanonicalExtension::neg(uint64_t e) const {
  const uint32_t p = flat.cube.V.p;
  const uint64_t pt = order / flat.cube.V.size();
  uint64_t xe = e % pt;
  uint32_t v = static_cast<uint32_t>(e / pt);
  uint32_t nv = flat.cube.V.scale(p - 1, v);
  Matrix c = flat.cocycle(v, nv);
  uint64_t x = 0, pw = 1;
  for (uint32_t i = 0; i < t; ++i) {
    uint32_t digit = (2 * p - static_cast<uint32_t>(xe % p) - c.fp_at(i, 0)) % p;
    x += static_cast<uint64_t>(digit) * pw;
    xe /= p;
    pw *= p;
  }
  return x + pt * nv;
}

uint64_t CanonicalExtension::pmul(uint64_t e) const {
  uint64_t r = 0;
  for (uint32_t i = 0; i < flat.cube.V.p; ++i) r = add(r, e);
  return r;
}

uint32_t CanonicalExtension::vpart(uint64_t e) const {
  return static_cast<uint32_t>(e / (order / flat.cube.V.size()));
}

Matrix CanonicalExtension::xpart(uint64_t e) const {
  const uint32_t p = flat.cube.V.p;
  uint64_t xe = e % (order / flat.cube.V.size());
  std::vector<Triplet> ts;
  for (uint32_t i = 0; i < t; ++i) {
    if (xe % p) ts.push_back({i, 0, static_cast<int64_t>(xe % p), 1});
    xe /= p;
  }
  return Matrix::from_triplets(FieldSpec::gf(p), t, 1, ts);
}

uint64_t CanonicalExtension::make(const Matrix& x, uint32_t v) const {
  const uint32_t p = flat.cube.V.p;
  uint64_t xe = 0, pw = 1;
  for (uint32_t i = 0; i < t; ++i) {
    xe += static_cast<uint64_t>(x.fp_at(i, 0)) * pw;
    pw *= p;
  }
  return xe + (order / flat.cube.V.size()) * v;
}

CanonicalExtension canonical_extension(FiniteVS V, uint64_t budget) {
  CanonicalExtension E;
  E.flat = flat_complex(V, budget);
  E.t = E.flat.dim1;
  const uint32_t S = V.size();
  E.order = ipow_capped(V.p, E.t, UINT64_MAX / S, "canonical_extension order") * S;

  // Group axioms.  The coordinate parts are vector-space sums, so
  // commutativity and associativity reduce to symmetry and the cocycle
  // identity of c; reducedness gives the identity element.
  for (uint32_t v = 0; v < S; ++v) {
    if (!E.flat.cocycle(v, 0).is_zero() || !E.flat.cocycle(0, v).is_zero())
      throw std::logic_error("canonical_extension: cocycle not reduced");
    for (uint32_t w = 0; w < S; ++w)
      if (!(E.flat.cocycle(v, w) == E.flat.cocycle(w, v)))
        throw std::logic_error("canonical_extension: cocycle not symmetric");
  }
  for (uint32_t v = 0; v < S; ++v)
    for (uint32_t w = 0; w < S; ++w)
      for (uint32_t u = 0; u < S; ++u) {
        Matrix lhs = E.flat.cocycle(v, w) + E.flat.cocycle(V.add(v, w), u);
        Matrix rhs = E.flat.cocycle(w, u) + E.flat.cocycle(v, V.add(w, u));
        if (!(lhs == rhs)) throw std::logic_error("canonical_extension: cocycle identity fails");
      }
  for (uint64_t e = 0; e < E.order; ++e) {
    if (E.add(0, e) != e || E.add(e, 0) != e)
      throw std::logic_error("canonical_extension: zero is not neutral");
    if (E.add(e, E.neg(e)) != 0)
      throw std::logic_error("canonical_extension: inverse fails");
  }
  if (E.order <= 128) {
    for (uint64_t a = 0; a < E.order; ++a)
      for (uint64_t b = 0; b < E.order; ++b) {
        if (E.add(a, b) != E.add(b, a))
          throw std::logic_error("canonical_extension: addition not commutative");
        for (uint64_t c = 0; c < E.order; ++c)
          if (E.add(E.add(a, b), c) != E.add(a, E.add(b, c)))
            throw std::logic_error("canonical_extension: addition not associative");
      }
  }
  return E;
}

uint32_t Witt2::carry(uint32_t a0, uint32_t b0) const {
  int64_t x = a0 % p, y = b0 % p;
  auto powp = [&](int64_t v) {
    int64_t r = 1;
    for (uint32_t i = 0; i < p; ++i) r *= v;
    return r;
  };
  int64_t c = (powp(x + y) - powp(x) - powp(y)) / static_cast<int64_t>(p);
  return static_cast<uint32_t>(((c % p) + p) % p);
}

uint32_t Witt2::add(uint32_t a, uint32_t b) const {
  uint32_t a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
  uint32_t s0 = (a0 + b0) % p;
  uint32_t s1 = (a1 + b1 + 2 * p - carry(a0, b0)) % p;
  return s0 + p * s1;
}

uint32_t Witt2::neg(uint32_t a) const {
  uint32_t r = 0;
  for (uint32_t i = 1; i < p * p; ++i) r = add(r, a);
  return r;
}

uint32_t Witt2::mul(uint32_t a, uint32_t b) const {
  uint32_t a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
  Fp fp(p);
  uint32_t m0 = fp.mul(a0, b0);
  uint32_t m1 = fp.add(fp.mul(fp.pow(a0, p), b1), fp.mul(fp.pow(b0, p), a1));
  return m0 + p * m1;
}

uint32_t Witt2::from_int(uint64_t n) const {
  uint32_t r = 0;
  for (uint64_t i = 0; i < n % (p * p); ++i) r = add(r, 1);
  return r;
}

Witt2 witt_ring(uint32_t p) {
  if (!is_prime_u32(p) || p > 7) throw std::invalid_argument("witt_ring: need a prime p <= 7");
  Witt2 W{p};
  const uint32_t n = p * p;
  for (uint32_t a = 0; a < n; ++a) {
    if (W.add(0, a) != a || W.mul(1, a) != a || W.mul(a, 1) != a || W.add(a, W.neg(a)) != 0)
      throw std::logic_error("witt_ring: identity/inverse axiom fails");
    for (uint32_t b = 0; b < n; ++b) {
      if (W.add(a, b) != W.add(b, a) || W.mul(a, b) != W.mul(b, a))
        throw std::logic_error("witt_ring: commutativity fails");
      for (uint32_t c = 0; c < n; ++c) {
        if (W.add(W.add(a, b), c) != W.add(a, W.add(b, c)))
          throw std::logic_error("witt_ring: additive associativity fails");
        if (W.mul(W.mul(a, b), c) != W.mul(a, W.mul(b, c)))
          throw std::logic_error("witt_ring: multiplicative associativity fails");
        if (W.mul(a, W.add(b, c)) != W.add(W.mul(a, b), W.mul(a, c)))
          throw std::logic_error("witt_ring: distributivity fails");
      }
    }
  }
  return W;
}

W2Certificate k_flat_is_w2(uint32_t p) {
  if (!is_prime_u32(p)) throw std::invalid_argument("k_flat_is_w2: p must be prime");
  W2Certificate cert;
  cert.p = p;
  cert.ext = canonical_extension(FiniteVS{p, 1});
  const CanonicalExtension& E = cert.ext;
  const FlatComplex& fl = E.flat;
  const uint64_t n = E.order;
  if (n != static_cast<uint64_t>(p) * p)
    throw NoIsomorphismFound("k_flat_is_w2: extension order is not p^2");

  // Product table: (x, a) * (y, b) = (x.[b] + x.d(y) + y.[a]) x (ab).
  cert.mul.assign(n * n, 0);
  for (uint64_t e1 = 0; e1 < n; ++e1)
    for (uint64_t e2 = 0; e2 < n; ++e2) {
      uint32_t a = E.vpart(e1), b = E.vpart(e2);
      Matrix x = E.xpart(e1), y = E.xpart(e2);
      Matrix first = flat_mul10(fl, x, fl.class0(b) + fl.d * y) + flat_mul10(fl, y, fl.class0(a));
      cert.mul[e1 * n + e2] = E.make(first, (a * b) % p);
    }
  auto mul = [&](uint64_t a, uint64_t b) { return cert.mul[a * n + b]; };

  // Ring axioms on the extension.
  bool unit_found = false;
  for (uint64_t u = 0; u < n && !unit_found; ++u) {
    bool ok = true;
    for (uint64_t e = 0; e < n; ++e) ok = ok && mul(u, e) == e && mul(e, u) == e;
    if (ok) {
      cert.unit = u;
      unit_found = true;
    }
  }
  if (!unit_found) throw NoIsomorphismFound("k_flat_is_w2: no multiplicative unit");
  for (uint64_t a = 0; a < n; ++a)
    for (uint64_t b = 0; b < n; ++b) {
      if (mul(a, b) != mul(b, a)) throw NoIsomorphismFound("k_flat_is_w2: product not commutative");
      for (uint64_t c = 0; c < n; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw NoIsomorphismFound("k_flat_is_w2: product not associative");
        if (mul(a, E.add(b, c)) != E.add(mul(a, b), mul(a, c)))
          throw NoIsomorphismFound("k_flat_is_w2: product not distributive");
      }
    }

  // A unital additive map is determined by the unit; it exists iff the unit
  // additively generates, which also pins the additive type (cyclic of
  // order p^2).
  Witt2 W = witt_ring(p);
  cert.iso.assign(n, 0);
  std::vector<bool> seen(n, false);
  uint64_t acc = 0;
  uint32_t wacc = 0;
  for (uint64_t k = 0; k < n; ++k) {
    if (seen[acc]) throw NoIsomorphismFound("k_flat_is_w2: unit does not additively generate");
    seen[acc] = true;
    cert.iso[acc] = wacc;
    acc = E.add(acc, cert.unit);
    wacc = W.add(wacc, 1);
  }
  if (acc != 0) throw NoIsomorphismFound("k_flat_is_w2: unit order is not p^2");
  for (uint64_t a = 0; a < n; ++a)
    for (uint64_t b = 0; b < n; ++b) {
      if (cert.iso[E.add(a, b)] != W.add(cert.iso[a], cert.iso[b]))
        throw NoIsomorphismFound("k_flat_is_w2: map not additive");
      if (cert.iso[mul(a, b)] != W.mul(cert.iso[a], cert.iso[b]))
        throw NoIsomorphismFound("k_flat_is_w2: map not multiplicative");
    }
  return cert;
}

CocycleBasis symmetric_cocycles(FiniteVS V) {
  const uint32_t S = V.size();
  const uint32_t p = V.p;
  FieldSpec f = FieldSpec::gf(p);
  auto col = [S](uint32_t v, uint32_t w) { return v * S + w; };
  std::vector<Triplet> ts;
  uint32_t row = 0;
  for (uint32_t v = 0; v < S; ++v) {
    ts.push_back({row++, col(v, 0), 1, 1});
    ts.push_back({row++, col(0, v), 1, 1});
  }
  for (uint32_t v = 0; v < S; ++v)
    for (uint32_t w = v + 1; w < S; ++w) {
      ts.push_back({row, col(v, w), 1, 1});
      ts.push_back({row, col(w, v), -1, 1});
      ++row;
    }
  // c(w,u) - c(v+w,u) + c(v,w+u) - c(v,w) = 0.
  for (uint32_t v = 0; v < S; ++v)
    for (uint32_t w = 0; w < S; ++w)
      for (uint32_t u = 0; u < S; ++u) {
        ts.push_back({row, col(w, u), 1, 1});
        ts.push_back({row, col(V.add(v, w), u), -1, 1});
        ts.push_back({row, col(v, V.add(w, u)), 1, 1});
        ts.push_back({row, col(v, w), -1, 1});
        ++row;
      }
  for (uint32_t lam = 2; lam < p; ++lam)
    for (uint32_t v = 0; v < S; ++v)
      for (uint32_t w = 0; w < S; ++w) {
        ts.push_back({row, col(V.scale(lam, v), V.scale(lam, w)), 1, 1});
        ts.push_back({row, col(v, w), -static_cast<int64_t>(lam), 1});
        ++row;
      }
  Matrix constraints = Matrix::from_triplets(f, row, S * S, ts);
  CocycleBasis B;
  B.basis = kernel_basis(constraints);
  B.dim = B.basis.rows();
  // Independent cross-check against the cube pipeline.
  FlatComplex fl = flat_complex(V);
  if (B.dim != fl.dim1)
    throw std::logic_error("symmetric_cocycles: dimension differs from the flat degree-1 term");
  return B;
}

}  // namespace homalg
