#pragma once

#include <cstdint>
#include <vector>

#include "homalg/complex.hpp"
#include "homalg/linalg.hpp"

namespace homalg {

// A finite GF(p)-vector space with enumerable elements.  Elements are encoded
// as integers in [0, p^d), base-p digits giving the coordinates.
struct FiniteVS {
  uint32_t p = 2;  // field characteristic, prime
  uint32_t d = 1;  // dimension over GF(p)

  uint32_t size() const;                           // p^d
  uint32_t add(uint32_t a, uint32_t b) const;      // coordinatewise sum
  uint32_t scale(uint32_t lam, uint32_t a) const;  // lam in [0, p)
};

// The hypercube chain complex of V up to degree D.  Level n has one basis
// element per nonzero vector of V^{(+)2^n} (2^n copies of V indexed by the
// corners of the n-cube); the differential is the signed alternating sum over
// axes of (front-face projection + back-face projection - facewise sum),
// matching d[a] = p1(a) + p2(a) - p12(a) in degree 1.  Two quotients are
// taken: first by the span of the slabs (configurations supported on a single
// face), then by the scalar-rescaling coinvariants lam.[w] = lam^{-1}[lam w];
// `reduced` is the resulting complex with the descended differential, whose
// well-definedness is checked by matrix factorization and whose d^2 = 0 is
// validated on construction.
struct CubeComplex {
  FiniteVS V;
  uint32_t D = 0;
  std::vector<uint64_t> full_dim;  // level n: p^{d 2^n} - 1 basis elements
  std::vector<Matrix> d_full;      // d_full[n] : level n -> n-1 (n = 1..D)
  std::vector<Subspace> slabs;     // slab span at each level
  std::vector<Subspace> rels;      // slabs + rescaling relations
  std::vector<Matrix> proj;        // level n -> reduced level n
  std::vector<Matrix> sect;        // section of proj[n]
  ChainComplex reduced;            // degrees 0..D

  uint32_t slab_quotient_dim(uint32_t n) const;  // dim of level n / slabs
  uint32_t reduced_dim(uint32_t n) const { return reduced.dim(static_cast<int>(n)); }
};

// Builds the complex; refuses (SizeBudgetExceeded, message reports the
// offending size) when some level would have more than `budget` basis
// elements.
CubeComplex build_cube(FiniteVS V, uint32_t D, uint64_t budget = 10'000'000);

// Homology of the reduced complex in degrees 0..D-1 (degree D sits at the
// truncation boundary and is not trusted).
std::vector<uint32_t> cube_homology(const CubeComplex& C);
std::vector<uint32_t> cube_homology(FiniteVS V, uint32_t D, uint64_t budget = 10'000'000);

// Basis of the space of maps c : V x V -> GF(p) that vanish on (v,0) and
// (0,v), are symmetric, satisfy the additive 2-cocycle identity, and are
// equivariant for scalar rescaling, c(lam v, lam w) = lam c(v, w).  Solved as
// one linear system; the dimension is checked against the degree-1 term of
// the two-term flat quotient below (logic_error on mismatch).
struct CocycleBasis {
  uint32_t dim = 0;
  Matrix basis;  // dim rows; column v*|V| + w holds c(v, w)
};
CocycleBasis symmetric_cocycles(FiniteVS V);

// The two-term quotient of the reduced cube complex: degree 0 is reduced
// level 0, degree 1 is reduced level 1 modulo the image of d_2.  Both
// homology groups have dimension dim V (checked on construction).
struct FlatComplex {
  CubeComplex cube;  // built to depth 2
  uint32_t dim0 = 0;
  uint32_t dim1 = 0;
  Matrix d;      // dim0 x dim1
  Matrix proj1;  // reduced level 1 -> degree-1 term
  Matrix sect1;  // section of proj1
  uint32_t h0 = 0;
  uint32_t h1 = 0;

  // Coordinates of the class of the basis vector [v] in degree 0 (zero for
  // v = 0), and of the degree-1 class of [(v, w)] -- the canonical cocycle
  // c(v, w) with values in the degree-1 term.
  Matrix class0(uint32_t v) const;
  Matrix cocycle(uint32_t v, uint32_t w) const;
};
FlatComplex flat_complex(FiniteVS V, uint64_t budget = 10'000'000);

// For one-dimensional V only: the product (degree 1) x (degree 0) ->
// (degree 1) descending [(u,u')] (x) [y] |-> [(uy, u'y)] to the flat
// quotient (the identification V (x) V = V is field multiplication).
// x1 is a dim1-column, y0 a dim0-column.
Matrix flat_mul10(const FlatComplex& fl, const Matrix& x1, const Matrix& y0);

// Central extension of V by the degree-1 flat term along the canonical
// cocycle: underlying set (degree-1 term) x V, addition
// (x, v) + (x', v') = (x + x' + c(v, v'), v + v').  Elements are encoded as
// e = x + p^t * v with x in [0, p^t) the base-p encoding of the degree-1
// coordinates (t = dim1) and v in [0, |V|).  Group axioms are verified on
// construction: identity and inverses by scan, commutativity and
// associativity via the symmetry and cocycle identities of c on all pairs /
// triples of V (the coordinate parts are vector-space operations), plus a
// direct exhaustive triple check when the order is at most 128.
struct CanonicalExtension {
  FlatComplex flat;
  uint32_t t = 0;       // = flat.dim1
  uint64_t order = 0;   // p^t * |V|

  uint64_t zero() const { return 0; }
  uint64_t add(uint64_t e1, uint64_t e2) const;
  uint64_t neg(uint64_t e) const;
  uint64_t pmul(uint64_t e) const;  // p-fold sum
  uint32_t vpart(uint64_t e) const;
  Matrix xpart(uint64_t e) const;              // t x 1 column
  uint64_t make(const Matrix& x, uint32_t v) const;
};
CanonicalExtension canonical_extension(FiniteVS V, uint64_t budget = 10'000'000);

// Length-2 Witt vectors over GF(p), p <= 7: pairs (a0, a1) encoded as
// a0 + p*a1, with sum (a0+b0, a1+b1-carry(a0,b0)) for the degree-p carry
// polynomial carry(x,y) = ((x+y)^p - x^p - y^p)/p on integer lifts, and
// product (a0 b0, a0^p b1 + b0^p a1).  Ring axioms are validated
// exhaustively on construction.
struct Witt2 {
  uint32_t p = 2;

  uint32_t carry(uint32_t a0, uint32_t b0) const;
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }
  uint32_t from_int(uint64_t n) const;  // n * one, i.e. Z -> W_2 reduction
};
Witt2 witt_ring(uint32_t p);

// Ring structure on the canonical extension of V = GF(p) itself: the product
// is (x, a) * (y, b) = (x.[b] + [a].y + x.d(y), ab) with the flat
// multiplication above, and the certificate is the unique unital additive map
// onto the length-2 Witt vectors (the extension must be cyclic of order p^2
// with the unit an additive generator; otherwise NoIsomorphismFound).  The
// returned table is checked to be a bijective ring map on all pairs.
struct W2Certificate {
  uint32_t p = 0;
  CanonicalExtension ext;        // of GF(p); p^2 elements
  uint64_t unit = 0;             // multiplicative identity of the extension
  std::vector<uint32_t> iso;     // extension element e -> Witt pair encoding
  std::vector<uint64_t> mul;     // product table, row-major p^2 x p^2
};
W2Certificate k_flat_is_w2(uint32_t p);

}  // namespace homalg
