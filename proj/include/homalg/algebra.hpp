#pragma once

#include <optional>
#include <string>

#include "homalg/simplicial.hpp"

namespace homalg {

// Finite-dimensional unital associative algebra given by structure constants.
// Multiplication is packaged as a dim x dim^2 matrix acting on x (x) y.
class Algebra {
 public:
  FieldSpec field;
  uint32_t n = 0;  // dimension
  std::vector<std::string> labels;
  Matrix mult;  // n x n^2
  Matrix unit;  // n x 1

  // Exact associativity and unit laws; throws std::invalid_argument.
  void validate() const;
  // product of basis elements i, j as a sparse column
  Matrix basis_product(uint32_t i, uint32_t j) const;
};

// The flip V1 (x) V2 -> V2 (x) V1 on tensor basis indices.
Matrix block_swap(FieldSpec f, uint32_t d1, uint32_t d2);

Algebra group_algebra(FieldSpec f, const std::vector<std::vector<uint32_t>>& table);
Algebra matrix_algebra(FieldSpec f, uint32_t sz);
Algebra path_algebra(FieldSpec f, uint32_t vertices,
                     const std::vector<std::pair<uint32_t, uint32_t>>& edges);
Algebra trunc_poly(FieldSpec f, uint32_t order);  // k[x]/x^order, order >= 1
Algebra product_algebra(const Algebra& a, const Algebra& b);
Algebra opposite_algebra(const Algebra& a);
Algebra tensor_algebra(const Algebra& a, const Algebra& b);

// Bimodule over an algebra: left action on a (x) v, right action on v (x) a.
struct Bimodule {
  uint32_t dim = 0;
  Matrix left;   // dim x (n * dim)
  Matrix right;  // dim x (dim * n)
};

Bimodule diagonal_bimodule(const Algebra& a);
// Checks the bimodule axioms (associativity of both actions, their
// commutation, unit acting as identity).
void validate_bimodule(const Algebra& a, const Bimodule& m);

// The bimodule of square-zero extensions' coefficients: I_A = ker(mult),
// with the inclusion into A (x) A.
struct NCFormsBimodule {
  Bimodule bimodule;   // dim = n^2 - n
  Matrix inclusion;    // n^2 x (n^2 - n), intertwines the actions
};
NCFormsBimodule nc_forms_bimodule(const Algebra& a);

// Hochschild chain level-n space M (x) A^{(x)n}, truncated at level D.
SimplicialVS hochschild_complex(const Algebra& a, const Bimodule& m, uint32_t D);

// Hochschild homology dims of A with diagonal coefficients, degrees 0..D-1.
std::vector<uint32_t> hh_dims(const Algebra& a, uint32_t D);

// Hochschild cochain complex Hom(A^{(x)n}, M) differentials delta_n for
// n = 0..top (delta_n maps n-cochains to (n+1)-cochains).
std::vector<Matrix> hochschild_cochain_diffs(const Algebra& a, const Bimodule& m,
                                             uint32_t top);
// HH^i(A, M) for i = 0..D-1.
std::vector<uint32_t> hochschild_cohomology_dims(const Algebra& a, const Bimodule& m,
                                                 uint32_t D);
// Reduced Hochschild cohomology for i = 0..D-1: entry 0 is 0, entry 1 is
// Ext^0(I_A, M) = ker(delta_1), entries i >= 2 agree with HH^i(A, M).
std::vector<uint32_t> reduced_hh_dims(const Algebra& a, const Bimodule& m, uint32_t D);

// Obstruction to lifting the multiplication to a flat associative algebra
// over Z/p^2: lift structure constants coordinatewise, divide the associator
// defect by p, check the resulting A-valued 3-cocycle for being a coboundary.
struct W2LiftReport {
  bool vanishes = false;
  Matrix cocycle;                  // the defect 3-cochain, as a column vector
  std::optional<Matrix> witness;   // correcting 2-cochain when it vanishes
};
W2LiftReport w2_lift_obstruction(const Algebra& a);

}  // namespace homalg
