#pragma once

#include "homalg/complex.hpp"

namespace homalg {

// A simplicial vector space truncated at level N: levels E_0..E_N with face
// maps face[n][i] : E_n -> E_{n-1} (0 <= i <= n) and degeneracies
// degen[n][i] : E_n -> E_{n+1} (0 <= i <= n, n < N).
struct SimplicialVS {
  FieldSpec field;
  uint32_t N = 0;
  std::vector<uint32_t> dims;
  std::vector<std::vector<Matrix>> face;   // face[n], defined for n >= 1
  std::vector<std::vector<Matrix>> degen;  // degen[n], defined for n < N

  uint32_t dim(uint32_t n) const { return dims.at(n); }
  const Matrix& d(uint32_t n, uint32_t i) const { return face.at(n).at(i); }
  const Matrix& s(uint32_t n, uint32_t i) const { return degen.at(n).at(i); }
  // Verify all simplicial identities that fit inside the truncation; throws
  // std::invalid_argument on the first violation.
  void check_identities() const;
};

// Standard complex: differential sum_i (-1)^i d_i, degrees 0..N.  Homology
// at the truncation level N is unreliable.
ChainComplex standard_complex(const SimplicialVS& e);

// Normalized complex: levelwise quotient by the span of all degeneracy
// images, with the projection from the standard complex.
struct NormalizedComplex {
  ChainComplex complex;
  ComplexMap projection;
};
NormalizedComplex normalized_complex(const SimplicialVS& e);

}  // namespace homalg
