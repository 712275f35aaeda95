#pragma once

#include "homalg/linalg.hpp"

namespace homalg {

// A module over the group ring of Z/pZ in characteristic p, given by the
// matrix of the generator.
struct CpModule {
  FieldSpec field;  // GF(p)
  uint32_t p = 2;
  uint32_t dim = 0;
  Matrix sigma;

  void validate() const;  // field is GF(p), shapes, sigma^p = id
};

CpModule cp_trivial(uint32_t p, uint32_t dim);
CpModule cp_regular(uint32_t p, uint32_t copies = 1);
CpModule cp_direct_sum(const CpModule& a, const CpModule& b);

// Tate homology dims on the degree window lo..hi, from the two-periodic
// complex with d = 1 - sigma in odd degrees and the norm in even ones.
std::vector<uint32_t> tate_dims(const CpModule& m, int lo = -4, int hi = 4);

// Freeness over k[Z/pZ] via the rank profile of (sigma - 1)^j.
bool is_free(const CpModule& m);

// Matrix of the norm-induced map from coinvariants to invariants, in the
// canonical quotient/kernel bases.
Matrix trace_map(const CpModule& m);

// V tensor p with the cyclic rotation, V = k^dim_v.
CpModule power_module(FieldSpec f, uint32_t dim_v, uint32_t p);

struct VotimespReport {
  uint32_t dim_v = 0, p = 2;
  std::vector<uint32_t> tate;     // dims on [-3, 3]
  bool dims_match = false;        // every dim equals dim_v
  bool diagonal_cycles = false;   // v tensor p killed by 1-sigma and the norm
  bool diagonal_spans = false;    // diagonal classes span Tate homology in both parities
  bool passed() const { return dims_match && diagonal_cycles && diagonal_spans; }
};

// Check the identification of V with the Tate homology of V tensor p under
// the diagonal map v -> v^{(x)p}.
VotimespReport verify_votimesp(FieldSpec f, uint32_t dim_v, uint32_t p);

}  // namespace homalg
