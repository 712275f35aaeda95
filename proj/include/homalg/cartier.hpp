#pragma once

#include "homalg/cyclic.hpp"
#include "homalg/tate.hpp"

namespace homalg {

// An equivariant algebra map A -> A tensor p inducing a Tate-homology
// isomorphism (the Frobenius twist is the identity on coordinates over the
// prime field, so F is plain-linear).
struct QuasiFrobenius {
  Algebra a;      // over GF(p)
  uint32_t p = 2; // = characteristic of the ground field
  Matrix F;       // (dim A)^p x (dim A)
};

// F(g) = g^{(x)p} on the distinguished monomial basis; requires the basis to
// be a group under the algebra product.
QuasiFrobenius qf_group_algebra(const Algebra& a);

struct QFReport {
  bool injective = false;
  bool unital = false;
  bool multiplicative = false;
  bool equivariant = false;       // image pointwise fixed by the rotation
  bool tate_iso = false;          // bijective on Tate homology, degrees -2..2
  bool coker_free = false;        // cokernel free over k[Z/pZ]
  bool passed() const {
    return injective && unital && multiplicative && equivariant && tate_iso && coker_free;
  }
};

QFReport qf_validate(const QuasiFrobenius& qf);

// Levelwise components of the induced map of p-cyclic objects from the
// projection pullback of A_# to the subdivision pullback: at level [n] the
// component is (stride-n interleaving shuffle) of F applied to each tensor
// factor, placing factor l of block j at position j + l*n.  Naturality
// against every generator (faces, degeneracies, rotation) at levels <= N is
// verified; a failure throws NaturalityFailure (a convention bug, not bad
// input).  Returns maps indexed by level 1..N (index 0 unused).
std::vector<Matrix> induced_ptilde(const QuasiFrobenius& qf, uint32_t N);

struct CartierReport {
  uint32_t levels = 0, D = 0;
  std::vector<bool> level_coker_free;      // index by level 1..levels
  bool all_levels_free = false;
  HPReport hp_pi, hp_i, hp_base;
  std::vector<uint32_t> hc_f_rank;         // rank of HC_i of the induced map, i = 0..D
  bool hc_iso_up_to_d = false;             // bijective in every degree <= D
  bool u_commutes = false;                 // periodicity squares commute on homology
  bool cross_i_matches_base = false;       // subdivision side has the dims of A_#
  bool cross_pi_matches_pattern = false;   // projection side has the summed hh dims
  bool passed() const {
    return all_levels_free && hc_iso_up_to_d && u_commutes && cross_i_matches_base &&
           cross_pi_matches_pattern;
  }
};

// Full inverse-Cartier verification at truncation scale: levelwise free
// cokernels, the induced isomorphism on the stabilized periodic window, and
// consistency with the subdivision and projection computations.  Throws
// InconclusiveStabilization if either periodic window fails to stabilize.
CartierReport cartier_check(const QuasiFrobenius& qf, uint32_t D, uint32_t levels = 5);

}  // namespace homalg
