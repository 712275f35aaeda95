#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "homalg/algebra.hpp"
#include "homalg/complex.hpp"
#include "homalg/lambda.hpp"
#include "homalg/simplicial.hpp"

namespace homalg {

// A p-cyclic vector space given on objects [1]..[N] by a generic evaluator
// of morphisms; structure maps of faces, degeneracies and the rotation are
// obtained by evaluating the corresponding LambdaMor.
struct PCyclicObject {
  FieldSpec field;
  uint32_t p = 1;
  uint32_t N = 0;                  // levels [1]..[N] available
  std::vector<uint32_t> dims;      // dims[l] = dim E([l]); dims[0] unused
  std::function<Matrix(const LambdaMor&)> eval;

  Matrix face(uint32_t level, uint32_t i) const;   // E([level]) -> E([level-1])
  Matrix degen(uint32_t level, uint32_t i) const;  // E([level]) -> E([level+1])
  Matrix tau(uint32_t level) const;
  // Spot-checks functoriality: identities, tau order p*l, and the face and
  // degeneracy relations at levels <= cap.  Throws NaturalityFailure.
  void validate(uint32_t cap) const;
};

// The cyclic vector space A_#: E([n]) = A tensor n; the j-th output factor of
// a morphism is the ordered product of the inputs over the lift preimage of
// j, with empty products equal to 1.
PCyclicObject a_sharp(const Algebra& a, uint32_t trunc);

enum class PullbackKind { AlongI, AlongPi };

// Restriction of a cyclic (p = 1) vector space to a p-cyclic one, either
// along the subdivision embedding [n] -> [pn] (AlongI; requires truncation of
// E at least p per level, so the result has N = E.N / p) or along the
// projection that is the identity on objects (AlongPi).
PCyclicObject pullback(const PCyclicObject& E, PullbackKind along, uint32_t p);

// Underlying simplicial vector space: level n is E([n+1]), n = 0..E.N-1.
SimplicialVS underlying_simplicial(const PCyclicObject& E);

// First-quadrant bicomplex computing cyclic homology, columns and rows
// 0..D+1; column q at row n carries E([n+1]).  Even columns carry b, odd
// columns carry -b'; the horizontal maps are (1-lambda) into even columns and
// the norm over the full rotation orbit into odd ones, with lambda = (-1)^n
// tau at row n.  Stored horizontals carry a (-1)^row factor so that squares
// commute; totalization cancels it.
Bicomplex cyclic_bicomplex(const PCyclicObject& E, uint32_t D);

// One-stop computation at a fixed depth: builds the total complex once and
// caches homology bases, so HC dims, the periodicity map u and the map from
// Hochschild classes share representatives.
class CyclicComputation {
 public:
  CyclicComputation(const PCyclicObject& E, uint32_t D);

  uint32_t depth() const { return D_; }
  const ChainComplex& total() const { return total_; }
  const ChainComplex& column() const { return col_; }  // column-0 complex

  uint32_t hh_dim(uint32_t i);
  uint32_t hc_dim(uint32_t i);              // exact for i <= D
  Matrix u(uint32_t i);                     // HC_i -> HC_{i-2}, i >= 2
  Matrix hh_to_hc(uint32_t i);              // Connes-sequence inclusion
  HomologyBasis& hc_basis(uint32_t i);      // cached basis of HC_i

 private:
  Matrix shift_matrix(uint32_t m) const;    // kill columns 0,1; reindex q-2

  FieldSpec f_;
  uint32_t D_;
  std::vector<uint32_t> cell_dims_;         // dim E([n+1]), n = 0..D+1
  ChainComplex total_;
  ChainComplex col_;
  std::map<uint32_t, HomologyBasis> tbasis_;
  std::map<uint32_t, HomologyBasis> cbasis_;
};

// Hochschild homology dims of E in degrees 0..D (via the normalized complex
// of the underlying simplicial object).  Requires D <= N-2.
std::vector<uint32_t> hh_dims(const PCyclicObject& E, uint32_t D);

// Cyclic homology dims in degrees 0..D.  Requires D <= N-2.
std::vector<uint32_t> hc_dims(const PCyclicObject& E, uint32_t D);

// Matrix of the periodicity map HC_i -> HC_{i-2}.
Matrix u_map(const PCyclicObject& E, uint32_t i);

struct HPReport {
  uint32_t D = 0;
  std::vector<uint32_t> hc;                  // dims 0..D
  std::vector<uint32_t> u_rank;              // rank of u_i, i = 2..D (index i)
  std::vector<bool> u_iso;                   // u_i bijective, i = 2..D
  // Stabilized periodic dims per degree parity (index i mod 2), present when
  // every u with matching parity is an isomorphism from some point on.
  std::array<std::optional<uint32_t>, 2> hp;
  std::array<int, 2> stable_from = {-1, -1};  // first degree of the iso tail
};

HPReport hp_window(const PCyclicObject& E, uint32_t D);
HPReport hp_window(CyclicComputation& comp);  // reuse an existing computation

struct HodgeReport {
  uint32_t D = 0;
  std::vector<uint32_t> hh;  // dims 0..D
  std::vector<uint32_t> e1;  // e1[i] = sum_{l>=0} hh[i-2l]
  std::vector<uint32_t> hc;  // dims 0..D
  bool degenerate = false;   // e1 == hc throughout 0..D
};

HodgeReport hodge_report(const PCyclicObject& E, uint32_t D);

}  // namespace homalg
