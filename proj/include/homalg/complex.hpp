#pragma once

#include <memory>
#include <vector>

#include "homalg/linalg.hpp"

namespace homalg {

// A chain complex concentrated in degrees lo..hi, with differential of
// degree -1.  Degrees outside the stored range are zero; homology at the
// boundary degrees of a truncated complex is in general unreliable and it is
// the caller's responsibility to request only trusted degrees.
class ChainComplex {
 public:
  ChainComplex() = default;
  // diffs[k] = d_{lo+1+k} : C_{lo+1+k} -> C_{lo+k}; validates shapes and d^2=0.
  static ChainComplex build(FieldSpec f, int lo, std::vector<uint32_t> dims,
                            std::vector<Matrix> diffs);

  FieldSpec field() const { return field_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  uint32_t dim(int n) const;
  Matrix diff(int n) const;  // d_n : C_n -> C_{n-1}; zero map outside range

  // Homology dimensions for degrees from..to (inclusive).  Every requested
  // degree must lie within [lo, hi]; otherwise DegreeOutOfRange.
  std::vector<uint32_t> homology_dims(int from, int to) const;

 private:
  FieldSpec field_;
  int lo_ = 0;
  std::vector<uint32_t> dims_;
  std::vector<Matrix> d_;  // d_[k] = d_{lo+1+k}
};

// A degreewise map of chain complexes, defined on degrees mlo..mhi.
struct ComplexMap {
  int lo = 0;
  std::vector<Matrix> levels;  // levels[k] : X_{lo+k} -> Y_{lo+k}

  int hi() const { return lo + static_cast<int>(levels.size()) - 1; }
  const Matrix& level(int n) const;
  // Checks shapes and commutation with the differentials on the overlap of
  // the three degree ranges.
  void validate(const ChainComplex& X, const ChainComplex& Y) const;
};

// Chosen cycle representatives of H_n(C) together with the machinery to
// express any cycle's class in that basis.
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplex& C, int n);
  ~HomologyBasis();
  HomologyBasis(HomologyBasis&&) noexcept;

  uint32_t dim() const;
  int degree() const { return n_; }
  Matrix representatives() const;  // dim() rows, each a cycle in C_n
  // Express classes of cycles (given as columns) in this basis; returns a
  // dim() x k coefficient matrix.  Throws std::invalid_argument if a column
  // is not a cycle of the underlying complex.
  Matrix express(const Matrix& cycle_cols) const;

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

// Matrix of H_n(f) : H_n(X) -> H_n(Y) in the canonical bases above.
Matrix induced_map_on_homology(const ComplexMap& f, const ChainComplex& X,
                               const ChainComplex& Y, int n);

// A first-quadrant bicomplex with commuting squares: columns q = 0..Q, rows
// n = 0..N.  vert[q][n] : (q,n) -> (q,n-1) and horiz[q][n] : (q,n) -> (q-1,n).
// The totalization introduces the sign (-1)^n on the horizontal maps.
struct Bicomplex {
  FieldSpec field;
  uint32_t Q = 0, N = 0;
  std::vector<std::vector<uint32_t>> dims;  // dims[q][n]
  std::vector<std::vector<Matrix>> vert;    // vert[q][n], defined for n >= 1
  std::vector<std::vector<Matrix>> horiz;   // horiz[q][n], defined for q >= 1

  uint32_t dim(uint32_t q, uint32_t n) const { return dims.at(q).at(n); }
  void validate() const;  // shapes, d_v^2 = 0, d_h^2 = 0, squares commute
};

// Total complex in degrees 0..max_degree (cells ordered by column index q
// ascending within each total degree).
ChainComplex total_complex(const Bicomplex& b, int max_degree);

}  // namespace homalg
