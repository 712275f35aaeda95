#pragma once

#include <optional>
#include <vector>

#include "homalg/errors.hpp"
#include "homalg/matrix.hpp"

namespace homalg {

struct Echelon {
  Matrix rref;                   // reduced row-echelon form, zero rows dropped
  std::vector<uint32_t> pivots;  // pivot column of each row, strictly increasing
};

uint32_t rank(const Matrix& m);
Echelon row_echelon(const Matrix& m);

// Basis of the right kernel {v : m v = 0}, returned as the rows of a
// (dim ker) x cols matrix in canonical reduced row-echelon form.
Matrix kernel_basis(const Matrix& m);

// Dimension of ker(d_out) / im(d_in) where d_in : U -> V, d_out : V -> W.
// Throws CompositeNonzero unless d_out * d_in = 0.
uint32_t homology_dim(const Matrix& d_in, const Matrix& d_out);

// Solve m * x = b columnwise (b may have several columns); nullopt if any
// column is not in the image.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

// A subspace of k^n held in canonical form: basis rows in reduced
// row-echelon form with strictly increasing pivot columns.
class Subspace {
 public:
  static Subspace from_rows(const Matrix& rows);

  const Matrix& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }
  uint32_t ambient() const { return basis_.cols(); }
  uint32_t dim() const { return basis_.rows(); }
  bool contains(const Matrix& row_vec) const;
  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

  // Coordinates on the quotient k^n / this are indexed by the non-pivot
  // columns.  quotient_projection() is the (n - dim) x n matrix of the
  // canonical projection; quotient_section() is a right inverse of it.
  Matrix quotient_projection() const;
  Matrix quotient_section() const;

 private:
  Matrix basis_;
  std::vector<uint32_t> pivots_;
};

}  // namespace homalg
