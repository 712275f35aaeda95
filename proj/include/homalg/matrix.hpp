#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "homalg/field.hpp"

namespace homalg {

// Sparse row storage: each row is a list of (column, value) pairs, sorted by
// column, with no zero values and no duplicate columns.
template <class E>
struct SpRows {
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<std::vector<std::pair<uint32_t, E>>> row;
};

struct Triplet {
  uint32_t r = 0;
  uint32_t c = 0;
  int64_t num = 0;
  int64_t den = 1;  // only meaningful over the rationals
};

// Exact sparse matrix over GF(p) or Q.  The convention throughout is that
// vectors are column vectors, so a map V -> W with dim V = c, dim W = r is an
// r x c matrix.
class Matrix {
 public:
  Matrix() : Matrix(FieldSpec::rationals(), 0, 0) {}
  Matrix(FieldSpec f, uint32_t rows, uint32_t cols);

  static Matrix from_triplets(FieldSpec f, uint32_t rows, uint32_t cols,
                              const std::vector<Triplet>& ts);
  static Matrix from_dense(FieldSpec f, const std::vector<std::vector<int64_t>>& rows);
  static Matrix identity(FieldSpec f, uint32_t n);
  static Matrix row_vector(FieldSpec f, const std::vector<int64_t>& v);
  static Matrix column_vector(FieldSpec f, const std::vector<int64_t>& v);

  FieldSpec field() const { return f_; }
  uint32_t rows() const;
  uint32_t cols() const;
  uint64_t nnz() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  Matrix transpose() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(int64_t s) const;
  Matrix negated() const { return scaled(-1); }
  // Kronecker / tensor product: index (i,j) of this x index pair blocks.
  Matrix kron(const Matrix& o) const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  // Assemble from a grid of optional blocks; blocks[i][j] may be an empty
  // (0x0) matrix meaning a zero block.  Row/col dims per band are given.
  static Matrix block(FieldSpec f, const std::vector<uint32_t>& row_dims,
                      const std::vector<uint32_t>& col_dims,
                      const std::vector<std::vector<Matrix>>& blocks);

  Matrix row(uint32_t r) const;            // 1 x cols slice
  Matrix submatrix_rows(const std::vector<uint32_t>& which) const;

  // Entry access; slow, intended for tests and small matrices.
  uint32_t fp_at(uint32_t r, uint32_t c) const;
  mpq_class q_at(uint32_t r, uint32_t c) const;

  // Internal storage access (used by the elimination engine).
  const SpRows<uint32_t>& fpdata() const { return fp_; }
  SpRows<uint32_t>& fpdata() { return fp_; }
  const SpRows<mpq_class>& qdata() const { return q_; }
  SpRows<mpq_class>& qdata() { return q_; }
  static Matrix wrap(FieldSpec f, SpRows<uint32_t> s);
  static Matrix wrap(FieldSpec f, SpRows<mpq_class> s);

  // Check the sorted/nonzero/in-range invariants; throws std::logic_error.
  void check_invariants() const;

 private:
  FieldSpec f_;
  SpRows<uint32_t> fp_;
  SpRows<mpq_class> q_;
};

}  // namespace homalg
