#include "homalg/linalg.hpp"

#include <algorithm>

#include "homalg/elim.hpp"

namespace homalg {

namespace {

constexpr uint32_t kDenseLimit = 64;

// Dense reduced row-echelon form, used below kDenseLimit x kDenseLimit.  Same
// pivot rule as the sparse engine (rows in order, pivot at leading column),
// so the two paths agree exactly.
template <class Ops>
SpRows<typename Ops::E> dense_rref(const Ops& ops, const SpRows<typename Ops::E>& m,
                                   std::vector<uint32_t>& pivots) {
  using E = typename Ops::E;
  std::vector<std::vector<E>> w(m.rows, std::vector<E>(m.cols, ops.zero()));
  for (uint32_t i = 0; i < m.rows; ++i)
    for (const auto& [c, v] : m.row[i]) w[i][c] = v;
  std::vector<std::pair<uint32_t, uint32_t>> piv;  // (col, dense row idx)
  for (uint32_t i = 0; i < m.rows; ++i) {
    for (const auto& [pc, pr] : piv) {
      E f = w[i][pc];
      if (Ops::is_zero(f)) continue;
      for (uint32_t c = 0; c < m.cols; ++c) w[i][c] = ops.sub(w[i][c], ops.mul(f, w[pr][c]));
    }
    uint32_t lead = m.cols;
    for (uint32_t c = 0; c < m.cols; ++c)
      if (!Ops::is_zero(w[i][c])) {
        lead = c;
        break;
      }
    if (lead == m.cols) continue;
    E inv = ops.inv(w[i][lead]);
    for (uint32_t c = lead; c < m.cols; ++c) w[i][c] = ops.mul(w[i][c], inv);
    for (const auto& [pc, pr] : piv) {
      E f = w[pr][lead];
      if (Ops::is_zero(f)) continue;
      for (uint32_t c = 0; c < m.cols; ++c)
        w[pr][c] = ops.sub(w[pr][c], ops.mul(f, w[i][c]));
    }
    piv.emplace_back(lead, i);
  }
  std::sort(piv.begin(), piv.end());
  SpRows<E> out;
  out.cols = m.cols;
  out.rows = static_cast<uint32_t>(piv.size());
  out.row.resize(out.rows);
  pivots.clear();
  for (size_t k = 0; k < piv.size(); ++k) {
    pivots.push_back(piv[k].first);
    for (uint32_t c = 0; c < m.cols; ++c)
      if (!Ops::is_zero(w[piv[k].second][c])) out.row[k].emplace_back(c, w[piv[k].second][c]);
  }
  return out;
}

template <class Ops>
SpRows<typename Ops::E> sparse_rref(const Ops& ops, const SpRows<typename Ops::E>& m,
                                    std::vector<uint32_t>& pivots) {
  Eliminator<Ops> el(ops, m.cols);
  for (const auto& r : m.row) el.add(r);
  el.jordanize();
  SpRows<typename Ops::E> out;
  out.cols = m.cols;
  out.rows = el.rank();
  out.row.assign(el.rows().begin(), el.rows().end());
  pivots = el.pivot_cols();
  return out;
}

template <class Ops>
SpRows<typename Ops::E> rref_impl(const Ops& ops, const SpRows<typename Ops::E>& m,
                                  std::vector<uint32_t>& pivots) {
  if (m.rows < kDenseLimit && m.cols < kDenseLimit) return dense_rref(ops, m, pivots);
  return sparse_rref(ops, m, pivots);
}

template <class Ops>
uint32_t rank_impl(const Ops& ops, const SpRows<typename Ops::E>& m) {
  if (m.rows < kDenseLimit && m.cols < kDenseLimit) {
    std::vector<uint32_t> pivots;
    return static_cast<uint32_t>(dense_rref(ops, m, pivots).rows);
  }
  Eliminator<Ops> el(ops, m.cols);
  for (const auto& r : m.row) el.add(r);
  return el.rank();
}

template <class Ops>
SpRows<typename Ops::E> kernel_impl(const Ops& ops, const SpRows<typename Ops::E>& m) {
  using E = typename Ops::E;
  std::vector<uint32_t> pivots;
  SpRows<E> r = rref_impl(ops, m, pivots);
  std::vector<bool> is_piv(m.cols, false);
  for (uint32_t c : pivots) is_piv[c] = true;
  std::vector<uint32_t> free_cols;
  for (uint32_t c = 0; c < m.cols; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  std::vector<uint32_t> free_index(m.cols, 0);
  for (uint32_t k = 0; k < free_cols.size(); ++k) free_index[free_cols[k]] = k;

  SpRows<E> ker;
  ker.cols = m.cols;
  ker.rows = static_cast<uint32_t>(free_cols.size());
  ker.row.resize(ker.rows);
  for (uint32_t k = 0; k < ker.rows; ++k) ker.row[k].emplace_back(free_cols[k], ops.one());
  for (uint32_t i = 0; i < r.rows; ++i)
    for (const auto& [c, v] : r.row[i])
      if (!is_piv[c]) ker.row[free_index[c]].emplace_back(pivots[i], ops.neg(v));
  for (auto& row : ker.row) std::sort(row.begin(), row.end());
  // Canonicalize to reduced row-echelon form.
  std::vector<uint32_t> kp;
  return rref_impl(ops, ker, kp);
}

template <class Ops>
std::optional<SpRows<typename Ops::E>> solve_impl(const Ops& ops,
                                                  const SpRows<typename Ops::E>& m,
                                                  const SpRows<typename Ops::E>& b) {
  using E = typename Ops::E;
  // Work with columns of m as rows, augmented with unit tags recording the
  // combination; then reduce each column of b.
  SpRows<E> mt;
  {
    mt.rows = m.cols;
    mt.cols = m.rows;
    mt.row.resize(m.cols);
    for (uint32_t i = 0; i < m.rows; ++i)
      for (const auto& [c, v] : m.row[i]) mt.row[c].emplace_back(i, v);
  }
  Eliminator<Ops> el(ops, m.rows + m.cols, m.rows);
  for (uint32_t i = 0; i < mt.rows; ++i) {
    auto r = mt.row[i];
    r.emplace_back(m.rows + i, ops.one());
    el.add(r);
  }
  SpRows<E> bt;  // columns of b
  bt.rows = b.cols;
  bt.cols = b.rows;
  bt.row.resize(b.cols);
  for (uint32_t i = 0; i < b.rows; ++i)
    for (const auto& [c, v] : b.row[i]) bt.row[c].emplace_back(i, v);
  SpRows<E> xt;  // columns of x
  xt.rows = b.cols;
  xt.cols = m.cols;
  xt.row.resize(b.cols);
  for (uint32_t j = 0; j < b.cols; ++j) {
    auto red = el.reduce(bt.row[j]);
    for (const auto& [c, v] : red) {
      if (c < m.rows) return std::nullopt;  // not in the column span
      xt.row[j].emplace_back(c - m.rows, ops.neg(v));
    }
  }
  SpRows<E> x;
  x.rows = m.cols;
  x.cols = b.cols;
  x.row.resize(m.cols);
  for (uint32_t j = 0; j < xt.rows; ++j)
    for (const auto& [c, v] : xt.row[j]) x.row[c].emplace_back(j, v);
  for (auto& r : x.row) std::sort(r.begin(), r.end());
  return x;
}

}  // namespace

uint32_t rank(const Matrix& m) {
  return m.field().is_prime_field() ? rank_impl(FpOps(m.field().p), m.fpdata())
                                    : rank_impl(QOps{}, m.qdata());
}

Echelon row_echelon(const Matrix& m) {
  Echelon e;
  if (m.field().is_prime_field())
    e.rref = Matrix::wrap(m.field(), rref_impl(FpOps(m.field().p), m.fpdata(), e.pivots));
  else
    e.rref = Matrix::wrap(m.field(), rref_impl(QOps{}, m.qdata(), e.pivots));
  return e;
}

Matrix kernel_basis(const Matrix& m) {
  return m.field().is_prime_field()
             ? Matrix::wrap(m.field(), kernel_impl(FpOps(m.field().p), m.fpdata()))
             : Matrix::wrap(m.field(), kernel_impl(QOps{}, m.qdata()));
}

uint32_t homology_dim(const Matrix& d_in, const Matrix& d_out) {
  if (d_out.cols() != d_in.rows())
    throw std::invalid_argument("homology_dim: shape mismatch");
  if (!(d_out * d_in).is_zero())
    throw CompositeNonzero("homology_dim: d_out * d_in != 0");
  return d_out.cols() - rank(d_out) - rank(d_in);
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  if (m.field().is_prime_field()) {
    auto x = solve_impl(FpOps(m.field().p), m.fpdata(), b.fpdata());
    if (!x) return std::nullopt;
    return Matrix::wrap(m.field(), std::move(*x));
  }
  auto x = solve_impl(QOps{}, m.qdata(), b.qdata());
  if (!x) return std::nullopt;
  return Matrix::wrap(m.field(), std::move(*x));
}

Subspace Subspace::from_rows(const Matrix& rows) {
  Subspace s;
  Echelon e = row_echelon(rows);
  s.basis_ = std::move(e.rref);
  s.pivots_ = std::move(e.pivots);
  return s;
}

bool Subspace::contains(const Matrix& row_vec) const {
  if (row_vec.cols() != ambient() || row_vec.rows() != 1)
    throw std::invalid_argument("Subspace::contains: need a single row vector");
  Matrix stacked = Matrix::vstack(basis_, row_vec);
  return rank(stacked) == dim();
}

Matrix Subspace::quotient_projection() const {
  uint32_t n = ambient();
  std::vector<bool> is_piv(n, false);
  for (uint32_t c : pivots_) is_piv[c] = true;
  std::vector<uint32_t> free_cols;
  for (uint32_t c = 0; c < n; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  std::vector<uint32_t> free_index(n, 0);
  for (uint32_t k = 0; k < free_cols.size(); ++k) free_index[free_cols[k]] = k;
  std::vector<Triplet> ts;
  for (uint32_t k = 0; k < free_cols.size(); ++k) ts.push_back({k, free_cols[k], 1, 1});
  Matrix proj = Matrix::from_triplets(basis_.field(), static_cast<uint32_t>(free_cols.size()),
                                      n, ts);
  // The correction term carries proj[k][pivot_i] = -basis[i][free_cols[k]].
  std::vector<Triplet> cs;
  if (basis_.field().is_prime_field()) {
    const auto& bd = basis_.fpdata();
    for (uint32_t i = 0; i < bd.rows; ++i)
      for (const auto& [c, v] : bd.row[i])
        if (!is_piv[c]) cs.push_back({free_index[c], pivots_[i], -static_cast<int64_t>(v), 1});
    return proj + Matrix::from_triplets(basis_.field(), proj.rows(), n, cs);
  }
  // Rational case: build via triplet-free assembly to keep exact values.
  SpRows<mpq_class> corr;
  corr.rows = proj.rows();
  corr.cols = n;
  corr.row.resize(corr.rows);
  const auto& bd = basis_.qdata();
  for (uint32_t i = 0; i < bd.rows; ++i)
    for (const auto& [c, v] : bd.row[i])
      if (!is_piv[c]) corr.row[free_index[c]].emplace_back(pivots_[i], -v);
  for (auto& r : corr.row) std::sort(r.begin(), r.end());
  return proj + Matrix::wrap(basis_.field(), std::move(corr));
}

Matrix Subspace::quotient_section() const {
  uint32_t n = ambient();
  std::vector<bool> is_piv(n, false);
  for (uint32_t c : pivots_) is_piv[c] = true;
  std::vector<Triplet> ts;
  uint32_t k = 0;
  for (uint32_t c = 0; c < n; ++c)
    if (!is_piv[c]) ts.push_back({c, k++, 1, 1});
  return Matrix::from_triplets(basis_.field(), n, k, ts);
}

}  // namespace homalg
