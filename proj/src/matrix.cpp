#include "homalg/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "homalg/elim.hpp"

namespace homalg {

namespace {

template <class Ops>
using RowOf = std::vector<std::pair<uint32_t, typename Ops::E>>;

FpOps fp_ops(FieldSpec f) { return FpOps(f.p); }

void check_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument("matrix field mismatch: " + a.field().str() +
                                " vs " + b.field().str());
}

template <class Ops>
SpRows<typename Ops::E> transpose_impl(const Ops&, const SpRows<typename Ops::E>& m) {
  SpRows<typename Ops::E> out;
  out.rows = m.cols;
  out.cols = m.rows;
  out.row.resize(m.cols);
  std::vector<uint32_t> counts(m.cols, 0);
  for (const auto& r : m.row)
    for (const auto& [c, v] : r) ++counts[c];
  for (uint32_t c = 0; c < m.cols; ++c) out.row[c].reserve(counts[c]);
  for (uint32_t i = 0; i < m.rows; ++i)
    for (const auto& [c, v] : m.row[i]) out.row[c].emplace_back(i, v);
  return out;
}

template <class Ops>
SpRows<typename Ops::E> add_impl(const Ops& ops, const SpRows<typename Ops::E>& a,
                                 const SpRows<typename Ops::E>& b, bool subtract) {
  SpRows<typename Ops::E> out;
  out.rows = a.rows;
  out.cols = a.cols;
  out.row.resize(a.rows);
  for (uint32_t i = 0; i < a.rows; ++i) {
    const auto& ra = a.row[i];
    const auto& rb = b.row[i];
    auto& ro = out.row[i];
    size_t x = 0, y = 0;
    while (x < ra.size() || y < rb.size()) {
      if (y == rb.size() || (x < ra.size() && ra[x].first < rb[y].first)) {
        ro.push_back(ra[x++]);
      } else if (x == ra.size() || rb[y].first < ra[x].first) {
        auto v = subtract ? ops.neg(rb[y].second) : rb[y].second;
        if (!Ops::is_zero(v)) ro.emplace_back(rb[y].first, v);
        ++y;
      } else {
        auto v = subtract ? ops.sub(ra[x].second, rb[y].second)
                          : ops.add(ra[x].second, rb[y].second);
        if (!Ops::is_zero(v)) ro.emplace_back(ra[x].first, v);
        ++x, ++y;
      }
    }
  }
  return out;
}

template <class Ops>
SpRows<typename Ops::E> mul_impl(const Ops& ops, const SpRows<typename Ops::E>& a,
                                 const SpRows<typename Ops::E>& b) {
  using E = typename Ops::E;
  SpRows<E> out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.row.resize(a.rows);
  std::vector<E> acc(b.cols, ops.zero());
  std::vector<uint32_t> touched;
  for (uint32_t i = 0; i < a.rows; ++i) {
    touched.clear();
    for (const auto& [k, av] : a.row[i]) {
      for (const auto& [c, bv] : b.row[k]) {
        if (Ops::is_zero(acc[c])) touched.push_back(c);
        acc[c] = ops.add(acc[c], ops.mul(av, bv));
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& ro = out.row[i];
    for (uint32_t c : touched) {
      if (!Ops::is_zero(acc[c])) ro.emplace_back(c, acc[c]);
      acc[c] = ops.zero();
    }
  }
  return out;
}

template <class Ops>
SpRows<typename Ops::E> scale_impl(const Ops& ops, const SpRows<typename Ops::E>& a,
                                   int64_t s) {
  auto sv = ops.from_int(s);
  SpRows<typename Ops::E> out;
  out.rows = a.rows;
  out.cols = a.cols;
  out.row.resize(a.rows);
  if (Ops::is_zero(sv)) return out;
  for (uint32_t i = 0; i < a.rows; ++i) {
    out.row[i].reserve(a.row[i].size());
    for (const auto& [c, v] : a.row[i]) {
      auto w = ops.mul(v, sv);
      if (!Ops::is_zero(w)) out.row[i].emplace_back(c, w);
    }
  }
  return out;
}

template <class Ops>
SpRows<typename Ops::E> kron_impl(const Ops& ops, const SpRows<typename Ops::E>& a,
                                  const SpRows<typename Ops::E>& b) {
  SpRows<typename Ops::E> out;
  out.rows = a.rows * b.rows;
  out.cols = a.cols * b.cols;
  out.row.resize(out.rows);
  for (uint32_t i1 = 0; i1 < a.rows; ++i1)
    for (uint32_t i2 = 0; i2 < b.rows; ++i2) {
      auto& ro = out.row[static_cast<size_t>(i1) * b.rows + i2];
      ro.reserve(a.row[i1].size() * b.row[i2].size());
      for (const auto& [c1, v1] : a.row[i1])
        for (const auto& [c2, v2] : b.row[i2]) {
          auto w = ops.mul(v1, v2);
          if (!Ops::is_zero(w)) ro.emplace_back(c1 * b.cols + c2, w);
        }
    }
  return out;
}

}  // namespace

Matrix::Matrix(FieldSpec f, uint32_t rows, uint32_t cols) : f_(f) {
  if (f.is_prime_field()) {
    fp_.rows = rows;
    fp_.cols = cols;
    fp_.row.resize(rows);
  } else {
    q_.rows = rows;
    q_.cols = cols;
    q_.row.resize(rows);
  }
}

Matrix Matrix::wrap(FieldSpec f, SpRows<uint32_t> s) {
  Matrix m(f, 0, 0);
  if (!f.is_prime_field()) throw std::logic_error("wrap: field mismatch");
  m.fp_ = std::move(s);
  return m;
}

Matrix Matrix::wrap(FieldSpec f, SpRows<mpq_class> s) {
  Matrix m(f, 0, 0);
  if (f.is_prime_field()) throw std::logic_error("wrap: field mismatch");
  m.q_ = std::move(s);
  return m;
}

Matrix Matrix::from_triplets(FieldSpec f, uint32_t rows, uint32_t cols,
                             const std::vector<Triplet>& ts) {
  for (const auto& t : ts)
    if (t.r >= rows || t.c >= cols)
      throw std::out_of_range("from_triplets: entry out of range");
  if (f.is_prime_field()) {
    Fp fp(f.p);
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> acc;
    for (const auto& t : ts) {
      if (t.den % static_cast<int64_t>(f.p) == 0)
        throw std::invalid_argument("from_triplets: denominator not invertible");
      uint32_t v = fp.mul(fp.reduce(t.num), fp.inv(fp.reduce(t.den)));
      auto& slot = acc[{t.r, t.c}];
      slot = fp.add(slot, v);
    }
    Matrix m(f, rows, cols);
    for (const auto& [rc, v] : acc)
      if (v != 0) m.fp_.row[rc.first].emplace_back(rc.second, v);
    return m;
  }
  std::map<std::pair<uint32_t, uint32_t>, mpq_class> acc;
  for (const auto& t : ts) {
    if (t.den == 0) throw std::invalid_argument("from_triplets: zero denominator");
    acc[{t.r, t.c}] += mpq_class(t.num, t.den);
  }
  Matrix m(f, rows, cols);
  for (auto& [rc, v] : acc) {
    v.canonicalize();
    if (v != 0) m.q_.row[rc.first].emplace_back(rc.second, v);
  }
  return m;
}

Matrix Matrix::from_dense(FieldSpec f, const std::vector<std::vector<int64_t>>& rows) {
  uint32_t r = static_cast<uint32_t>(rows.size());
  uint32_t c = r == 0 ? 0 : static_cast<uint32_t>(rows[0].size());
  std::vector<Triplet> ts;
  for (uint32_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("from_dense: ragged rows");
    for (uint32_t j = 0; j < c; ++j)
      if (rows[i][j] != 0) ts.push_back({i, j, rows[i][j], 1});
  }
  return from_triplets(f, r, c, ts);
}

Matrix Matrix::identity(FieldSpec f, uint32_t n) {
  std::vector<Triplet> ts;
  ts.reserve(n);
  for (uint32_t i = 0; i < n; ++i) ts.push_back({i, i, 1, 1});
  return from_triplets(f, n, n, ts);
}

Matrix Matrix::row_vector(FieldSpec f, const std::vector<int64_t>& v) {
  std::vector<Triplet> ts;
  for (uint32_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) ts.push_back({0, j, v[j], 1});
  return from_triplets(f, 1, static_cast<uint32_t>(v.size()), ts);
}

Matrix Matrix::column_vector(FieldSpec f, const std::vector<int64_t>& v) {
  return row_vector(f, v).transpose();
}

uint32_t Matrix::rows() const { return f_.is_prime_field() ? fp_.rows : q_.rows; }
uint32_t Matrix::cols() const { return f_.is_prime_field() ? fp_.cols : q_.cols; }

uint64_t Matrix::nnz() const {
  uint64_t n = 0;
  if (f_.is_prime_field())
    for (const auto& r : fp_.row) n += r.size();
  else
    for (const auto& r : q_.row) n += r.size();
  return n;
}

bool Matrix::is_zero() const { return nnz() == 0; }

bool Matrix::operator==(const Matrix& o) const {
  if (!(f_ == o.f_) || rows() != o.rows() || cols() != o.cols()) return false;
  return f_.is_prime_field() ? fp_.row == o.fp_.row : q_.row == o.q_.row;
}

Matrix Matrix::transpose() const {
  return f_.is_prime_field() ? wrap(f_, transpose_impl(fp_ops(f_), fp_))
                             : wrap(f_, transpose_impl(QOps{}, q_));
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same_field(*this, o);
  if (rows() != o.rows() || cols() != o.cols())
    throw std::invalid_argument("matrix add: shape mismatch");
  return f_.is_prime_field() ? wrap(f_, add_impl(fp_ops(f_), fp_, o.fp_, false))
                             : wrap(f_, add_impl(QOps{}, q_, o.q_, false));
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same_field(*this, o);
  if (rows() != o.rows() || cols() != o.cols())
    throw std::invalid_argument("matrix sub: shape mismatch");
  return f_.is_prime_field() ? wrap(f_, add_impl(fp_ops(f_), fp_, o.fp_, true))
                             : wrap(f_, add_impl(QOps{}, q_, o.q_, true));
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same_field(*this, o);
  if (cols() != o.rows()) throw std::invalid_argument("matrix mul: shape mismatch");
  return f_.is_prime_field() ? wrap(f_, mul_impl(fp_ops(f_), fp_, o.fp_))
                             : wrap(f_, mul_impl(QOps{}, q_, o.q_));
}

Matrix Matrix::scaled(int64_t s) const {
  return f_.is_prime_field() ? wrap(f_, scale_impl(fp_ops(f_), fp_, s))
                             : wrap(f_, scale_impl(QOps{}, q_, s));
}

Matrix Matrix::kron(const Matrix& o) const {
  check_same_field(*this, o);
  return f_.is_prime_field() ? wrap(f_, kron_impl(fp_ops(f_), fp_, o.fp_))
                             : wrap(f_, kron_impl(QOps{}, q_, o.q_));
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  return block(a.field(), {a.rows()}, {a.cols(), b.cols()}, {{a, b}});
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
  return block(a.field(), {a.rows(), b.rows()}, {a.cols()}, {{a}, {b}});
}

Matrix Matrix::block(FieldSpec f, const std::vector<uint32_t>& row_dims,
                     const std::vector<uint32_t>& col_dims,
                     const std::vector<std::vector<Matrix>>& blocks) {
  uint64_t total_r = 0, total_c = 0;
  std::vector<uint32_t> roff, coff;
  for (uint32_t d : row_dims) {
    roff.push_back(static_cast<uint32_t>(total_r));
    total_r += d;
  }
  for (uint32_t d : col_dims) {
    coff.push_back(static_cast<uint32_t>(total_c));
    total_c += d;
  }
  Matrix out(f, static_cast<uint32_t>(total_r), static_cast<uint32_t>(total_c));
  auto place = [&](auto& dst, const auto& src_of) {
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      if (bi >= row_dims.size()) throw std::invalid_argument("block: too many row bands");
      for (size_t bj = 0; bj < blocks[bi].size(); ++bj) {
        const Matrix& blk = blocks[bi][bj];
        if (blk.rows() == 0 && blk.cols() == 0) continue;
        if (bj >= col_dims.size()) throw std::invalid_argument("block: too many col bands");
        if (!(blk.field() == f) || blk.rows() != row_dims[bi] || blk.cols() != col_dims[bj])
          throw std::invalid_argument("block: block shape/field mismatch");
        const auto& src = src_of(blk);
        for (uint32_t i = 0; i < src.rows; ++i) {
          auto& ro = dst.row[roff[bi] + i];
          for (const auto& [c, v] : src.row[i]) ro.emplace_back(coff[bj] + c, v);
        }
      }
    }
    for (auto& r : dst.row) std::sort(r.begin(), r.end());
  };
  if (f.is_prime_field())
    place(out.fp_, [](const Matrix& m) -> const SpRows<uint32_t>& { return m.fpdata(); });
  else
    place(out.q_, [](const Matrix& m) -> const SpRows<mpq_class>& { return m.qdata(); });
  return out;
}

Matrix Matrix::row(uint32_t r) const { return submatrix_rows({r}); }

Matrix Matrix::submatrix_rows(const std::vector<uint32_t>& which) const {
  Matrix out(f_, static_cast<uint32_t>(which.size()), cols());
  for (size_t i = 0; i < which.size(); ++i) {
    if (which[i] >= rows()) throw std::out_of_range("submatrix_rows");
    if (f_.is_prime_field())
      out.fp_.row[i] = fp_.row[which[i]];
    else
      out.q_.row[i] = q_.row[which[i]];
  }
  return out;
}

uint32_t Matrix::fp_at(uint32_t r, uint32_t c) const {
  if (!f_.is_prime_field()) throw std::logic_error("fp_at on rational matrix");
  for (const auto& [cc, v] : fp_.row.at(r))
    if (cc == c) return v;
  return 0;
}

mpq_class Matrix::q_at(uint32_t r, uint32_t c) const {
  if (f_.is_prime_field())
    return mpq_class(static_cast<long>(fp_at(r, c)));
  for (const auto& [cc, v] : q_.row.at(r))
    if (cc == c) return v;
  return mpq_class(0);
}

void Matrix::check_invariants() const {
  auto check = [&](const auto& s, auto is_zero_v) {
    if (s.row.size() != s.rows) throw std::logic_error("matrix: row count mismatch");
    for (const auto& r : s.row) {
      for (size_t k = 0; k < r.size(); ++k) {
        if (r[k].first >= s.cols) throw std::logic_error("matrix: column out of range");
        if (is_zero_v(r[k].second)) throw std::logic_error("matrix: stored zero");
        if (k && r[k - 1].first >= r[k].first)
          throw std::logic_error("matrix: columns not strictly increasing");
      }
    }
  };
  if (f_.is_prime_field())
    check(fp_, [](uint32_t v) { return v == 0; });
  else
    check(q_, [](const mpq_class& v) { return v == 0; });
}

}  // namespace homalg
