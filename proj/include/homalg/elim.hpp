#pragma once

// Templated sparse Gaussian elimination engine shared by the GF(p) and Q
// code paths.  Not part of the public surface; library internals and tests
// include it directly.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <queue>
#include <type_traits>
#include <vector>

#include "homalg/field.hpp"

namespace homalg {

struct FpOps {
  using E = uint32_t;
  Fp f;
  explicit FpOps(uint32_t p) : f(p) {}
  static bool is_zero(E a) { return a == 0; }
  E zero() const { return 0; }
  E one() const { return 1; }
  E add(E a, E b) const { return f.add(a, b); }
  E sub(E a, E b) const { return f.sub(a, b); }
  E mul(E a, E b) const { return f.mul(a, b); }
  E neg(E a) const { return f.neg(a); }
  E inv(E a) const { return f.inv(a); }
  E from_int(int64_t n) const { return f.reduce(n); }
};

struct QOps {
  using E = mpq_class;
  static bool is_zero(const E& a) { return a == 0; }
  E zero() const { return E(0); }
  E one() const { return E(1); }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E inv(const E& a) const { return 1 / a; }
  E from_int(int64_t n) const { return E(n); }
};

namespace detail {

// dst[i] <- (dst[i] + coeff * src[i]) mod P, all values already in [0, P).
// For P <= 7 the intermediate fits a byte, so the loop autovectorizes.
template <uint32_t P>
inline void axpy_mod(uint8_t* dst, const uint8_t* src, size_t n, uint8_t coeff) {
  for (size_t i = 0; i < n; ++i)
    dst[i] = static_cast<uint8_t>(
        static_cast<uint8_t>(dst[i] + coeff * src[i]) % P);
}

}  // namespace detail

// Incremental row-echelon form.  Rows are fed in order; each incoming row is
// fully reduced against the pivot rows accumulated so far, and if it survives
// it becomes a new pivot row (leading coefficient normalized to 1, pivot at
// its leading column).  This realizes the deterministic pivot rule: smallest
// row index first, then smallest column index within the row.
//
// Columns >= pivot_limit are "augmentation" columns: they are carried along
// in the arithmetic but never used as pivots.  This supports solving and
// expressing homology classes in terms of chosen representatives.
//
// For GF(p) with p in {2,3,5,7} and wide row spaces, pivot rows are stored
// densely (bit-packed for p = 2, bytes otherwise) so that each elimination is
// a vectorized pass instead of a merge; the pivot rule and feed order are
// unchanged, so the resulting echelon, ranks, and reductions are identical to
// the sparse path.
template <class Ops>
class Eliminator {
 public:
  using E = typename Ops::E;
  using Row = std::vector<std::pair<uint32_t, E>>;

  Eliminator(Ops ops, uint32_t total_cols, uint32_t pivot_limit)
      : ops_(ops),
        cols_(total_cols),
        pivot_limit_(pivot_limit),
        pivot_of_col_(total_cols, -1),
        acc_(total_cols, ops.zero()) {
    if constexpr (std::is_same_v<Ops, FpOps>) {
      uint64_t p = ops_.f.p;
      if (total_cols >= 1024 && (p == 2 || p == 3 || p == 5 || p == 7)) {
        uint64_t bytes_per_row =
            p == 2 ? (static_cast<uint64_t>(total_cols) + 63) / 64 * 8 : total_cols;
        // Cap the worst-case dense storage (rank is at most pivot_limit).
        if (static_cast<uint64_t>(pivot_limit) * bytes_per_row <= (uint64_t(5) << 29))
          dense_p_ = static_cast<uint32_t>(p);
      }
      init_scratch();
    }
  }

  Eliminator(Ops ops, uint32_t total_cols)
      : Eliminator(ops, total_cols, total_cols) {}

  // Fully reduce `r` against the current pivot rows.  Result is sorted by
  // column and zero-free.
  Row reduce(const Row& r) {
    if constexpr (std::is_same_v<Ops, FpOps>) {
      if (dense_p_ == 2) return reduce_bits(r);
      if (dense_p_ != 0) return reduce_bytes(r);
    }
    std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> heap;
    for (const auto& [c, v] : r) {
      acc_[c] = ops_.add(acc_[c], v);
      heap.push(c);
    }
    Row out;
    while (!heap.empty()) {
      uint32_t c = heap.top();
      heap.pop();
      while (!heap.empty() && heap.top() == c) heap.pop();
      E v = acc_[c];
      acc_[c] = ops_.zero();
      if (Ops::is_zero(v)) continue;
      int64_t pr = c < pivot_limit_ ? pivot_of_col_[c] : -1;
      if (pr < 0) {
        out.emplace_back(c, v);
        continue;
      }
      const Row& prow = rows_[static_cast<size_t>(pr)];
      // prow has leading entry 1 at column c; eliminate.
      for (size_t k = 1; k < prow.size(); ++k) {
        uint32_t cc = prow[k].first;
        E before = acc_[cc];
        acc_[cc] = ops_.sub(before, ops_.mul(v, prow[k].second));
        if (Ops::is_zero(before)) heap.push(cc);
      }
    }
    return out;
  }

  // Reduce and, if the result has a nonzero entry among pivot-eligible
  // columns, normalize and store it as a new pivot row.  Returns the reduced
  // row (before normalization).
  Row add(const Row& r) {
    if (auto_reduce_every_ != 0 && ++feeds_ % auto_reduce_every_ == 0 &&
        !pivot_cols_.empty())
      jordanize();
    Row red = reduce(r);
    if (!red.empty() && red.front().first < pivot_limit_) {
      uint32_t lead = red.front().first;
      pivot_of_col_[lead] = static_cast<int64_t>(pivot_cols_.size());
      pivot_cols_.push_back(lead);
      if (dense_p_ == 0) {
        Row stored = red;
        E lead_inv = ops_.inv(stored.front().second);
        for (auto& [c, v] : stored) v = ops_.mul(v, lead_inv);
        rows_.push_back(std::move(stored));
      } else {
        store_dense(red);
        rows_stale_ = true;
      }
    }
    return red;
  }

  // Re-reduce the stored rows every `every` feeds.  Keeping the echelon close
  // to reduced row-echelon form bounds elimination cascades when many incoming
  // rows are dependent on earlier ones; the row space, pivot columns, and all
  // reduce() results are unchanged.
  void set_auto_reduce(uint32_t every) { auto_reduce_every_ = every; }

  uint32_t rank() const { return static_cast<uint32_t>(pivot_cols_.size()); }
  const std::vector<uint32_t>& pivot_cols() const { return pivot_cols_; }
  const std::vector<Row>& rows() const {
    if constexpr (std::is_same_v<Ops, FpOps>) {
      if (rows_stale_) materialize_rows();
    }
    return rows_;
  }
  bool is_pivot_col(uint32_t c) const {
    return c < pivot_limit_ && pivot_of_col_[c] >= 0;
  }
  int64_t pivot_row_of(uint32_t c) const { return pivot_of_col_[c]; }

  // Transfer the echelon of `other` into this (empty) eliminator, widening
  // rows to this eliminator's column count.  Equivalent to re-feeding
  // other.rows() in order (no eliminations occur since the rows are already
  // mutually reduced at their pivot columns), but without materializing.
  void absorb(Eliminator&& other) {
    if (!pivot_cols_.empty() || other.cols_ > cols_ || other.pivot_limit_ > pivot_limit_)
      throw std::invalid_argument("Eliminator::absorb: incompatible states");
    dense_p_ = other.dense_p_;
    rows_ = std::move(other.rows_);
    drows8_ = std::move(other.drows8_);
    drows1_ = std::move(other.drows1_);
    rows_stale_ = other.rows_stale_;
    pivot_cols_ = std::move(other.pivot_cols_);
    for (uint32_t c = 0; c < other.cols_; ++c) pivot_of_col_[c] = other.pivot_of_col_[c];
    if constexpr (std::is_same_v<Ops, FpOps>) {
      init_scratch();
      if (dense_p_ == 2) {
        size_t nw = words();
        for (auto& row : drows1_) row.resize(nw, 0);
      } else if (dense_p_ != 0) {
        for (auto& row : drows8_) row.resize(cols_, 0);
      }
    }
  }

  // Back-eliminate so the stored rows become a reduced row-echelon form:
  // every pivot column appears in exactly one row.
  void jordanize() {
    if constexpr (std::is_same_v<Ops, FpOps>) {
      if (dense_p_ != 0) {
        jordanize_dense();
        return;
      }
    }
    std::vector<size_t> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return pivot_cols_[a] > pivot_cols_[b];
    });
    for (size_t oi = 0; oi < order.size(); ++oi) {
      size_t i = order[oi];
      // Reduce row i against all pivot rows with larger pivot column.  The
      // leading entry of row i is its own pivot and survives untouched.
      Row& r = rows_[i];
      Row tail(r.begin() + 1, r.end());
      bool dirty = false;
      for (const auto& [c, v] : tail)
        if (is_pivot_col(c) && !Ops::is_zero(v)) {
          dirty = true;
          break;
        }
      if (!dirty) continue;
      Row red = reduce(tail);
      r.resize(1);
      r.insert(r.end(), red.begin(), red.end());
    }
    std::sort(rows_.begin(), rows_.end(),
              [](const Row& a, const Row& b) { return a.front().first < b.front().first; });
    std::sort(pivot_cols_.begin(), pivot_cols_.end());
    for (size_t i = 0; i < rows_.size(); ++i)
      pivot_of_col_[rows_[i].front().first] = static_cast<int64_t>(i);
  }

 private:
  size_t words() const { return (static_cast<size_t>(cols_) + 63) / 64; }

  void init_scratch() {
    if (dense_p_ == 2)
      scratch1_.assign(words(), 0);
    else if (dense_p_ != 0)
      scratch8_.assign(cols_, 0);
  }

  Row reduce_bytes(const Row& r) {
    uint32_t minc = cols_;
    if constexpr (std::is_same_v<Ops, FpOps>) {
      for (const auto& [c, v] : r) {
        scratch8_[c] = static_cast<uint8_t>(ops_.add(scratch8_[c], static_cast<uint32_t>(v)));
        minc = std::min(minc, c);
      }
    }
    Row out;
    for (uint32_t c = minc; c < cols_; ++c) {
      uint8_t v = scratch8_[c];
      if (v == 0) continue;
      scratch8_[c] = 0;
      int64_t pr = c < pivot_limit_ ? pivot_of_col_[c] : -1;
      if (pr < 0) {
        out.emplace_back(c, static_cast<E>(v));
        continue;
      }
      const uint8_t* src = drows8_[static_cast<size_t>(pr)].data();
      uint8_t coeff = static_cast<uint8_t>(dense_p_ - v);
      size_t n = cols_ - c - 1;
      switch (dense_p_) {
        case 3: detail::axpy_mod<3>(scratch8_.data() + c + 1, src + c + 1, n, coeff); break;
        case 5: detail::axpy_mod<5>(scratch8_.data() + c + 1, src + c + 1, n, coeff); break;
        default: detail::axpy_mod<7>(scratch8_.data() + c + 1, src + c + 1, n, coeff); break;
      }
    }
    return out;
  }

  Row reduce_bits(const Row& r) {
    size_t nw = words();
    for (const auto& [c, v] : r)
      if ((static_cast<uint32_t>(v) & 1u) != 0)
        scratch1_[c >> 6] ^= uint64_t(1) << (c & 63);
    Row out;
    for (size_t w = 0; w < nw; ++w) {
      while (scratch1_[w] != 0) {
        uint32_t c = static_cast<uint32_t>((w << 6) +
                                           static_cast<uint32_t>(__builtin_ctzll(scratch1_[w])));
        int64_t pr = c < pivot_limit_ ? pivot_of_col_[c] : -1;
        if (pr < 0) {
          out.emplace_back(c, static_cast<E>(1u));
          scratch1_[w] &= ~(uint64_t(1) << (c & 63));
          continue;
        }
        const uint64_t* src = drows1_[static_cast<size_t>(pr)].data();
        for (size_t k = w; k < nw; ++k) scratch1_[k] ^= src[k];
      }
    }
    return out;
  }

  // Store `red` (already fully reduced, lead < pivot_limit) as a dense row,
  // normalized so the leading coefficient is 1.
  void store_dense(const Row& red) {
    if constexpr (std::is_same_v<Ops, FpOps>) {
      if (dense_p_ == 2) {
        std::vector<uint64_t> row(words(), 0);
        for (const auto& [c, v] : red)
          row[c >> 6] |= uint64_t(1) << (c & 63);
        drows1_.push_back(std::move(row));
      } else {
        std::vector<uint8_t> row(cols_, 0);
        uint32_t inv = ops_.inv(static_cast<uint32_t>(red.front().second));
        for (const auto& [c, v] : red)
          row[c] = static_cast<uint8_t>(ops_.mul(static_cast<uint32_t>(v), inv));
        drows8_.push_back(std::move(row));
      }
    }
  }

  Row extract_dense(size_t i) const {
    Row r;
    if (dense_p_ == 2) {
      const auto& row = drows1_[i];
      for (size_t w = 0; w < row.size(); ++w) {
        uint64_t bits = row[w];
        while (bits != 0) {
          uint32_t c = static_cast<uint32_t>((w << 6) +
                                             static_cast<uint32_t>(__builtin_ctzll(bits)));
          bits &= bits - 1;
          r.emplace_back(c, static_cast<E>(1u));
        }
      }
    } else {
      const auto& row = drows8_[i];
      for (uint32_t c = 0; c < cols_; ++c)
        if (row[c] != 0) r.emplace_back(c, static_cast<E>(row[c]));
    }
    return r;
  }

  void materialize_rows() const {
    rows_.clear();
    rows_.reserve(pivot_cols_.size());
    for (size_t i = 0; i < pivot_cols_.size(); ++i) rows_.push_back(extract_dense(i));
    rows_stale_ = false;
  }

  void jordanize_dense() {
    std::vector<size_t> order(pivot_cols_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return pivot_cols_[a] > pivot_cols_[b];
    });
    for (size_t i : order) {
      Row full = extract_dense(i);
      Row tail(full.begin() + 1, full.end());
      bool dirty = false;
      for (const auto& [c, v] : tail)
        if (is_pivot_col(c)) {
          dirty = true;
          break;
        }
      if (!dirty) continue;
      Row red = reduce(tail);
      Row stored;
      stored.push_back(full.front());
      stored.insert(stored.end(), red.begin(), red.end());
      if (dense_p_ == 2) {
        auto& row = drows1_[i];
        std::fill(row.begin(), row.end(), 0);
        for (const auto& [c, v] : stored) row[c >> 6] |= uint64_t(1) << (c & 63);
      } else {
        auto& row = drows8_[i];
        std::fill(row.begin(), row.end(), 0);
        for (const auto& [c, v] : stored)
          row[c] = static_cast<uint8_t>(static_cast<uint32_t>(v));
      }
    }
    // Reorder storage by pivot column, matching the sparse convention.
    std::vector<size_t> perm(pivot_cols_.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return pivot_cols_[a] < pivot_cols_[b]; });
    if (dense_p_ == 2) {
      std::vector<std::vector<uint64_t>> nd(perm.size());
      for (size_t i = 0; i < perm.size(); ++i) nd[i] = std::move(drows1_[perm[i]]);
      drows1_ = std::move(nd);
    } else {
      std::vector<std::vector<uint8_t>> nd(perm.size());
      for (size_t i = 0; i < perm.size(); ++i) nd[i] = std::move(drows8_[perm[i]]);
      drows8_ = std::move(nd);
    }
    std::vector<uint32_t> npc(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) npc[i] = pivot_cols_[perm[i]];
    pivot_cols_ = std::move(npc);
    for (size_t i = 0; i < pivot_cols_.size(); ++i)
      pivot_of_col_[pivot_cols_[i]] = static_cast<int64_t>(i);
    rows_stale_ = true;
  }

  Ops ops_;
  uint32_t cols_;
  uint32_t pivot_limit_;
  uint32_t dense_p_ = 0;  // 0 = sparse rows; otherwise the dense modulus
  uint32_t auto_reduce_every_ = 0;
  uint64_t feeds_ = 0;
  mutable std::vector<Row> rows_;
  mutable bool rows_stale_ = false;
  std::vector<std::vector<uint8_t>> drows8_;
  std::vector<std::vector<uint64_t>> drows1_;
  std::vector<uint8_t> scratch8_;
  std::vector<uint64_t> scratch1_;
  std::vector<uint32_t> pivot_cols_;
  std::vector<int64_t> pivot_of_col_;
  std::vector<E> acc_;
};

}  // namespace homalg
