#include "homalg/complex.hpp"

#include <algorithm>
#include <variant>

#include "homalg/elim.hpp"

namespace homalg {

ChainComplex ChainComplex::build(FieldSpec f, int lo, std::vector<uint32_t> dims,
                                 std::vector<Matrix> diffs) {
  if (!dims.empty() && diffs.size() + 1 != dims.size())
    throw std::invalid_argument("ChainComplex: need one differential per adjacent pair");
  ChainComplex c;
  c.field_ = f;
  c.lo_ = lo;
  c.dims_ = std::move(dims);
  c.d_ = std::move(diffs);
  for (size_t k = 0; k < c.d_.size(); ++k) {
    if (!(c.d_[k].field() == f)) throw std::invalid_argument("ChainComplex: field mismatch");
    if (c.d_[k].rows() != c.dims_[k] || c.d_[k].cols() != c.dims_[k + 1])
      throw std::invalid_argument("ChainComplex: differential shape mismatch");
    if (k > 0 && !(c.d_[k - 1] * c.d_[k]).is_zero())
      throw CompositeNonzero("ChainComplex: d^2 != 0 at degree " +
                             std::to_string(lo + 1 + static_cast<int>(k)));
  }
  return c;
}

uint32_t ChainComplex::dim(int n) const {
  if (n < lo_ || n > hi()) return 0;
  return dims_[static_cast<size_t>(n - lo_)];
}

Matrix ChainComplex::diff(int n) const {
  if (n <= lo_ || n > hi()) return Matrix(field_, dim(n - 1), dim(n));
  return d_[static_cast<size_t>(n - lo_ - 1)];
}

std::vector<uint32_t> ChainComplex::homology_dims(int from, int to) const {
  if (from < lo_ || to > hi())
    throw DegreeOutOfRange("homology_dims: requested degrees [" + std::to_string(from) +
                           "," + std::to_string(to) + "] outside stored range [" +
                           std::to_string(lo_) + "," + std::to_string(hi()) + "]");
  std::vector<uint32_t> out;
  if (from > to) return out;
  std::vector<uint32_t> rk(static_cast<size_t>(to - from) + 2);
  for (int n = from; n <= to + 1; ++n) {
    if (n > from && !(diff(n - 1) * diff(n)).is_zero())
      throw CompositeNonzero("homology_dims: d^2 != 0 at degree " + std::to_string(n));
    rk[static_cast<size_t>(n - from)] = rank(diff(n));
  }
  for (int n = from; n <= to; ++n)
    out.push_back(dim(n) - rk[static_cast<size_t>(n - from)] -
                  rk[static_cast<size_t>(n - from) + 1]);
  return out;
}

const Matrix& ComplexMap::level(int n) const {
  if (n < lo || n > hi()) throw DegreeOutOfRange("ComplexMap::level");
  return levels[static_cast<size_t>(n - lo)];
}

void ComplexMap::validate(const ChainComplex& X, const ChainComplex& Y) const {
  for (int n = lo; n <= hi(); ++n) {
    const Matrix& f = level(n);
    if (f.rows() != Y.dim(n) || f.cols() != X.dim(n))
      throw std::invalid_argument("ComplexMap: shape mismatch at degree " + std::to_string(n));
    if (n > lo) {
      // f_{n-1} d_n = d_n f_n
      if (!(level(n - 1) * X.diff(n) == Y.diff(n) * f))
        throw std::invalid_argument("ComplexMap: does not commute with d at degree " +
                                    std::to_string(n));
    }
  }
}

namespace {

template <class Ops>
struct HB {
  Ops ops;
  uint32_t ambient;
  uint32_t h = 0;
  Eliminator<Ops> red;  // boundary rows + chosen representatives, tagged
  std::vector<typename Eliminator<Ops>::Row> reps;

  HB(Ops o, uint32_t amb, uint32_t hmax) : ops(o), ambient(amb), red(o, amb + hmax, amb) {}
};

template <class Ops>
HB<Ops> build_basis(Ops ops, const SpRows<typename Ops::E>& d_out,
                    const SpRows<typename Ops::E>& d_in_t) {
  using E = typename Ops::E;
  uint32_t ambient = d_out.cols;
  // Echelon of the boundary space (rows of d_in transposed).
  Eliminator<Ops> bnd(ops, ambient);
  // Boundary generator lists are often highly redundant; keep the echelon
  // reduced so dependent generators eliminate without long cascades.
  bnd.set_auto_reduce(8192);
  for (const auto& r : d_in_t.row) bnd.add(r);
  uint32_t rank_b = bnd.rank();
  // Reduced echelon of d_out, for back-substituted kernel vectors.
  Eliminator<Ops> out_el(ops, d_out.cols == 0 ? 0 : d_out.cols);
  for (const auto& r : d_out.row) out_el.add(r);
  out_el.jordanize();
  uint32_t rank_out = out_el.rank();
  uint32_t zdim = ambient - rank_out;
  if (zdim < rank_b)
    throw CompositeNonzero("HomologyBasis: boundaries do not lie in the cycles");
  uint32_t h = zdim - rank_b;

  HB<Ops> hb(ops, ambient, h);
  hb.red.absorb(std::move(bnd));

  // Per-free-column lists of (pivot column, value) from the reduced echelon.
  std::vector<bool> is_piv(ambient, false);
  for (uint32_t c : out_el.pivot_cols()) is_piv[c] = true;
  std::vector<std::vector<std::pair<uint32_t, E>>> col_entries(ambient);
  const auto& piv_cols = out_el.pivot_cols();
  for (size_t i = 0; i < out_el.rows().size(); ++i)
    for (const auto& [c, v] : out_el.rows()[i])
      if (!is_piv[c]) col_entries[c].emplace_back(piv_cols[i], v);

  for (uint32_t f = 0; f < ambient && hb.reps.size() < h; ++f) {
    if (is_piv[f]) continue;
    typename Eliminator<Ops>::Row kf;
    for (const auto& [pc, v] : col_entries[f]) kf.emplace_back(pc, ops.neg(v));
    kf.emplace_back(f, ops.one());
    std::sort(kf.begin(), kf.end());
    auto tagged = kf;
    tagged.emplace_back(ambient + static_cast<uint32_t>(hb.reps.size()), ops.one());
    auto red = hb.red.add(tagged);
    if (!red.empty() && red.front().first < ambient) hb.reps.push_back(std::move(kf));
  }
  hb.h = h;
  if (hb.reps.size() != h)
    throw std::logic_error("HomologyBasis: representative search fell short");
  return hb;
}

}  // namespace

struct HomologyBasis::Impl {
  std::variant<HB<FpOps>, HB<QOps>> v;
  explicit Impl(std::variant<HB<FpOps>, HB<QOps>> vv) : v(std::move(vv)) {}
};

HomologyBasis::HomologyBasis(const ChainComplex& C, int n) : n_(n) {
  if (n < C.lo() || n > C.hi()) throw DegreeOutOfRange("HomologyBasis: degree out of range");
  Matrix d_out = C.diff(n);
  Matrix d_in_t = C.diff(n + 1).transpose();
  if (!(C.diff(n) * C.diff(n + 1)).is_zero())
    throw CompositeNonzero("HomologyBasis: d^2 != 0");
  using V = std::variant<HB<FpOps>, HB<QOps>>;
  if (C.field().is_prime_field())
    impl_ = std::make_unique<Impl>(V(build_basis(FpOps(C.field().p), d_out.fpdata(),
                                                 d_in_t.fpdata())));
  else
    impl_ = std::make_unique<Impl>(V(build_basis(QOps{}, d_out.qdata(), d_in_t.qdata())));
}

HomologyBasis::~HomologyBasis() = default;
HomologyBasis::HomologyBasis(HomologyBasis&&) noexcept = default;

uint32_t HomologyBasis::dim() const {
  return std::visit([](const auto& hb) { return hb.h; }, impl_->v);
}

Matrix HomologyBasis::representatives() const {
  return std::visit(
      [](const auto& hb) {
        using E = std::decay_t<decltype(hb.ops.zero())>;
        SpRows<E> s;
        s.rows = static_cast<uint32_t>(hb.reps.size());
        s.cols = hb.ambient;
        s.row.assign(hb.reps.begin(), hb.reps.end());
        if constexpr (std::is_same_v<E, uint32_t>)
          return Matrix::wrap(FieldSpec::gf(static_cast<uint32_t>(hb.ops.f.p)), std::move(s));
        else
          return Matrix::wrap(FieldSpec::rationals(), std::move(s));
      },
      impl_->v);
}

Matrix HomologyBasis::express(const Matrix& cycle_cols) const {
  // reduce() reuses scratch buffers inside the eliminator; logically const.
  auto& var = const_cast<Impl*>(impl_.get())->v;
  return std::visit(
      [&](auto& hb) {
        using E = std::decay_t<decltype(hb.ops.zero())>;
        const SpRows<E>* data;
        if constexpr (std::is_same_v<E, uint32_t>)
          data = &cycle_cols.fpdata();
        else
          data = &cycle_cols.qdata();
        if (data->rows != hb.ambient)
          throw std::invalid_argument("HomologyBasis::express: wrong ambient dimension");
        // columns of the input
        SpRows<E> cols_as_rows;
        cols_as_rows.rows = data->cols;
        cols_as_rows.cols = data->rows;
        cols_as_rows.row.resize(data->cols);
        for (uint32_t i = 0; i < data->rows; ++i)
          for (const auto& [c, v] : data->row[i]) cols_as_rows.row[c].emplace_back(i, v);
        SpRows<E> out;
        out.rows = hb.h;
        out.cols = data->cols;
        out.row.resize(hb.h);
        for (uint32_t j = 0; j < cols_as_rows.rows; ++j) {
          auto red = hb.red.reduce(cols_as_rows.row[j]);
          for (const auto& [c, v] : red) {
            if (c < hb.ambient)
              throw std::invalid_argument(
                  "HomologyBasis::express: input is not a cycle of this complex");
            out.row[c - hb.ambient].emplace_back(j, hb.ops.neg(v));
          }
        }
        for (auto& r : out.row) std::sort(r.begin(), r.end());
        if constexpr (std::is_same_v<E, uint32_t>)
          return Matrix::wrap(FieldSpec::gf(static_cast<uint32_t>(hb.ops.f.p)), std::move(out));
        else
          return Matrix::wrap(FieldSpec::rationals(), std::move(out));
      },
      var);
}

Matrix induced_map_on_homology(const ComplexMap& f, const ChainComplex& X,
                               const ChainComplex& Y, int n) {
  if (n < f.lo || n > f.hi()) throw DegreeOutOfRange("induced_map_on_homology");
  f.validate(X, Y);
  HomologyBasis hx(X, n);
  HomologyBasis hy(Y, n);
  Matrix mapped = f.level(n) * hx.representatives().transpose();
  return hy.express(mapped);
}

void Bicomplex::validate() const {
  if (dims.size() != Q + 1) throw std::invalid_argument("Bicomplex: dims grid shape");
  for (uint32_t q = 0; q <= Q; ++q)
    if (dims[q].size() != N + 1) throw std::invalid_argument("Bicomplex: dims grid shape");
  auto vshape = [&](uint32_t q, uint32_t n) {
    const Matrix& m = vert.at(q).at(n);
    if (m.rows() != dims[q][n - 1] || m.cols() != dims[q][n])
      throw std::invalid_argument("Bicomplex: vertical shape at (" + std::to_string(q) + "," +
                                  std::to_string(n) + ")");
  };
  auto hshape = [&](uint32_t q, uint32_t n) {
    const Matrix& m = horiz.at(q).at(n);
    if (m.rows() != dims[q - 1][n] || m.cols() != dims[q][n])
      throw std::invalid_argument("Bicomplex: horizontal shape at (" + std::to_string(q) + "," +
                                  std::to_string(n) + ")");
  };
  for (uint32_t q = 0; q <= Q; ++q)
    for (uint32_t n = 1; n <= N; ++n) {
      vshape(q, n);
      if (n >= 2 && !(vert[q][n - 1] * vert[q][n]).is_zero())
        throw CompositeNonzero("Bicomplex: vertical d^2 != 0 in column " + std::to_string(q));
    }
  for (uint32_t q = 1; q <= Q; ++q)
    for (uint32_t n = 0; n <= N; ++n) {
      hshape(q, n);
      if (q >= 2 && !(horiz[q - 1][n] * horiz[q][n]).is_zero())
        throw CompositeNonzero("Bicomplex: horizontal d^2 != 0 in row " + std::to_string(n));
      if (n >= 1 && !(vert[q - 1][n] * horiz[q][n] == horiz[q][n - 1] * vert[q][n]))
        throw std::invalid_argument("Bicomplex: square does not commute at (" +
                                    std::to_string(q) + "," + std::to_string(n) + ")");
    }
}

ChainComplex total_complex(const Bicomplex& b, int max_degree) {
  struct Cell {
    uint32_t q, n;
  };
  auto cells_of = [&](int m) {
    std::vector<Cell> cs;
    for (uint32_t q = 0; q <= b.Q && static_cast<int>(q) <= m; ++q) {
      uint32_t n = static_cast<uint32_t>(m) - q;
      if (n <= b.N) cs.push_back({q, n});
    }
    return cs;
  };
  std::vector<uint32_t> tdims;
  std::vector<Matrix> tdiffs;
  std::vector<Cell> prev = cells_of(0);
  auto band_dims = [&](const std::vector<Cell>& cs) {
    std::vector<uint32_t> d;
    for (const auto& c : cs) d.push_back(b.dim(c.q, c.n));
    return d;
  };
  uint32_t total0 = 0;
  for (const auto& c : prev) total0 += b.dim(c.q, c.n);
  tdims.push_back(total0);
  for (int m = 1; m <= max_degree; ++m) {
    std::vector<Cell> cur = cells_of(m);
    std::vector<uint32_t> rd = band_dims(prev), cd = band_dims(cur);
    auto band_index = [](const std::vector<Cell>& cs, uint32_t q) -> int64_t {
      for (size_t i = 0; i < cs.size(); ++i)
        if (cs[i].q == q) return static_cast<int64_t>(i);
      return -1;
    };
    std::vector<std::vector<Matrix>> blocks(rd.size(), std::vector<Matrix>(cd.size()));
    for (size_t j = 0; j < cur.size(); ++j) {
      auto [q, n] = cur[j];
      if (n >= 1) {
        int64_t i = band_index(prev, q);
        if (i >= 0) blocks[static_cast<size_t>(i)][j] = b.vert[q][n];
      }
      if (q >= 1) {
        int64_t i = band_index(prev, q - 1);
        if (i >= 0) {
          Matrix h = b.horiz[q][n];
          if (n % 2 == 1) h = h.negated();
          blocks[static_cast<size_t>(i)][j] = h;
        }
      }
    }
    tdiffs.push_back(Matrix::block(b.field, rd, cd, blocks));
    uint32_t total = 0;
    for (uint32_t d : cd) total += d;
    tdims.push_back(total);
    prev = std::move(cur);
  }
  return ChainComplex::build(b.field, 0, std::move(tdims), std::move(tdiffs));
}

}  // namespace homalg
