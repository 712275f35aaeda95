#include "homalg/algebra.hpp"

#include <algorithm>
#include <map>

namespace homalg {

namespace {

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Matrix unit_column(FieldSpec f, uint32_t n, uint32_t idx) {
  return Matrix::from_triplets(f, n, 1, {{idx, 0, 1, 1}});
}

// sparse column entries of m's column c
std::vector<std::pair<uint32_t, int64_t>> column_entries(const Matrix& m, uint32_t c) {
  std::vector<std::pair<uint32_t, int64_t>> out;
  if (m.field().is_prime_field()) {
    const auto& d = m.fpdata();
    for (uint32_t i = 0; i < d.rows; ++i)
      for (const auto& [cc, v] : d.row[i])
        if (cc == c) out.emplace_back(i, static_cast<int64_t>(v));
  } else {
    throw std::logic_error("column_entries: prime fields only");
  }
  return out;
}

}  // namespace

Matrix block_swap(FieldSpec f, uint32_t d1, uint32_t d2) {
  std::vector<Triplet> ts;
  ts.reserve(static_cast<size_t>(d1) * d2);
  for (uint32_t i = 0; i < d1; ++i)
    for (uint32_t j = 0; j < d2; ++j) ts.push_back({j * d1 + i, i * d2 + j, 1, 1});
  return Matrix::from_triplets(f, d1 * d2, d1 * d2, ts);
}

void Algebra::validate() const {
  if (mult.rows() != n || mult.cols() != n * n || unit.rows() != n || unit.cols() != 1)
    throw std::invalid_argument("Algebra: shape mismatch");
  Matrix id = Matrix::identity(field, n);
  if (!(mult * mult.kron(id) == mult * id.kron(mult)))
    throw std::invalid_argument("Algebra: multiplication is not associative");
  if (!(mult * unit.kron(id) == id) || !(mult * id.kron(unit) == id))
    throw std::invalid_argument("Algebra: unit laws fail");
}

Matrix Algebra::basis_product(uint32_t i, uint32_t j) const {
  return mult * unit_column(field, n * n, i * n + j);
}

Algebra group_algebra(FieldSpec f, const std::vector<std::vector<uint32_t>>& table) {
  uint32_t g = static_cast<uint32_t>(table.size());
  if (g == 0) throw std::invalid_argument("group_algebra: empty table");
  for (const auto& row : table) {
    if (row.size() != g) throw std::invalid_argument("group_algebra: table not square");
    for (uint32_t v : row)
      if (v >= g) throw std::invalid_argument("group_algebra: entry out of range");
  }
  // identity element
  uint32_t e = g;
  for (uint32_t cand = 0; cand < g; ++cand) {
    bool ok = true;
    for (uint32_t a = 0; a < g; ++a)
      if (table[cand][a] != a || table[a][cand] != a) ok = false;
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e == g) throw std::invalid_argument("group_algebra: no identity element");
  for (uint32_t a = 0; a < g; ++a)
    for (uint32_t b = 0; b < g; ++b)
      for (uint32_t c = 0; c < g; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("group_algebra: table not associative");
  for (uint32_t a = 0; a < g; ++a) {
    bool has_inv = false;
    for (uint32_t b = 0; b < g; ++b)
      if (table[a][b] == e) has_inv = true;
    if (!has_inv) throw std::invalid_argument("group_algebra: missing inverse");
  }
  Algebra A;
  A.field = f;
  A.n = g;
  std::vector<Triplet> ts;
  for (uint32_t a = 0; a < g; ++a)
    for (uint32_t b = 0; b < g; ++b) ts.push_back({table[a][b], a * g + b, 1, 1});
  A.mult = Matrix::from_triplets(f, g, g * g, ts);
  A.unit = unit_column(f, g, e);
  for (uint32_t a = 0; a < g; ++a) A.labels.push_back("g" + std::to_string(a));
  A.validate();
  return A;
}

Algebra matrix_algebra(FieldSpec f, uint32_t sz) {
  if (sz == 0) throw std::invalid_argument("matrix_algebra: size 0");
  uint32_t n = sz * sz;  // basis E_{ab}, index a*sz + b
  Algebra A;
  A.field = f;
  A.n = n;
  std::vector<Triplet> ts;
  for (uint32_t a = 0; a < sz; ++a)
    for (uint32_t b = 0; b < sz; ++b)
      for (uint32_t c = 0; c < sz; ++c)
        for (uint32_t d = 0; d < sz; ++d)
          if (b == c) ts.push_back({a * sz + d, (a * sz + b) * n + (c * sz + d), 1, 1});
  A.mult = Matrix::from_triplets(f, n, n * n, ts);
  std::vector<Triplet> us;
  for (uint32_t a = 0; a < sz; ++a) us.push_back({a * sz + a, 0, 1, 1});
  A.unit = Matrix::from_triplets(f, n, 1, us);
  for (uint32_t a = 0; a < sz; ++a)
    for (uint32_t b = 0; b < sz; ++b)
      A.labels.push_back("E" + std::to_string(a) + std::to_string(b));
  A.validate();
  return A;
}

Algebra path_algebra(FieldSpec f, uint32_t vertices,
                     const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  for (auto [s, t] : edges)
    if (s >= vertices || t >= vertices)
      throw std::invalid_argument("path_algebra: edge endpoint out of range");
  // acyclicity via repeated removal of sources
  {
    std::vector<uint32_t> indeg(vertices, 0);
    for (auto [s, t] : edges) ++indeg[t];
    std::vector<uint32_t> stack;
    for (uint32_t v = 0; v < vertices; ++v)
      if (indeg[v] == 0) stack.push_back(v);
    uint32_t seen = 0;
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      ++seen;
      for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].first == v && --indeg[edges[i].second] == 0)
          stack.push_back(edges[i].second);
    }
    if (seen != vertices) throw std::invalid_argument("path_algebra: quiver has a cycle");
  }
  // enumerate paths: (start, edge sequence); deterministic order by length
  // then lexicographic edge indices; trivial paths first, by vertex.
  struct Path {
    uint32_t start, end;
    std::vector<uint32_t> seq;
  };
  std::vector<Path> paths;
  for (uint32_t v = 0; v < vertices; ++v) paths.push_back({v, v, {}});
  size_t level_begin = 0, level_end = paths.size();
  while (level_begin < level_end) {
    for (size_t i = level_begin; i < level_end; ++i)
      for (uint32_t ei = 0; ei < edges.size(); ++ei)
        if (edges[ei].first == paths[i].end) {
          Path p = paths[i];
          p.seq.push_back(ei);
          p.end = edges[ei].second;
          paths.push_back(std::move(p));
        }
    level_begin = level_end;
    level_end = paths.size();
  }
  std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> index;
  for (uint32_t i = 0; i < paths.size(); ++i) index[{paths[i].start, paths[i].seq}] = i;
  uint32_t n = static_cast<uint32_t>(paths.size());
  Algebra A;
  A.field = f;
  A.n = n;
  std::vector<Triplet> ts;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (paths[i].end == paths[j].start) {
        std::vector<uint32_t> seq = paths[i].seq;
        seq.insert(seq.end(), paths[j].seq.begin(), paths[j].seq.end());
        ts.push_back({index.at({paths[i].start, seq}), i * n + j, 1, 1});
      }
  A.mult = Matrix::from_triplets(f, n, n * n, ts);
  std::vector<Triplet> us;
  for (uint32_t v = 0; v < vertices; ++v) us.push_back({v, 0, 1, 1});
  A.unit = Matrix::from_triplets(f, n, 1, us);
  for (const auto& p : paths) {
    if (p.seq.empty()) {
      A.labels.push_back("v" + std::to_string(p.start));
    } else {
      std::string l;
      for (uint32_t ei : p.seq) l += "a" + std::to_string(ei);
      A.labels.push_back(l);
    }
  }
  A.validate();
  return A;
}

Algebra trunc_poly(FieldSpec f, uint32_t order) {
  if (order == 0) throw std::invalid_argument("trunc_poly: order must be >= 1");
  Algebra A;
  A.field = f;
  A.n = order;
  std::vector<Triplet> ts;
  for (uint32_t i = 0; i < order; ++i)
    for (uint32_t j = 0; j < order; ++j)
      if (i + j < order) ts.push_back({i + j, i * order + j, 1, 1});
  A.mult = Matrix::from_triplets(f, order, order * order, ts);
  A.unit = unit_column(f, order, 0);
  for (uint32_t i = 0; i < order; ++i) A.labels.push_back("x^" + std::to_string(i));
  A.validate();
  return A;
}

Algebra product_algebra(const Algebra& a, const Algebra& b) {
  if (!(a.field == b.field)) throw std::invalid_argument("product_algebra: field mismatch");
  uint32_t n = a.n + b.n;
  Algebra A;
  A.field = a.field;
  A.n = n;
  std::vector<Triplet> ts;
  auto add_component = [&](const Matrix& mult, uint32_t dim, uint32_t off) {
    const auto& d = mult.fpdata();
    auto emit = [&](uint32_t r, uint32_t c, int64_t v) {
      uint32_t i = c / dim, j = c % dim;
      ts.push_back({r + off, (i + off) * n + (j + off), v, 1});
    };
    if (mult.field().is_prime_field()) {
      for (uint32_t r = 0; r < d.rows; ++r)
        for (const auto& [c, v] : d.row[r]) emit(r, c, static_cast<int64_t>(v));
    } else {
      throw std::logic_error("product_algebra: prime fields only for now");
    }
  };
  if (a.field.is_prime_field()) {
    add_component(a.mult, a.n, 0);
    add_component(b.mult, b.n, a.n);
    A.mult = Matrix::from_triplets(a.field, n, n * n, ts);
  } else {
    // build via block placement over Q
    SpRows<mpq_class> s;
    s.rows = n;
    s.cols = n * n;
    s.row.resize(n);
    auto put = [&](const Matrix& mult, uint32_t dim, uint32_t off) {
      const auto& d = mult.qdata();
      for (uint32_t r = 0; r < d.rows; ++r)
        for (const auto& [c, v] : d.row[r]) {
          uint32_t i = c / dim, j = c % dim;
          s.row[r + off].emplace_back((i + off) * n + (j + off), v);
        }
    };
    put(a.mult, a.n, 0);
    put(b.mult, b.n, a.n);
    for (auto& r : s.row) std::sort(r.begin(), r.end());
    A.mult = Matrix::wrap(a.field, std::move(s));
  }
  A.unit = Matrix::vstack(a.unit, b.unit);
  for (const auto& l : a.labels) A.labels.push_back("l." + l);
  for (const auto& l : b.labels) A.labels.push_back("r." + l);
  A.validate();
  return A;
}

Algebra opposite_algebra(const Algebra& a) {
  Algebra A = a;
  A.mult = a.mult * block_swap(a.field, a.n, a.n);
  A.validate();
  return A;
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  if (!(a.field == b.field)) throw std::invalid_argument("tensor_algebra: field mismatch");
  Algebra A;
  A.field = a.field;
  A.n = a.n * b.n;
  Matrix mid = Matrix::identity(a.field, a.n)
                   .kron(block_swap(a.field, b.n, a.n))
                   .kron(Matrix::identity(a.field, b.n));
  A.mult = a.mult.kron(b.mult) * mid;
  A.unit = a.unit.kron(b.unit);
  for (const auto& la : a.labels)
    for (const auto& lb : b.labels) A.labels.push_back(la + "*" + lb);
  A.validate();
  return A;
}

Bimodule diagonal_bimodule(const Algebra& a) {
  Bimodule m;
  m.dim = a.n;
  m.left = a.mult;
  m.right = a.mult;
  return m;
}

void validate_bimodule(const Algebra& a, const Bimodule& m) {
  uint32_t n = a.n, d = m.dim;
  if (m.left.rows() != d || m.left.cols() != n * d || m.right.rows() != d ||
      m.right.cols() != d * n)
    throw std::invalid_argument("Bimodule: shape mismatch");
  Matrix idn = Matrix::identity(a.field, n);
  Matrix idd = Matrix::identity(a.field, d);
  // (ab)v = a(bv)
  if (!(m.left * a.mult.kron(idd) == m.left * idn.kron(m.left)))
    throw std::invalid_argument("Bimodule: left action not associative");
  // v(ab) = (va)b
  if (!(m.right * idd.kron(a.mult) == m.right * m.right.kron(idn)))
    throw std::invalid_argument("Bimodule: right action not associative");
  // (av)b = a(vb)
  if (!(m.right * m.left.kron(idn) == m.left * idn.kron(m.right)))
    throw std::invalid_argument("Bimodule: left and right actions do not commute");
  if (!(m.left * a.unit.kron(idd) == idd) || !(m.right * idd.kron(a.unit) == idd))
    throw std::invalid_argument("Bimodule: unit does not act as identity");
}

NCFormsBimodule nc_forms_bimodule(const Algebra& a) {
  Matrix K = kernel_basis(a.mult);  // rows span I_A inside A (x) A
  Matrix incl = K.transpose();      // n^2 x dim I
  uint32_t d = K.rows();
  if (d != a.n * a.n - a.n)
    throw std::logic_error("nc_forms_bimodule: unexpected kernel dimension");
  Matrix idn = Matrix::identity(a.field, a.n);
  Matrix big_left = a.mult.kron(idn);   // A (x) (A (x) A) -> A (x) A
  Matrix big_right = idn.kron(a.mult);  // (A (x) A) (x) A -> A (x) A
  auto restrict_action = [&](const Matrix& big, bool left_side) {
    Matrix mapped = left_side ? big * idn.kron(incl) : big * incl.kron(idn);
    auto x = solve(incl, mapped);
    if (!x) throw std::logic_error("nc_forms_bimodule: action does not preserve I_A");
    return *x;
  };
  NCFormsBimodule out;
  out.bimodule.dim = d;
  out.bimodule.left = restrict_action(big_left, true);
  out.bimodule.right = restrict_action(big_right, false);
  out.inclusion = incl;
  validate_bimodule(a, out.bimodule);
  return out;
}

SimplicialVS hochschild_complex(const Algebra& a, const Bimodule& m, uint32_t D) {
  if (D < 1) throw std::invalid_argument("hochschild_complex: D >= 1 required");
  validate_bimodule(a, m);
  FieldSpec f = a.field;
  SimplicialVS sv;
  sv.field = f;
  sv.N = D;
  for (uint32_t n = 0; n <= D; ++n)
    sv.dims.push_back(static_cast<uint32_t>(m.dim * ipow(a.n, n)));
  sv.face.resize(D + 1);
  sv.degen.resize(D);
  auto idp = [&](uint32_t k) {
    return Matrix::identity(f, static_cast<uint32_t>(ipow(a.n, k)));
  };
  Matrix idm = Matrix::identity(f, m.dim);
  for (uint32_t n = 1; n <= D; ++n) {
    sv.face[n].push_back(m.right.kron(idp(n - 1)));  // d_0
    for (uint32_t i = 1; i < n; ++i)
      sv.face[n].push_back(
          Matrix::identity(f, static_cast<uint32_t>(m.dim * ipow(a.n, i - 1)))
              .kron(a.mult)
              .kron(idp(n - 1 - i)));
    // d_n: rotate the last tensor factor to the front, then act on the left
    Matrix swap = block_swap(f, static_cast<uint32_t>(m.dim * ipow(a.n, n - 1)), a.n);
    sv.face[n].push_back(m.left.kron(idp(n - 1)) * swap);
  }
  for (uint32_t n = 0; n < D; ++n)
    for (uint32_t i = 0; i <= n; ++i)
      sv.degen[n].push_back(
          Matrix::identity(f, static_cast<uint32_t>(m.dim * ipow(a.n, i)))
              .kron(a.unit)
              .kron(idp(n - i)));
  return sv;
}

std::vector<uint32_t> hh_dims(const Algebra& a, uint32_t D) {
  if (D == 0) return {};
  SimplicialVS sv = hochschild_complex(a, diagonal_bimodule(a), D);
  NormalizedComplex nc = normalized_complex(sv);
  return nc.complex.homology_dims(0, static_cast<int>(D) - 1);
}

std::vector<Matrix> hochschild_cochain_diffs(const Algebra& a, const Bimodule& m,
                                             uint32_t top) {
  FieldSpec f = a.field;
  if (!f.is_prime_field())
    throw std::invalid_argument("hochschild cochains: prime fields only");
  uint32_t n = a.n, md = m.dim;
  // precompute sparse structure data
  std::vector<std::vector<std::vector<std::pair<uint32_t, int64_t>>>> prod(n),
      lact(n), ract(md);
  for (uint32_t i = 0; i < n; ++i) {
    prod[i].resize(n);
    lact[i].resize(md);
    for (uint32_t j = 0; j < n; ++j) prod[i][j] = column_entries(a.mult, i * n + j);
    for (uint32_t v = 0; v < md; ++v) lact[i][v] = column_entries(m.left, i * md + v);
  }
  for (uint32_t v = 0; v < md; ++v) {
    ract[v].resize(n);
    for (uint32_t g = 0; g < n; ++g) ract[v][g] = column_entries(m.right, v * n + g);
  }
  Fp fp(f.p);
  std::vector<Matrix> deltas;
  for (uint32_t deg = 0; deg <= top; ++deg) {
    uint64_t src_t = ipow(n, deg), dst_t = ipow(n, deg + 1);
    std::vector<Triplet> ts;
    // iterate over basis cochains (tuple t, value v)
    std::vector<uint32_t> t(deg, 0);
    for (uint64_t ti = 0; ti < src_t; ++ti) {
      // decode tuple (most significant digit = first argument)
      {
        uint64_t x = ti;
        for (uint32_t k = 0; k < deg; ++k) {
          t[deg - 1 - k] = static_cast<uint32_t>(x % n);
          x /= n;
        }
      }
      for (uint32_t v = 0; v < md; ++v) {
        uint32_t col = static_cast<uint32_t>(ti * md + v);
        // term 0: (g, t) with value g.v
        for (uint32_t g = 0; g < n; ++g) {
          uint64_t u = g;
          for (uint32_t k = 0; k < deg; ++k) u = u * n + t[k];
          for (const auto& [w, c] : lact[g][v])
            ts.push_back({static_cast<uint32_t>(u * md + w), col, c, 1});
        }
        // middle terms: splice (x, y) with e_x e_y -> t[i-1] at position i
        for (uint32_t i = 1; i <= deg; ++i) {
          int64_t sign = (i % 2) ? -1 : 1;
          for (uint32_t x = 0; x < n; ++x)
            for (uint32_t y = 0; y < n; ++y) {
              int64_t coef = 0;
              for (const auto& [k, c] : prod[x][y])
                if (k == t[i - 1]) coef = c;
              if (coef == 0) continue;
              uint64_t u = 0;
              for (uint32_t k = 0; k + 1 < i; ++k) u = u * n + t[k];
              u = (u * n + x) * n + y;
              for (uint32_t k = i; k < deg; ++k) u = u * n + t[k];
              int64_t val = sign * coef % static_cast<int64_t>(f.p);
              ts.push_back({static_cast<uint32_t>(u * md + v), col, val, 1});
            }
        }
        // last term: (t, g) with value v.g and sign (-1)^{deg+1}
        int64_t sign = ((deg + 1) % 2) ? -1 : 1;
        for (uint32_t g = 0; g < n; ++g) {
          uint64_t u = 0;
          for (uint32_t k = 0; k < deg; ++k) u = u * n + t[k];
          u = u * n + g;
          for (const auto& [w, c] : ract[v][g])
            ts.push_back({static_cast<uint32_t>(u * md + w), col, sign * c, 1});
        }
      }
    }
    deltas.push_back(Matrix::from_triplets(f, static_cast<uint32_t>(dst_t * md),
                                           static_cast<uint32_t>(src_t * md), ts));
  }
  for (size_t i = 0; i + 1 < deltas.size(); ++i)
    if (!(deltas[i + 1] * deltas[i]).is_zero())
      throw std::logic_error("hochschild cochains: delta^2 != 0");
  (void)fp;
  return deltas;
}

std::vector<uint32_t> hochschild_cohomology_dims(const Algebra& a, const Bimodule& m,
                                                 uint32_t D) {
  if (D == 0) return {};
  auto deltas = hochschild_cochain_diffs(a, m, D - 1);
  std::vector<uint32_t> out;
  uint32_t prev_rank = 0;
  for (uint32_t i = 0; i < D; ++i) {
    uint32_t dim = deltas[i].cols();
    uint32_t r = rank(deltas[i]);
    out.push_back(dim - r - prev_rank);
    prev_rank = r;
  }
  return out;
}

std::vector<uint32_t> reduced_hh_dims(const Algebra& a, const Bimodule& m, uint32_t D) {
  if (D == 0) return {};
  auto deltas = hochschild_cochain_diffs(a, m, D - 1);
  std::vector<uint32_t> out(D, 0);
  if (D >= 2) out[1] = deltas[1].cols() - rank(deltas[1]);  // Ext^0(I_A, M)
  for (uint32_t i = 2; i < D; ++i)
    out[i] = deltas[i].cols() - rank(deltas[i]) - rank(deltas[i - 1]);
  return out;
}

W2LiftReport w2_lift_obstruction(const Algebra& a) {
  if (!a.field.is_prime_field()) throw NotPrimeField("w2_lift_obstruction: prime field needed");
  uint32_t p = a.field.p, n = a.n;
  int64_t p2 = static_cast<int64_t>(p) * p;
  // integer structure constants, canonical representatives 0..p-1
  std::vector<std::vector<std::vector<int64_t>>> c(
      n, std::vector<std::vector<int64_t>>(n, std::vector<int64_t>(n, 0)));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      for (const auto& [k, v] : column_entries(a.mult, i * n + j)) c[i][j][k] = v;
  // associator defect over Z/p^2, divided by p
  std::vector<Triplet> om;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      for (uint32_t k = 0; k < n; ++k)
        for (uint32_t w = 0; w < n; ++w) {
          int64_t lhs = 0, rhs = 0;
          for (uint32_t l = 0; l < n; ++l) {
            lhs = (lhs + c[i][j][l] * c[l][k][w]) % p2;
            rhs = (rhs + c[j][k][l] * c[i][l][w]) % p2;
          }
          int64_t diff = ((lhs - rhs) % p2 + p2) % p2;
          if (diff % p != 0)
            throw std::logic_error("w2_lift_obstruction: defect not divisible by p");
          int64_t val = (diff / p) % p;
          if (val)
            om.push_back({((i * n + j) * n + k) * n + w, 0, val, 1});
        }
  uint32_t dim3 = n * n * n * n;  // Hom(A^{(x)3}, A) coordinates
  Matrix omega = Matrix::from_triplets(a.field, dim3, 1, om);
  auto deltas = hochschild_cochain_diffs(a, diagonal_bimodule(a), 3);
  if (!(deltas[3] * omega).is_zero())
    throw std::logic_error("w2_lift_obstruction: defect is not a 3-cocycle");
  W2LiftReport rep;
  rep.cocycle = omega;
  auto x = solve(deltas[2], omega);
  rep.vanishes = x.has_value();
  if (x) {
    if (!(deltas[2] * *x == omega))
      throw std::logic_error("w2_lift_obstruction: witness check failed");
    rep.witness = std::move(x);
  }
  return rep;
}

}  // namespace homalg
