#include "homalg/cyclic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "homalg/elim.hpp"
#include "homalg/errors.hpp"

namespace homalg {

namespace {

uint64_t ipow_checked(uint64_t base, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (base != 0 && r > (uint64_t(1) << 31) / base)
      throw std::length_error("cyclic: tensor power too large");
    r *= base;
  }
  return r;
}

// Ordered preimage positions (mod n) of each output point of f, following
// the lift: preimage of the unique representative of j in [f(0), f(0)+m).
std::vector<std::vector<uint32_t>> preimages(const LambdaMor& f) {
  int64_t n = f.n, m = f.m, v0 = f.v[0];
  std::vector<std::vector<uint32_t>> pre(f.m);
  for (int64_t j = 0; j < m; ++j) {
    int64_t jhat = v0 + (((j - v0) % m) + m) % m;
    for (int64_t x = -n; x < 2 * n; ++x)
      if (f.at(x) == jhat) pre[size_t(j)].push_back(uint32_t(((x % n) + n) % n));
  }
  return pre;
}

template <class E2>
std::vector<std::vector<std::pair<uint32_t, E2>>> columns_of(const SpRows<E2>& s) {
  std::vector<std::vector<std::pair<uint32_t, E2>>> cols(s.cols);
  for (uint32_t r = 0; r < s.rows; ++r)
    for (const auto& [c, v] : s.row[r]) cols[c].emplace_back(r, v);
  return cols;
}

template <class Ops>
SpRows<typename Ops::E> asharp_impl(const Ops& ops, const SpRows<typename Ops::E>& mult,
                                    const SpRows<typename Ops::E>& unit, uint32_t dimA,
                                    const LambdaMor& f) {
  using E2 = typename Ops::E;
  using Vec = std::vector<std::pair<uint32_t, E2>>;
  const uint32_t n = f.n, m = f.m;
  const uint64_t in_dim = ipow_checked(dimA, n), out_dim = ipow_checked(dimA, m);
  const auto pre = preimages(f);
  const auto mcols = columns_of(mult);
  Vec unitv;
  for (uint32_t r = 0; r < unit.rows; ++r)
    for (const auto& [c, v] : unit.row[r]) unitv.emplace_back(r, v);

  // u * e_b in the algebra, accumulated by linear search (dim A is small)
  auto mul_basis = [&](const Vec& u, uint32_t b, Vec& out) {
    out.clear();
    for (const auto& [a, av] : u)
      for (const auto& [t, cv] : mcols[size_t(a) * dimA + b]) {
        E2 w = ops.mul(av, cv);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const auto& e) { return e.first == t; });
        if (it == out.end())
          out.emplace_back(t, w);
        else
          it->second = ops.add(it->second, w);
      }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return Ops::is_zero(e.second); }),
              out.end());
  };

  // transpose layout: one row per input basis tensor
  SpRows<E2> tr;
  tr.rows = uint32_t(in_dim);
  tr.cols = uint32_t(out_dim);
  tr.row.resize(size_t(in_dim));

  std::vector<uint32_t> digits(n, 0);  // big-endian, digits[0] most significant
  std::vector<Vec> fac(m);
  Vec scratch;
  std::vector<size_t> pick(m);
  for (uint64_t t = 0; t < in_dim; ++t) {
    bool dead = false;
    for (uint32_t j = 0; j < m && !dead; ++j) {
      const auto& xs = pre[j];
      Vec& fj = fac[j];
      if (xs.empty()) {
        fj = unitv;
      } else {
        fj.clear();
        fj.emplace_back(digits[xs[0]], ops.one());
        for (size_t k = 1; k < xs.size(); ++k) {
          mul_basis(fj, digits[xs[k]], scratch);
          fj.swap(scratch);
        }
      }
      dead = fj.empty();
    }
    if (!dead) {
      // expand the tensor product of the m factors
      auto& ro = tr.row[size_t(t)];
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        uint64_t idx = 0;
        E2 val = ops.one();
        for (uint32_t j = 0; j < m; ++j) {
          idx = idx * dimA + fac[j][pick[j]].first;
          val = ops.mul(val, fac[j][pick[j]].second);
        }
        ro.emplace_back(uint32_t(idx), val);
        bool wrapped = true;
        for (uint32_t j = m; j-- > 0;) {
          if (++pick[j] < fac[j].size()) {
            wrapped = false;
            break;
          }
          pick[j] = 0;
        }
        if (wrapped) break;
      }
      std::sort(ro.begin(), ro.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    // advance the input odometer (last digit fastest)
    for (uint32_t x = n; x-- > 0;) {
      if (++digits[x] < dimA) break;
      digits[x] = 0;
    }
  }
  return tr;
}

Matrix matrix_power(const Matrix& t, uint64_t k) {
  Matrix acc = Matrix::identity(t.field(), t.rows());
  for (uint64_t i = 0; i < k; ++i) acc = t * acc;
  return acc;
}

}  // namespace

Matrix PCyclicObject::face(uint32_t level, uint32_t i) const {
  return eval(LambdaMor::face(p, level, i));
}

Matrix PCyclicObject::degen(uint32_t level, uint32_t i) const {
  return eval(LambdaMor::degen(p, level, i));
}

Matrix PCyclicObject::tau(uint32_t level) const {
  return eval(LambdaMor::tau(p, level));
}

void PCyclicObject::validate(uint32_t cap) const {
  auto fail = [](const std::string& what) { throw NaturalityFailure("PCyclicObject: " + what); };
  for (uint32_t l = 1; l <= std::min(cap, N); ++l) {
    Matrix id = Matrix::identity(field, dims[l]);
    if (eval(LambdaMor::identity(p, l)) != id) fail("identity at level " + std::to_string(l));
    Matrix t = tau(l);
    if (t.rows() != dims[l] || t.cols() != dims[l]) fail("tau shape");
    if (matrix_power(t, uint64_t(p) * l) != id)
      fail("tau order at level " + std::to_string(l));
    if (l >= 3) {
      for (uint32_t i = 0; i < l; ++i) {
        Matrix di = face(l, i);
        for (uint32_t j = 0; j + 1 < l; ++j) {
          auto comp = mor_compose(LambdaMor::face(p, l - 1, j), LambdaMor::face(p, l, i));
          if (eval(comp) != face(l - 1, j) * di) fail("face functoriality");
        }
      }
    }
    if (l < N) {
      for (uint32_t i = 0; i < l; ++i) {
        if (face(l + 1, i) * degen(l, i) != id) fail("degeneracy section");
      }
    }
  }
}

PCyclicObject a_sharp(const Algebra& a, uint32_t trunc) {
  if (trunc < 1) throw std::invalid_argument("a_sharp: truncation must be >= 1");
  PCyclicObject E;
  E.field = a.field;
  E.p = 1;
  E.N = trunc;
  E.dims.assign(trunc + 1, 0);
  for (uint32_t l = 1; l <= trunc; ++l) E.dims[l] = uint32_t(ipow_checked(a.n, l));
  Algebra alg = a;  // own a copy inside the evaluator
  uint32_t nn = a.n;
  E.eval = [alg = std::move(alg), nn](const LambdaMor& f) -> Matrix {
    if (f.p != 1) throw std::invalid_argument("a_sharp: morphism not in the cyclic category");
    FieldSpec fs = alg.field;
    if (fs.is_prime_field()) {
      FpOps ops(uint32_t(fs.characteristic()));
      return Matrix::wrap(fs, asharp_impl(ops, alg.mult.fpdata(), alg.unit.fpdata(), nn, f))
          .transpose();
    }
    return Matrix::wrap(fs, asharp_impl(QOps{}, alg.mult.qdata(), alg.unit.qdata(), nn, f))
        .transpose();
  };
  return E;
}

PCyclicObject pullback(const PCyclicObject& E, PullbackKind along, uint32_t p) {
  if (E.p != 1) throw std::invalid_argument("pullback: base object must be cyclic (p = 1)");
  if (p < 1) throw std::invalid_argument("pullback: p must be >= 1");
  PCyclicObject R;
  R.field = E.field;
  R.p = p;
  if (along == PullbackKind::AlongI) {
    R.N = E.N / p;
    if (R.N < 1)
      throw TruncationTooShallow("pullback: base truncation " + std::to_string(E.N) +
                                 " too shallow for subdivision by " + std::to_string(p));
    R.dims.assign(R.N + 1, 0);
    for (uint32_t l = 1; l <= R.N; ++l) R.dims[l] = E.dims[p * l];
    R.eval = [base = E.eval, p](const LambdaMor& f) {
      if (f.p != p) throw std::invalid_argument("pullback: wrong p");
      return base(functor_i(f));
    };
  } else {
    R.N = E.N;
    R.dims = E.dims;
    R.eval = [base = E.eval, p](const LambdaMor& f) {
      if (f.p != p) throw std::invalid_argument("pullback: wrong p");
      return base(functor_pi(f));
    };
  }
  return R;
}

SimplicialVS underlying_simplicial(const PCyclicObject& E) {
  SimplicialVS s;
  s.field = E.field;
  s.N = E.N - 1;
  s.dims.resize(E.N);
  s.face.resize(E.N);
  s.degen.resize(E.N);
  for (uint32_t n = 0; n < E.N; ++n) {
    s.dims[n] = E.dims[n + 1];
    if (n >= 1) {
      s.face[n].reserve(n + 1);
      for (uint32_t i = 0; i <= n; ++i) s.face[n].push_back(E.face(n + 1, i));
    }
    if (n + 1 < E.N) {
      s.degen[n].reserve(n + 1);
      for (uint32_t i = 0; i <= n; ++i) s.degen[n].push_back(E.degen(n + 1, i));
    }
  }
  return s;
}

namespace {

// band = largest q+n for which maps are materialized (cells beyond it keep
// their dims but empty matrices); UINT32_MAX fills everything.
Bicomplex build_bicomplex(const PCyclicObject& E, uint32_t D, uint32_t band) {
  if (D + 2 > E.N)
    throw TruncationTooShallow("cyclic bicomplex to depth " + std::to_string(D) +
                               " needs levels up to [" + std::to_string(D + 2) +
                               "], have " + std::to_string(E.N));
  const uint32_t top = D + 1;
  Bicomplex b;
  b.field = E.field;
  b.Q = b.N = top;
  b.dims.assign(top + 1, std::vector<uint32_t>(top + 1, 0));
  b.vert.assign(top + 1, std::vector<Matrix>(top + 1));
  b.horiz.assign(top + 1, std::vector<Matrix>(top + 1));
  std::vector<Matrix> bfull(top + 1), bprime(top + 1), oml(top + 1), norm(top + 1);
  for (uint32_t n = 0; n <= top; ++n) {
    uint32_t l = n + 1;
    bool need_vert = n >= 1 && n <= band;
    bool need_horiz = n + 1 <= band || band == UINT32_MAX;
    if (need_vert) {
      Matrix sum = E.face(l, 0);
      Matrix sump = sum;  // b' omits the wrap face
      for (uint32_t i = 1; i < l; ++i) {
        Matrix di = E.face(l, i);
        Matrix term = (i % 2 == 0) ? di : di.negated();
        sum = sum + term;
        if (i + 1 < l) sump = sump + term;
      }
      bfull[n] = sum;
      bprime[n] = l >= 2 ? sump : Matrix(E.field, E.dims[l - 1], E.dims[l]);
    }
    if (need_horiz) {
      Matrix t = E.tau(l);
      Matrix lam = (n % 2 == 0) ? t : t.negated();
      Matrix id = Matrix::identity(E.field, E.dims[l]);
      oml[n] = id - lam;
      Matrix acc = id, s = id;
      for (uint64_t i = 1; i < uint64_t(E.p) * l; ++i) {
        acc = lam * acc;
        s = s + acc;
      }
      norm[n] = s;
    }
  }
  for (uint32_t q = 0; q <= top; ++q)
    for (uint32_t n = 0; n <= top; ++n) {
      b.dims[q][n] = E.dims[n + 1];
      if (q + n > band && band != UINT32_MAX) continue;
      if (n >= 1) b.vert[q][n] = q % 2 == 0 ? bfull[n] : bprime[n].negated();
      if (q >= 1) {
        // stored with a (-1)^row factor; the totalization sign cancels it
        const Matrix& h = q % 2 == 1 ? oml[n] : norm[n];
        b.horiz[q][n] = n % 2 == 0 ? h : h.negated();
      }
    }
  return b;
}

ChainComplex column_complex(const PCyclicObject& E, uint32_t D) {
  std::vector<uint32_t> dims;
  std::vector<Matrix> diffs;
  for (uint32_t n = 0; n <= D + 1; ++n) {
    dims.push_back(E.dims[n + 1]);
    if (n >= 1) {
      Matrix sum = E.face(n + 1, 0);
      for (uint32_t i = 1; i <= n; ++i) {
        Matrix di = E.face(n + 1, i);
        sum = sum + (i % 2 == 0 ? di : di.negated());
      }
      diffs.push_back(std::move(sum));
    }
  }
  return ChainComplex::build(E.field, 0, std::move(dims), std::move(diffs));
}

}  // namespace

Bicomplex cyclic_bicomplex(const PCyclicObject& E, uint32_t D) {
  return build_bicomplex(E, D, UINT32_MAX);
}

CyclicComputation::CyclicComputation(const PCyclicObject& E, uint32_t D)
    : f_(E.field), D_(D) {
  Bicomplex b = build_bicomplex(E, D, D + 1);
  for (uint32_t n = 0; n <= D + 1; ++n) cell_dims_.push_back(E.dims[n + 1]);
  total_ = total_complex(b, int(D) + 1);
  col_ = column_complex(E, D);
}

HomologyBasis& CyclicComputation::hc_basis(uint32_t i) {
  auto it = tbasis_.find(i);
  if (it == tbasis_.end())
    it = tbasis_.emplace(i, HomologyBasis(total_, int(i))).first;
  return it->second;
}

uint32_t CyclicComputation::hh_dim(uint32_t i) {
  if (i > D_) throw DegreeOutOfRange("hh_dim: degree beyond depth");
  auto it = cbasis_.find(i);
  if (it == cbasis_.end()) it = cbasis_.emplace(i, HomologyBasis(col_, int(i))).first;
  return it->second.dim();
}

uint32_t CyclicComputation::hc_dim(uint32_t i) {
  if (i > D_) throw DegreeOutOfRange("hc_dim: degree beyond depth");
  return hc_basis(i).dim();
}

Matrix CyclicComputation::shift_matrix(uint32_t m) const {
  // offsets of cells (q, n = m-q), q ascending, in T_m and T_{m-2}
  std::vector<Triplet> tr;
  uint32_t src_off = 0;
  for (uint32_t q = 0; q <= m; ++q) {
    uint32_t d = cell_dims_[m - q];
    if (q >= 2) {
      uint32_t dst_off = 0;
      for (uint32_t q2 = 0; q2 < q - 2; ++q2) dst_off += cell_dims_[m - 2 - q2];
      for (uint32_t k = 0; k < d; ++k) tr.push_back({dst_off + k, src_off + k, 1, 1});
    }
    src_off += d;
  }
  return Matrix::from_triplets(f_, total_.dim(int(m) - 2), total_.dim(int(m)), tr);
}

Matrix CyclicComputation::u(uint32_t i) {
  if (i < 2 || i > D_) throw DegreeOutOfRange("u: need 2 <= i <= depth");
  Matrix cycles = shift_matrix(i) * hc_basis(i).representatives().transpose();
  return hc_basis(i - 2).express(cycles);
}

Matrix CyclicComputation::hh_to_hc(uint32_t i) {
  if (i > D_) throw DegreeOutOfRange("hh_to_hc: degree beyond depth");
  hh_dim(i);  // make sure the column basis exists
  std::vector<Triplet> tr;
  for (uint32_t k = 0; k < cell_dims_[i]; ++k) tr.push_back({k, k, 1, 1});
  Matrix incl = Matrix::from_triplets(f_, total_.dim(int(i)), cell_dims_[i], tr);
  Matrix cycles = incl * cbasis_.at(i).representatives().transpose();
  return hc_basis(i).express(cycles);
}

std::vector<uint32_t> hh_dims(const PCyclicObject& E, uint32_t D) {
  if (D + 2 > E.N)
    throw TruncationTooShallow("hh_dims to degree " + std::to_string(D) + " needs levels up to [" +
                               std::to_string(D + 2) + "], have " + std::to_string(E.N));
  auto [cx, proj] = normalized_complex(underlying_simplicial(E));
  (void)proj;
  return cx.homology_dims(0, int(D));
}

std::vector<uint32_t> hc_dims(const PCyclicObject& E, uint32_t D) {
  Bicomplex b = build_bicomplex(E, D, D + 1);
  return total_complex(b, int(D) + 1).homology_dims(0, int(D));
}

Matrix u_map(const PCyclicObject& E, uint32_t i) {
  if (i < 2) throw DegreeOutOfRange("u_map: degree must be >= 2");
  CyclicComputation comp(E, i);
  return comp.u(i);
}

HPReport hp_window(const PCyclicObject& E, uint32_t D) {
  CyclicComputation comp(E, D);
  return hp_window(comp);
}

HPReport hp_window(CyclicComputation& comp) {
  const uint32_t D = comp.depth();
  HPReport rep;
  rep.D = D;
  for (uint32_t i = 0; i <= D; ++i) rep.hc.push_back(comp.hc_dim(i));
  rep.u_rank.assign(D + 1, 0);
  rep.u_iso.assign(D + 1, false);
  for (uint32_t i = 2; i <= D; ++i) {
    Matrix ui = comp.u(i);
    rep.u_rank[i] = rank(ui);
    rep.u_iso[i] = ui.rows() == ui.cols() && rep.u_rank[i] == ui.rows();
  }
  for (uint32_t r = 0; r < 2; ++r) {
    if (D < r + 2) continue;
    uint32_t top = r + (D - r) / 2 * 2;  // top degree <= D of this parity
    if (top < r + 2) continue;
    // longest tail of isomorphisms ending at the top degree of this parity
    int s = -1;
    for (uint32_t i = top; i >= r + 2; i -= 2) {
      if (!rep.u_iso[i]) break;
      s = int(i) - 2;
    }
    if (s >= 0) {
      rep.hp[r] = rep.hc[top];
      rep.stable_from[r] = s;
    }
  }
  return rep;
}

HodgeReport hodge_report(const PCyclicObject& E, uint32_t D) {
  HodgeReport rep;
  rep.D = D;
  rep.hh = hh_dims(E, D);
  rep.hc = hc_dims(E, D);
  for (uint32_t i = 0; i <= D; ++i) {
    uint32_t s = 0;
    for (uint32_t l = 0; 2 * l <= i; ++l) s += rep.hh[i - 2 * l];
    rep.e1.push_back(s);
  }
  rep.degenerate = rep.e1 == rep.hc;
  return rep;
}

}  // namespace homalg
