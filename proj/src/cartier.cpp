#include "homalg/cartier.hpp"

#include <stdexcept>
#include <string>

#include "homalg/errors.hpp"

namespace homalg {

namespace {

uint64_t ipow_checked(uint64_t base, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (base != 0 && r > (uint64_t(1) << 31) / base)
      throw std::length_error("cartier: tensor power too large");
    r *= base;
  }
  return r;
}

// rotation of tensor factors: the last k factors move to the front
Matrix rotate_by(FieldSpec f, uint32_t dim, uint32_t len, uint32_t k) {
  uint64_t full = ipow_checked(dim, len), low_mod = ipow_checked(dim, k);
  std::vector<Triplet> tr;
  tr.reserve(size_t(full));
  for (uint64_t idx = 0; idx < full; ++idx) {
    uint64_t out = (idx % low_mod) * (full / low_mod) + idx / low_mod;
    tr.push_back({uint32_t(out), uint32_t(idx), 1, 1});
  }
  return Matrix::from_triplets(f, uint32_t(full), uint32_t(full), tr);
}

// basis index of g^{(x)p} inside A^{(x)p}
uint32_t diagonal_index(uint32_t g, uint32_t dim, uint32_t p) {
  uint64_t idx = 0;
  for (uint32_t l = 0; l < p; ++l) idx = idx * dim + g;
  return uint32_t(idx);
}

// multiplication table of the distinguished basis; throws unless every
// product is a single basis vector with coefficient 1 and the table is a
// group with the algebra unit as neutral element
std::vector<std::vector<uint32_t>> monomial_group_table(const Algebra& a) {
  std::vector<std::vector<uint32_t>> table(a.n, std::vector<uint32_t>(a.n));
  for (uint32_t i = 0; i < a.n; ++i)
    for (uint32_t j = 0; j < a.n; ++j) {
      Matrix prod = a.basis_product(i, j);
      if (prod.nnz() != 1) throw std::invalid_argument("qf_group_algebra: basis not monomial");
      uint32_t k = a.n;
      for (uint32_t r = 0; r < a.n && k == a.n; ++r)
        if (a.field.is_prime_field() ? prod.fp_at(r, 0) != 0 : prod.q_at(r, 0) != 0) k = r;
      if (!(prod == Matrix::from_triplets(a.field, a.n, 1, {{k, 0, 1, 1}})))
        throw std::invalid_argument("qf_group_algebra: basis coefficient is not 1");
      table[i][j] = k;
    }
  // group check: the unit is a basis vector and every row/column is a bijection
  for (uint32_t i = 0; i < a.n; ++i) {
    std::vector<bool> seen(a.n, false);
    for (uint32_t j = 0; j < a.n; ++j) {
      if (seen[table[i][j]]) throw std::invalid_argument("qf_group_algebra: basis not a group");
      seen[table[i][j]] = true;
    }
  }
  return table;
}

// the interleaving shuffle (A^{(x)p})^{(x)n} -> A^{(x)pn}, factor l of
// block j landing at position j + l*n
Matrix stride_shuffle(FieldSpec f, uint32_t dim, uint32_t n, uint32_t p) {
  uint64_t full = ipow_checked(dim, uint32_t(n) * p);
  std::vector<uint32_t> digits(size_t(n) * p), out_digits(size_t(n) * p);
  std::vector<Triplet> tr;
  tr.reserve(size_t(full));
  for (uint64_t idx = 0; idx < full; ++idx) {
    uint64_t t = idx;
    for (uint32_t pos = uint32_t(n * p); pos-- > 0;) {
      digits[pos] = uint32_t(t % dim);
      t /= dim;
    }
    for (uint32_t j = 0; j < n; ++j)
      for (uint32_t l = 0; l < p; ++l) out_digits[j + l * n] = digits[j * p + l];
    uint64_t out = 0;
    for (uint32_t pos = 0; pos < n * p; ++pos) out = out * dim + out_digits[pos];
    tr.push_back({uint32_t(out), uint32_t(idx), 1, 1});
  }
  return Matrix::from_triplets(f, uint32_t(full), uint32_t(full), tr);
}

Matrix kron_power(const Matrix& m, uint32_t n) {
  Matrix acc = m;
  for (uint32_t i = 1; i < n; ++i) acc = acc.kron(m);
  return acc;
}

// tensor-power algebra A^{(x)p} with componentwise product
Algebra tensor_power_algebra(const Algebra& a, uint32_t p) {
  Algebra acc = a;
  for (uint32_t i = 1; i < p; ++i) acc = tensor_algebra(acc, a);
  return acc;
}

// rank of the classes of the columns of v in ker(d_out)/im(d_in)
uint32_t class_rank(const Matrix& d_in, const Matrix& v) {
  Matrix boundaries = d_in.transpose();
  return rank(Matrix::vstack(boundaries, v.transpose())) - rank(boundaries);
}

}  // namespace

QuasiFrobenius qf_group_algebra(const Algebra& a) {
  if (!a.field.is_prime_field())
    throw std::invalid_argument("qf_group_algebra: prime field required");
  monomial_group_table(a);  // reject non-group bases
  uint32_t p = uint32_t(a.field.characteristic());
  std::vector<Triplet> tr;
  for (uint32_t g = 0; g < a.n; ++g) tr.push_back({diagonal_index(g, a.n, p), g, 1, 1});
  Matrix F = Matrix::from_triplets(a.field, uint32_t(ipow_checked(a.n, p)), a.n, tr);
  return QuasiFrobenius{a, p, F};
}

QFReport qf_validate(const QuasiFrobenius& qf) {
  const Algebra& a = qf.a;
  FieldSpec f = a.field;
  uint32_t p = qf.p;
  QFReport rep;
  rep.injective = rank(qf.F) == a.n;
  Matrix unit_p = a.unit;
  for (uint32_t i = 1; i < p; ++i) unit_p = unit_p.kron(a.unit);
  rep.unital = qf.F * a.unit == unit_p;
  Algebra tp = tensor_power_algebra(a, p);
  rep.multiplicative = qf.F * a.mult == tp.mult * qf.F.kron(qf.F);
  CpModule target = power_module(f, a.n, p);
  rep.equivariant = target.sigma * qf.F == qf.F;

  // induced map on Tate homology: the source has the trivial action, so
  // homology is A in every degree; check both parities
  Matrix oms = Matrix::identity(f, target.dim) - target.sigma;
  Matrix nrm = target.sigma;
  {
    Matrix acc = Matrix::identity(f, target.dim), s = acc;
    for (uint32_t i = 1; i < p; ++i) {
      acc = target.sigma * acc;
      s = s + acc;
    }
    nrm = s;
  }
  bool even_ok = homology_dim(oms, nrm) == a.n && class_rank(oms, qf.F) == a.n;
  bool odd_ok = homology_dim(nrm, oms) == a.n && class_rank(nrm, qf.F) == a.n;
  rep.tate_iso = even_ok && odd_ok && (nrm * qf.F).is_zero() && (oms * qf.F).is_zero();

  Subspace image = Subspace::from_rows(qf.F.transpose());
  Matrix sbar = image.quotient_projection() * target.sigma * image.quotient_section();
  CpModule coker{f, p, target.dim - image.dim(), sbar};
  coker.validate();
  rep.coker_free = is_free(coker);
  return rep;
}

std::vector<Matrix> induced_ptilde(const QuasiFrobenius& qf, uint32_t N) {
  const Algebra& a = qf.a;
  uint32_t p = qf.p;
  PCyclicObject base = a_sharp(a, p * N);
  PCyclicObject sub = pullback(base, PullbackKind::AlongI, p);
  PCyclicObject proj = pullback(base, PullbackKind::AlongPi, p);
  std::vector<Matrix> G(N + 1);
  for (uint32_t n = 1; n <= N; ++n)
    G[n] = stride_shuffle(a.field, a.n, n, p) * kron_power(qf.F, n);
  auto fail = [](const std::string& what) {
    throw NaturalityFailure("induced_ptilde: " + what + " square does not commute");
  };
  for (uint32_t l = 1; l <= N; ++l) {
    if (!(sub.tau(l) * G[l] == G[l] * proj.tau(l))) fail("rotation at [" + std::to_string(l) + "]");
    if (l >= 2)
      for (uint32_t i = 0; i < l; ++i)
        if (!(sub.face(l, i) * G[l] == G[l - 1] * proj.face(l, i)))
          fail("face " + std::to_string(i) + " at [" + std::to_string(l) + "]");
    if (l < N)
      for (uint32_t i = 0; i < l; ++i)
        if (!(sub.degen(l, i) * G[l] == G[l + 1] * proj.degen(l, i)))
          fail("degeneracy " + std::to_string(i) + " at [" + std::to_string(l) + "]");
  }
  return G;
}

CartierReport cartier_check(const QuasiFrobenius& qf, uint32_t D, uint32_t levels) {
  const Algebra& a = qf.a;
  FieldSpec f = a.field;
  uint32_t p = qf.p;
  uint32_t N = std::max(levels, D + 2);
  std::vector<Matrix> G = induced_ptilde(qf, N);

  CartierReport rep;
  rep.levels = levels;
  rep.D = D;

  // (a) levelwise freeness of the cokernel under the deck rotation
  rep.level_coker_free.assign(levels + 1, false);
  rep.all_levels_free = true;
  for (uint32_t l = 1; l <= levels; ++l) {
    Matrix sigma = rotate_by(f, a.n, p * l, l);
    Subspace image = Subspace::from_rows(G[l].transpose());
    Matrix sbar = image.quotient_projection() * sigma * image.quotient_section();
    CpModule coker{f, p, uint32_t(ipow_checked(a.n, p * l)) - image.dim(), sbar};
    coker.validate();
    rep.level_coker_free[l] = is_free(coker);
    rep.all_levels_free = rep.all_levels_free && rep.level_coker_free[l];
  }

  // (b) periodic windows on both sides and the induced map on HC
  PCyclicObject base = a_sharp(a, p * N);
  PCyclicObject sub = pullback(base, PullbackKind::AlongI, p);
  PCyclicObject proj = pullback(base, PullbackKind::AlongPi, p);
  CyclicComputation cpi(proj, D), ci(sub, D);
  rep.hp_pi = hp_window(cpi);
  rep.hp_i = hp_window(ci);
  for (uint32_t r = 0; r < 2; ++r) {
    if (D < r + 2) continue;
    if (!rep.hp_pi.hp[r] || !rep.hp_i.hp[r])
      throw InconclusiveStabilization("cartier_check: periodicity maps fail to stabilize");
  }
  std::vector<Matrix> hcF;
  for (uint32_t i = 0; i <= D; ++i) {
    // blockwise (per bicomplex cell) map on the total complexes
    std::vector<uint32_t> rdims, cdims;
    std::vector<std::vector<Matrix>> blocks;
    for (uint32_t q = 0; q <= i; ++q) {
      uint32_t n = i - q;
      rdims.push_back(uint32_t(ipow_checked(a.n, p * (n + 1))));
      cdims.push_back(uint32_t(ipow_checked(a.n, n + 1)));
    }
    blocks.assign(rdims.size(), std::vector<Matrix>(cdims.size()));
    for (uint32_t q = 0; q <= i; ++q) blocks[q][q] = G[i - q + 1];
    Matrix tmap = Matrix::block(f, rdims, cdims, blocks);
    Matrix classes = tmap * cpi.hc_basis(i).representatives().transpose();
    hcF.push_back(ci.hc_basis(i).express(classes));
    rep.hc_f_rank.push_back(rank(hcF.back()));
  }
  rep.hc_iso_up_to_d = true;
  for (uint32_t i = 0; i <= D; ++i)
    rep.hc_iso_up_to_d = rep.hc_iso_up_to_d && hcF[i].rows() == hcF[i].cols() &&
                         rep.hc_f_rank[i] == hcF[i].rows();
  rep.u_commutes = true;
  for (uint32_t i = 2; i <= D; ++i)
    rep.u_commutes = rep.u_commutes && ci.u(i) * hcF[i] == hcF[i - 2] * cpi.u(i);

  // (c) cross-checks against the base object and the Hochschild pattern
  rep.hp_base = hp_window(a_sharp(a, D + 2), D);
  rep.cross_i_matches_base = rep.hp_i.hc == rep.hp_base.hc;
  std::vector<uint32_t> hh = hh_dims(a, D + 1);
  rep.cross_pi_matches_pattern = true;
  for (uint32_t i = 0; i <= D; ++i) {
    uint32_t expect = 0;
    for (uint32_t l = 0; 2 * l <= i; ++l) expect += hh[i - 2 * l];
    rep.cross_pi_matches_pattern = rep.cross_pi_matches_pattern && rep.hp_pi.hc[i] == expect;
  }
  return rep;
}

}  // namespace homalg
