#include "homalg/tate.hpp"

#include <stdexcept>

namespace homalg {

namespace {

Matrix norm_matrix(const CpModule& m) {
  Matrix acc = Matrix::identity(m.field, m.dim);
  Matrix s = acc;
  for (uint32_t i = 1; i < m.p; ++i) {
    acc = m.sigma * acc;
    s = s + acc;
  }
  return s;
}

Matrix one_minus_sigma(const CpModule& m) {
  return Matrix::identity(m.field, m.dim) - m.sigma;
}

}  // namespace

void CpModule::validate() const {
  if (!field.is_prime_field() || field.characteristic() != p)
    throw std::invalid_argument("CpModule: field must be GF(p)");
  if (sigma.rows() != dim || sigma.cols() != dim)
    throw std::invalid_argument("CpModule: generator shape mismatch");
  Matrix acc = Matrix::identity(field, dim);
  for (uint32_t i = 0; i < p; ++i) acc = sigma * acc;
  if (!(acc == Matrix::identity(field, dim)))
    throw std::invalid_argument("CpModule: generator order does not divide p");
}

CpModule cp_trivial(uint32_t p, uint32_t dim) {
  CpModule m{FieldSpec::gf(p), p, dim, Matrix::identity(FieldSpec::gf(p), dim)};
  m.validate();
  return m;
}

CpModule cp_regular(uint32_t p, uint32_t copies) {
  FieldSpec f = FieldSpec::gf(p);
  std::vector<Triplet> tr;
  for (uint32_t c = 0; c < copies; ++c)
    for (uint32_t i = 0; i < p; ++i) tr.push_back({c * p + (i + 1) % p, c * p + i, 1, 1});
  CpModule m{f, p, p * copies, Matrix::from_triplets(f, p * copies, p * copies, tr)};
  m.validate();
  return m;
}

CpModule cp_direct_sum(const CpModule& a, const CpModule& b) {
  if (a.p != b.p) throw std::invalid_argument("cp_direct_sum: mismatched p");
  Matrix zab(a.field, a.dim, b.dim), zba(a.field, b.dim, a.dim);
  Matrix s = Matrix::block(a.field, {a.dim, b.dim}, {a.dim, b.dim},
                           {{a.sigma, zab}, {zba, b.sigma}});
  return CpModule{a.field, a.p, a.dim + b.dim, s};
}

std::vector<uint32_t> tate_dims(const CpModule& m, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("tate_dims: empty window");
  Matrix d_odd = one_minus_sigma(m);  // d_i for odd i
  Matrix d_even = norm_matrix(m);     // d_i for even i
  uint32_t h_odd = homology_dim(d_even, d_odd);   // ker(1-sigma)/im(norm)
  uint32_t h_even = homology_dim(d_odd, d_even);  // ker(norm)/im(1-sigma)
  std::vector<uint32_t> out;
  for (int i = lo; i <= hi; ++i) out.push_back((i % 2 + 2) % 2 == 0 ? h_even : h_odd);
  return out;
}

bool is_free(const CpModule& m) {
  if (m.dim % m.p != 0) return false;
  Matrix n = m.sigma - Matrix::identity(m.field, m.dim);
  Matrix acc = Matrix::identity(m.field, m.dim);
  for (uint32_t j = 1; j < m.p; ++j) {
    acc = n * acc;
    if (rank(acc) != m.dim / m.p * (m.p - j)) return false;
  }
  return true;
}

Matrix trace_map(const CpModule& m) {
  Matrix oms = one_minus_sigma(m);
  Subspace image = Subspace::from_rows(oms.transpose());  // im(1-sigma) as rows
  Matrix sect = image.quotient_section();                 // coinvariant reps as columns
  Matrix invariants = kernel_basis(oms);                  // rows
  Matrix mapped = norm_matrix(m) * sect;
  auto coords = solve(invariants.transpose(), mapped);
  if (!coords) throw std::logic_error("trace_map: norm image escaped the invariants");
  return *coords;  // (dim invariants) x (dim coinvariants)
}

CpModule power_module(FieldSpec f, uint32_t dim_v, uint32_t p) {
  if (!f.is_prime_field()) throw std::invalid_argument("power_module: prime field required");
  uint64_t d = 1;
  for (uint32_t i = 0; i < p; ++i) {
    d *= dim_v;
    if (d > (uint64_t(1) << 31)) throw std::length_error("power_module: tensor power too large");
  }
  // rotation on digit strings: last tensor factor moves to the front
  std::vector<Triplet> tr;
  for (uint64_t idx = 0; idx < d; ++idx) {
    uint64_t last = idx % dim_v;
    uint64_t rot = last * (d / dim_v) + idx / dim_v;
    tr.push_back({uint32_t(rot), uint32_t(idx), 1, 1});
  }
  return CpModule{f, p, uint32_t(d), Matrix::from_triplets(f, uint32_t(d), uint32_t(d), tr)};
}

VotimespReport verify_votimesp(FieldSpec f, uint32_t dim_v, uint32_t p) {
  CpModule m = power_module(f, dim_v, p);
  m.validate();
  VotimespReport rep;
  rep.dim_v = dim_v;
  rep.p = p;
  rep.tate = tate_dims(m, -3, 3);
  rep.dims_match = true;
  for (uint32_t d : rep.tate) rep.dims_match = rep.dims_match && d == dim_v;

  // diagonal tensors e_i^{(x)p}, as columns
  std::vector<Triplet> tr;
  for (uint32_t i = 0; i < dim_v; ++i) {
    uint64_t idx = 0;
    for (uint32_t j = 0; j < p; ++j) idx = idx * dim_v + i;
    tr.push_back({uint32_t(idx), i, 1, 1});
  }
  Matrix diag = Matrix::from_triplets(f, m.dim, dim_v, tr);
  Matrix oms = one_minus_sigma(m), nrm = norm_matrix(m);
  rep.diagonal_cycles = (oms * diag).is_zero() && (nrm * diag).is_zero();

  // the classes span homology in both parities: adjoining the diagonals to
  // the boundary space must add exactly dim_v independent rows, saturating
  // the cycle space
  auto spans = [&](const Matrix& d_in, const Matrix& d_out) {
    Matrix boundaries = d_in.transpose();  // rows spanning the image
    uint32_t r = rank(boundaries);
    Matrix joined = Matrix::vstack(boundaries, diag.transpose());
    uint32_t grown = rank(joined) - r;
    return grown == dim_v && r + grown == m.dim - rank(d_out);
  };
  rep.diagonal_spans = spans(nrm, oms) && spans(oms, nrm);
  return rep;
}

}  // namespace homalg
