#include "homalg/simplicial.hpp"

#include <string>

namespace homalg {

namespace {

[[noreturn]] void fail(const std::string& what, uint32_t n, uint32_t i, uint32_t j) {
  throw std::invalid_argument("simplicial identity " + what + " fails at level " +
                              std::to_string(n) + " (i=" + std::to_string(i) +
                              ", j=" + std::to_string(j) + ")");
}

}  // namespace

void SimplicialVS::check_identities() const {
  if (dims.size() != N + 1) throw std::invalid_argument("SimplicialVS: dims size");
  for (uint32_t n = 1; n <= N; ++n) {
    if (face.at(n).size() != n + 1)
      throw std::invalid_argument("SimplicialVS: face count at level " + std::to_string(n));
    for (uint32_t i = 0; i <= n; ++i)
      if (d(n, i).rows() != dims[n - 1] || d(n, i).cols() != dims[n])
        throw std::invalid_argument("SimplicialVS: face shape");
  }
  for (uint32_t n = 0; n + 1 <= N; ++n) {
    if (degen.at(n).size() != n + 1)
      throw std::invalid_argument("SimplicialVS: degeneracy count at level " + std::to_string(n));
    for (uint32_t i = 0; i <= n; ++i)
      if (s(n, i).rows() != dims[n + 1] || s(n, i).cols() != dims[n])
        throw std::invalid_argument("SimplicialVS: degeneracy shape");
  }
  // d_i d_j = d_{j-1} d_i for i < j
  for (uint32_t n = 2; n <= N; ++n)
    for (uint32_t j = 1; j <= n; ++j)
      for (uint32_t i = 0; i < j; ++i)
        if (!(d(n - 1, i) * d(n, j) == d(n - 1, j - 1) * d(n, i))) fail("dd", n, i, j);
  // s_i s_j = s_{j+1} s_i for i <= j
  for (uint32_t n = 0; n + 2 <= N; ++n)
    for (uint32_t j = 0; j <= n; ++j)
      for (uint32_t i = 0; i <= j; ++i)
        if (!(s(n + 1, i) * s(n, j) == s(n + 1, j + 1) * s(n, i))) fail("ss", n, i, j);
  // d_i s_j mixed identities
  for (uint32_t n = 0; n + 1 <= N; ++n)
    for (uint32_t j = 0; j <= n; ++j)
      for (uint32_t i = 0; i <= n + 1; ++i) {
        Matrix lhs = d(n + 1, i) * s(n, j);
        if (i == j || i == j + 1) {
          if (!(lhs == Matrix::identity(field, dims[n]))) fail("ds=id", n, i, j);
        } else if (i < j) {
          if (!(lhs == s(n - 1, j - 1) * d(n, i))) fail("ds<", n, i, j);
        } else {  // i > j + 1
          if (!(lhs == s(n - 1, j) * d(n, i - 1))) fail("ds>", n, i, j);
        }
      }
}

ChainComplex standard_complex(const SimplicialVS& e) {
  std::vector<Matrix> diffs;
  for (uint32_t n = 1; n <= e.N; ++n) {
    Matrix dn = e.d(n, 0);
    for (uint32_t i = 1; i <= n; ++i)
      dn = i % 2 ? dn - e.d(n, i) : dn + e.d(n, i);
    diffs.push_back(std::move(dn));
  }
  return ChainComplex::build(e.field, 0, e.dims, std::move(diffs));
}

NormalizedComplex normalized_complex(const SimplicialVS& e) {
  ChainComplex st = standard_complex(e);
  std::vector<Matrix> proj, sect;
  for (uint32_t n = 0; n <= e.N; ++n) {
    if (n == 0) {
      proj.push_back(Matrix::identity(e.field, e.dim(0)));
      sect.push_back(Matrix::identity(e.field, e.dim(0)));
      continue;
    }
    // span of the degeneracy images inside E_n, as rows
    Matrix rows(e.field, 0, e.dim(n));
    for (uint32_t i = 0; i < n; ++i)
      rows = Matrix::vstack(rows, e.s(n - 1, i).transpose());
    Subspace deg = Subspace::from_rows(rows);
    proj.push_back(deg.quotient_projection());
    sect.push_back(deg.quotient_section());
  }
  std::vector<uint32_t> ndims;
  std::vector<Matrix> ndiffs;
  for (uint32_t n = 0; n <= e.N; ++n) ndims.push_back(proj[n].rows());
  for (uint32_t n = 1; n <= e.N; ++n) ndiffs.push_back(proj[n - 1] * st.diff(n) * sect[n]);
  NormalizedComplex out;
  out.complex = ChainComplex::build(e.field, 0, std::move(ndims), std::move(ndiffs));
  out.projection.lo = 0;
  out.projection.levels = std::move(proj);
  out.projection.validate(st, out.complex);
  return out;
}

}  // namespace homalg
