#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "homalg/simplicial.hpp"

using namespace homalg;

namespace {

// Linearization of the nerve of a finite group given by its multiplication
// table: level n has basis G^n, d_0 drops the first entry, d_i multiplies
// adjacent entries, d_n drops the last, s_i inserts the identity element.
// Independent of the library's cyclic machinery; serves as its oracle later.
SimplicialVS nerve(FieldSpec f, const std::vector<std::vector<uint32_t>>& mul, uint32_t e,
                   uint32_t N) {
  uint32_t g = static_cast<uint32_t>(mul.size());
  SimplicialVS sv;
  sv.field = f;
  sv.N = N;
  uint64_t dim = 1;
  for (uint32_t n = 0; n <= N; ++n) {
    sv.dims.push_back(static_cast<uint32_t>(dim));
    dim *= g;
  }
  auto digits = [&](uint64_t idx, uint32_t n) {
    std::vector<uint32_t> t(n);
    for (uint32_t k = 0; k < n; ++k) {
      t[n - 1 - k] = static_cast<uint32_t>(idx % g);
      idx /= g;
    }
    return t;  // t[0] = g_1 is the most significant digit
  };
  auto index = [&](const std::vector<uint32_t>& t) {
    uint64_t idx = 0;
    for (uint32_t v : t) idx = idx * g + v;
    return idx;
  };
  sv.face.resize(N + 1);
  sv.degen.resize(N);
  for (uint32_t n = 1; n <= N; ++n)
    for (uint32_t i = 0; i <= n; ++i) {
      std::vector<Triplet> ts;
      for (uint64_t idx = 0; idx < sv.dims[n]; ++idx) {
        auto t = digits(idx, n);
        std::vector<uint32_t> out;
        if (i == 0)
          out.assign(t.begin() + 1, t.end());
        else if (i == n) {
          out.assign(t.begin(), t.end() - 1);
        } else {
          out.assign(t.begin(), t.end());
          out[i - 1] = mul[t[i - 1]][t[i]];
          out.erase(out.begin() + i);
        }
        ts.push_back({static_cast<uint32_t>(index(out)), static_cast<uint32_t>(idx), 1, 1});
      }
      sv.face[n].push_back(Matrix::from_triplets(f, sv.dims[n - 1], sv.dims[n], ts));
    }
  for (uint32_t n = 0; n + 1 <= N; ++n)
    for (uint32_t i = 0; i <= n; ++i) {
      std::vector<Triplet> ts;
      for (uint64_t idx = 0; idx < sv.dims[n]; ++idx) {
        auto t = digits(idx, n);
        t.insert(t.begin() + i, e);
        ts.push_back({static_cast<uint32_t>(index(t)), static_cast<uint32_t>(idx), 1, 1});
      }
      sv.degen[n].push_back(Matrix::from_triplets(f, sv.dims[n + 1], sv.dims[n], ts));
    }
  return sv;
}

std::vector<std::vector<uint32_t>> cyclic_table(uint32_t m) {
  std::vector<std::vector<uint32_t>> t(m, std::vector<uint32_t>(m));
  for (uint32_t a = 0; a < m; ++a)
    for (uint32_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return t;
}

}  // namespace

TEST_CASE("point: trivial group nerve has trivial homology") {
  auto sv = nerve(FieldSpec::gf(3), cyclic_table(1), 0, 4);
  sv.check_identities();
  CHECK(standard_complex(sv).homology_dims(0, 3) == std::vector<uint32_t>{1, 0, 0, 0});
}

TEST_CASE("group homology of Z/2 via the nerve") {
  uint32_t N = 5;
  auto table = cyclic_table(2);
  // char 2: H_n(Z/2, F_2) = F_2 in every degree
  auto s2 = nerve(FieldSpec::gf(2), table, 0, N);
  s2.check_identities();
  CHECK(standard_complex(s2).homology_dims(0, 4) == std::vector<uint32_t>{1, 1, 1, 1, 1});
  // char coprime to the order: reduced homology vanishes
  auto s3 = nerve(FieldSpec::gf(3), table, 0, N);
  CHECK(standard_complex(s3).homology_dims(0, 4) == std::vector<uint32_t>{1, 0, 0, 0, 0});
  auto sq = nerve(FieldSpec::rationals(), table, 0, 4);
  CHECK(standard_complex(sq).homology_dims(0, 3) == std::vector<uint32_t>{1, 0, 0, 0});
}

TEST_CASE("group homology of Z/3 via the nerve") {
  auto s3 = nerve(FieldSpec::gf(3), cyclic_table(3), 0, 5);
  s3.check_identities();
  CHECK(standard_complex(s3).homology_dims(0, 4) == std::vector<uint32_t>{1, 1, 1, 1, 1});
  auto s2 = nerve(FieldSpec::gf(2), cyclic_table(3), 0, 4);
  CHECK(standard_complex(s2).homology_dims(0, 3) == std::vector<uint32_t>{1, 0, 0, 0});
}

TEST_CASE("normalized complex: dims, quasi-isomorphism, identities") {
  auto f = FieldSpec::gf(2);
  uint32_t N = 5;
  auto sv = nerve(f, cyclic_table(2), 0, N);
  NormalizedComplex nc = normalized_complex(sv);
  // normalized level n of a group nerve has dimension (|G|-1)^n
  for (uint32_t n = 0; n <= N; ++n) CHECK(nc.complex.dim(static_cast<int>(n)) == 1);
  ChainComplex st = standard_complex(sv);
  CHECK(nc.complex.homology_dims(0, 4) == st.homology_dims(0, 4));
  // the projection is a quasi-isomorphism in trusted degrees
  for (int n = 0; n + 1 <= static_cast<int>(N); ++n) {
    Matrix ind = induced_map_on_homology(nc.projection, st, nc.complex, n);
    CHECK(ind.rows() == ind.cols());
    CHECK(rank(ind) == ind.rows());
  }
}

TEST_CASE("normalized complex of Z/3 nerve over GF(3)") {
  auto sv = nerve(FieldSpec::gf(3), cyclic_table(3), 0, 4);
  NormalizedComplex nc = normalized_complex(sv);
  for (uint32_t n = 0; n <= 4; ++n) {
    uint32_t expect = 1;
    for (uint32_t k = 0; k < n; ++k) expect *= 2;
    CHECK(nc.complex.dim(static_cast<int>(n)) == expect);
  }
  CHECK(nc.complex.homology_dims(0, 3) == std::vector<uint32_t>{1, 1, 1, 1});
}

TEST_CASE("identity check catches corruption") {
  auto sv = nerve(FieldSpec::gf(2), cyclic_table(2), 0, 3);
  sv.check_identities();
  auto bad = sv;
  bad.face[2][1] = bad.face[2][0];  // wrong face
  CHECK_THROWS_AS(bad.check_identities(), std::invalid_argument);
  auto bad2 = sv;
  bad2.degen[1][0] = bad2.degen[1][1];
  CHECK_THROWS_AS(bad2.check_identities(), std::invalid_argument);
}
