#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "homalg/algebra.hpp"

using namespace homalg;

namespace {

std::vector<std::vector<uint32_t>> cyclic_table(uint32_t m) {
  std::vector<std::vector<uint32_t>> t(m, std::vector<uint32_t>(m));
  for (uint32_t a = 0; a < m; ++a)
    for (uint32_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return t;
}

bool is_commutative(const Algebra& a) {
  for (uint32_t i = 0; i < a.n; ++i)
    for (uint32_t j = 0; j < a.n; ++j)
      if (!(a.basis_product(i, j) == a.basis_product(j, i))) return false;
  return true;
}

// center dimension via direct solve of x e_i = e_i x for all i
uint32_t center_dim_oracle(const Algebra& a) {
  FieldSpec f = a.field;
  Matrix id = Matrix::identity(f, a.n);
  Matrix sys(f, 0, a.n);
  for (uint32_t i = 0; i < a.n; ++i) {
    Matrix ei = Matrix::from_triplets(f, a.n, 1, {{i, 0, 1, 1}});
    // columns x -> e_i x - x e_i
    Matrix lcol = a.mult * ei.kron(id);   // x -> e_i x
    Matrix rcol = a.mult * id.kron(ei);   // x -> x e_i
    sys = Matrix::vstack(sys, lcol - rcol);
  }
  return a.n - rank(sys);
}

// dim of M / span{a.v - v.a}
uint32_t h0_quotient_oracle(const Algebra& a, const Bimodule& m) {
  FieldSpec f = a.field;
  Matrix idm = Matrix::identity(f, m.dim);
  Matrix rows(f, 0, m.dim);
  for (uint32_t i = 0; i < a.n; ++i) {
    Matrix ei = Matrix::from_triplets(f, a.n, 1, {{i, 0, 1, 1}});
    Matrix com = m.left * ei.kron(idm) - m.right * idm.kron(ei);
    rows = Matrix::vstack(rows, com.transpose());
  }
  return m.dim - rank(rows);
}

}  // namespace

TEST_CASE("group algebra of Z/2 over GF(3): dim 2, commutative") {
  Algebra a = group_algebra(FieldSpec::gf(3), cyclic_table(2));
  CHECK(a.n == 2);
  CHECK(is_commutative(a));
}

TEST_CASE("group algebra rejects non-groups") {
  // constant table: no identity
  std::vector<std::vector<uint32_t>> bad(2, std::vector<uint32_t>(2, 0));
  CHECK_THROWS_AS(group_algebra(FieldSpec::gf(2), bad), std::invalid_argument);
  // non-associative loop of order 5 (row/col latin square built by hand)
  std::vector<std::vector<uint32_t>> loop = {{0, 1, 2, 3, 4},
                                             {1, 0, 3, 4, 2},
                                             {2, 4, 0, 1, 3},
                                             {3, 2, 4, 0, 1},
                                             {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(group_algebra(FieldSpec::gf(2), loop), std::invalid_argument);
}

TEST_CASE("matrix algebra M_2(GF(5)): dim 4, center dim 1") {
  Algebra a = matrix_algebra(FieldSpec::gf(5), 2);
  CHECK(a.n == 4);
  CHECK_FALSE(is_commutative(a));
  CHECK(center_dim_oracle(a) == 1);
}

TEST_CASE("product GF(5) x GF(5): dim 2 with orthogonal idempotents") {
  Algebra k = trunc_poly(FieldSpec::gf(5), 1);
  Algebra a = product_algebra(k, k);
  CHECK(a.n == 2);
  for (uint32_t i = 0; i < 2; ++i) {
    Matrix ei = Matrix::from_triplets(a.field, 2, 1, {{i, 0, 1, 1}});
    CHECK(a.basis_product(i, i) == ei);
    CHECK(a.basis_product(i, 1 - i).is_zero());
  }
  CHECK(center_dim_oracle(a) == 2);
}

TEST_CASE("path algebra of the A2 quiver is upper triangular 2x2") {
  Algebra a = path_algebra(FieldSpec::gf(5), 2, {{0, 1}});
  CHECK(a.n == 3);
  CHECK_FALSE(is_commutative(a));
  CHECK(center_dim_oracle(a) == 1);
  // quiver with a cycle is rejected
  CHECK_THROWS_AS(path_algebra(FieldSpec::gf(5), 2, {{0, 1}, {1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("opposite and tensor constructions") {
  Algebra a = path_algebra(FieldSpec::gf(3), 2, {{0, 1}});
  Algebra ao = opposite_algebra(a);
  CHECK_FALSE(is_commutative(ao));
  // opposite of opposite is the original
  CHECK(opposite_algebra(ao).mult == a.mult);
  Algebra t = tensor_algebra(a, a);
  CHECK(t.n == 9);
  CHECK(center_dim_oracle(t) == 1);
  // M_2 tensor M_2 has dim 16, center 1
  Algebra m2 = matrix_algebra(FieldSpec::gf(3), 2);
  Algebra e = tensor_algebra(m2, opposite_algebra(m2));
  CHECK(e.n == 16);
  CHECK(center_dim_oracle(e) == 1);
}

TEST_CASE("hochschild complex: levels, identities, H_0 quotient oracle") {
  Algebra k = trunc_poly(FieldSpec::gf(7), 1);
  SimplicialVS triv = hochschild_complex(k, diagonal_bimodule(k), 3);
  triv.check_identities();
  for (uint32_t n = 0; n <= 3; ++n) CHECK(triv.dim(n) == 1);
  CHECK(standard_complex(triv).homology_dims(0, 2) == std::vector<uint32_t>{1, 0, 0});

  for (const Algebra& a : {matrix_algebra(FieldSpec::gf(3), 2),
                           group_algebra(FieldSpec::gf(2), cyclic_table(3)),
                           trunc_poly(FieldSpec::gf(2), 2),
                           path_algebra(FieldSpec::gf(5), 2, {{0, 1}})}) {
    Bimodule m = diagonal_bimodule(a);
    SimplicialVS sv = hochschild_complex(a, m, 3);
    sv.check_identities();
    for (uint32_t n = 0; n <= 3; ++n) CHECK(sv.dim(n) == a.n * static_cast<uint32_t>(std::pow(a.n, n)));
    CHECK(standard_complex(sv).homology_dims(0, 0)[0] == h0_quotient_oracle(a, m));
  }
}

TEST_CASE("hh_dims: ground field and separable matrix algebra") {
  Algebra k5 = trunc_poly(FieldSpec::gf(5), 1);
  CHECK(hh_dims(k5, 5) == std::vector<uint32_t>{1, 0, 0, 0, 0});
  Algebra m2 = matrix_algebra(FieldSpec::gf(7), 2);
  CHECK(hh_dims(m2, 5) == std::vector<uint32_t>{1, 0, 0, 0, 0});
}

TEST_CASE("hh_dims of dual numbers against the periodic resolution oracle") {
  // A = k[x]/x^2.  The standard periodic bimodule resolution alternates
  // multiplication by x(x)1 - 1(x)x and x(x)1 + 1(x)x; tensoring down to A
  // the differentials alternate 0 and multiplication by 2x.
  for (uint32_t p : {2u, 5u}) {
    FieldSpec f = FieldSpec::gf(p);
    Algebra a = trunc_poly(f, 2);
    Matrix two_x = Matrix::from_dense(f, {{0, 0}, {2, 0}});  // v -> 2x v in basis 1, x
    auto d = [&](uint32_t i) {  // d_i of the tensored-down resolution
      if (i == 0) return Matrix(f, 0, 2);
      return (i % 2) ? Matrix(f, 2, 2) : two_x;
    };
    std::vector<uint32_t> oracle;
    for (uint32_t i = 0; i < 5; ++i) oracle.push_back(homology_dim(d(i + 1), d(i)));
    CHECK(hh_dims(a, 5) == oracle);
    if (p == 2) CHECK(oracle == std::vector<uint32_t>{2, 2, 2, 2, 2});
    if (p == 5) CHECK(oracle == std::vector<uint32_t>{2, 1, 1, 1, 1});
  }
}

TEST_CASE("hh_0 equals dim A minus rank of the commutator map") {
  for (const Algebra& a : {matrix_algebra(FieldSpec::gf(3), 2),
                           group_algebra(FieldSpec::gf(5), cyclic_table(4)),
                           path_algebra(FieldSpec::gf(2), 3, {{0, 1}, {1, 2}})}) {
    Matrix swap_comm =
        a.mult - a.mult * [&] {
          std::vector<Triplet> ts;
          for (uint32_t i = 0; i < a.n; ++i)
            for (uint32_t j = 0; j < a.n; ++j) ts.push_back({j * a.n + i, i * a.n + j, 1, 1});
          return Matrix::from_triplets(a.field, a.n * a.n, a.n * a.n, ts);
        }();
    CHECK(hh_dims(a, 2)[0] == a.n - rank(swap_comm));
  }
}

TEST_CASE("hochschild cohomology: ground field, center, separable product") {
  Algebra k = trunc_poly(FieldSpec::gf(3), 1);
  CHECK(hochschild_cohomology_dims(k, diagonal_bimodule(k), 4) ==
        std::vector<uint32_t>{1, 0, 0, 0});
  for (const Algebra& a : {matrix_algebra(FieldSpec::gf(5), 2),
                           trunc_poly(FieldSpec::gf(2), 3),
                           path_algebra(FieldSpec::gf(3), 2, {{0, 1}})}) {
    auto hh = hochschild_cohomology_dims(a, diagonal_bimodule(a), 2);
    CHECK(hh[0] == center_dim_oracle(a));
  }
  Algebra k5 = trunc_poly(FieldSpec::gf(5), 1);
  Algebra prod = product_algebra(k5, k5);
  auto hh = hochschild_cohomology_dims(prod, diagonal_bimodule(prod), 5);
  CHECK(hh == std::vector<uint32_t>{2, 0, 0, 0, 0});
}

TEST_CASE("reduced hochschild cohomology") {
  // ground field: I_A = 0, everything vanishes
  Algebra k = trunc_poly(FieldSpec::gf(3), 1);
  CHECK(reduced_hh_dims(k, diagonal_bimodule(k), 4) == std::vector<uint32_t>{0, 0, 0, 0});
  // agreement with unreduced in degrees >= 2
  for (const Algebra& a : {trunc_poly(FieldSpec::gf(2), 2),
                           matrix_algebra(FieldSpec::gf(3), 2),
                           path_algebra(FieldSpec::gf(5), 2, {{0, 1}})}) {
    Bimodule m = diagonal_bimodule(a);
    auto red = reduced_hh_dims(a, m, 5);
    auto full = hochschild_cohomology_dims(a, m, 5);
    for (uint32_t i = 2; i < 5; ++i) CHECK(red[i] == full[i]);
    CHECK(red[0] == 0);
  }
  // separable: reduced vanishes in degrees >= 2
  Algebra m2 = matrix_algebra(FieldSpec::gf(3), 2);
  auto red = reduced_hh_dims(m2, diagonal_bimodule(m2), 5);
  for (uint32_t i = 2; i < 5; ++i) CHECK(red[i] == 0);
}

TEST_CASE("nc forms bimodule invariants") {
  for (const Algebra& a : {matrix_algebra(FieldSpec::gf(3), 2),
                           trunc_poly(FieldSpec::gf(2), 2),
                           group_algebra(FieldSpec::gf(5), cyclic_table(2))}) {
    NCFormsBimodule nc = nc_forms_bimodule(a);
    CHECK(nc.bimodule.dim == a.n * a.n - a.n);
    // inclusion lands in ker(mult) and intertwines both actions
    CHECK((a.mult * nc.inclusion).is_zero());
    Matrix idn = Matrix::identity(a.field, a.n);
    CHECK(nc.inclusion * nc.bimodule.left == a.mult.kron(idn) * idn.kron(nc.inclusion));
    CHECK(nc.inclusion * nc.bimodule.right == idn.kron(a.mult) * nc.inclusion.kron(idn));
  }
}

TEST_CASE("w2 lift obstruction vanishes for liftable algebras") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Algebra kp = trunc_poly(FieldSpec::gf(p), 1);
    auto r1 = w2_lift_obstruction(product_algebra(kp, kp));
    CHECK(r1.vanishes);
    auto r2 = w2_lift_obstruction(matrix_algebra(FieldSpec::gf(p), 2));
    CHECK(r2.vanishes);
  }
  auto r3 = w2_lift_obstruction(trunc_poly(FieldSpec::gf(2), 2));
  CHECK(r3.vanishes);
  CHECK(r3.witness.has_value());
  CHECK_THROWS_AS(w2_lift_obstruction(trunc_poly(FieldSpec::rationals(), 2)),
                  NotPrimeField);
}
