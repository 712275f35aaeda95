#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homalg/cartier.hpp"
#include "homalg/errors.hpp"

using namespace homalg;

namespace {

std::vector<std::vector<uint32_t>> cyclic_table(uint32_t m) {
  std::vector<std::vector<uint32_t>> t(m, std::vector<uint32_t>(m));
  for (uint32_t a = 0; a < m; ++a)
    for (uint32_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return t;
}

}  // namespace

TEST_CASE("diagonal quasi-Frobenius maps of group algebras validate") {
  for (auto [p, g] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 2}, {2, 3}, {5, 2}}) {
    Algebra a = group_algebra(FieldSpec::gf(p), cyclic_table(g));
    QuasiFrobenius qf = qf_group_algebra(a);
    CHECK(qf.p == p);
    QFReport rep = qf_validate(qf);
    CHECK(rep.injective);
    CHECK(rep.unital);
    CHECK(rep.multiplicative);
    CHECK(rep.equivariant);
    CHECK(rep.tate_iso);
    CHECK(rep.coker_free);
    CHECK(rep.passed());
  }
  // non-monomial basis is rejected
  Algebra m2 = matrix_algebra(FieldSpec::gf(2), 2);
  CHECK_THROWS_AS(qf_group_algebra(m2), std::invalid_argument);
}

TEST_CASE("constructed violations: zero map and a non-equivariant perturbation") {
  Algebra a = group_algebra(FieldSpec::gf(3), cyclic_table(2));
  QuasiFrobenius qf = qf_group_algebra(a);

  QuasiFrobenius zero{a, qf.p, Matrix(a.field, qf.F.rows(), qf.F.cols())};
  QFReport zrep = qf_validate(zero);
  CHECK_FALSE(zrep.injective);
  CHECK_FALSE(zrep.tate_iso);

  // add a rotation-asymmetric vector to one column of F
  Matrix bump = Matrix::from_triplets(a.field, qf.F.rows(), qf.F.cols(), {{1, 0, 1, 1}});
  QuasiFrobenius bad{a, qf.p, qf.F + bump};
  CHECK_FALSE(qf_validate(bad).equivariant);
}

TEST_CASE("induced map of p-cyclic objects: naturality and levelwise structure") {
  Algebra a = group_algebra(FieldSpec::gf(3), cyclic_table(2));
  QuasiFrobenius qf = qf_group_algebra(a);
  std::vector<Matrix> G;
  CHECK_NOTHROW(G = induced_ptilde(qf, 4));
  CHECK(G[1] == qf.F);
  for (uint32_t l = 1; l <= 4; ++l) {
    CHECK(G[l].cols() == (uint32_t(1) << l));
    CHECK(G[l].rows() == (uint32_t(1) << (3 * l)));
    CHECK(rank(G[l]) == G[l].cols());  // levelwise injective
  }
}

TEST_CASE("a wrong shuffle stride breaks naturality") {
  // stride-p placement (factor l of block j at position j*p + l) is the
  // rejected alternative: it fails to intertwine the rotation at level 2
  Algebra a = group_algebra(FieldSpec::gf(3), cyclic_table(2));
  QuasiFrobenius qf = qf_group_algebra(a);
  uint32_t n = 2, p = qf.p;
  PCyclicObject base = a_sharp(a, p * n);
  PCyclicObject sub = pullback(base, PullbackKind::AlongI, p);
  PCyclicObject proj = pullback(base, PullbackKind::AlongPi, p);
  Matrix fn = qf.F.kron(qf.F);  // blocks in source order: no interleaving
  CHECK_FALSE(sub.tau(n) * fn == fn * proj.tau(n));
}

TEST_CASE("full inverse-Cartier verification on the one-dimensional algebra") {
  Algebra k = trunc_poly(FieldSpec::gf(3), 1);
  QuasiFrobenius qf = qf_group_algebra(k);
  CartierReport rep = cartier_check(qf, 4, 4);
  CHECK(rep.all_levels_free);
  CHECK(rep.hc_iso_up_to_d);
  CHECK(rep.u_commutes);
  CHECK(rep.cross_i_matches_base);
  CHECK(rep.cross_pi_matches_pattern);
  CHECK(rep.hp_i.hc == std::vector<uint32_t>{1, 0, 1, 0, 1});
  REQUIRE(rep.hp_i.hp[0].has_value());
  REQUIRE(rep.hp_i.hp[1].has_value());
  CHECK(*rep.hp_i.hp[0] == 1);
  CHECK(*rep.hp_i.hp[1] == 0);
  CHECK(rep.passed());
}

TEST_CASE("inverse-Cartier verification for small group algebras at reduced depth") {
  for (auto [p, g] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 2}, {2, 3}}) {
    Algebra a = group_algebra(FieldSpec::gf(p), cyclic_table(g));
    QuasiFrobenius qf = qf_group_algebra(a);
    CartierReport rep = cartier_check(qf, 2, 3);
    CHECK(rep.all_levels_free);
    CHECK(rep.hc_iso_up_to_d);
    CHECK(rep.u_commutes);
    CHECK(rep.cross_i_matches_base);
    CHECK(rep.cross_pi_matches_pattern);
    CHECK(rep.passed());
  }
}
