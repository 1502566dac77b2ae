#include "doctest.h"

#include "cstarcat/a_functor.hpp"

using namespace cstarcat;

namespace {

FinCStarCat two_disjoint_scalars() {
  FinCStarCat cat;
  cat.add_object("a", 1);
  cat.add_object("b", 1);
  cat.mutable_hom(0, 0).extend(ComplexMatrix::identity(1));
  cat.mutable_hom(1, 1).extend(ComplexMatrix::identity(1));
  return cat;
}

}  // namespace

TEST_CASE("A of the scalar category is C") {
  FinCStarCat cat = scalar_category("a");
  AResult a = build_A(cat);
  CHECK(a.algebra.rep_dim == 1);
  CHECK(a.algebra.dim() == 1);
  CHECK(a.algebra.validate().all_pass());
}

TEST_CASE("A of the full category on two 1-dim objects is M2") {
  FinCStarCat cat = full_category({{"a", 1}, {"b", 1}});
  AResult a = build_A(cat);
  CHECK(a.algebra.rep_dim == 2);
  CHECK(a.algebra.dim() == 4);
  CHECK(a.algebra.validate().all_pass());
  CHECK(hs_norm(*a.algebra.unit - ComplexMatrix::identity(2)) <= 1e-12);
}

TEST_CASE("A of a disjoint union is block diagonal") {
  FinCStarCat cat = two_disjoint_scalars();
  AResult a = build_A(cat);
  CHECK(a.algebra.rep_dim == 2);
  CHECK(a.algebra.dim() == 2);
  CHECK(a.algebra.validate().all_pass());
}

TEST_CASE("dim A equals the total Hom dimension") {
  FinCStarCat cat = full_category({{"a", 1}, {"b", 2}, {"c", 3}});
  AResult a = build_A(cat);
  CHECK(a.algebra.dim() == cat.total_hom_dim());
}

TEST_CASE("block columns M_C decompose A(cat) orthogonally") {
  FinCStarCat cat = full_category({{"a", 1}, {"b", 2}});
  AResult a = build_A(cat);
  // every basis element of A sits in exactly one block column M_C, and
  // left multiplication by the algebra preserves each column
  std::map<std::string, std::vector<ComplexMatrix>> columns;
  for (std::size_t k = 0; k < a.algebra.dim(); ++k) {
    const ComplexMatrix& b = a.algebra.space.basis(k);
    for (const auto& src : a.index.order) {
      auto [off, d] = a.index.range(src);
      ComplexMatrix col(a.algebra.rep_dim, d);
      for (std::size_t i = 0; i < a.algebra.rep_dim; ++i)
        for (std::size_t j = 0; j < d; ++j) col(i, j) = b(i, off + j);
      if (hs_norm(col) > 1e-12) columns[src].push_back(b);
    }
  }
  std::size_t total = 0;
  for (const auto& [src, mats] : columns) total += mats.size();
  CHECK(total == a.algebra.dim());
  Rng rng(3);
  ComplexMatrix x = a.algebra.space.random_element(rng);
  for (const auto& [src, mats] : columns) {
    for (const auto& m : mats) {
      ComplexMatrix xm = x * m;
      for (const auto& other : a.index.order) {
        if (other == src) continue;
        auto [o2, d2] = a.index.range(other);
        CHECK(hs_norm(xm.block(0, o2, a.algebra.rep_dim, d2)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("C*-identity on random elements of A") {
  FinCStarCat cat = full_category({{"a", 1}, {"b", 2}});
  AResult a = build_A(cat);
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    ComplexMatrix x = a.algebra.space.random_element(rng);
    double n = operator_norm(x);
    double nn = operator_norm(x.adjoint() * x);
    CHECK(std::abs(nn - n * n) <= 1e-8 * (1.0 + n * n));
  }
}

TEST_CASE("ell embedding is a multiplicative *-map into the (C,C) block") {
  FinCStarCat cat = full_category({{"a", 1}, {"b", 2}});
  AResult a = build_A(cat);
  StarHomomorphism ell = ell_embedding(cat, a, "b");
  CHECK(ell.validate().all_pass());

  // ell(id_b) is the block projection onto b's coordinates
  ComplexMatrix img = ell.apply(ComplexMatrix::identity(2));
  ComplexMatrix expected(3, 3);
  expected(1, 1) = 1.0;
  expected(2, 2) = 1.0;
  CHECK(hs_norm(img - expected) <= 1e-10);

  CHECK(hs_norm(ell.apply(ComplexMatrix(2, 2))) <= 1e-12);

  Rng rng(7);
  ComplexMatrix f = random_matrix(rng, 2, 2);
  ComplexMatrix g = random_matrix(rng, 2, 2);
  CHECK(hs_norm(ell.apply(f * g) - ell.apply(f) * ell.apply(g)) <= 1e-9);
}

TEST_CASE("A of the identity functor is the identity map") {
  FinCStarCat cat = full_category({{"a", 1}, {"b", 2}});
  AResult a = build_A(cat);
  StarHomomorphism am = A_of_functor(identity_functor(cat), a, a);
  Rng rng(11);
  ComplexMatrix x = a.algebra.space.random_element(rng);
  CHECK(hs_norm(am.apply(x) - x) <= 1e-9 * (1.0 + hs_norm(x)));
}

TEST_CASE("A of a full subcategory inclusion is a corner embedding") {
  FinCStarCat sub = full_category({{"a", 1}});
  FinCStarCat amb = full_category({{"a", 1}, {"b", 2}});
  CatFunctor inc = make_functor(sub, amb, {{"a", "a"}},
                                [](const std::string&, const std::string&,
                                   const ComplexMatrix& m) { return m; });
  AResult as = build_A(sub);
  AResult aa = build_A(amb);
  StarHomomorphism am = A_of_functor(inc, as, aa);
  ComplexMatrix img = am.apply(ComplexMatrix::identity(1));
  CHECK(hs_norm(img - ComplexMatrix::unit(3, 3, 0, 0)) <= 1e-10);
}

TEST_CASE("A of a fully faithful functor preserves norms on samples") {
  FinCStarCat sub = full_category({{"a", 1}, {"b", 2}});
  FinCStarCat amb = full_category({{"a", 1}, {"b", 2}, {"c", 1}});
  CatFunctor inc = make_functor(sub, amb, {{"a", "a"}, {"b", "b"}},
                                [](const std::string&, const std::string&,
                                   const ComplexMatrix& m) { return m; });
  REQUIRE(is_fully_faithful(inc));
  AResult as = build_A(sub);
  AResult aa = build_A(amb);
  StarHomomorphism am = A_of_functor(inc, as, aa);
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix x = as.algebra.space.random_element(rng);
    CHECK(std::abs(operator_norm(am.apply(x)) - operator_norm(x)) <=
          1e-8 * (1.0 + operator_norm(x)));
  }
}

TEST_CASE("A rejects functors that merge objects") {
  FinCStarCat src = two_disjoint_scalars();
  FinCStarCat dst = scalar_category("p");
  CatFunctor collapse = make_functor(src, dst, {{"a", "p"}, {"b", "p"}},
                                     [](const std::string&, const std::string&,
                                        const ComplexMatrix& m) { return m; });
  AResult as = build_A(src);
  AResult ad = build_A(dst);
  CHECK_THROWS_AS(A_of_functor(collapse, as, ad), NotInjectiveOnObjects);
}

TEST_CASE("A of a non-unital ideal category finds its own unit") {
  // objects of C, morphisms from the first diagonal block only
  FinCStarCat k;
  k.add_object("c", 2);
  MatrixSubspace s(2, 2);
  s.extend(ComplexMatrix::unit(2, 2, 0, 0));
  k.set_hom(0, 0, std::move(s));
  AResult a = build_A(k);
  REQUIRE(a.algebra.unit.has_value());
  CHECK(hs_norm(*a.algebra.unit - ComplexMatrix::unit(2, 2, 0, 0)) <= 1e-9);
}
