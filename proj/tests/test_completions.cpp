#include "doctest.h"

#include "cstarcat/completions.hpp"

using namespace cstarcat;

TEST_CASE("additive completion of the scalars: tuple of length n has End M_n") {
  FinCStarCat base = scalar_category("a");
  AdditiveCompletion add(base);
  std::vector<TupleObject> objs = {add.tuple({"a"}), add.tuple({"a", "a"}),
                                   add.tuple({"a", "a", "a"})};
  FinCStarCat mat = add.materialize(objs);
  CHECK(mat.hom(objs[0].id, objs[0].id).dim() == 1);
  CHECK(mat.hom(objs[1].id, objs[1].id).dim() == 4);
  CHECK(mat.hom(objs[2].id, objs[2].id).dim() == 9);
  CHECK(validate(mat).all_pass());

  CatFunctor inc = add.canonical_inclusion(mat);
  CHECK(validate_functor(inc).all_pass());
  CHECK(is_fully_faithful(inc));
}

TEST_CASE("Idem of the diagonal algebra: (C, diag(1,0)) has End of dimension 1") {
  // one object of dim 2 with End = C + C (diagonal matrices)
  FinCStarCat base;
  base.add_object("c", 2);
  MatrixSubspace endo(2, 2);
  endo.extend(ComplexMatrix::unit(2, 2, 0, 0));
  endo.extend(ComplexMatrix::unit(2, 2, 1, 1));
  base.set_hom(0, 0, std::move(endo));
  REQUIRE(validate(base).all_pass());

  IdemCompletion idem(base);
  IdemCompletionObject whole = idem.whole("c");
  IdemCompletionObject corner{"c|p", "c", ComplexMatrix::unit(2, 2, 0, 0)};
  FinCStarCat mat = idem.materialize({whole, corner});
  CHECK(mat.dim_of("c|p") == 1);
  CHECK(mat.hom("c|p", "c|p").dim() == 1);
  CHECK(validate(mat).all_pass());

  CatFunctor inc = idem.canonical_inclusion(mat);
  CHECK(validate_functor(inc).all_pass());
  CHECK(is_fully_faithful(inc));
}

TEST_CASE("non-projections are rejected at materialization") {
  FinCStarCat base = full_category({{"c", 2}});
  IdemCompletion idem(base);
  ComplexMatrix notp{{cplx(0.5), cplx(0.0)}, {cplx(0.0), cplx(0.0)}};
  CHECK_THROWS_AS(idem.materialize({{"bad", "c", notp}}), NotAProjection);
}

TEST_CASE("sharp completion materializes mixed tuple/projection objects") {
  FinCStarCat base = full_category({{"a", 1}, {"b", 2}});
  SharpCompletion sharp(base);

  SharpObject wa = sharp.whole("a");
  SharpObject wb = sharp.whole("b");
  // rank-1 corner of the tuple (a,a)
  SharpObject corner{"p1", {"a", "a"}, ComplexMatrix::unit(2, 2, 0, 0)};
  // full tuple (a,b) of dimension 3
  SharpObject t3{"t3", {"a", "b"}, ComplexMatrix::identity(3)};
  FinCStarCat mat = sharp.materialize({wa, wb, corner, t3});
  CHECK(mat.dim_of("p1") == 1);
  CHECK(mat.dim_of("t3") == 3);
  CHECK(validate(mat).all_pass());

  CatFunctor inc = sharp.canonical_inclusion(mat);
  CHECK(validate_functor(inc).all_pass());
  CHECK(is_fully_faithful(inc));
}

TEST_CASE("sharp of a complete category: canonical inclusion is a unitary equivalence") {
  // the full category on dims {1,2,3} absorbs ranks 1..3
  FinCStarCat base = full_category({{"a", 1}, {"b", 2}, {"c", 3}});
  SharpCompletion sharp(base);
  std::vector<SharpObject> objs = {sharp.whole("a"), sharp.whole("b"), sharp.whole("c")};
  // an extra object: rank-2 projection on the tuple (a,b)
  ComplexMatrix p(3, 3);
  p(0, 0) = 1.0;
  p(2, 2) = 1.0;
  objs.push_back(SharpObject{"extra", {"a", "b"}, p});
  FinCStarCat mat = sharp.materialize(objs);
  CHECK(validate(mat).all_pass());
  CatFunctor inc = sharp.canonical_inclusion(mat);
  CHECK(is_fully_faithful(inc));
  CHECK(is_unitary_equivalence(inc, 19));
}

TEST_CASE("relative idempotent completion of an ideal") {
  // ambient: End(c) = diagonal 2x2 (C + C); ideal K = first block
  FinCStarCat amb;
  amb.add_object("c", 2);
  MatrixSubspace endo(2, 2);
  endo.extend(ComplexMatrix::unit(2, 2, 0, 0));
  endo.extend(ComplexMatrix::unit(2, 2, 1, 1));
  amb.set_hom(0, 0, std::move(endo));
  REQUIRE(validate(amb).all_pass());

  CatIdeal first(amb);
  first.at(0, 0).extend(ComplexMatrix::unit(2, 2, 0, 0));
  RelativeIdemCompletion rel(amb, first);

  IdemCompletionObject whole{"c|id", "c", ComplexMatrix::identity(2)};
  FinCStarCat mat = rel.materialize({whole});
  CHECK(mat.hom("c|id", "c|id").dim() == 1);

  // K = ambient (unital case) recovers Idem(C)
  CatIdeal all(amb);
  all.at(0, 0).extend(ComplexMatrix::unit(2, 2, 0, 0));
  all.at(0, 0).extend(ComplexMatrix::unit(2, 2, 1, 1));
  RelativeIdemCompletion rel_all(amb, all);
  FinCStarCat mat_all = rel_all.materialize({whole});
  IdemCompletion idem(amb);
  FinCStarCat mat_idem = idem.materialize({idem.whole("c")});
  CHECK(mat_all.hom(0, 0).dim() == mat_idem.hom(0, 0).dim());

  // zero ideal: all homs vanish
  CatIdeal zero(amb);
  RelativeIdemCompletion rel_zero(amb, zero);
  FinCStarCat mat_zero = rel_zero.materialize({whole});
  CHECK(mat_zero.hom(0, 0).dim() == 0);

  // something that is not an ideal is rejected
  FinCStarCat amb2 = full_category({{"c", 2}});
  CatIdeal notideal(amb2);
  notideal.at(0, 0).extend(ComplexMatrix::unit(2, 2, 0, 0));  // not two-sided in M2
  CHECK_THROWS_AS(RelativeIdemCompletion(amb2, notideal), NotAnIdeal);
}
