#ifndef CSTARCAT_COMPLETIONS_HPP
#define CSTARCAT_COMPLETIONS_HPP

#include <string>
#include <utility>
#include <vector>

#include "cstarcat/functor.hpp"
#include "cstarcat/sums.hpp"

namespace cstarcat {

// Objects of the additive completion are finite tuples of base objects;
// objects of Idem are pairs (C,p); objects of the sharp completion are
// pairs (tuple, p). The completions have infinitely many objects, so the
// handles are lazy: any finite set of objects can be materialized into a
// validating FinCStarCat together with its canonical inclusion.

struct TupleObject {
  std::string id;                    // object id in the materialization
  std::vector<std::string> parts;    // base object ids
};

struct IdemCompletionObject {
  std::string id;
  std::string base;        // object of the base category
  ComplexMatrix projection;
};

class AdditiveCompletion {
public:
  explicit AdditiveCompletion(FinCStarCat base) : base_(std::move(base)) {}

  const FinCStarCat& base() const { return base_; }

  TupleObject tuple(const std::vector<std::string>& parts) const {
    return TupleObject{sum_object_id(parts), parts};
  }

  std::size_t tuple_dim(const TupleObject& t) const {
    std::size_t d = 0;
    for (const auto& p : t.parts) d += base_.dim_of(p);
    return d;
  }

  // Hom between tuples is the space of block matrices with (i,j) block in
  // hom(parts[j] -> parts'[i]).
  FinCStarCat materialize(const std::vector<TupleObject>& objs) const {
    FinCStarCat out;
    std::vector<std::vector<std::size_t>> offs(objs.size());
    for (std::size_t a = 0; a < objs.size(); ++a) {
      std::size_t d = 0;
      for (const auto& p : objs[a].parts) {
        offs[a].push_back(d);
        d += base_.dim_of(p);
      }
      out.add_object(objs[a].id, d);
    }
    for (std::size_t a = 0; a < objs.size(); ++a)
      for (std::size_t b = 0; b < objs.size(); ++b) {
        MatrixSubspace s(out.object(b).dim, out.object(a).dim);
        for (std::size_t i = 0; i < objs[b].parts.size(); ++i)
          for (std::size_t j = 0; j < objs[a].parts.size(); ++j) {
            const auto& h = base_.hom(objs[a].parts[j], objs[b].parts[i]);
            for (std::size_t k = 0; k < h.dim(); ++k) {
              ComplexMatrix m(out.object(b).dim, out.object(a).dim);
              m.set_block(offs[b][i], offs[a][j], h.basis(k));
              s.extend(m);
            }
          }
        out.set_hom(a, b, std::move(s));
      }
    return out;
  }

  // base -> materialized completion, C |-> the singleton tuple (C).
  CatFunctor canonical_inclusion(const FinCStarCat& materialized) const {
    std::map<std::string, std::string> om;
    for (const auto& o : base_.objects()) om[o.id] = tuple({o.id}).id;
    return make_functor(base_, materialized, om,
                        [](const std::string&, const std::string&,
                           const ComplexMatrix& m) { return m; });
  }

private:
  FinCStarCat base_;
};

class IdemCompletion {
public:
  explicit IdemCompletion(FinCStarCat base) : base_(std::move(base)) {}

  const FinCStarCat& base() const { return base_; }

  IdemCompletionObject whole(const std::string& base_obj) const {
    return IdemCompletionObject{
        base_obj + "|id", base_obj,
        ComplexMatrix::identity(base_.dim_of(base_obj))};
  }

  // Hom((C,p),(C',p')) = p' hom(C,C') p. The object (C,p) is realized on
  // the range of p, so the carrier dimension is rank(p) and the ambient
  // identity is the identity morphism.
  FinCStarCat materialize(const std::vector<IdemCompletionObject>& objs,
                          const Tolerances& tol = Tolerances{}) const {
    FinCStarCat out;
    std::vector<ComplexMatrix> range;  // isometry range(p) -> carrier of base
    for (const auto& o : objs) {
      const std::size_t d = base_.dim_of(o.base);
      const ComplexMatrix& p = o.projection;
      if (p.rows() != d || p.cols() != d)
        throw NotAProjection("projection shape mismatch for " + o.id);
      const double scale = hs_norm(p);
      if (hs_norm(p - p.adjoint()) > tol.membership(scale) ||
          hs_norm(p * p - p) > tol.membership(scale))
        throw NotAProjection("object " + o.id + " carries no projection");
      if (!base_.hom(o.base, o.base).contains(p, tol))
        throw NotAProjection("projection of " + o.id + " is not in End(" + o.base + ")");
      range.push_back(range_isometry(p));
      out.add_object(o.id, range.back().cols());
    }
    for (std::size_t a = 0; a < objs.size(); ++a)
      for (std::size_t b = 0; b < objs.size(); ++b) {
        const auto& h = base_.hom(objs[a].base, objs[b].base);
        MatrixSubspace s(range[b].cols(), range[a].cols());
        for (std::size_t k = 0; k < h.dim(); ++k)
          s.extend(range[b].adjoint() * h.basis(k) * range[a], tol.rank);
        out.set_hom(a, b, std::move(s));
      }
    return out;
  }

  // for p = id the range basis is the identity, so canonical inclusions
  // are carried by the same matrices
  static ComplexMatrix range_isometry(const ComplexMatrix& p) { return range_basis(p); }

  CatFunctor canonical_inclusion(const FinCStarCat& materialized) const {
    std::map<std::string, std::string> om;
    for (const auto& o : base_.objects()) om[o.id] = whole(o.id).id;
    return make_functor(base_, materialized, om,
                        [](const std::string&, const std::string&,
                           const ComplexMatrix& m) { return m; });
  }

private:
  FinCStarCat base_;
};

// An object of the materialized Idem(C): note that the identity of (C,p)
// is p itself, so these categories are unital with non-ambient units only
// after compression; here Hom-spaces keep the ambient carrier and the
// object (C,p) is realized on the range of p.
struct SharpObject {
  std::string id;
  std::vector<std::string> parts;
  ComplexMatrix projection;  // on the sum of the parts
};

// (-)^sharp = Idem of the additive completion.
class SharpCompletion {
public:
  explicit SharpCompletion(FinCStarCat base)
      : additive_(std::move(base)) {}

  const AdditiveCompletion& additive() const { return additive_; }

  SharpObject whole(const std::string& base_obj) const {
    TupleObject t = additive_.tuple({base_obj});
    return SharpObject{t.id + "|id", t.parts,
                       ComplexMatrix::identity(additive_.tuple_dim(t))};
  }

  FinCStarCat materialize(const std::vector<SharpObject>& objs,
                          const Tolerances& tol = Tolerances{}) const {
    std::vector<TupleObject> tuples;
    for (const auto& o : objs) tuples.push_back(TupleObject{o.id + "~t", o.parts});
    FinCStarCat add = additive_.materialize(tuples);
    IdemCompletion idem(add);
    std::vector<IdemCompletionObject> idems;
    for (std::size_t i = 0; i < objs.size(); ++i)
      idems.push_back(IdemCompletionObject{objs[i].id, tuples[i].id, objs[i].projection});
    return idem.materialize(idems, tol);
  }

  CatFunctor canonical_inclusion(const FinCStarCat& materialized) const {
    const FinCStarCat& base = additive_.base();
    std::map<std::string, std::string> om;
    for (const auto& o : base.objects()) om[o.id] = whole(o.id).id;
    return make_functor(base, materialized, om,
                        [](const std::string&, const std::string&,
                           const ComplexMatrix& m) { return m; });
  }

private:
  AdditiveCompletion additive_;
};

// Relative idempotent completion of an ideal K inside a unital category:
// same objects as Idem(C), morphisms p' f p with f in K. Because K is an
// ideal, that span equals K(C,C') intersected with the (p,p')-compressed
// morphisms.
class RelativeIdemCompletion {
public:
  RelativeIdemCompletion(FinCStarCat ambient, CatIdeal ideal,
                         const Tolerances& tol = Tolerances{})
      : ambient_(std::move(ambient)), ideal_(std::move(ideal)) {
    Report rep = validate_ideal(ambient_, ideal_, tol);
    if (!rep.all_pass()) throw NotAnIdeal("K is not an ideal of the ambient category");
  }

  const FinCStarCat& ambient() const { return ambient_; }

  FinCStarCat materialize(const std::vector<IdemCompletionObject>& objs,
                          const Tolerances& tol = Tolerances{}) const {
    FinCStarCat out;
    std::vector<ComplexMatrix> range;
    for (const auto& o : objs) {
      const std::size_t d = ambient_.dim_of(o.base);
      const ComplexMatrix& p = o.projection;
      const double scale = hs_norm(p);
      if (p.rows() != d || p.cols() != d ||
          hs_norm(p - p.adjoint()) > tol.membership(scale) ||
          hs_norm(p * p - p) > tol.membership(scale))
        throw NotAProjection("object " + o.id + " carries no projection");
      range.push_back(IdemCompletion::range_isometry(p));
      out.add_object(o.id, range.back().cols());
    }
    for (std::size_t a = 0; a < objs.size(); ++a)
      for (std::size_t b = 0; b < objs.size(); ++b) {
        const auto& k = ideal_.at(ambient_.index_of(objs[a].base),
                                  ambient_.index_of(objs[b].base));
        MatrixSubspace s(range[b].cols(), range[a].cols());
        for (std::size_t i = 0; i < k.dim(); ++i)
          s.extend(range[b].adjoint() * k.basis(i) * range[a], tol.rank);
        out.set_hom(a, b, std::move(s));
      }
    return out;
  }

private:
  FinCStarCat ambient_;
  CatIdeal ideal_;
};

inline AdditiveCompletion additive_completion(FinCStarCat cat) {
  return AdditiveCompletion(std::move(cat));
}

inline IdemCompletion idem_completion(FinCStarCat cat) {
  return IdemCompletion(std::move(cat));
}

inline SharpCompletion sharp(FinCStarCat cat) { return SharpCompletion(std::move(cat)); }

inline RelativeIdemCompletion relative_idem_completion(FinCStarCat ambient,
                                                       CatIdeal ideal,
                                                       const Tolerances& tol = Tolerances{}) {
  return RelativeIdemCompletion(std::move(ambient), std::move(ideal), tol);
}

}  // namespace cstarcat

#endif
