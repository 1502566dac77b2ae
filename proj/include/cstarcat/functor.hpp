#ifndef CSTARCAT_FUNCTOR_HPP
#define CSTARCAT_FUNCTOR_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cstarcat/category.hpp"

namespace cstarcat {

// A *-functor between concrete finite C*-categories: an object map plus,
// for every source pair (C,C'), the coefficient matrix expressing the
// image of each Hom-basis element in the target Hom basis.
struct CatFunctor {
  FinCStarCat source;
  FinCStarCat target;
  std::map<std::string, std::string> object_map;
  // keyed by source object indices (src,dst); shape: target hom dim x source hom dim
  std::map<std::pair<std::size_t, std::size_t>, ComplexMatrix> hom_action;

  const std::string& map_object(const std::string& id) const {
    auto it = object_map.find(id);
    if (it == object_map.end()) throw UnknownObject("functor undefined on '" + id + "'");
    return it->second;
  }

  const ComplexMatrix& action(std::size_t s, std::size_t d) const {
    auto it = hom_action.find({s, d});
    if (it == hom_action.end())
      throw UnknownObject("functor has no hom action for pair");
    return it->second;
  }

  Morphism apply(const Morphism& f) const {
    std::size_t s = source.index_of(f.src), d = source.index_of(f.dst);
    const auto& hs = source.hom(s, d);
    const auto& ht = target.hom(map_object(f.src), map_object(f.dst));
    std::vector<cplx> c = hs.coefficients(f.matrix);
    const ComplexMatrix& m = action(s, d);
    std::vector<cplx> out(ht.dim(), cplx(0.0));
    for (std::size_t i = 0; i < ht.dim(); ++i)
      for (std::size_t j = 0; j < hs.dim(); ++j) out[i] += m(i, j) * c[j];
    return Morphism{map_object(f.src), map_object(f.dst), ht.from_coefficients(out)};
  }

  bool injective_on_objects() const {
    std::map<std::string, int> seen;
    for (const auto& [k, v] : object_map)
      if (++seen[v] > 1) return false;
    return true;
  }
};

// Builds a functor from an object map and a rule for morphism matrices.
// The image of every source basis element is expanded in the target basis;
// a residual above tolerance means the rule leaves the target Hom-space.
inline CatFunctor make_functor(
    const FinCStarCat& source, const FinCStarCat& target,
    const std::map<std::string, std::string>& object_map,
    const std::function<ComplexMatrix(const std::string&, const std::string&,
                                      const ComplexMatrix&)>& morphism_rule,
    const Tolerances& tol = Tolerances{}) {
  CatFunctor f;
  f.source = source;
  f.target = target;
  f.object_map = object_map;
  for (std::size_t s = 0; s < source.object_count(); ++s)
    for (std::size_t d = 0; d < source.object_count(); ++d) {
      const auto& hs = source.hom(s, d);
      const std::string& ts = object_map.at(source.object(s).id);
      const std::string& td = object_map.at(source.object(d).id);
      const auto& ht = target.hom(ts, td);
      ComplexMatrix coeff(ht.dim(), hs.dim());
      for (std::size_t j = 0; j < hs.dim(); ++j) {
        ComplexMatrix img =
            morphism_rule(source.object(s).id, source.object(d).id, hs.basis(j));
        auto [proj, res] = ht.project(img);
        if (res > tol.membership(hs_norm(img)))
          throw ValidationError("functor image leaves target hom space at " +
                                source.object(s).id + "->" + source.object(d).id);
        std::vector<cplx> c = ht.coefficients(img);
        for (std::size_t i = 0; i < ht.dim(); ++i) coeff(i, j) = c[i];
      }
      f.hom_action[{s, d}] = std::move(coeff);
    }
  return f;
}

inline CatFunctor identity_functor(const FinCStarCat& cat) {
  std::map<std::string, std::string> om;
  for (const auto& o : cat.objects()) om[o.id] = o.id;
  return make_functor(cat, cat, om,
                      [](const std::string&, const std::string&,
                         const ComplexMatrix& m) { return m; });
}

// Checks unitality, multiplicativity and *-compatibility on all basis
// elements and pairs.
inline Report validate_functor(const CatFunctor& f, const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "functor validation";
  const FinCStarCat& S = f.source;
  const std::size_t n = S.object_count();

  double worst_unit = 0.0, unit_tol = tol.membership(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    Morphism img = f.apply(S.identity(S.object(i).id));
    ComplexMatrix id = ComplexMatrix::identity(f.target.dim_of(img.dst));
    double r = hs_norm(img.matrix - id);
    double t = tol.membership(hs_norm(id));
    if (r / t > worst_unit / unit_tol) {
      worst_unit = r;
      unit_tol = t;
    }
  }
  rep.add("unitality", worst_unit, unit_tol);

  double worst_mult = 0.0, mult_tol = tol.membership(1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& sij = S.hom(i, j);
        const auto& sjk = S.hom(j, k);
        for (std::size_t a = 0; a < sij.dim(); ++a)
          for (std::size_t b = 0; b < sjk.dim(); ++b) {
            Morphism x{S.object(i).id, S.object(j).id, sij.basis(a)};
            Morphism y{S.object(j).id, S.object(k).id, sjk.basis(b)};
            Morphism lhs = f.apply(compose(y, x));
            Morphism rhs = compose(f.apply(y), f.apply(x));
            double r = hs_norm(lhs.matrix - rhs.matrix);
            double t = tol.membership(hs_norm(rhs.matrix));
            if (r / t > worst_mult / mult_tol) {
              worst_mult = r;
              mult_tol = t;
            }
          }
      }
  rep.add("multiplicativity", worst_mult, mult_tol);

  double worst_star = 0.0, star_tol = tol.membership(1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& sij = S.hom(i, j);
      for (std::size_t a = 0; a < sij.dim(); ++a) {
        Morphism x{S.object(i).id, S.object(j).id, sij.basis(a)};
        Morphism lhs = f.apply(adjoint(x));
        Morphism rhs = adjoint(f.apply(x));
        double r = hs_norm(lhs.matrix - rhs.matrix);
        double t = tol.membership(hs_norm(rhs.matrix));
        if (r / t > worst_star / star_tol) {
          worst_star = r;
          star_tol = t;
        }
      }
    }
  rep.add("star-compatibility", worst_star, star_tol);
  return rep;
}

// Fully faithful iff every hom_action coefficient matrix is injective and
// its image spans the target hom space.
inline bool is_fully_faithful(const CatFunctor& f, const Tolerances& tol = Tolerances{}) {
  for (std::size_t s = 0; s < f.source.object_count(); ++s)
    for (std::size_t d = 0; d < f.source.object_count(); ++d) {
      const auto& m = f.action(s, d);
      std::size_t rk = numeric_rank(m, tol);
      if (rk != m.cols() || rk != m.rows()) return false;
    }
  return true;
}

// Fully faithful + essentially surjective, witnessed by unitaries found
// through randomized polar decomposition.
inline bool is_unitary_equivalence(const CatFunctor& f, std::uint64_t seed = 7,
                                   const Tolerances& tol = Tolerances{}) {
  if (!is_fully_faithful(f, tol)) return false;
  for (const auto& e : f.target.objects()) {
    bool hit = false;
    for (const auto& [src_id, tgt_id] : f.object_map) {
      if (find_unitary_iso(f.target, tgt_id, e.id, seed, tol)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

inline CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
  // g after f
  std::map<std::string, std::string> om;
  for (const auto& [k, v] : f.object_map) om[k] = g.object_map.at(v);
  return make_functor(f.source, g.target, om,
                      [&](const std::string& s, const std::string& d,
                          const ComplexMatrix& m) {
                        return g.apply(f.apply(Morphism{s, d, m})).matrix;
                      });
}

}  // namespace cstarcat

#endif
