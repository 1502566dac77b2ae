#ifndef CSTARCAT_CROSSED_HPP
#define CSTARCAT_CROSSED_HPP

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cstarcat/action.hpp"
#include "cstarcat/functor.hpp"

namespace cstarcat {

// Reduced crossed product of a finite C*-category by a finite group with
// a strict spatial action. Objects are unchanged; the object C is carried
// by (+)_{l in G} H_{lC}, and Hom(C,C') is spanned by the operators
//   rho(f,g) = sum_l e_l (lg . f) e_{lg}*        for f : C -> g^{-1}C'.
// For a finite group this algebraic span is already closed, so the
// reduced and maximal products coincide.
class CrossedProduct {
public:
  CrossedProduct() = default;

  explicit CrossedProduct(GAction action, const Tolerances& tol = Tolerances{})
      : action_(std::move(action)) {
    const FiniteGroup& grp = action_.group();
    const FinCStarCat& base = action_.category();
    const std::size_t n = grp.order();
    for (const auto& o : base.objects()) product_.add_object(o.id, n * o.dim);
    for (std::size_t i = 0; i < base.object_count(); ++i)
      for (std::size_t j = 0; j < base.object_count(); ++j) {
        const std::string& c = base.object(i).id;
        const std::string& cp = base.object(j).id;
        MatrixSubspace s(n * base.object(j).dim, n * base.object(i).dim);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        std::size_t algebraic_dim = 0;
        for (std::size_t g = 0; g < n; ++g) {
          const std::string& tgt = action_.act_object(grp.inv(g), cp);
          const auto& h = base.hom(c, tgt);
          algebraic_dim += h.dim();
          for (std::size_t k = 0; k < h.dim(); ++k) {
            Morphism f{c, tgt, h.basis(k)};
            s.extend(scale * rho_matrix(f, g), tol.rank);
          }
        }
        // the generators occupy disjoint block diagonals per group
        // element, so they must stay linearly independent
        if (s.dim() != algebraic_dim)
          throw InvalidAction("crossed-product generators are not independent at " +
                              c + "->" + cp);
        product_.set_hom(i, j, std::move(s));
      }
  }

  const GAction& action() const { return action_; }
  const FiniteGroup& group() const { return action_.group(); }
  const FinCStarCat& base() const { return action_.category(); }
  const FinCStarCat& category() const { return product_; }

  // generator map (f,g) |-> rho(f,g) : src(f) -> g.dst(f)
  Morphism rho(const Morphism& f, std::size_t g) const {
    return Morphism{f.src, action_.act_object(g, f.dst), rho_matrix(f, g)};
  }

  // coordinate isometry e_l : H_{lC} -> carrier of C
  ComplexMatrix slot_isometry(const std::string& c, std::size_t l) const {
    const std::size_t d = base().dim_of(c);
    ComplexMatrix e(group().order() * d, d);
    e.set_block(l * d, 0, ComplexMatrix::identity(d));
    return e;
  }

  // inverse of the generator map: the (f_g)_{g in G} with
  // x = sum_g rho(f_g, g), recovered from the block diagonals.
  std::vector<Morphism> decompose(const Morphism& x) const {
    const FiniteGroup& grp = group();
    const std::size_t n = grp.order();
    const std::size_t dc = base().dim_of(x.src);
    const std::size_t dcp = base().dim_of(x.dst);
    std::vector<Morphism> out;
    for (std::size_t g = 0; g < n; ++g) {
      const std::string tgt = action_.act_object(grp.inv(g), x.dst);
      ComplexMatrix f(base().dim_of(tgt), dc);
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t u = grp.mul(l, g);
        ComplexMatrix block = x.matrix.block(l * dcp, u * dc, dcp, dc);
        // f = (u.)^{-1} block
        f += action_.intertwiner(u, tgt).adjoint() * block *
             action_.intertwiner(u, x.src);
      }
      f *= cplx(1.0 / static_cast<double>(n));
      out.push_back(Morphism{x.src, tgt, f});
    }
    return out;
  }

private:
  ComplexMatrix rho_matrix(const Morphism& f, std::size_t g) const {
    const FiniteGroup& grp = group();
    const std::size_t n = grp.order();
    const std::size_t dc = base().dim_of(f.src);
    const std::size_t dd = base().dim_of(f.dst);
    ComplexMatrix m(n * dd, n * dc);
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t u = grp.mul(l, g);
      Morphism moved = action_.act(u, f);
      m.set_block(l * dd, u * dc, moved.matrix);
    }
    return m;
  }

  GAction action_;
  FinCStarCat product_;
};

inline CrossedProduct reduced_crossed_product(const GAction& action,
                                              const Tolerances& tol = Tolerances{}) {
  action.require_valid(tol);
  return CrossedProduct(action, tol);
}

// Linear-level check that q : K x G -> K x_r G is bijective for finite
// (hence amenable) groups: the reduced Hom-spaces have the full algebraic
// dimension |G| * dim Hom.
inline Report max_equals_reduced_check(const CrossedProduct& cp,
                                       const Tolerances& tol = Tolerances{}) {
  (void)tol;
  Report rep;
  rep.title = "max = reduced (amenable)";
  const FinCStarCat& base = cp.base();
  const FiniteGroup& grp = cp.group();
  bool pairwise = true;
  std::size_t total_alg = 0, total_red = 0;
  for (std::size_t i = 0; i < base.object_count(); ++i)
    for (std::size_t j = 0; j < base.object_count(); ++j) {
      std::size_t alg = 0;
      for (std::size_t g = 0; g < grp.order(); ++g)
        alg += base
                   .hom(base.object(i).id,
                        cp.action().act_object(grp.inv(g), base.object(j).id))
                   .dim();
      std::size_t red = cp.category().hom(i, j).dim();
      if (alg != red) pairwise = false;
      total_alg += alg;
      total_red += red;
    }
  rep.add_flag("hom-dimension-equality", pairwise,
               std::to_string(total_red) + " reduced vs " + std::to_string(total_alg) +
                   " algebraic");
  rep.add_flag("total-dimension", total_red == grp.order() * base.total_hom_dim(),
               "dim A = |G| * dim A(base): " + std::to_string(total_red) + " = " +
                   std::to_string(grp.order()) + " * " +
                   std::to_string(base.total_hom_dim()));
  return rep;
}

// Functor between crossed products induced by an equivariant base functor
// and a group embedding: rho(f,g) |-> rho(F f, iota g).
inline CatFunctor crossed_functor(
    const CrossedProduct& src, const CrossedProduct& dst,
    const std::map<std::string, std::string>& base_object_map,
    const std::function<Morphism(const Morphism&)>& base_morphism_map,
    const std::vector<std::size_t>& group_embedding,
    const Tolerances& tol = Tolerances{}) {
  return make_functor(
      src.category(), dst.category(), base_object_map,
      [&, base_object_map, base_morphism_map, group_embedding](
          const std::string& c, const std::string& cp, const ComplexMatrix& m) {
        std::vector<Morphism> parts = src.decompose(Morphism{c, cp, m});
        ComplexMatrix out(dst.category().dim_of(base_object_map.at(cp)),
                          dst.category().dim_of(base_object_map.at(c)));
        for (std::size_t g = 0; g < parts.size(); ++g) {
          if (hs_norm(parts[g].matrix) <= 1e-14) continue;
          Morphism mapped = base_morphism_map(parts[g]);
          out += dst.rho(mapped, group_embedding[g]).matrix;
        }
        return out;
      },
      tol);
}

struct SubgroupInclusion {
  Subgroup subgroup;
  CrossedProduct restricted;  // Res_H(cat) x H
  CatFunctor functor;         // into cat x G, (f,h) |-> (f,h)
  Report verification;        // *-functoriality and sampled isometry
};

// The isometric inclusion Res_H(K) x_r H -> K x_r G; the returned
// functor is verified *-functorial and isometric on a random sample.
inline SubgroupInclusion subgroup_inclusion(const CrossedProduct& cp, const Subgroup& h,
                                            std::uint64_t seed = 1,
                                            const Tolerances& tol = Tolerances{}) {
  if (!is_subgroup(cp.group(), h)) throw NotASubgroup("not a subgroup");
  SubgroupInclusion out;
  out.subgroup = h;
  out.restricted = CrossedProduct(cp.action().restrict_to(h), tol);
  std::map<std::string, std::string> object_map;
  for (const auto& o : cp.base().objects()) object_map[o.id] = o.id;
  out.functor = crossed_functor(
      out.restricted, cp, object_map, [](const Morphism& f) { return f; }, h, tol);
  out.verification = validate_functor(out.functor, tol);
  Rng rng(seed);
  double worst = 0.0;
  const FinCStarCat& rcat = out.restricted.category();
  for (int t = 0; t < 20; ++t) {
    std::size_t i = rng.below(rcat.object_count());
    std::size_t j = rng.below(rcat.object_count());
    const auto& hom = rcat.hom(i, j);
    if (hom.dim() == 0) continue;
    Morphism m{rcat.object(i).id, rcat.object(j).id, hom.random_element(rng)};
    double n = norm(m);
    worst = std::max(worst, std::abs(norm(out.functor.apply(m)) - n) / (1.0 + n));
  }
  out.verification.add("isometric-on-samples", worst, 1e-8);
  return out;
}

// The equivariant category D_X: one object C@x per object C and point x,
// Hom(C@x, C'@y) = Hom(C,C') when x = y and 0 otherwise. This is the
// finite stand-in for C[X] on single-point-supported objects.
inline std::string at_point_id(const std::string& obj, const std::string& point) {
  return obj + "@" + point;
}

inline GAction c_of_gset(const GAction& action, const FiniteGSet& x) {
  x.validate(action.group());
  const FinCStarCat& base = action.category();
  FinCStarCat dx;
  for (const auto& o : base.objects())
    for (const auto& pt : x.points) dx.add_object(at_point_id(o.id, pt), o.dim);
  for (std::size_t i = 0; i < base.object_count(); ++i)
    for (std::size_t j = 0; j < base.object_count(); ++j) {
      const auto& h = base.hom(i, j);
      for (std::size_t p = 0; p < x.size(); ++p) {
        MatrixSubspace s(base.object(j).dim, base.object(i).dim);
        for (std::size_t k = 0; k < h.dim(); ++k) s.extend(h.basis(k));
        dx.set_hom(dx.index_of(at_point_id(base.object(i).id, x.points[p])),
                   dx.index_of(at_point_id(base.object(j).id, x.points[p])),
                   std::move(s));
      }
    }
  std::vector<std::map<std::string, std::string>> perm(action.group().order());
  std::map<std::pair<std::size_t, std::string>, ComplexMatrix> v;
  for (std::size_t g = 0; g < action.group().order(); ++g)
    for (const auto& o : base.objects())
      for (std::size_t p = 0; p < x.size(); ++p) {
        const std::string from = at_point_id(o.id, x.points[p]);
        const std::string to =
            at_point_id(action.act_object(g, o.id), x.points[x.apply(g, p)]);
        perm[g][from] = to;
        v[{g, from}] = action.intertwiner(g, o.id);
      }
  return GAction(action.group(), std::move(dx), std::move(perm), std::move(v));
}

// The functor D_X -> D_X' induced by an equivariant map f : X -> X',
// C@x |-> C@f(x); morphisms are carried by the same matrices.
inline CatFunctor c_of_gset_map(const GAction& dx_action, const GAction& dy_action,
                                const FiniteGSet& x, const FiniteGSet& y,
                                const std::vector<std::size_t>& point_map,
                                const Tolerances& tol = Tolerances{}) {
  if (!is_equivariant_map(dx_action.group(), x, y, point_map))
    throw NotEquivariant("point map is not equivariant");
  const FinCStarCat& dx = dx_action.category();
  const FinCStarCat& dy = dy_action.category();
  std::map<std::string, std::string> om;
  for (const auto& o : dx.objects()) {
    auto at = o.id.rfind('@');
    const std::string base = o.id.substr(0, at);
    const std::string pt = o.id.substr(at + 1);
    std::size_t pi = x.size();
    for (std::size_t p = 0; p < x.size(); ++p)
      if (x.points[p] == pt) pi = p;
    if (pi == x.size()) throw UnknownObject("point label " + pt);
    om[o.id] = at_point_id(base, y.points[point_map[pi]]);
  }
  return make_functor(dx, dy, om,
                      [](const std::string&, const std::string&,
                         const ComplexMatrix& m) { return m; },
                      tol);
}

}  // namespace cstarcat

#endif
