#ifndef CSTARCAT_ACTION_HPP
#define CSTARCAT_ACTION_HPP

#include <map>
#include <string>
#include <vector>

#include "cstarcat/category.hpp"
#include "cstarcat/group.hpp"

namespace cstarcat {

// A strict spatial action: each group element permutes the objects and is
// implemented by intertwining unitaries V_{g,C} : H_C -> H_{gC} with
// V_{e,C} = id and the exact cocycle V_{gh,C} = V_{g,hC} V_{h,C}.
class GAction {
public:
  GAction() = default;
  GAction(FiniteGroup group, FinCStarCat cat,
          std::vector<std::map<std::string, std::string>> object_perm,
          std::map<std::pair<std::size_t, std::string>, ComplexMatrix> intertwiners)
      : group_(std::move(group)),
        cat_(std::move(cat)),
        perm_(std::move(object_perm)),
        v_(std::move(intertwiners)) {}

  static GAction trivial(FiniteGroup group, FinCStarCat cat) {
    std::vector<std::map<std::string, std::string>> perm(group.order());
    for (std::size_t g = 0; g < group.order(); ++g)
      for (const auto& o : cat.objects()) perm[g][o.id] = o.id;
    return GAction(std::move(group), std::move(cat), std::move(perm), {});
  }

  // permutation of equal-dimension objects with identity intertwiners
  static GAction permutation(FiniteGroup group, FinCStarCat cat,
                             std::vector<std::map<std::string, std::string>> perm) {
    return GAction(std::move(group), std::move(cat), std::move(perm), {});
  }

  const FiniteGroup& group() const { return group_; }
  const FinCStarCat& category() const { return cat_; }

  const std::string& act_object(std::size_t g, const std::string& id) const {
    auto it = perm_[g].find(id);
    if (it == perm_[g].end()) throw UnknownObject("action undefined on '" + id + "'");
    return it->second;
  }

  ComplexMatrix intertwiner(std::size_t g, const std::string& id) const {
    auto it = v_.find({g, id});
    if (it != v_.end()) return it->second;
    const std::size_t d = cat_.dim_of(id);
    if (cat_.dim_of(act_object(g, id)) != d)
      throw InvalidAction("missing intertwiner between objects of unequal dimension");
    return ComplexMatrix::identity(d);
  }

  // g . f = V_{g,C'} f V_{g,C}^* : gC -> gC'
  Morphism act(std::size_t g, const Morphism& f) const {
    return Morphism{act_object(g, f.src), act_object(g, f.dst),
                    intertwiner(g, f.dst) * f.matrix * intertwiner(g, f.src).adjoint()};
  }

  Report validate(const Tolerances& tol = Tolerances{}) const {
    Report rep;
    rep.title = "action validation";
    const std::size_t n = group_.order();

    bool perm_ok = perm_.size() == n;
    double worst_unit_v = 0.0, worst_cocycle = 0.0, worst_hom = 0.0;
    if (perm_ok) {
      for (std::size_t g = 0; g < n && perm_ok; ++g) {
        std::map<std::string, int> hits;
        for (const auto& o : cat_.objects()) {
          auto it = perm_[g].find(o.id);
          if (it == perm_[g].end() || !cat_.has_object(it->second) ||
              cat_.dim_of(it->second) != o.dim) {
            perm_ok = false;
            break;
          }
          if (++hits[it->second] > 1) perm_ok = false;
        }
      }
      if (perm_ok)
        for (const auto& o : cat_.objects())
          if (perm_[group_.identity()].at(o.id) != o.id) perm_ok = false;
    }
    rep.add_flag("object-permutations", perm_ok);
    if (!perm_ok) return rep;

    for (const auto& o : cat_.objects()) {
      ComplexMatrix ve = intertwiner(group_.identity(), o.id);
      worst_unit_v = std::max(
          worst_unit_v, hs_norm(ve - ComplexMatrix::identity(o.dim)));
      for (std::size_t g = 0; g < n; ++g) {
        ComplexMatrix v = intertwiner(g, o.id);
        worst_unit_v = std::max(
            worst_unit_v,
            hs_norm(v.adjoint() * v - ComplexMatrix::identity(o.dim)));
        for (std::size_t h = 0; h < n; ++h) {
          ComplexMatrix lhs = intertwiner(group_.mul(g, h), o.id);
          ComplexMatrix rhs = intertwiner(g, act_object(h, o.id)) * intertwiner(h, o.id);
          worst_cocycle = std::max(worst_cocycle, hs_norm(lhs - rhs));
        }
      }
    }
    rep.add("intertwiner-unitarity", worst_unit_v, tol.membership(1.0));
    rep.add("cocycle", worst_cocycle, tol.membership(1.0));

    for (std::size_t i = 0; i < cat_.object_count(); ++i)
      for (std::size_t j = 0; j < cat_.object_count(); ++j) {
        const auto& hom = cat_.hom(i, j);
        for (std::size_t k = 0; k < hom.dim(); ++k)
          for (std::size_t g = 0; g < n; ++g) {
            Morphism m{cat_.object(i).id, cat_.object(j).id, hom.basis(k)};
            Morphism gm = act(g, m);
            worst_hom = std::max(worst_hom,
                                 cat_.hom(gm.src, gm.dst).residual(gm.matrix));
          }
      }
    rep.add("hom-preservation", worst_hom, tol.membership(1.0));
    return rep;
  }

  void require_valid(const Tolerances& tol = Tolerances{}) const {
    if (!validate(tol).all_pass()) throw InvalidAction("action fails validation");
  }

  // restriction to a subgroup (element indices are re-labeled 0..|H|-1)
  GAction restrict_to(const Subgroup& h) const {
    if (!is_subgroup(group_, h)) throw NotASubgroup("restriction needs a subgroup");
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = i;
    std::vector<std::vector<std::size_t>> table(h.size(),
                                                std::vector<std::size_t>(h.size()));
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t b = 0; b < h.size(); ++b)
        table[a][b] = pos.at(group_.mul(h[a], h[b]));
    std::vector<std::map<std::string, std::string>> perm;
    std::map<std::pair<std::size_t, std::string>, ComplexMatrix> v;
    for (std::size_t a = 0; a < h.size(); ++a) {
      perm.push_back(perm_[h[a]]);
      for (const auto& o : cat_.objects()) {
        auto it = v_.find({h[a], o.id});
        if (it != v_.end()) v[{a, o.id}] = it->second;
      }
    }
    return GAction(FiniteGroup(std::move(table)), cat_, std::move(perm), std::move(v));
  }

private:
  FiniteGroup group_;
  FinCStarCat cat_;
  std::vector<std::map<std::string, std::string>> perm_;
  std::map<std::pair<std::size_t, std::string>, ComplexMatrix> v_;
};

}  // namespace cstarcat

#endif
