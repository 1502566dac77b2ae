#ifndef CSTARCAT_A_FUNCTOR_HPP
#define CSTARCAT_A_FUNCTOR_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cstarcat/functor.hpp"

namespace cstarcat {

// A finite-dimensional C*-algebra given concretely: a *-closed,
// multiplicatively closed subspace of the rep_dim x rep_dim matrices.
// The unit may differ from the ambient identity (corners, ideals).
struct ConcreteAlgebra {
  std::size_t rep_dim = 0;
  MatrixSubspace space;
  std::optional<ComplexMatrix> unit;

  std::size_t dim() const { return space.dim(); }

  const ComplexMatrix& require_unit() const {
    if (!unit) throw NotUnital("algebra has no unit");
    return *unit;
  }

  Report validate(const Tolerances& tol = Tolerances{}) const {
    Report rep;
    rep.title = "algebra validation";
    double worst_mult = 0.0, worst_star = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      worst_star = std::max(worst_star, space.residual(space.basis(i).adjoint()));
      for (std::size_t j = 0; j < space.dim(); ++j)
        worst_mult =
            std::max(worst_mult, space.residual(space.basis(i) * space.basis(j)));
    }
    rep.add("multiplicative-closure", worst_mult, tol.membership(1.0));
    rep.add("star-closure", worst_star, tol.membership(1.0));
    if (unit) {
      double worst_unit = hs_norm(*unit - unit->adjoint());
      worst_unit = std::max(worst_unit, hs_norm(*unit * *unit - *unit));
      for (std::size_t i = 0; i < space.dim(); ++i) {
        worst_unit = std::max(worst_unit, hs_norm(*unit * space.basis(i) - space.basis(i)));
        worst_unit = std::max(worst_unit, hs_norm(space.basis(i) * *unit - space.basis(i)));
      }
      rep.add("unit", worst_unit, tol.membership(hs_norm(*unit)));
    }
    return rep;
  }

  // every finite-dimensional concrete *-algebra has a unit; find it
  void ensure_unit(const Tolerances& tol = Tolerances{}) {
    if (unit) return;
    auto [u, res] = find_unit(space);
    if (res > tol.membership(hs_norm(u)))
      throw NotUnital("no two-sided unit found in the span");
    unit = u;
  }
};

// A linear map between concrete algebras recorded by the images of the
// source basis; *-homomorphism property is checked, not assumed.
struct StarHomomorphism {
  ConcreteAlgebra source;
  ConcreteAlgebra target;
  std::vector<ComplexMatrix> images;  // image of each source basis element

  ComplexMatrix apply(const ComplexMatrix& x) const {
    std::vector<cplx> c = source.space.coefficients(x);
    ComplexMatrix out(target.rep_dim, target.rep_dim);
    for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * images[k];
    return out;
  }

  Report validate(const Tolerances& tol = Tolerances{}) const {
    Report rep;
    rep.title = "star-homomorphism validation";
    double worst_mult = 0.0, worst_star = 0.0, worst_mem = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      worst_mem = std::max(worst_mem, target.space.residual(images[i]));
      worst_star = std::max(
          worst_star, hs_norm(apply(source.space.basis(i).adjoint()) - images[i].adjoint()));
      for (std::size_t j = 0; j < images.size(); ++j) {
        ComplexMatrix lhs = apply(source.space.basis(i) * source.space.basis(j));
        worst_mult = std::max(worst_mult, hs_norm(lhs - images[i] * images[j]));
      }
    }
    rep.add("image-membership", worst_mem, tol.membership(1.0));
    rep.add("multiplicative", worst_mult, tol.membership(1.0));
    rep.add("star", worst_star, tol.membership(1.0));
    return rep;
  }

  void require_homomorphism(const Tolerances& tol = Tolerances{}) const {
    if (!validate(tol).all_pass())
      throw NotAHomomorphism("map fails the *-homomorphism relations");
  }
};

inline StarHomomorphism compose(const StarHomomorphism& g, const StarHomomorphism& f) {
  StarHomomorphism out;
  out.source = f.source;
  out.target = g.target;
  for (std::size_t k = 0; k < f.images.size(); ++k)
    out.images.push_back(g.apply(f.images[k]));
  return out;
}

inline StarHomomorphism identity_homomorphism(const ConcreteAlgebra& a) {
  StarHomomorphism out;
  out.source = a;
  out.target = a;
  for (std::size_t k = 0; k < a.space.dim(); ++k) out.images.push_back(a.space.basis(k));
  return out;
}

// Coordinate bookkeeping for A(cat): each object C owns a contiguous
// coordinate range in the representation space.
struct BlockIndex {
  std::vector<std::string> order;              // object ids in block order
  std::map<std::string, std::size_t> offset;   // start coordinate per object
  std::map<std::string, std::size_t> dims;

  std::pair<std::size_t, std::size_t> range(const std::string& id) const {
    return {offset.at(id), dims.at(id)};
  }

  // embed a morphism f : C -> C' into the (C',C) block
  ComplexMatrix embed(std::size_t rep_dim, const std::string& src,
                      const std::string& dst, const ComplexMatrix& f) const {
    ComplexMatrix m(rep_dim, rep_dim);
    m.set_block(offset.at(dst), offset.at(src), f);
    return m;
  }

  ComplexMatrix extract(const ComplexMatrix& m, const std::string& src,
                        const std::string& dst) const {
    return m.block(offset.at(dst), offset.at(src), dims.at(dst), dims.at(src));
  }
};

struct AResult {
  ConcreteAlgebra algebra;
  BlockIndex index;
};

// A(cat) = (+)_{C,C'} Hom(C,C') realized as block matrices on the direct
// sum of the object Hilbert spaces: the (C',C) block of an element lies
// in Hom(C,C'). dim A(cat) = total Hom dimension.
inline AResult build_A(const FinCStarCat& cat, const Tolerances& tol = Tolerances{}) {
  AResult out;
  std::size_t total = 0;
  for (const auto& o : cat.objects()) {
    out.index.order.push_back(o.id);
    out.index.offset[o.id] = total;
    out.index.dims[o.id] = o.dim;
    total += o.dim;
  }
  out.algebra.rep_dim = total;
  MatrixSubspace space(total, total);
  for (std::size_t i = 0; i < cat.object_count(); ++i)
    for (std::size_t j = 0; j < cat.object_count(); ++j) {
      const auto& h = cat.hom(i, j);
      for (std::size_t k = 0; k < h.dim(); ++k)
        space.extend(out.index.embed(total, cat.object(i).id, cat.object(j).id,
                                     h.basis(k)),
                     tol.rank);
    }
  out.algebra.space = std::move(space);
  // unital category => ambient identity is the unit; otherwise solve for it
  ComplexMatrix id = ComplexMatrix::identity(total);
  if (out.algebra.space.contains(id, tol))
    out.algebra.unit = id;
  else
    out.algebra.ensure_unit(tol);
  return out;
}

// ell_C : End(C) -> A(cat), the canonical (generally non-unital)
// *-embedding into the (C,C) block.
inline StarHomomorphism ell_embedding(const FinCStarCat& cat, const AResult& a,
                                      const std::string& c) {
  if (!cat.has_object(c)) throw UnknownObject("no object '" + c + "'");
  StarHomomorphism out;
  out.source.rep_dim = cat.dim_of(c);
  out.source.space = cat.hom(c, c);
  ComplexMatrix idc = ComplexMatrix::identity(cat.dim_of(c));
  if (out.source.space.contains(idc)) out.source.unit = idc;
  out.target = a.algebra;
  for (std::size_t k = 0; k < out.source.space.dim(); ++k)
    out.images.push_back(
        a.index.embed(a.algebra.rep_dim, c, c, out.source.space.basis(k)));
  return out;
}

// A is functorial on functors injective on objects: blockwise application
// of the hom action.
inline StarHomomorphism A_of_functor(const CatFunctor& f, const AResult& src,
                                     const AResult& dst,
                                     const Tolerances& tol = Tolerances{}) {
  if (!f.injective_on_objects())
    throw NotInjectiveOnObjects("A(-) needs a functor injective on objects");
  StarHomomorphism out;
  out.source = src.algebra;
  out.target = dst.algebra;
  const FinCStarCat& S = f.source;
  for (std::size_t i = 0; i < S.object_count(); ++i)
    for (std::size_t j = 0; j < S.object_count(); ++j) {
      const auto& h = S.hom(i, j);
      for (std::size_t k = 0; k < h.dim(); ++k) {
        Morphism img = f.apply(Morphism{S.object(i).id, S.object(j).id, h.basis(k)});
        out.images.push_back(
            dst.index.embed(dst.algebra.rep_dim, img.src, img.dst, img.matrix));
      }
    }
  // the source basis enumeration above must match build_A's ordering
  if (out.images.size() != src.algebra.dim())
    throw NotAHomomorphism("source basis enumeration mismatch");
  out.require_homomorphism(tol);
  return out;
}

}  // namespace cstarcat

#endif
