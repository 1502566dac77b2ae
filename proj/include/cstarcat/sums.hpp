#ifndef CSTARCAT_SUMS_HPP
#define CSTARCAT_SUMS_HPP

#include <string>
#include <utility>
#include <vector>

#include "cstarcat/category.hpp"

namespace cstarcat {

// An orthogonal sum: mutually orthogonal isometries e_i : C_i -> S with
// sum e_i e_i* = id_S.
struct SumPresentation {
  std::string sum_object;
  std::vector<std::string> summands;
  std::vector<Morphism> isometries;  // e_i : summands[i] -> sum_object
};

// A pair (C,p): a projection on a base object.
struct IdemObject {
  std::string base;
  ComplexMatrix projection;
};

inline std::string sum_object_id(const std::vector<std::string>& parts) {
  std::string id = "⊕⟨";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) id += ",";
    id += parts[i];
  }
  id += "⟩";
  return id;
}

namespace detail {
inline std::string fresh_object_id(const FinCStarCat& cat, std::string base) {
  if (!cat.has_object(base)) return base;
  for (int k = 2;; ++k) {
    std::string id = base + "#" + std::to_string(k);
    if (!cat.has_object(id)) return id;
  }
}
}  // namespace detail

struct DirectSumResult {
  FinCStarCat cat;  // the input category extended by the sum object
  SumPresentation presentation;
};

// Adjoins an orthogonal sum of the listed objects (repetitions allowed;
// the empty list yields a zero object of Hilbert dimension 0).
inline DirectSumResult direct_sum(const FinCStarCat& cat,
                                  const std::vector<std::string>& summands,
                                  const Tolerances& tol = Tolerances{},
                                  std::size_t max_dim = 4096) {
  std::vector<std::size_t> idx;
  idx.reserve(summands.size());
  for (const auto& id : summands) idx.push_back(cat.index_of(id));

  DirectSumResult out;
  out.cat = cat;
  std::vector<std::size_t> offsets(idx.size(), 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    offsets[i] = total;
    total += cat.object(idx[i]).dim;
  }
  const std::string sid = detail::fresh_object_id(cat, sum_object_id(summands));
  const std::size_t s = out.cat.add_object(sid, total);

  out.presentation.sum_object = sid;
  out.presentation.summands = summands;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::size_t d = cat.object(idx[i]).dim;
    ComplexMatrix e(total, d);
    e.set_block(offsets[i], 0, ComplexMatrix::identity(d));
    out.presentation.isometries.push_back(Morphism{summands[i], sid, e});
  }

  const std::size_t n = cat.object_count();
  // hom(X,S) = span{e_i h}, hom(S,X) = span{h e_i*}, hom(S,S) = span{e_i h e_j*}
  for (std::size_t x = 0; x < n; ++x) {
    MatrixSubspace to_s(total, cat.object(x).dim);
    MatrixSubspace from_s(cat.object(x).dim, total);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const ComplexMatrix& e = out.presentation.isometries[i].matrix;
      const auto& hx = cat.hom(x, idx[i]);
      for (std::size_t k = 0; k < hx.dim(); ++k) to_s.extend(e * hx.basis(k), tol.rank);
      const auto& hf = cat.hom(idx[i], x);
      for (std::size_t k = 0; k < hf.dim(); ++k)
        from_s.extend(hf.basis(k) * e.adjoint(), tol.rank);
    }
    out.cat.set_hom(x, s, std::move(to_s));
    out.cat.set_hom(s, x, std::move(from_s));
  }
  MatrixSubspace endo(total, total);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const ComplexMatrix& ei = out.presentation.isometries[i].matrix;
      const ComplexMatrix& ej = out.presentation.isometries[j].matrix;
      const auto& h = cat.hom(idx[j], idx[i]);
      for (std::size_t k = 0; k < h.dim(); ++k)
        endo.extend(ei * h.basis(k) * ej.adjoint(), tol.rank);
    }
  endo.extend(ComplexMatrix::identity(total), tol.rank);
  out.cat.set_hom(s, s, std::move(endo));

  // the base category is closed, so only pairs touching the sum object
  // can grow
  std::vector<std::size_t> frontier = {s};
  close_category(out.cat, max_dim, tol, &frontier);
  return out;
}

// Checks the isometry, orthogonality and completeness relations plus the
// sampled universal property: for random families h_i the reconstruction
// h = sum e_i h_i satisfies e_j* h = h_j and is unique.
inline Report verify_orthogonal_sum(const FinCStarCat& cat, const SumPresentation& p,
                                    std::uint64_t seed = 1,
                                    const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "orthogonal sum verification";
  const std::size_t ns = p.isometries.size();
  const std::size_t sdim = cat.dim_of(p.sum_object);

  double worst_mem = 0.0;
  double worst_iso = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const Morphism& e = p.isometries[i];
    worst_mem = std::max(worst_mem, cat.hom(e.src, e.dst).residual(e.matrix));
    ComplexMatrix d = e.matrix.adjoint() * e.matrix -
                      ComplexMatrix::identity(cat.dim_of(e.src));
    worst_iso = std::max(worst_iso, hs_norm(d));
  }
  rep.add("isometry-membership", worst_mem, tol.membership(1.0));
  rep.add("isometry", worst_iso, tol.membership(1.0));

  double worst_orth = 0.0;
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      if (i == j) continue;
      worst_orth = std::max(
          worst_orth,
          hs_norm(p.isometries[j].matrix.adjoint() * p.isometries[i].matrix));
    }
  rep.add("mutual-orthogonality", worst_orth, tol.membership(1.0));

  ComplexMatrix acc(sdim, sdim);
  for (const auto& e : p.isometries) acc += e.matrix * e.matrix.adjoint();
  rep.add("completeness", hs_norm(acc - ComplexMatrix::identity(sdim)),
          tol.membership(std::sqrt(double(sdim))));

  // universal property on random square-summable families
  Rng rng(seed);
  double worst_univ = 0.0, worst_uniq = 0.0;
  for (std::size_t d = 0; d < cat.object_count(); ++d) {
    const std::string& dom = cat.object(d).id;
    std::vector<ComplexMatrix> h;
    bool any = false;
    for (std::size_t i = 0; i < ns; ++i) {
      const auto& space = cat.hom(dom, p.summands[i]);
      ComplexMatrix hi(cat.dim_of(p.summands[i]), cat.object(d).dim);
      if (space.dim() > 0) {
        hi = space.random_element(rng);
        any = true;
      }
      h.push_back(hi);
    }
    if (!any) continue;
    ComplexMatrix hm(sdim, cat.object(d).dim);
    for (std::size_t i = 0; i < ns; ++i) hm += p.isometries[i].matrix * h[i];
    for (std::size_t j = 0; j < ns; ++j) {
      ComplexMatrix lhs = p.isometries[j].matrix.adjoint() * hm;
      double r = hs_norm(lhs - h[j]) / (1.0 + hs_norm(h[j]));
      worst_univ = std::max(worst_univ, r);
    }
    ComplexMatrix rebuilt(sdim, cat.object(d).dim);
    for (std::size_t i = 0; i < ns; ++i)
      rebuilt += p.isometries[i].matrix * (p.isometries[i].matrix.adjoint() * hm);
    worst_uniq = std::max(worst_uniq, hs_norm(rebuilt - hm) / (1.0 + hs_norm(hm)));
  }
  rep.add("universal-property", worst_univ, 1e-8);
  rep.add("uniqueness", worst_uniq, 1e-8);
  return rep;
}

// v = sum e'_i e_i*, the unique unitary comparing two presentations of
// the same family; verified to intertwine the isometries.
inline Morphism sum_comparison_unitary(const FinCStarCat& cat,
                                       const SumPresentation& p1,
                                       const SumPresentation& p2,
                                       const Tolerances& tol = Tolerances{}) {
  if (p1.summands != p2.summands)
    throw FamilyMismatch("sum presentations have different summand families");
  const std::size_t d1 = cat.dim_of(p1.sum_object);
  const std::size_t d2 = cat.dim_of(p2.sum_object);
  ComplexMatrix v(d2, d1);
  for (std::size_t i = 0; i < p1.summands.size(); ++i)
    v += p2.isometries[i].matrix * p1.isometries[i].matrix.adjoint();
  double worst = hs_norm(v.adjoint() * v - ComplexMatrix::identity(d1));
  worst = std::max(worst, hs_norm(v * v.adjoint() - ComplexMatrix::identity(d2)));
  for (std::size_t i = 0; i < p1.summands.size(); ++i)
    worst = std::max(
        worst, hs_norm(v * p1.isometries[i].matrix - p2.isometries[i].matrix));
  if (worst > tol.membership(std::sqrt(double(d1))))
    throw FamilyMismatch("comparison morphism failed the unitary relations");
  return Morphism{p1.sum_object, p2.sum_object, v};
}

// Norm formula: ||h||^2 = ||sum h_i* h_i|| for h = sum e_i h_i.
inline Report norm_formula_check(const FinCStarCat& cat, const SumPresentation& p,
                                 const std::vector<Morphism>& family) {
  Report rep;
  rep.title = "norm formula";
  if (family.size() != p.summands.size())
    throw FamilyMismatch("family size does not match presentation");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].dst != p.summands[i])
      throw FamilyMismatch("family member does not target summand " + p.summands[i]);
    if (family[i].src != family.front().src)
      throw DomainMismatch("family members have different domains");
  }
  const std::size_t sdim = cat.dim_of(p.sum_object);
  const std::size_t ddim = cat.dim_of(family.front().src);
  ComplexMatrix h(sdim, ddim);
  for (std::size_t i = 0; i < family.size(); ++i)
    h += p.isometries[i].matrix * family[i].matrix;
  ComplexMatrix gram(ddim, ddim);
  for (const auto& hi : family) gram += hi.matrix.adjoint() * hi.matrix;
  const double lhs = operator_norm(h);
  const double rhs = operator_norm(gram);
  rep.add("norm-formula", std::abs(lhs * lhs - rhs), 1e-7 * (1.0 + lhs * lhs));
  return rep;
}

// ||sum_{i in J} h_i* h_i|| <= sup_i ||h_i||^2 for every subset J of a
// family whose adjoints are mutually orthogonal.
inline Report square_summable_bound_check(const std::vector<Morphism>& family,
                                          const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "square-summable bound";
  if (family.empty()) return rep;
  const std::string& dom = family.front().src;
  for (const auto& h : family)
    if (h.src != dom) throw DomainMismatch("family members have different domains");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (i == j) continue;
      if (family[j].matrix.rows() != family[i].matrix.rows()) continue;
      double r = hs_norm(family[j].matrix * family[i].matrix.adjoint());
      if (r > tol.membership(1.0))
        throw NotMutuallyOrthogonal("h_j h_i* != 0 for i != j");
    }
  double bound = 0.0;
  for (const auto& h : family) {
    double n = operator_norm(h.matrix);
    bound = std::max(bound, n * n);
  }
  const std::size_t n = family.size();
  double worst_excess = 0.0;
  const std::size_t dd = family.front().matrix.cols();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    ComplexMatrix acc(dd, dd);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i))
        acc += family[i].matrix.adjoint() * family[i].matrix;
    double v = operator_norm(acc);
    worst_excess = std::max(worst_excess, v - bound);
  }
  rep.add("subset-bound", std::max(0.0, worst_excess), 1e-8 * (1.0 + bound));
  return rep;
}

// p_J = sum_{j in J} e_j e_j* (a projection by partition coherence).
inline ComplexMatrix subfamily_projection(const FinCStarCat& cat,
                                          const SumPresentation& p,
                                          const std::vector<std::size_t>& subset) {
  const std::size_t sdim = cat.dim_of(p.sum_object);
  ComplexMatrix acc(sdim, sdim);
  for (std::size_t j : subset)
    acc += p.isometries[j].matrix * p.isometries[j].matrix.adjoint();
  return acc;
}

struct ImageResult {
  FinCStarCat cat;      // extended by the image object
  std::string object;   // id of the image object
  Morphism isometry;    // u : image -> base with u u* = p
};

// Adjoins an image (D,u) of an effective projection: u* u = id_D and
// u u* = p. The Hilbert dimension of D is the rank of p.
inline ImageResult image_of_projection(const FinCStarCat& cat, const IdemObject& obj,
                                       const Tolerances& tol = Tolerances{},
                                       std::size_t max_dim = 4096) {
  const std::size_t c = cat.index_of(obj.base);
  const std::size_t d = cat.object(c).dim;
  const ComplexMatrix& p = obj.projection;
  if (p.rows() != d || p.cols() != d) throw NotAProjection("projection shape mismatch");
  const double scale = hs_norm(p);
  if (hs_norm(p - p.adjoint()) > tol.membership(scale) ||
      hs_norm(p * p - p) > tol.membership(scale))
    throw NotAProjection("p is not a self-adjoint idempotent");
  if (!cat.hom(c, c).contains(p, tol))
    throw NotAProjection("p does not belong to End(" + obj.base + ")");

  ComplexMatrix u = range_basis(p);
  const std::size_t rank = u.cols();

  ImageResult out;
  out.cat = cat;
  out.object = detail::fresh_object_id(cat, "im(" + obj.base + ")");
  const std::size_t im = out.cat.add_object(out.object, rank);
  out.isometry = Morphism{out.object, obj.base, u};

  const std::size_t n = cat.object_count();
  for (std::size_t x = 0; x < n; ++x) {
    MatrixSubspace from_im(cat.object(x).dim, rank);
    const auto& hcx = cat.hom(c, x);
    for (std::size_t k = 0; k < hcx.dim(); ++k)
      from_im.extend(hcx.basis(k) * u, tol.rank);
    MatrixSubspace to_im(rank, cat.object(x).dim);
    const auto& hxc = cat.hom(x, c);
    for (std::size_t k = 0; k < hxc.dim(); ++k)
      to_im.extend(u.adjoint() * hxc.basis(k), tol.rank);
    out.cat.set_hom(im, x, std::move(from_im));
    out.cat.set_hom(x, im, std::move(to_im));
  }
  MatrixSubspace endo(rank, rank);
  const auto& hcc = cat.hom(c, c);
  for (std::size_t k = 0; k < hcc.dim(); ++k)
    endo.extend(u.adjoint() * hcc.basis(k) * u, tol.rank);
  out.cat.set_hom(im, im, std::move(endo));

  std::vector<std::size_t> frontier = {im};
  close_category(out.cat, max_dim, tol, &frontier);
  return out;
}

}  // namespace cstarcat

#endif
