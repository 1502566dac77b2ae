#ifndef CSTARCAT_IDEAL_HPP
#define CSTARCAT_IDEAL_HPP

#include <string>
#include <vector>

#include "cstarcat/k0.hpp"

namespace cstarcat {

// Embeds a category ideal into A(cat) as a subspace.
inline MatrixSubspace ideal_to_algebra_subspace(const FinCStarCat& cat,
                                                const CatIdeal& ideal,
                                                const AResult& a,
                                                const Tolerances& tol = Tolerances{}) {
  MatrixSubspace s(a.algebra.rep_dim, a.algebra.rep_dim);
  for (std::size_t i = 0; i < cat.object_count(); ++i)
    for (std::size_t j = 0; j < cat.object_count(); ++j) {
      const auto& k = ideal.at(i, j);
      for (std::size_t b = 0; b < k.dim(); ++b)
        s.extend(a.index.embed(a.algebra.rep_dim, cat.object(i).id,
                               cat.object(j).id, k.basis(b)),
                 tol.rank);
    }
  return s;
}

struct QuotientResult {
  FinCStarCat cat;        // the quotient category (same object ids)
  CatFunctor projection;  // cat -> cat/K
  // compression isometries u_C with u_C u_C* = z_{Q,C}; the projection
  // functor acts by u_dst* (-) u_src
  std::map<std::string, ComplexMatrix> compressions;
};

// Quotient by a wide two-sided *-ideal, computed through the Wedderburn
// decomposition of A(cat): the simple blocks meeting the ideal are
// dropped and the Hom-spaces re-represented on the complement.
inline QuotientResult quotient_by_ideal(const FinCStarCat& cat, const CatIdeal& ideal,
                                        std::uint64_t seed = 1,
                                        const Tolerances& tol = Tolerances{}) {
  if (!validate_ideal(cat, ideal, tol).all_pass())
    throw NotAnIdeal("quotient needs a two-sided *-ideal");
  AResult a = build_A(cat, tol);
  MatrixSubspace ia = ideal_to_algebra_subspace(cat, ideal, a, tol);
  WedderburnData w = wedderburn(a.algebra, seed, tol);

  ComplexMatrix zq(a.algebra.rep_dim, a.algebra.rep_dim);
  for (const auto& blk : w.blocks) {
    MatrixSubspace meet(a.algebra.rep_dim, a.algebra.rep_dim);
    for (std::size_t k = 0; k < ia.dim(); ++k)
      meet.extend(blk.central_projection * ia.basis(k) * blk.central_projection,
                  tol.rank);
    if (meet.dim() == 0)
      zq += blk.central_projection;
    else if (meet.dim() != blk.block_size * blk.block_size)
      throw NotAnIdeal("ideal meets a simple block partially");
  }

  // z_Q is central, hence block diagonal over the objects
  QuotientResult out;
  std::map<std::string, ComplexMatrix>& compressions = out.compressions;
  for (const auto& o : cat.objects()) {
    auto [off, d] = a.index.range(o.id);
    ComplexMatrix zc = zq.block(off, off, d, d);
    ComplexMatrix u = range_basis(zc);
    compressions[o.id] = u;
    out.cat.add_object(o.id, u.cols());
  }
  for (std::size_t i = 0; i < cat.object_count(); ++i)
    for (std::size_t j = 0; j < cat.object_count(); ++j) {
      const auto& h = cat.hom(i, j);
      const ComplexMatrix& ui = compressions.at(cat.object(i).id);
      const ComplexMatrix& uj = compressions.at(cat.object(j).id);
      MatrixSubspace s(uj.cols(), ui.cols());
      for (std::size_t k = 0; k < h.dim(); ++k)
        s.extend(uj.adjoint() * h.basis(k) * ui, tol.rank);
      out.cat.set_hom(i, j, std::move(s));
    }

  std::map<std::string, std::string> om;
  for (const auto& o : cat.objects()) om[o.id] = o.id;
  out.projection = make_functor(
      cat, out.cat, om,
      [&compressions](const std::string& src, const std::string& dst,
                      const ComplexMatrix& m) {
        return compressions.at(dst).adjoint() * m * compressions.at(src);
      },
      tol);
  return out;
}

// The ideal as a (generally non-unital) category: objects of cat with the
// ideal Hom-spaces.
inline FinCStarCat ideal_category(const FinCStarCat& cat, const CatIdeal& ideal) {
  FinCStarCat out;
  for (const auto& o : cat.objects()) out.add_object(o.id, o.dim);
  for (std::size_t i = 0; i < cat.object_count(); ++i)
    for (std::size_t j = 0; j < cat.object_count(); ++j)
      out.set_hom(i, j, ideal.at(i, j));
  return out;
}

}  // namespace cstarcat

#endif
