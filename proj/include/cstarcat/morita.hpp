#ifndef CSTARCAT_MORITA_HPP
#define CSTARCAT_MORITA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cstarcat/ideal.hpp"
#include "cstarcat/sums.hpp"

namespace cstarcat {

// Decision data for "F becomes a unitary equivalence after sharp
// completion": full faithfulness plus blockwise coverage of every target
// identity by images of source identities. A yes verdict carries the
// per-object evidence and, when requested, explicit isometries into
// finite sums of images.
struct MoritaObjectEvidence {
  std::string object;                 // target object E
  IntVector identity_class;          // blockwise ranks of id_E
  std::vector<std::string> covers;    // one covering F(C) per needed block
  bool covered = false;
  std::optional<Morphism> witness;    // isometry E -> sum of images
  std::vector<std::string> witness_summands;
};

struct MoritaVerdict {
  enum class Value { yes, no, unknown };
  Value verdict = Value::unknown;
  bool fully_faithful = false;
  std::vector<MoritaObjectEvidence> evidence;

  bool yes() const { return verdict == Value::yes; }
};

inline const char* to_string(MoritaVerdict::Value v) {
  switch (v) {
    case MoritaVerdict::Value::yes: return "yes";
    case MoritaVerdict::Value::no: return "no";
    default: return "unknown";
  }
}

// The blockwise-rank criterion: [id_E] is subequivalent to a finite sum
// of copies of {[id_F(C)]} iff every block carrying id_E carries some
// id_F(C); multiplicities are free.
inline MoritaVerdict is_morita_equivalence(const CatFunctor& f, std::uint64_t seed = 1,
                                           bool want_witness = false,
                                           const Tolerances& tol = Tolerances{}) {
  MoritaVerdict out;
  out.fully_faithful = is_fully_faithful(f, tol);

  AResult at = build_A(f.target, tol);
  K0Data kt = k0_group(at.algebra, seed, tol);

  // blockwise ranks of the image identities
  std::map<std::string, IntVector> image_rank;
  for (const auto& [src_id, tgt_id] : f.object_map) {
    if (image_rank.count(tgt_id)) continue;
    ComplexMatrix p = at.index.embed(at.algebra.rep_dim, tgt_id, tgt_id,
                                     ComplexMatrix::identity(f.target.dim_of(tgt_id)));
    image_rank[tgt_id] = k0_class(at.algebra, kt, p, tol);
  }

  bool all_covered = true;
  for (const auto& e : f.target.objects()) {
    MoritaObjectEvidence ev;
    ev.object = e.id;
    ComplexMatrix pe = at.index.embed(at.algebra.rep_dim, e.id, e.id,
                                      ComplexMatrix::identity(e.dim));
    ev.identity_class = k0_class(at.algebra, kt, pe, tol);
    ev.covered = true;
    for (std::size_t i = 0; i < kt.rank; ++i) {
      if (ev.identity_class[i] == 0) continue;
      std::string cover;
      for (const auto& [tgt_id, cls] : image_rank)
        if (cls[i] > 0) {
          cover = tgt_id;
          break;
        }
      if (cover.empty()) {
        ev.covered = false;
        all_covered = false;
      } else {
        ev.covers.push_back(cover);
      }
    }
    out.evidence.push_back(std::move(ev));
  }

  out.verdict = (out.fully_faithful && all_covered) ? MoritaVerdict::Value::yes
                                                    : MoritaVerdict::Value::no;

  if (want_witness && out.verdict == MoritaVerdict::Value::yes) {
    for (auto& ev : out.evidence) {
      if (f.target.dim_of(ev.object) == 0) continue;
      // enough copies of each covering image to dominate id_E blockwise
      std::vector<std::string> summands;
      for (std::size_t i = 0; i < kt.rank; ++i) {
        if (ev.identity_class[i] == 0) continue;
        for (const auto& [tgt_id, cls] : image_rank) {
          if (cls[i] == 0) continue;
          long long copies = (ev.identity_class[i] + cls[i] - 1) / cls[i];
          for (long long c = 0; c < copies; ++c) summands.push_back(tgt_id);
          break;
        }
      }
      DirectSumResult sum = direct_sum(f.target, summands, tol);
      std::optional<Morphism> u =
          find_isometry(sum.cat, ev.object, sum.presentation.sum_object, seed ^ 0x77, tol);
      if (u) {
        ev.witness = u;
        ev.witness_summands = summands;
      } else {
        out.verdict = MoritaVerdict::Value::unknown;  // witness search inconclusive
      }
    }
  }
  return out;
}

struct MoritaK0Report {
  Report report;
  IntMatrix k0_matrix;
};

// Morita invariance of K0: a Morita equivalence induces a Z-isomorphism.
inline MoritaK0Report verify_morita_k0_invariance(const CatFunctor& f,
                                                  std::uint64_t seed = 1,
                                                  const Tolerances& tol = Tolerances{}) {
  MoritaK0Report out;
  out.report.title = "Morita K0 invariance";
  MoritaVerdict v = is_morita_equivalence(f, seed, false, tol);
  out.report.add_flag("morita-equivalence", v.yes());
  if (!v.yes()) return out;

  AResult as = build_A(f.source, tol);
  AResult at = build_A(f.target, tol);
  K0Data ks = k0_group(as.algebra, seed, tol);
  K0Data kt = k0_group(at.algebra, seed ^ 0x9, tol);
  StarHomomorphism am = A_of_functor(f, as, at, tol);
  out.k0_matrix = k0_map(am, ks, kt, seed ^ 0x5, tol);

  bool square = kt.rank == ks.rank;
  out.report.add_flag("k0-square", square,
                      std::to_string(kt.rank) + " x " + std::to_string(ks.rank));
  if (square) {
    long long det = int_det(out.k0_matrix);
    out.report.add_flag("k0-unimodular", det == 1 || det == -1,
                        "det = " + std::to_string(det));
  }
  return out;
}

// Verifier for user-supplied Murray-von Neumann equivalences of functors
// f, g : C -> D: a family of partial isometries u_C : f(C) -> g(C) that
// is natural and supports both functors, i.e. u*u f(k) = f(k) and
// g(k) uu* = g(k). No search is attempted; only the witness is checked.
// The functors may be non-unital (ideal-level), so no unitality is
// assumed.
inline Report verify_mvn_equivalent_functors(
    const CatFunctor& f, const CatFunctor& g,
    const std::map<std::string, ComplexMatrix>& witnesses,
    const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "MvN equivalence of functors";
  const FinCStarCat& S = f.source;

  double worst_pi = 0.0, worst_mem = 0.0;
  for (const auto& o : S.objects()) {
    auto it = witnesses.find(o.id);
    if (it == witnesses.end()) throw FamilyMismatch("missing witness at " + o.id);
    const ComplexMatrix& u = it->second;
    const std::string& fc = f.map_object(o.id);
    const std::string& gc = g.map_object(o.id);
    if (u.rows() != f.target.dim_of(gc) || u.cols() != f.target.dim_of(fc))
      throw ShapeMismatch("witness at " + o.id + " has the wrong shape");
    ComplexMatrix p = u.adjoint() * u;
    ComplexMatrix q = u * u.adjoint();
    worst_pi = std::max(worst_pi, hs_norm(p * p - p));
    worst_pi = std::max(worst_pi, hs_norm(q * q - q));
    worst_mem = std::max(worst_mem, f.target.hom(fc, gc).residual(u));
  }
  rep.add("partial-isometries", worst_pi, tol.membership(1.0));
  rep.add("witness-membership", worst_mem, tol.membership(1.0));

  double worst_nat = 0.0, worst_supp = 0.0;
  for (std::size_t i = 0; i < S.object_count(); ++i)
    for (std::size_t j = 0; j < S.object_count(); ++j) {
      const auto& hom = S.hom(i, j);
      const ComplexMatrix& ui = witnesses.at(S.object(i).id);
      const ComplexMatrix& uj = witnesses.at(S.object(j).id);
      for (std::size_t k = 0; k < hom.dim(); ++k) {
        Morphism m{S.object(i).id, S.object(j).id, hom.basis(k)};
        ComplexMatrix fk = f.apply(m).matrix;
        ComplexMatrix gk = g.apply(m).matrix;
        worst_nat = std::max(worst_nat, hs_norm(uj * fk - gk * ui));
        worst_supp =
            std::max(worst_supp, hs_norm(uj.adjoint() * uj * fk - fk));
        worst_supp =
            std::max(worst_supp, hs_norm(gk * (ui * ui.adjoint()) - gk));
      }
    }
  rep.add("naturality", worst_nat, tol.membership(1.0));
  rep.add("support", worst_supp, tol.membership(1.0));
  return rep;
}

// Data of a relative Morita square: ideals K in C and L in D, a unital
// functor psi : C -> D carrying K into L.
struct RelativeMoritaSquare {
  FinCStarCat ambient_source;  // C
  CatIdeal ideal_source;       // K
  FinCStarCat ambient_target;  // D
  CatIdeal ideal_target;       // L
  CatFunctor psi;              // C -> D
};

// Checks psi and the induced quotient functor are Morita equivalences and
// that K0(K) -> K0(L) is then an isomorphism.
inline MoritaK0Report relative_morita_check(const RelativeMoritaSquare& sq,
                                            std::uint64_t seed = 1,
                                            const Tolerances& tol = Tolerances{}) {
  MoritaK0Report out;
  out.report.title = "relative Morita check";
  if (!validate_ideal(sq.ambient_source, sq.ideal_source, tol).all_pass() ||
      !validate_ideal(sq.ambient_target, sq.ideal_target, tol).all_pass())
    throw NotAnExactSquare("rows are not ideal inclusions");

  // psi must carry K into L
  double worst_carry = 0.0;
  for (std::size_t i = 0; i < sq.ambient_source.object_count(); ++i)
    for (std::size_t j = 0; j < sq.ambient_source.object_count(); ++j) {
      const auto& k = sq.ideal_source.at(i, j);
      for (std::size_t b = 0; b < k.dim(); ++b) {
        Morphism m{sq.ambient_source.object(i).id, sq.ambient_source.object(j).id,
                   k.basis(b)};
        Morphism img = sq.psi.apply(m);
        worst_carry = std::max(
            worst_carry,
            sq.ideal_target
                .at(sq.ambient_target.index_of(img.src),
                    sq.ambient_target.index_of(img.dst))
                .residual(img.matrix));
      }
    }
  if (worst_carry > tol.membership(1.0))
    throw NotAnExactSquare("psi does not carry K into L");
  out.report.add("ideal-carried", worst_carry, tol.membership(1.0));

  MoritaVerdict v_psi = is_morita_equivalence(sq.psi, seed, false, tol);
  out.report.add_flag("psi-morita", v_psi.yes());

  QuotientResult qs = quotient_by_ideal(sq.ambient_source, sq.ideal_source, seed, tol);
  QuotientResult qt = quotient_by_ideal(sq.ambient_target, sq.ideal_target, seed ^ 0x3, tol);

  // induced kappa on the quotients: lift along the source compression,
  // push through psi, compress in the target; well defined because psi
  // carries K into L and L is annihilated by the target compression
  std::map<std::string, std::string> om;
  for (const auto& o : qs.cat.objects()) om[o.id] = sq.psi.object_map.at(o.id);
  CatFunctor kappa = make_functor(
      qs.cat, qt.cat, om,
      [&](const std::string& src, const std::string& dst, const ComplexMatrix& m) {
        const ComplexMatrix& us = qs.compressions.at(src);
        const ComplexMatrix& ud = qs.compressions.at(dst);
        Morphism lift{src, dst, ud * m * us.adjoint()};
        Morphism img = sq.psi.apply(lift);
        const ComplexMatrix& vs = qt.compressions.at(img.src);
        const ComplexMatrix& vd = qt.compressions.at(img.dst);
        return vd.adjoint() * img.matrix * vs;
      },
      tol);
  MoritaVerdict v_kappa = is_morita_equivalence(kappa, seed ^ 0x8, false, tol);
  out.report.add_flag("kappa-morita", v_kappa.yes());

  // K0 on the two ambient corners (the outer maps of the five-lemma
  // pattern), then the induced map on the ideals themselves
  auto unimodular = [&](const CatFunctor& f, const FinCStarCat& s,
                        const FinCStarCat& t, std::uint64_t sd) {
    AResult as = build_A(s, tol);
    AResult at = build_A(t, tol);
    K0Data ks = k0_group(as.algebra, sd, tol);
    K0Data kt = k0_group(at.algebra, sd ^ 0x6, tol);
    StarHomomorphism am = A_of_functor(f, as, at, tol);
    IntMatrix mat = k0_map(am, ks, kt, sd ^ 0x2, tol);
    long long det = ks.rank == kt.rank ? int_det(mat) : 0;
    return std::make_pair(mat, det == 1 || det == -1);
  };
  auto [m_psi, ok_psi] = unimodular(sq.psi, sq.ambient_source, sq.ambient_target, seed);
  out.report.add_flag("k0-psi-iso", ok_psi);
  auto [m_kappa, ok_kappa] = unimodular(kappa, qs.cat, qt.cat, seed ^ 0x41);
  out.report.add_flag("k0-kappa-iso", ok_kappa);

  // the ideal-level map K0(K) -> K0(L)
  FinCStarCat kcat = ideal_category(sq.ambient_source, sq.ideal_source);
  FinCStarCat lcat = ideal_category(sq.ambient_target, sq.ideal_target);
  AResult ak = build_A(kcat, tol);
  AResult al = build_A(lcat, tol);
  StarHomomorphism phi;
  phi.source = ak.algebra;
  phi.target = al.algebra;
  for (std::size_t i = 0; i < kcat.object_count(); ++i)
    for (std::size_t j = 0; j < kcat.object_count(); ++j) {
      const auto& k = kcat.hom(i, j);
      for (std::size_t b = 0; b < k.dim(); ++b) {
        Morphism img = sq.psi.apply(
            Morphism{kcat.object(i).id, kcat.object(j).id, k.basis(b)});
        phi.images.push_back(
            al.index.embed(al.algebra.rep_dim, img.src, img.dst, img.matrix));
      }
    }
  K0Data kk = (ak.algebra.dim() > 0) ? k0_group(ak.algebra, seed ^ 0x51, tol) : K0Data{};
  K0Data kl = (al.algebra.dim() > 0) ? k0_group(al.algebra, seed ^ 0x52, tol) : K0Data{};
  if (ak.algebra.dim() > 0 && al.algebra.dim() > 0) {
    out.k0_matrix = k0_map(phi, kk, kl, seed ^ 0x53, tol);
    bool square = kk.rank == kl.rank;
    long long det = square ? int_det(out.k0_matrix) : 0;
    out.report.add_flag("k0-ideal-iso", square && (det == 1 || det == -1),
                        "det = " + std::to_string(det));
  } else {
    out.report.add_flag("k0-ideal-iso", kk.rank == kl.rank, "both ideals trivial");
  }
  return out;
}

}  // namespace cstarcat

#endif
