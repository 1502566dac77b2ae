#ifndef CSTARCAT_ORBIT_HPP
#define CSTARCAT_ORBIT_HPP

#include <map>
#include <string>
#include <vector>

#include "cstarcat/crossed.hpp"
#include "cstarcat/morita.hpp"

namespace cstarcat {

namespace detail {

inline std::size_t coset_rep_of_point(const FiniteGSet& s, std::size_t p) {
  const std::string& label = s.points[p];
  return std::stoul(label.substr(1, label.size() - 2));
}

// index of the coset eH inside G/H
inline std::size_t base_point(const Subgroup& h, const FiniteGSet& gh) {
  std::set<std::size_t> hset(h.begin(), h.end());
  for (std::size_t p = 0; p < gh.size(); ++p)
    if (hset.count(coset_rep_of_point(gh, p))) return p;
  throw NotASubgroup("no base point found");
}

}  // namespace detail

// Solve M x = c over the integers for a unimodular M (|det M| = 1).
inline IntVector int_solve_unimodular(const IntMatrix& m, const IntVector& c) {
  const std::size_t n = m.size();
  long long det = int_det(m);
  if (det != 1 && det != -1) throw RoundingFailure("matrix is not unimodular");
  // adjugate via cofactors (n is small)
  IntMatrix adj(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (std::size_t s = 0; s < n; ++s)
          if (s != i) row.push_back(m[r][s]);
        minor.push_back(std::move(row));
      }
      long long cof = int_det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj[i][j] = cof;
    }
  IntVector x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    long long v = 0;
    for (std::size_t j = 0; j < n; ++j) v += adj[i][j] * c[j];
    x[i] = v / det;
  }
  return x;
}

// The value of the orbit functor at G/H: K0 of the crossed product by the
// restricted action.
inline CategoryK0 orbit_value(const GAction& action, const Subgroup& h,
                              std::uint64_t seed = 1,
                              const Tolerances& tol = Tolerances{}) {
  CrossedProduct cp = reduced_crossed_product(action.restrict_to(h), tol);
  return k0_of_category(cp.category(), seed, tol);
}

struct OrbitIdentification {
  Subgroup subgroup;
  CrossedProduct restricted;    // Res_H(C) x H
  GAction dx_action;            // the G-action on D_{G/H}
  CrossedProduct crossed_dx;    // D_{G/H} x G
  CatFunctor i_h;               // the Morita equivalence between them
};

// i_H : Res_H(C) x_r H -> D_{G/H} x_r G, (f,h) at the base point.
inline OrbitIdentification orbit_identification(const GAction& action, const Subgroup& h,
                                                const Tolerances& tol = Tolerances{}) {
  OrbitIdentification out;
  out.subgroup = h;
  out.restricted = CrossedProduct(action.restrict_to(h), tol);
  FiniteGSet gh = orbit_gset(action.group(), h);
  out.dx_action = c_of_gset(action, gh);
  out.crossed_dx = CrossedProduct(out.dx_action, tol);

  const std::size_t bp = detail::base_point(h, gh);
  const std::string& bp_label = gh.points[bp];
  std::map<std::string, std::string> object_map;
  for (const auto& o : action.category().objects())
    object_map[o.id] = at_point_id(o.id, bp_label);
  out.i_h = crossed_functor(
      out.restricted, out.crossed_dx, object_map,
      [bp_label](const Morphism& f) {
        return Morphism{at_point_id(f.src, bp_label), at_point_id(f.dst, bp_label),
                        f.matrix};
      },
      h, tol);
  return out;
}

struct IHReport {
  Report report;
  MoritaVerdict verdict;
  IntMatrix k0_matrix;
};

// i_H is a Morita equivalence and induces a K0 isomorphism.
inline IHReport verify_i_H_morita(const GAction& action, const Subgroup& h,
                                  std::uint64_t seed = 1,
                                  const Tolerances& tol = Tolerances{}) {
  IHReport out;
  out.report.title = "i_H Morita equivalence";
  OrbitIdentification oi = orbit_identification(action, h, tol);
  out.verdict = is_morita_equivalence(oi.i_h, seed, false, tol);
  out.report.add_flag("i_H-morita", out.verdict.yes());

  AResult as = build_A(oi.restricted.category(), tol);
  AResult at = build_A(oi.crossed_dx.category(), tol);
  K0Data ks = k0_group(as.algebra, seed, tol);
  K0Data kt = k0_group(at.algebra, seed ^ 0x21, tol);
  StarHomomorphism am = A_of_functor(oi.i_h, as, at, tol);
  out.k0_matrix = k0_map(am, ks, kt, seed ^ 0x22, tol);
  bool square = ks.rank == kt.rank;
  long long det = square ? int_det(out.k0_matrix) : 0;
  out.report.add_flag("i_H-k0-iso", square && (det == 1 || det == -1),
                      "det = " + std::to_string(det));
  return out;
}

// Pushes an algebra element of A(D_X x G) through the functor induced by
// an equivariant map of G-sets, block by block.
inline ComplexMatrix push_element(const AResult& src, const AResult& dst,
                                  const CatFunctor& f, const ComplexMatrix& x) {
  ComplexMatrix out(dst.algebra.rep_dim, dst.algebra.rep_dim);
  for (const auto& c : src.index.order)
    for (const auto& cp : src.index.order) {
      ComplexMatrix block = src.index.extract(x, c, cp);
      if (hs_norm(block) <= 1e-13) continue;
      Morphism img = f.apply(Morphism{c, cp, block});
      ComplexMatrix embedded =
          dst.index.embed(dst.algebra.rep_dim, img.src, img.dst, img.matrix);
      out += embedded;
    }
  return out;
}

// Everything needed to read orbit-functor values at one subgroup: the
// identification i_H together with the K0 data on both sides.
struct OrbitCorner {
  Subgroup subgroup;
  FiniteGSet orbit;
  OrbitIdentification oi;
  AResult a_res;   // A(Res_H(C) x H)
  AResult a_dx;    // A(D_{G/H} x G)
  K0Data k_res, k_dx;
  StarHomomorphism am;  // A(i_H)
  IntMatrix m;          // K0(i_H), unimodular
};

inline OrbitCorner make_orbit_corner(const GAction& action, const Subgroup& h,
                                     std::uint64_t seed = 1,
                                     const Tolerances& tol = Tolerances{}) {
  OrbitCorner c;
  c.subgroup = h;
  c.orbit = orbit_gset(action.group(), h);
  c.oi = orbit_identification(action, h, tol);
  c.a_res = build_A(c.oi.restricted.category(), tol);
  c.a_dx = build_A(c.oi.crossed_dx.category(), tol);
  c.k_res = k0_group(c.a_res.algebra, seed, tol);
  c.k_dx = k0_group(c.a_dx.algebra, seed ^ 0x31, tol);
  c.am = A_of_functor(c.oi.i_h, c.a_res, c.a_dx, tol);
  c.m = k0_map(c.am, c.k_res, c.k_dx, seed ^ 0x34, tol);
  return c;
}

// The K0 matrix of the orbit functor on an equivariant map G/H -> G/K,
// read through the i_H and i_K identifications.
inline IntMatrix orbit_map(const GAction& action, const OrbitCorner& ch,
                           const OrbitCorner& ck,
                           const std::vector<std::size_t>& point_map,
                           std::uint64_t seed = 1,
                           const Tolerances& tol = Tolerances{}) {
  if (!is_equivariant_map(action.group(), ch.orbit, ck.orbit, point_map))
    throw NotEquivariant("point map is not equivariant");

  // the induced functor on the crossed products of the D categories
  CatFunctor base =
      c_of_gset_map(ch.oi.dx_action, ck.oi.dx_action, ch.orbit, ck.orbit, point_map, tol);
  std::vector<std::size_t> all_of_g(action.group().order());
  for (std::size_t g = 0; g < all_of_g.size(); ++g) all_of_g[g] = g;
  CatFunctor cf = crossed_functor(
      ch.oi.crossed_dx, ck.oi.crossed_dx, base.object_map,
      [&base](const Morphism& m) { return base.apply(m); }, all_of_g, tol);

  IntMatrix out(ck.k_res.rank, std::vector<long long>(ch.k_res.rank, 0));
  for (std::size_t j = 0; j < ch.k_res.rank; ++j) {
    ComplexMatrix pj =
        minimal_block_projection(ch.a_res.algebra, ch.k_res, j, seed + 7 * j, tol);
    ComplexMatrix qj = ch.am.apply(pj);
    ComplexMatrix pushed = push_element(ch.a_dx, ck.a_dx, cf, qj);
    IntVector cls = k0_class(ck.a_dx.algebra, ck.k_dx, pushed, tol);
    IntVector col = int_solve_unimodular(ck.m, cls);
    for (std::size_t i = 0; i < ck.k_res.rank; ++i) out[i][j] = col[i];
  }
  return out;
}

inline IntMatrix orbit_map(const GAction& action, const Subgroup& h, const Subgroup& k,
                           const std::vector<std::size_t>& point_map,
                           std::uint64_t seed = 1,
                           const Tolerances& tol = Tolerances{}) {
  OrbitCorner ch = make_orbit_corner(action, h, seed, tol);
  OrbitCorner ck = make_orbit_corner(action, k, seed ^ 0x32, tol);
  return orbit_map(action, ch, ck, point_map, seed, tol);
}

// A(K x_r G) and A(K) x_r G built independently and compared through the
// generator-to-generator map.
inline Report a_crossed_iso_check(const GAction& action, std::uint64_t seed = 1,
                                  const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "A(K x G) = A(K) x G";
  const FiniteGroup& grp = action.group();
  const FinCStarCat& base = action.category();
  const std::size_t n = grp.order();

  CrossedProduct cp = reduced_crossed_product(action, tol);
  AResult lhs = build_A(cp.category(), tol);

  // right-hand side: the classical crossed product of the C*-algebra
  // A(base) with G acting by the permutation-block unitaries W_g
  AResult abase = build_A(base, tol);
  const std::size_t N = abase.algebra.rep_dim;
  std::vector<ComplexMatrix> w(n, ComplexMatrix(N, N));
  for (std::size_t g = 0; g < n; ++g)
    for (const auto& o : base.objects()) {
      auto [off_src, d] = abase.index.range(o.id);
      auto [off_dst, d2] = abase.index.range(action.act_object(g, o.id));
      w[g].set_block(off_dst, off_src, action.intertwiner(g, o.id));
    }
  FinCStarCat one_object;
  one_object.add_object("A", N);
  one_object.set_hom(0, 0, abase.algebra.space);
  std::vector<std::map<std::string, std::string>> perm(n);
  std::map<std::pair<std::size_t, std::string>, ComplexMatrix> inter;
  for (std::size_t g = 0; g < n; ++g) {
    perm[g]["A"] = "A";
    inter[{g, "A"}] = w[g];
  }
  GAction alg_action(grp, std::move(one_object), std::move(perm), std::move(inter));
  CrossedProduct rhs_cp = reduced_crossed_product(alg_action, tol);
  AResult rhs = build_A(rhs_cp.category(), tol);

  rep.add_flag("dimension-match", lhs.algebra.dim() == rhs.algebra.dim(),
               std::to_string(lhs.algebra.dim()) + " vs " +
                   std::to_string(rhs.algebra.dim()));

  // the generator map: rho(f,g) block-embedded at (C',C) goes to
  // kappa(g) rho(f[g^{-1}C',C])
  StarHomomorphism t;
  t.source = lhs.algebra;
  t.target = rhs.algebra;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < base.object_count(); ++i)
    for (std::size_t j = 0; j < base.object_count(); ++j) {
      const std::string& c = base.object(i).id;
      const std::string& d = base.object(j).id;
      for (std::size_t g = 0; g < n; ++g) {
        const std::string tgt = action.act_object(grp.inv(g), d);
        const auto& hom = base.hom(c, tgt);
        for (std::size_t b = 0; b < hom.dim(); ++b) {
          ComplexMatrix a_elem = abase.index.embed(N, c, tgt, hom.basis(b));
          Morphism rho_rhs = rhs_cp.rho(Morphism{"A", "A", a_elem}, g);
          t.images.push_back(scale * rho_rhs.matrix);
        }
      }
    }
  bool enumeration_ok = t.images.size() == lhs.algebra.dim();
  rep.add_flag("generator-enumeration", enumeration_ok);
  if (!enumeration_ok) return rep;

  Report hom_rep = t.validate(tol);
  rep.absorb(hom_rep);

  // bijectivity: the images of the orthonormal basis stay orthonormal
  double gram_defect = 0.0;
  for (std::size_t a = 0; a < t.images.size(); ++a)
    for (std::size_t b = a; b < t.images.size(); ++b) {
      cplx gm = hs_inner(t.images[a], t.images[b]);
      gram_defect = std::max(gram_defect, std::abs(gm - (a == b ? cplx(1.0) : cplx(0.0))));
    }
  rep.add("bijectivity-gram", gram_defect, tol.membership(1.0));

  // unit goes to unit
  ComplexMatrix unit_img = t.apply(lhs.algebra.require_unit());
  rep.add("unital", hs_norm(unit_img - rhs.algebra.require_unit()),
          tol.membership(std::sqrt(static_cast<double>(rhs.algebra.rep_dim))));

  // K0 match: equal block multisets and a unimodular induced map
  K0Data k_lhs = k0_group(lhs.algebra, seed, tol);
  K0Data k_rhs = k0_group(rhs.algebra, seed ^ 0x61, tol);
  rep.add_flag("k0-block-multisets",
               k_lhs.block_multiset() == k_rhs.block_multiset());
  if (k_lhs.rank == k_rhs.rank && hom_rep.all_pass()) {
    IntMatrix m = k0_map(t, k_lhs, k_rhs, seed ^ 0x62, tol);
    long long det = int_det(m);
    rep.add_flag("k0-iso", det == 1 || det == -1, "det = " + std::to_string(det));
  }
  return rep;
}

struct OrbitMapEntry {
  std::string from;  // subgroup as string
  std::string to;
  std::size_t map_index = 0;
  IntMatrix matrix;
};

struct OrbitValueEntry {
  Subgroup subgroup;
  K0Data k0;
  bool i_h_morita = false;
  bool max_equals_reduced = false;
};

// The full orbit report: values on conjugacy-class representatives, K0
// matrices of all equivariant maps between them, and the theorem flags.
struct OrbitReport {
  std::vector<OrbitValueEntry> values;
  std::vector<OrbitMapEntry> maps;
  Report checks;
};

inline OrbitReport orbit_report(const GAction& action, std::uint64_t seed = 1,
                                const Tolerances& tol = Tolerances{}) {
  OrbitReport out;
  out.checks.title = "orbit functor";
  SubgroupList subs = subgroups(action.group());

  std::vector<Subgroup> reps;
  for (std::size_t cls = 0; cls < subs.classes.size(); ++cls)
    reps.push_back(subs.all[subs.representatives[cls]]);

  bool conj_invariant = true;
  for (std::size_t cls = 0; cls < subs.classes.size(); ++cls) {
    const Subgroup& rep = subs.all[subs.representatives[cls]];
    OrbitValueEntry entry;
    entry.subgroup = rep;
    entry.k0 = orbit_value(action, rep, seed, tol).k0;
    IHReport ih = verify_i_H_morita(action, rep, seed, tol);
    entry.i_h_morita = ih.report.all_pass();
    CrossedProduct cp(action.restrict_to(rep), tol);
    entry.max_equals_reduced = max_equals_reduced_check(cp, tol).all_pass();
    // conjugacy invariance: every member of the class matches the rep
    for (std::size_t idx : subs.classes[cls]) {
      if (subs.all[idx] == rep) continue;
      CategoryK0 other = orbit_value(action, subs.all[idx], seed ^ idx, tol);
      if (other.k0.block_multiset() != entry.k0.block_multiset())
        conj_invariant = false;
    }
    out.values.push_back(std::move(entry));
  }
  out.checks.add_flag("conjugacy-invariance", conj_invariant);

  bool all_ih = true, all_mr = true;
  for (const auto& v : out.values) {
    all_ih = all_ih && v.i_h_morita;
    all_mr = all_mr && v.max_equals_reduced;
  }
  out.checks.add_flag("i_H-morita-all", all_ih);
  out.checks.add_flag("max-equals-reduced-all", all_mr);

  // a_crossed iso for the full group action
  Report iso = a_crossed_iso_check(action, seed, tol);
  out.checks.add_flag("a-crossed-iso", iso.all_pass());

  std::vector<OrbitCorner> corners;
  for (std::size_t a = 0; a < reps.size(); ++a)
    corners.push_back(make_orbit_corner(action, reps[a], seed ^ (0x100 + a), tol));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      auto maps = equivariant_maps(action.group(), reps[a], reps[b],
                                   corners[a].orbit, corners[b].orbit);
      for (std::size_t m = 0; m < maps.size(); ++m) {
        OrbitMapEntry e;
        e.from = subgroup_to_string(reps[a]);
        e.to = subgroup_to_string(reps[b]);
        e.map_index = m;
        e.matrix = orbit_map(action, corners[a], corners[b], maps[m], seed, tol);
        out.maps.push_back(std::move(e));
      }
    }
  return out;
}

}  // namespace cstarcat

#endif
