#ifndef CSTARCAT_CATEGORY_HPP
#define CSTARCAT_CATEGORY_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cstarcat/report.hpp"
#include "cstarcat/subspace.hpp"

namespace cstarcat {

struct ObjectInfo {
  std::string id;
  std::size_t dim = 0;
};

// A morphism src -> dst carried by a dim(dst) x dim(src) matrix.
struct Morphism {
  std::string src;
  std::string dst;
  ComplexMatrix matrix;
};

// A finite C*-category represented concretely: finitely many objects with
// Hilbert-space dimensions, and for each ordered pair an orthonormal basis
// of the corresponding Hom-subspace.
class FinCStarCat {
public:
  FinCStarCat() = default;

  std::size_t add_object(const std::string& id, std::size_t dim) {
    if (index_.count(id)) throw ValidationError("duplicate object id '" + id + "'");
    index_[id] = objects_.size();
    objects_.push_back({id, dim});
    return objects_.size() - 1;
  }

  std::size_t object_count() const { return objects_.size(); }
  const ObjectInfo& object(std::size_t i) const { return objects_[i]; }
  const std::vector<ObjectInfo>& objects() const { return objects_; }

  bool has_object(const std::string& id) const { return index_.count(id) > 0; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownObject("no object '" + id + "'");
    return it->second;
  }

  std::size_t dim_of(const std::string& id) const { return objects_[index_of(id)].dim; }

  const MatrixSubspace& hom(std::size_t src, std::size_t dst) const {
    auto it = hom_.find({src, dst});
    if (it != hom_.end()) return it->second;
    return zero_space(objects_[dst].dim, objects_[src].dim);
  }

  const MatrixSubspace& hom(const std::string& src, const std::string& dst) const {
    return hom(index_of(src), index_of(dst));
  }

  MatrixSubspace& mutable_hom(std::size_t src, std::size_t dst) {
    auto it = hom_.find({src, dst});
    if (it == hom_.end()) {
      it = hom_.emplace(std::make_pair(src, dst),
                        MatrixSubspace(objects_[dst].dim, objects_[src].dim))
               .first;
    }
    return it->second;
  }

  void set_hom(std::size_t src, std::size_t dst, MatrixSubspace s) {
    if (s.ambient_rows() != objects_[dst].dim || s.ambient_cols() != objects_[src].dim)
      throw ShapeMismatch("hom ambient shape must be dim(dst) x dim(src)");
    hom_[{src, dst}] = std::move(s);
  }

  Morphism identity(const std::string& id) const {
    return Morphism{id, id, ComplexMatrix::identity(dim_of(id))};
  }

  std::size_t total_hom_dim() const {
    std::size_t d = 0;
    for (const auto& [key, s] : hom_) d += s.dim();
    return d;
  }

  bool is_member(const Morphism& f, const Tolerances& tol = Tolerances{}) const {
    std::size_t s = index_of(f.src), d = index_of(f.dst);
    if (f.matrix.rows() != objects_[d].dim || f.matrix.cols() != objects_[s].dim)
      return false;
    return hom(s, d).contains(f.matrix, tol);
  }

private:
  // shared pool of empty subspaces, so absent Hom-entries read as zero
  // spaces without mutating the category (concurrent reads stay safe)
  static const MatrixSubspace& zero_space(std::size_t rows, std::size_t cols) {
    static std::mutex guard;
    static std::map<std::pair<std::size_t, std::size_t>, MatrixSubspace> pool;
    std::lock_guard<std::mutex> lock(guard);
    auto it = pool.find({rows, cols});
    if (it == pool.end())
      it = pool.emplace(std::make_pair(rows, cols), MatrixSubspace(rows, cols)).first;
    return it->second;
  }

  std::vector<ObjectInfo> objects_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, MatrixSubspace> hom_;
};

// A wide two-sided *-ideal: a subspace of every Hom-space, closed under
// composition with the ambient category and under the involution.
class CatIdeal {
public:
  CatIdeal() = default;
  explicit CatIdeal(const FinCStarCat& cat) {
    for (std::size_t i = 0; i < cat.object_count(); ++i)
      for (std::size_t j = 0; j < cat.object_count(); ++j)
        spaces_[{i, j}] = MatrixSubspace(cat.object(j).dim, cat.object(i).dim);
  }

  const MatrixSubspace& at(std::size_t src, std::size_t dst) const {
    return spaces_.at({src, dst});
  }
  MatrixSubspace& at(std::size_t src, std::size_t dst) { return spaces_.at({src, dst}); }

  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& [k, s] : spaces_) d += s.dim();
    return d;
  }

private:
  std::map<std::pair<std::size_t, std::size_t>, MatrixSubspace> spaces_;
};

inline Report validate_ideal(const FinCStarCat& cat, const CatIdeal& ideal,
                             const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "ideal validation";
  const std::size_t n = cat.object_count();
  double worst_sub = 0.0, worst_star = 0.0, worst_comp = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& s = ideal.at(i, j);
      for (std::size_t k = 0; k < s.dim(); ++k) {
        worst_sub = std::max(worst_sub, cat.hom(i, j).residual(s.basis(k)));
        worst_star = std::max(worst_star, ideal.at(j, i).residual(s.basis(k).adjoint()));
        for (std::size_t l = 0; l < n; ++l) {
          const auto& post = cat.hom(j, l);
          for (std::size_t a = 0; a < post.dim(); ++a)
            worst_comp = std::max(
                worst_comp, ideal.at(i, l).residual(post.basis(a) * s.basis(k)));
          const auto& pre = cat.hom(l, i);
          for (std::size_t a = 0; a < pre.dim(); ++a)
            worst_comp = std::max(
                worst_comp, ideal.at(l, j).residual(s.basis(k) * pre.basis(a)));
        }
      }
    }
  rep.add("ideal-subspace", worst_sub, tol.membership(1.0));
  rep.add("ideal-star-closed", worst_star, tol.membership(1.0));
  rep.add("ideal-two-sided", worst_comp, tol.membership(1.0));
  return rep;
}

// compose(f,g) = f after g; requires dst(g) = src(f).
inline Morphism compose(const Morphism& f, const Morphism& g) {
  if (g.dst != f.src)
    throw EndpointMismatch("compose: dst(" + g.dst + ") != src(" + f.src + ")");
  return Morphism{g.src, f.dst, f.matrix * g.matrix};
}

inline Morphism adjoint(const Morphism& f) {
  return Morphism{f.dst, f.src, f.matrix.adjoint()};
}

inline double norm(const Morphism& f) { return operator_norm(f.matrix); }

// Seeds identities and closes every Hom-subspace under composition and
// involution; the fixed point is reached when all dimensions stabilize.
// When `frontier` is given, pairs entirely among the other objects are
// assumed closed already and skipped.
inline void close_category(FinCStarCat& cat, std::size_t max_dim = 4096,
                           const Tolerances& tol = Tolerances{},
                           const std::vector<std::size_t>* frontier = nullptr) {
  const std::size_t n = cat.object_count();
  std::vector<bool> is_new(n, frontier == nullptr);
  if (frontier)
    for (std::size_t i : *frontier) is_new[i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_new[i]) continue;
    const std::size_t d = cat.object(i).dim;
    cat.mutable_hom(i, i).extend(ComplexMatrix::identity(d), tol.rank);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    // involution
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_new[i] && !is_new[j]) continue;
        const std::size_t snap = cat.hom(i, j).dim();
        for (std::size_t k = 0; k < snap; ++k) {
          ComplexMatrix b = cat.hom(i, j).basis(k);
          if (cat.mutable_hom(j, i).extend(b.adjoint(), tol.rank)) changed = true;
        }
      }
    // composition
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t dij = cat.hom(i, j).dim();
        if (dij == 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (!is_new[i] && !is_new[j] && !is_new[k]) continue;
          const std::size_t djk = cat.hom(j, k).dim();
          if (djk == 0) continue;
          for (std::size_t a = 0; a < dij; ++a)
            for (std::size_t b = 0; b < djk; ++b) {
              ComplexMatrix p = cat.hom(j, k).basis(b) * cat.hom(i, j).basis(a);
              if (cat.mutable_hom(i, k).extend(p, tol.rank)) {
                changed = true;
                if (cat.hom(i, k).dim() > max_dim)
                  throw DimensionBlowup("hom closure exceeded cap");
              }
            }
        }
      }
  }
}

struct CategoryBuilder {
  FinCStarCat cat;

  CategoryBuilder& object(const std::string& id, std::size_t dim) {
    cat.add_object(id, dim);
    return *this;
  }

  CategoryBuilder& generator(const std::string& src, const std::string& dst,
                             const ComplexMatrix& m) {
    std::size_t s = cat.index_of(src), d = cat.index_of(dst);
    if (m.rows() != cat.object(d).dim || m.cols() != cat.object(s).dim)
      throw ShapeMismatch("generator shape must be dim(dst) x dim(src)");
    cat.mutable_hom(s, d).extend(m);
    return *this;
  }

  FinCStarCat close(std::size_t max_dim = 4096, const Tolerances& tol = Tolerances{}) {
    close_category(cat, max_dim, tol);
    return cat;
  }
};

// The full category on the given objects: every Hom-space is everything.
inline FinCStarCat full_category(const std::vector<ObjectInfo>& objects) {
  FinCStarCat cat;
  for (const auto& o : objects) cat.add_object(o.id, o.dim);
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      MatrixSubspace s(objects[j].dim, objects[i].dim);
      for (std::size_t a = 0; a < objects[j].dim; ++a)
        for (std::size_t b = 0; b < objects[i].dim; ++b)
          s.extend(ComplexMatrix::unit(objects[j].dim, objects[i].dim, a, b));
      cat.set_hom(i, j, std::move(s));
    }
  return cat;
}

// One object of dimension 1 whose endomorphisms are the scalars.
inline FinCStarCat scalar_category(const std::string& id = "pt") {
  return full_category({{id, 1}});
}

inline Report validate(const FinCStarCat& cat, const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "category validation";
  const std::size_t n = cat.object_count();

  double worst_orth = 0.0;
  std::string orth_where;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double d = cat.hom(i, j).orthonormality_defect();
      if (d > worst_orth) {
        worst_orth = d;
        orth_where = cat.object(i).id + "->" + cat.object(j).id;
      }
    }
  rep.add("orthonormality", worst_orth, tol.orth, orth_where);

  double worst_id = 0.0;
  double id_tol = tol.membership(1.0);
  std::string id_where;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix id = ComplexMatrix::identity(cat.object(i).dim);
    double r = cat.hom(i, i).residual(id);
    double t = tol.membership(hs_norm(id));
    if (r / t > worst_id / id_tol) {
      worst_id = r;
      id_tol = t;
      id_where = cat.object(i).id;
    }
  }
  rep.add("identity", worst_id, id_tol, id_where);

  double worst_inv = 0.0, inv_tol = tol.membership(1.0);
  std::string inv_where;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& s = cat.hom(i, j);
      for (std::size_t k = 0; k < s.dim(); ++k) {
        ComplexMatrix b = s.basis(k).adjoint();
        double r = cat.hom(j, i).residual(b);
        double t = tol.membership(hs_norm(b));
        if (r / t > worst_inv / inv_tol) {
          worst_inv = r;
          inv_tol = t;
          inv_where = cat.object(i).id + "->" + cat.object(j).id + " basis " +
                      std::to_string(k);
        }
      }
    }
  rep.add("involution", worst_inv, inv_tol, inv_where);

  double worst_cmp = 0.0, cmp_tol = tol.membership(1.0);
  std::string cmp_where;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& sij = cat.hom(i, j);
      if (sij.dim() == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& sjk = cat.hom(j, k);
        if (sjk.dim() == 0) continue;
        for (std::size_t a = 0; a < sij.dim(); ++a)
          for (std::size_t b = 0; b < sjk.dim(); ++b) {
            ComplexMatrix p = sjk.basis(b) * sij.basis(a);
            double r = cat.hom(i, k).residual(p);
            double t = tol.membership(hs_norm(p));
            if (r / t > worst_cmp / cmp_tol) {
              worst_cmp = r;
              cmp_tol = t;
              cmp_where = cat.object(i).id + "->" + cat.object(j).id + "->" +
                          cat.object(k).id;
            }
          }
      }
    }
  rep.add("composition", worst_cmp, cmp_tol, cmp_where);
  return rep;
}

// Randomized polar-decomposition search for a unitary C -> C' in the
// Hom-span. A nullopt answer means "no unitary found (probabilistic)";
// unequal dimensions are a deterministic obstruction.
inline std::optional<Morphism> find_unitary_iso(const FinCStarCat& cat,
                                                const std::string& c,
                                                const std::string& cp,
                                                std::uint64_t seed,
                                                const Tolerances& tol = Tolerances{}) {
  const std::size_t dc = cat.dim_of(c), dcp = cat.dim_of(cp);
  if (dc != dcp) return std::nullopt;
  if (dc == 0) return Morphism{c, cp, ComplexMatrix(0, 0)};
  const auto& h = cat.hom(c, cp);
  if (h.dim() == 0) return std::nullopt;
  Rng rng(seed);
  const double id_scale = hs_norm(ComplexMatrix::identity(dc));
  for (int attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix f = h.random_element(rng);
    ComplexMatrix g = f.adjoint() * f;
    EigResult e = hermitian_eig(g);
    if (e.eigenvalues.front() <= tol.cluster(e.eigenvalues.back())) continue;
    ComplexMatrix u = f * inv_sqrt_pd(g, tol);
    u = h.project(u).first;  // membership re-projection
    double r1 = hs_norm(u.adjoint() * u - ComplexMatrix::identity(dc));
    double r2 = hs_norm(u * u.adjoint() - ComplexMatrix::identity(dcp));
    if (r1 <= tol.membership(id_scale) && r2 <= tol.membership(id_scale))
      return Morphism{c, cp, u};
  }
  return std::nullopt;
}

// Randomized search for an isometry C -> C' (u* u = id_C).
inline std::optional<Morphism> find_isometry(const FinCStarCat& cat,
                                             const std::string& c,
                                             const std::string& cp,
                                             std::uint64_t seed,
                                             const Tolerances& tol = Tolerances{}) {
  const std::size_t dc = cat.dim_of(c), dcp = cat.dim_of(cp);
  if (dc > dcp) return std::nullopt;
  if (dc == 0) return Morphism{c, cp, ComplexMatrix(dcp, 0)};
  const auto& h = cat.hom(c, cp);
  if (h.dim() == 0) return std::nullopt;
  Rng rng(seed);
  const double id_scale = hs_norm(ComplexMatrix::identity(dc));
  for (int attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix f = h.random_element(rng);
    ComplexMatrix g = f.adjoint() * f;
    EigResult e = hermitian_eig(g);
    if (e.eigenvalues.front() <= tol.cluster(e.eigenvalues.back())) continue;
    ComplexMatrix u = f * inv_sqrt_pd(g, tol);
    u = h.project(u).first;
    double r1 = hs_norm(u.adjoint() * u - ComplexMatrix::identity(dc));
    if (r1 <= tol.membership(id_scale)) return Morphism{c, cp, u};
  }
  return std::nullopt;
}

inline std::string product_object_id(const std::vector<std::string>& parts) {
  std::string id = "⟨";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) id += ",";
    id += parts[i];
  }
  id += "⟩";
  return id;
}

// Product of finitely many categories, realized on block-diagonal
// carriers: Hom((C_i),(D_i)) = prod_i Hom(C_i,D_i) entrywise.
inline FinCStarCat product_category(const std::vector<FinCStarCat>& cats) {
  FinCStarCat out;
  if (cats.empty()) return out;
  // enumerate object tuples in lexicographic order of factor indices
  std::vector<std::size_t> counts;
  for (const auto& c : cats) counts.push_back(c.object_count());
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> cur(cats.size(), 0);
  while (true) {
    tuples.push_back(cur);
    std::size_t t = cats.size();
    while (t > 0) {
      --t;
      if (++cur[t] < counts[t]) break;
      cur[t] = 0;
      if (t == 0) goto done;
    }
  }
done:
  std::vector<std::vector<std::size_t>> offsets(tuples.size());
  for (std::size_t a = 0; a < tuples.size(); ++a) {
    std::vector<std::string> parts;
    std::size_t dim = 0;
    offsets[a].resize(cats.size());
    for (std::size_t t = 0; t < cats.size(); ++t) {
      offsets[a][t] = dim;
      parts.push_back(cats[t].object(tuples[a][t]).id);
      dim += cats[t].object(tuples[a][t]).dim;
    }
    out.add_object(product_object_id(parts), dim);
  }
  for (std::size_t a = 0; a < tuples.size(); ++a)
    for (std::size_t b = 0; b < tuples.size(); ++b) {
      const std::size_t rd = out.object(b).dim, cd = out.object(a).dim;
      MatrixSubspace s(rd, cd);
      for (std::size_t t = 0; t < cats.size(); ++t) {
        const auto& h = cats[t].hom(tuples[a][t], tuples[b][t]);
        for (std::size_t k = 0; k < h.dim(); ++k) {
          ComplexMatrix m(rd, cd);
          m.set_block(offsets[b][t], offsets[a][t], h.basis(k));
          s.extend(m);
        }
      }
      out.set_hom(a, b, std::move(s));
    }
  return out;
}

}  // namespace cstarcat

#endif
