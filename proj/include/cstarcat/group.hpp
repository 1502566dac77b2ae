#ifndef CSTARCAT_GROUP_HPP
#define CSTARCAT_GROUP_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cstarcat/errors.hpp"

namespace cstarcat {

// A finite group as a multiplication table over indices 0..order-1.
class FiniteGroup {
public:
  FiniteGroup() = default;
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table)
      : table_(std::move(table)) {
    const std::size_t n = table_.size();
    for (const auto& row : table_)
      if (row.size() != n) throw ValidationError("multiplication table is not square");
    for (const auto& row : table_)
      for (std::size_t v : row)
        if (v >= n) throw ValidationError("table entry out of range");
    // identity
    identity_ = n;
    for (std::size_t e = 0; e < n; ++e) {
      bool ok = true;
      for (std::size_t g = 0; g < n; ++g)
        if (table_[e][g] != g || table_[g][e] != g) ok = false;
      if (ok) {
        identity_ = e;
        break;
      }
    }
    if (identity_ == n && n > 0) throw ValidationError("no identity element");
    // inverses
    inverse_.assign(n, n);
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h)
        if (table_[g][h] == identity_ && table_[h][g] == identity_) inverse_[g] = h;
      if (inverse_[g] == n) throw ValidationError("missing inverse");
    }
    // associativity, exhaustive
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw ValidationError("multiplication table is not associative");
  }

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  std::size_t conjugate(std::size_t g, std::size_t x) const {
    return mul(mul(g, x), inv(g));
  }

  static FiniteGroup cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
  }

  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::size_t n = g.order() * h.order();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    auto enc = [&](std::size_t a, std::size_t b) { return a * h.order() + b; };
    for (std::size_t a1 = 0; a1 < g.order(); ++a1)
      for (std::size_t b1 = 0; b1 < h.order(); ++b1)
        for (std::size_t a2 = 0; a2 < g.order(); ++a2)
          for (std::size_t b2 = 0; b2 < h.order(); ++b2)
            t[enc(a1, b1)][enc(a2, b2)] = enc(g.mul(a1, a2), h.mul(b1, b2));
    return FiniteGroup(std::move(t));
  }

  // S_n for n! <= 24; elements enumerated in lexicographic one-line order
  static FiniteGroup symmetric(std::size_t n) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
    const std::size_t m = perms.size();
    std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        std::vector<std::size_t> comp(n);
        for (std::size_t i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
        t[a][b] = index[comp];
      }
    return FiniteGroup(std::move(t));
  }

private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

using Subgroup = std::vector<std::size_t>;  // sorted element indices

inline Subgroup closure_of(const FiniteGroup& g, std::set<std::size_t> gen) {
  gen.insert(g.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> elems(gen.begin(), gen.end());
    for (std::size_t a : elems)
      for (std::size_t b : elems)
        if (gen.insert(g.mul(a, b)).second) grew = true;
  }
  return Subgroup(gen.begin(), gen.end());
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::set<std::size_t> s(h.begin(), h.end());
  if (!s.count(g.identity())) return false;
  for (std::size_t a : h) {
    if (!s.count(g.inv(a))) return false;
    for (std::size_t b : h)
      if (!s.count(g.mul(a, b))) return false;
  }
  return true;
}

struct SubgroupList {
  std::vector<Subgroup> all;                       // sorted by (size, elements)
  std::vector<std::vector<std::size_t>> classes;   // indices into `all`, grouped
                                                   // by conjugacy
  // representative of each class: lexicographically smallest element set
  std::vector<std::size_t> representatives;
};

// Exhaustive subgroup enumeration by closing generated subsets, with
// conjugacy-class grouping.
inline SubgroupList subgroups(const FiniteGroup& g, std::size_t cap = 64) {
  if (g.order() > cap) throw GroupTooLarge("group order exceeds cap");
  std::set<Subgroup> found;
  found.insert(closure_of(g, {}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> snapshot(found.begin(), found.end());
    for (const auto& h : snapshot) {
      for (std::size_t x = 0; x < g.order(); ++x) {
        std::set<std::size_t> gen(h.begin(), h.end());
        if (!gen.insert(x).second) continue;
        Subgroup bigger = closure_of(g, gen);
        if (found.insert(bigger).second) grew = true;
      }
    }
  }
  SubgroupList out;
  out.all.assign(found.begin(), found.end());
  std::sort(out.all.begin(), out.all.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  std::map<Subgroup, std::size_t> index;
  for (std::size_t i = 0; i < out.all.size(); ++i) index[out.all[i]] = i;
  std::vector<bool> seen(out.all.size(), false);
  for (std::size_t i = 0; i < out.all.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cls;
    Subgroup smallest = out.all[i];
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::set<std::size_t> conj;
      for (std::size_t a : out.all[i]) conj.insert(g.conjugate(x, a));
      Subgroup c(conj.begin(), conj.end());
      std::size_t j = index.at(c);
      if (!seen[j]) {
        seen[j] = true;
        cls.push_back(j);
      }
      if (c < smallest) smallest = c;
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(cls);
    out.representatives.push_back(index.at(smallest));
  }
  return out;
}

// Number of conjugacy classes = number of irreducible characters; the
// independent oracle for K0 ranks of group algebras.
inline std::size_t conjugacy_class_count(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t classes = 0;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++classes;
    for (std::size_t a = 0; a < g.order(); ++a) seen[g.conjugate(a, x)] = true;
  }
  return classes;
}

// A finite G-set: named points with a permutation action.
struct FiniteGSet {
  std::vector<std::string> points;
  std::vector<std::vector<std::size_t>> action;  // per group element, image index
                                                 // of each point

  std::size_t size() const { return points.size(); }
  std::size_t apply(std::size_t g, std::size_t x) const { return action[g][x]; }

  void validate(const FiniteGroup& g) const {
    if (action.size() != g.order()) throw InvalidAction("one permutation per element");
    for (const auto& perm : action) {
      if (perm.size() != points.size()) throw InvalidAction("permutation size mismatch");
      std::vector<bool> hit(points.size(), false);
      for (std::size_t v : perm) {
        if (v >= points.size() || hit[v]) throw InvalidAction("not a permutation");
        hit[v] = true;
      }
    }
    for (std::size_t x = 0; x < points.size(); ++x)
      if (action[g.identity()][x] != x) throw InvalidAction("identity must act trivially");
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b)
        for (std::size_t x = 0; x < points.size(); ++x)
          if (action[g.mul(a, b)][x] != action[a][action[b][x]])
            throw InvalidAction("action is not a homomorphism");
  }
};

// The orbit G/H with left translation; points are labeled by coset
// representatives (smallest element of each coset).
inline FiniteGSet orbit_gset(const FiniteGroup& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw NotASubgroup("H is not a subgroup");
  std::vector<std::size_t> coset_of(g.order(), g.order());
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of[x] != g.order()) continue;
    for (std::size_t a : h) coset_of[g.mul(x, a)] = reps.size();
    reps.push_back(x);
  }
  FiniteGSet out;
  for (std::size_t r : reps) out.points.push_back("g" + std::to_string(r) + "H");
  out.action.assign(g.order(), std::vector<std::size_t>(reps.size()));
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < reps.size(); ++i)
      out.action[a][i] = coset_of[g.mul(a, reps[i])];
  out.validate(g);
  return out;
}

// All G-equivariant maps G/H -> G/K: one for each coset gK whose
// stabilizer condition H <= g K g^{-1} holds; the map sends eH to gK.
inline std::vector<std::vector<std::size_t>> equivariant_maps(
    const FiniteGroup& g, const Subgroup& h, const Subgroup& k,
    const FiniteGSet& gh, const FiniteGSet& gk) {
  // recover coset representatives from the labels built by orbit_gset
  auto reps_of = [&](const FiniteGSet& s) {
    std::vector<std::size_t> reps;
    for (const auto& p : s.points)
      reps.push_back(std::stoul(p.substr(1, p.size() - 2)));
    return reps;
  };
  std::vector<std::size_t> reps_h = reps_of(gh);
  std::vector<std::size_t> reps_k = reps_of(gk);
  std::set<std::size_t> kset(k.begin(), k.end());

  std::vector<std::vector<std::size_t>> maps;
  for (std::size_t t = 0; t < gk.size(); ++t) {
    const std::size_t g0 = reps_k[t];
    bool ok = true;
    for (std::size_t a : h)
      if (!kset.count(g.mul(g.mul(g.inv(g0), a), g0))) ok = false;
    if (!ok) continue;
    // f(xH) = x g0 K
    std::vector<std::size_t> f(gh.size());
    for (std::size_t i = 0; i < gh.size(); ++i) {
      std::size_t target = g.mul(reps_h[i], g0);
      // find the coset of target in G/K
      std::size_t found = gk.size();
      for (std::size_t j = 0; j < gk.size(); ++j) {
        std::size_t r = reps_k[j];
        if (kset.count(g.mul(g.inv(r), target))) {
          found = j;
          break;
        }
      }
      f[i] = found;
    }
    maps.push_back(std::move(f));
  }
  return maps;
}

inline bool is_equivariant_map(const FiniteGroup& g, const FiniteGSet& x,
                               const FiniteGSet& y, const std::vector<std::size_t>& f) {
  if (f.size() != x.size()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t p = 0; p < x.size(); ++p)
      if (f[x.apply(a, p)] != y.apply(a, f[p])) return false;
  return true;
}

inline std::string subgroup_to_string(const Subgroup& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(h[i]);
  }
  s += "}";
  return s;
}

}  // namespace cstarcat

#endif
