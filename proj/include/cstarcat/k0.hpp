#ifndef CSTARCAT_K0_HPP
#define CSTARCAT_K0_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cstarcat/wedderburn.hpp"

namespace cstarcat {

// K0 of a finite-dimensional C*-algebra: Z^k with one generator per
// Wedderburn block; projection classes are integer dimension vectors.
// K1 vanishes here (finite-dimensional), recorded as a fact.
struct K0Data {
  std::size_t rank = 0;                    // number of blocks k
  std::vector<std::string> labels;         // one per block, e.g. "M2"
  std::vector<std::size_t> block_sizes;    // n_i
  std::vector<std::size_t> multiplicities; // m_i
  WedderburnData wedderburn;

  std::vector<long long> unit_class() const {
    std::vector<long long> v;
    for (auto n : block_sizes) v.push_back(static_cast<long long>(n));
    return v;
  }

  // multiset of block sizes; equal multisets = isomorphic K0 with
  // matching order structure
  std::vector<std::size_t> block_multiset() const {
    std::vector<std::size_t> v = block_sizes;
    std::sort(v.begin(), v.end());
    return v;
  }
};

using IntVector = std::vector<long long>;
using IntMatrix = std::vector<std::vector<long long>>;  // row-major

inline IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t r = a.size();
  const std::size_t inner = b.size();
  const std::size_t c = inner == 0 ? 0 : b.front().size();
  IntMatrix out(r, std::vector<long long>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline long long int_det(IntMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) return 0;
  // fraction-free Gaussian elimination (Bareiss)
  long long sign = 1;
  long long prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

inline K0Data k0_group(const ConcreteAlgebra& alg, std::uint64_t seed = 1,
                       const Tolerances& tol = Tolerances{}) {
  K0Data out;
  out.wedderburn = wedderburn(alg, seed, tol);
  out.rank = out.wedderburn.block_count();
  for (const auto& b : out.wedderburn.blocks) {
    out.block_sizes.push_back(b.block_size);
    out.multiplicities.push_back(b.multiplicity);
    out.labels.push_back("M" + std::to_string(b.block_size));
  }
  return out;
}

// class of a projection: component i = round(trace(z_i p) / m_i).
inline IntVector k0_class(const ConcreteAlgebra& alg, const K0Data& k0,
                          const ComplexMatrix& p, const Tolerances& tol = Tolerances{}) {
  const double scale = hs_norm(p);
  if (hs_norm(p - p.adjoint()) > tol.membership(scale) ||
      hs_norm(p * p - p) > tol.membership(scale))
    throw NotAProjection("k0_class input is not a projection");
  if (alg.space.residual(p) > tol.membership(scale))
    throw NotAProjection("projection does not belong to the algebra");
  IntVector out;
  for (std::size_t i = 0; i < k0.rank; ++i) {
    const auto& b = k0.wedderburn.blocks[i];
    double v = (b.central_projection * p).trace().real() /
               static_cast<double>(b.multiplicity);
    long long r = std::llround(v);
    if (std::abs(v - static_cast<double>(r)) > tol.rank * (1.0 + std::abs(v)))
      throw RoundingFailure("non-integer block rank " + std::to_string(v));
    out.push_back(r);
  }
  return out;
}

struct CategoryK0 {
  AResult a;
  K0Data k0;
};

// K0 of a category through A(-): blockwise ranks of A(cat).
inline CategoryK0 k0_of_category(const FinCStarCat& cat, std::uint64_t seed = 1,
                                 const Tolerances& tol = Tolerances{}) {
  CategoryK0 out;
  out.a = build_A(cat, tol);
  out.k0 = k0_group(out.a.algebra, seed, tol);
  return out;
}

// A minimal projection in block i: the spectral projection of a generic
// self-adjoint corner element onto one eigenvalue cluster of multiplicity
// m_i; spectral projections of algebra elements stay in the algebra.
inline ComplexMatrix minimal_block_projection(const ConcreteAlgebra& alg,
                                              const K0Data& k0, std::size_t block,
                                              std::uint64_t seed,
                                              const Tolerances& tol = Tolerances{}) {
  const auto& b = k0.wedderburn.blocks[block];
  if (b.block_size == 1) return b.central_projection;
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix x = alg.space.random_selfadjoint_element(rng);
    ComplexMatrix corner = b.central_projection * x * b.central_projection;
    EigResult e = hermitian_eig(corner);
    const double scale =
        std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    auto clusters = cluster_eigenvalues(e.eigenvalues, scale, tol);
    for (const auto& cl : clusters) {
      if (cl.size() != b.multiplicity) continue;
      // skip the kernel cluster
      double lam = 0.0;
      for (std::size_t k : cl) lam += std::abs(e.eigenvalues[k]);
      if (lam <= b.multiplicity * tol.cluster(scale)) continue;
      ComplexMatrix p(alg.rep_dim, alg.rep_dim);
      for (std::size_t k : cl)
        for (std::size_t i = 0; i < alg.rep_dim; ++i)
          for (std::size_t j = 0; j < alg.rep_dim; ++j)
            p(i, j) += e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
      if (alg.space.residual(p) > tol.membership(hs_norm(p))) continue;
      return p;
    }
  }
  throw NonGeneric("no minimal projection found in block");
}

// Integer matrix of K0(phi): column j = class of phi(p_j) for a minimal
// projection p_j in source block j.
inline IntMatrix k0_map(const StarHomomorphism& phi, const K0Data& src_k0,
                        const K0Data& dst_k0, std::uint64_t seed = 1,
                        const Tolerances& tol = Tolerances{}) {
  phi.require_homomorphism(tol);
  IntMatrix out(dst_k0.rank, std::vector<long long>(src_k0.rank, 0));
  for (std::size_t j = 0; j < src_k0.rank; ++j) {
    ComplexMatrix pj = minimal_block_projection(phi.source, src_k0, j, seed + j, tol);
    ComplexMatrix img = phi.apply(pj);
    IntVector col = k0_class(phi.target, dst_k0, img, tol);
    for (std::size_t i = 0; i < dst_k0.rank; ++i) out[i][j] = col[i];
  }
  return out;
}

inline bool mvn_subequivalent(const ConcreteAlgebra& alg, const K0Data& k0,
                              const ComplexMatrix& p, const ComplexMatrix& q,
                              const Tolerances& tol = Tolerances{}) {
  IntVector cp = k0_class(alg, k0, p, tol);
  IntVector cq = k0_class(alg, k0, q, tol);
  for (std::size_t i = 0; i < cp.size(); ++i)
    if (cp[i] > cq[i]) return false;
  return true;
}

inline bool mvn_equivalent(const ConcreteAlgebra& alg, const K0Data& k0,
                           const ComplexMatrix& p, const ComplexMatrix& q,
                           const Tolerances& tol = Tolerances{}) {
  return k0_class(alg, k0, p, tol) == k0_class(alg, k0, q, tol);
}

// Witness partial isometry u with u u* = p, u* u = q, found by polar
// decomposition of a generic compression p r q; exists when the classes
// agree.
inline std::optional<ComplexMatrix> mvn_witness(const ConcreteAlgebra& alg,
                                                const ComplexMatrix& p,
                                                const ComplexMatrix& q,
                                                std::uint64_t seed,
                                                const Tolerances& tol = Tolerances{}) {
  Rng rng(seed);
  const double scale = std::max(hs_norm(p), hs_norm(q));
  for (int attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix r = alg.space.random_element(rng);
    ComplexMatrix x = p * r * q;
    ComplexMatrix g = x.adjoint() * x;
    ComplexMatrix u = x * pinv(sqrt_psd(g, tol));
    u = alg.space.project(u).first;
    if (hs_norm(u * u.adjoint() - p) <= tol.membership(scale) &&
        hs_norm(u.adjoint() * u - q) <= tol.membership(scale))
      return u;
  }
  return std::nullopt;
}

struct IdealDecomposition {
  ComplexMatrix central_support;        // z_I
  ConcreteAlgebra ideal;                // I with unit z_I
  ConcreteAlgebra quotient;             // A/I realized on range(1 - z_I)
  ComplexMatrix quotient_isometry;      // columns span range(1 - z_I)
  StarHomomorphism inclusion;           // I -> A
  StarHomomorphism projection;          // A -> A/I
};

// Splits a closed two-sided *-ideal off a unital algebra: I = z_I A for a
// central projection z_I, and A/I is the compression to the complement.
inline IdealDecomposition split_ideal(const ConcreteAlgebra& alg,
                                      const MatrixSubspace& ideal_space,
                                      const Tolerances& tol = Tolerances{}) {
  // verify: subspace of the algebra, *-closed, two-sided
  for (std::size_t k = 0; k < ideal_space.dim(); ++k) {
    const ComplexMatrix& x = ideal_space.basis(k);
    if (alg.space.residual(x) > tol.membership(1.0))
      throw NotAnIdeal("ideal is not a subspace of the algebra");
    if (ideal_space.residual(x.adjoint()) > tol.membership(1.0))
      throw NotAnIdeal("ideal is not *-closed");
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (ideal_space.residual(alg.space.basis(j) * x) > tol.membership(1.0) ||
          ideal_space.residual(x * alg.space.basis(j)) > tol.membership(1.0))
        throw NotAnIdeal("ideal is not two-sided");
    }
  }
  IdealDecomposition out;
  out.ideal.rep_dim = alg.rep_dim;
  out.ideal.space = ideal_space;
  if (ideal_space.dim() == 0) {
    out.central_support = ComplexMatrix(alg.rep_dim, alg.rep_dim);
    out.ideal.unit = out.central_support;
  } else {
    out.ideal.ensure_unit(tol);
    out.central_support = out.ideal.require_unit();
  }
  const ComplexMatrix zq = alg.require_unit() - out.central_support;
  ComplexMatrix u = range_basis(zq);
  out.quotient_isometry = u;
  out.quotient.rep_dim = u.cols();
  MatrixSubspace qspace(u.cols(), u.cols());
  for (std::size_t k = 0; k < alg.dim(); ++k)
    qspace.extend(u.adjoint() * alg.space.basis(k) * u, tol.rank);
  out.quotient.space = std::move(qspace);
  out.quotient.unit = ComplexMatrix::identity(u.cols());

  out.inclusion.source = out.ideal;
  out.inclusion.target = alg;
  for (std::size_t k = 0; k < ideal_space.dim(); ++k)
    out.inclusion.images.push_back(ideal_space.basis(k));

  out.projection.source = alg;
  out.projection.target = out.quotient;
  for (std::size_t k = 0; k < alg.dim(); ++k)
    out.projection.images.push_back(u.adjoint() * alg.space.basis(k) * u);
  return out;
}

// Exactness of 0 -> K0(I) -> K0(A) -> K0(A/I) -> 0 at the level of
// blockwise K0 (K1 = 0 in finite dimensions).
inline Report exactness_check(const ConcreteAlgebra& alg,
                              const MatrixSubspace& ideal_space,
                              std::uint64_t seed = 1,
                              const Tolerances& tol = Tolerances{}) {
  Report rep;
  rep.title = "K0 exactness";
  IdealDecomposition d = split_ideal(alg, ideal_space, tol);

  K0Data kA = k0_group(alg, seed, tol);
  K0Data kI;
  if (d.ideal.dim() > 0) kI = k0_group(d.ideal, seed ^ 0x11, tol);
  K0Data kQ;
  if (d.quotient.dim() > 0) kQ = k0_group(d.quotient, seed ^ 0x22, tol);

  rep.add_flag("rank-additivity", kA.rank == kI.rank + kQ.rank,
               std::to_string(kA.rank) + " = " + std::to_string(kI.rank) + " + " +
                   std::to_string(kQ.rank));

  IntMatrix inc(kA.rank, std::vector<long long>(kI.rank, 0));
  if (kI.rank > 0) inc = k0_map(d.inclusion, kI, kA, seed ^ 0x33, tol);
  IntMatrix prj(kQ.rank, std::vector<long long>(kA.rank, 0));
  if (kQ.rank > 0) prj = k0_map(d.projection, kA, kQ, seed ^ 0x44, tol);

  // injectivity of inc: columns are distinct unit vectors (block matching)
  bool inj = true;
  {
    std::vector<long long> colsum(kI.rank, 0);
    for (std::size_t j = 0; j < kI.rank; ++j) {
      long long s = 0;
      for (std::size_t i = 0; i < kA.rank; ++i) s += std::llabs(inc[i][j]);
      colsum[j] = s;
      if (s == 0) inj = false;
    }
    // distinct columns
    for (std::size_t j = 0; j < kI.rank && inj; ++j)
      for (std::size_t j2 = j + 1; j2 < kI.rank && inj; ++j2) {
        bool same = true;
        for (std::size_t i = 0; i < kA.rank; ++i)
          if (inc[i][j] != inc[i][j2]) same = false;
        if (same) inj = false;
      }
  }
  rep.add_flag("inclusion-injective", inj);

  // surjectivity of prj: every quotient block is hit
  bool surj = true;
  for (std::size_t i = 0; i < kQ.rank; ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < kA.rank; ++j) s += std::llabs(prj[i][j]);
    if (s == 0) surj = false;
  }
  rep.add_flag("projection-surjective", surj);

  // composite is zero
  bool zero = true;
  if (kI.rank > 0 && kQ.rank > 0) {
    IntMatrix comp = int_mul(prj, inc);
    for (const auto& row : comp)
      for (long long v : row)
        if (v != 0) zero = false;
  }
  rep.add_flag("composite-zero", zero);
  return rep;
}

inline std::string k0_to_string(const K0Data& k0) {
  std::string s = "Z^" + std::to_string(k0.rank);
  s += ", [1] -> (";
  for (std::size_t i = 0; i < k0.rank; ++i) {
    if (i) s += ",";
    s += std::to_string(k0.block_sizes[i]);
  }
  s += "); K1 = 0 (finite-dimensional)";
  return s;
}

}  // namespace cstarcat

#endif
