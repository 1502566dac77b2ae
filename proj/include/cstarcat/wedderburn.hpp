#ifndef CSTARCAT_WEDDERBURN_HPP
#define CSTARCAT_WEDDERBURN_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "cstarcat/a_functor.hpp"

namespace cstarcat {

struct WedderburnBlock {
  ComplexMatrix central_projection;  // minimal central projection z_i
  std::size_t block_size = 0;        // n_i: the block is M_{n_i}
  std::size_t multiplicity = 0;      // m_i: representation multiplicity
};

struct WedderburnData {
  std::vector<WedderburnBlock> blocks;

  std::size_t block_count() const { return blocks.size(); }

  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& b : blocks) out.push_back(b.block_size);
    return out;
  }
};

namespace detail {

// Nullspace of the joint commutation constraints [x, a_r] = 0 inside the
// span of the algebra basis, returned as coefficient vectors.
inline std::vector<std::vector<cplx>> centralizer_coefficients(
    const ConcreteAlgebra& alg, const std::vector<ComplexMatrix>& anchors,
    const Tolerances& tol) {
  const std::size_t d = alg.dim();
  ComplexMatrix gram(d, d);
  std::vector<std::vector<ComplexMatrix>> comm(anchors.size());
  for (std::size_t r = 0; r < anchors.size(); ++r) {
    comm[r].reserve(d);
    for (std::size_t j = 0; j < d; ++j)
      comm[r].push_back(alg.space.basis(j) * anchors[r] -
                        anchors[r] * alg.space.basis(j));
  }
  double scale = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      cplx g = 0.0;
      for (std::size_t r = 0; r < anchors.size(); ++r)
        g += hs_inner(comm[r][j], comm[r][k]);
      gram(j, k) = g;
      if (j == k) scale = std::max(scale, std::abs(g));
    }
  EigResult e = hermitian_eig(gram);
  std::vector<std::vector<cplx>> out;
  for (std::size_t k = 0; k < d; ++k) {
    if (e.eigenvalues[k] > tol.rank * (1.0 + scale)) continue;
    std::vector<cplx> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = e.eigenvectors(j, k);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

// Orthonormal basis of the center: elements commuting with the whole
// algebra. Generic pairs of elements already cut the center out; the
// candidate is verified against every basis element and the draw is
// repeated on failure.
inline MatrixSubspace algebra_center(const ConcreteAlgebra& alg, std::uint64_t seed,
                                     const Tolerances& tol = Tolerances{}) {
  const std::size_t d = alg.dim();
  MatrixSubspace center(alg.rep_dim, alg.rep_dim);
  if (d == 0) return center;
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<ComplexMatrix> anchors = {alg.space.random_element(rng),
                                          alg.space.random_element(rng)};
    auto coeffs = detail::centralizer_coefficients(alg, anchors, tol);
    MatrixSubspace cand(alg.rep_dim, alg.rep_dim);
    for (const auto& v : coeffs) cand.extend(alg.space.from_coefficients(v), tol.rank);
    // verify: candidate commutes with the full basis
    double worst = 0.0;
    for (std::size_t k = 0; k < cand.dim(); ++k)
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst, hs_norm(cand.basis(k) * alg.space.basis(j) -
                                        alg.space.basis(j) * cand.basis(k)));
    if (worst <= tol.membership(1.0)) return cand;
  }
  throw NonGeneric("center computation failed after retries");
}

// Wedderburn decomposition of a unital finite-dimensional concrete
// C*-algebra: minimal central projections from the eigenprojections of a
// generic self-adjoint central element, block sizes from dim(z_i A) = n_i^2,
// multiplicities from trace(z_i) = n_i m_i.
inline WedderburnData wedderburn(const ConcreteAlgebra& alg, std::uint64_t seed,
                                 const Tolerances& tol = Tolerances{}) {
  if (!alg.unit) throw NotUnital("wedderburn needs a unital algebra");
  WedderburnData out;
  if (alg.dim() == 0) return out;
  MatrixSubspace center = algebra_center(alg, seed ^ 0x5eedULL, tol);
  Rng rng(seed);

  for (int attempt = 0; attempt < 8; ++attempt) {
    ComplexMatrix z = center.random_selfadjoint_element(rng);
    EigResult e = hermitian_eig(z);
    const double scale =
        e.eigenvalues.empty()
            ? 0.0
            : std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    auto clusters = cluster_eigenvalues(e.eigenvalues, scale, tol);

    std::vector<WedderburnBlock> blocks;
    bool ok = true;
    for (const auto& cl : clusters) {
      ComplexMatrix p(alg.rep_dim, alg.rep_dim);
      for (std::size_t k : cl)
        for (std::size_t i = 0; i < alg.rep_dim; ++i)
          for (std::size_t j = 0; j < alg.rep_dim; ++j)
            p(i, j) += e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
      // the unit of the algebra need not be the ambient identity: discard
      // the kernel cluster, i.e. eigenprojections orthogonal to the unit
      ComplexMatrix pu = p * alg.require_unit();
      if (hs_norm(pu) <= tol.membership(1.0)) continue;
      if (alg.space.residual(p) > tol.membership(hs_norm(p))) {
        ok = false;
        break;
      }
      // minimality: z_i A z_i must be a full matrix block, dim = n^2
      MatrixSubspace corner(alg.rep_dim, alg.rep_dim);
      for (std::size_t k = 0; k < alg.dim(); ++k)
        corner.extend(p * alg.space.basis(k) * p, tol.rank);
      const double n_sq = static_cast<double>(corner.dim());
      const double n_real = std::sqrt(n_sq);
      const std::size_t n = static_cast<std::size_t>(std::llround(n_real));
      if (n * n != corner.dim()) {
        ok = false;
        break;
      }
      const double tr = p.trace().real();
      const double m_real = tr / static_cast<double>(n);
      const std::size_t m = static_cast<std::size_t>(std::llround(m_real));
      if (std::abs(m_real - static_cast<double>(m)) > tol.rank * (1.0 + m_real)) {
        ok = false;
        break;
      }
      blocks.push_back(WedderburnBlock{p, n, m});
    }
    if (!ok) continue;

    // the minimal central projections must sum to the unit
    ComplexMatrix acc(alg.rep_dim, alg.rep_dim);
    std::size_t dim_sum = 0;
    for (const auto& b : blocks) {
      acc += b.central_projection;
      dim_sum += b.block_size * b.block_size;
    }
    if (hs_norm(acc - alg.require_unit()) >
        tol.membership(hs_norm(alg.require_unit())))
      continue;
    if (dim_sum != alg.dim()) continue;  // non-generic draw merged two blocks

    // deterministic block order: by size, then by trace against a fixed
    // reference weighting, then entrywise; the keys depend only on the
    // canonical projections, never on the random draw
    std::sort(blocks.begin(), blocks.end(),
              [&](const WedderburnBlock& a, const WedderburnBlock& b) {
                if (a.block_size != b.block_size) return a.block_size < b.block_size;
                auto weight = [&](const WedderburnBlock& w) {
                  double s = 0.0;
                  for (std::size_t i = 0; i < alg.rep_dim; ++i)
                    s += w.central_projection(i, i).real() /
                         static_cast<double>(i + 1);
                  return s;
                };
                const double wa = weight(a), wb = weight(b);
                if (std::abs(wa - wb) > 1e-7) return wa > wb;
                // conjugate blocks can tie on the reference trace; break
                // the tie entrywise
                for (std::size_t i = 0; i < alg.rep_dim; ++i)
                  for (std::size_t j = 0; j < alg.rep_dim; ++j) {
                    const cplx za = a.central_projection(i, j);
                    const cplx zb = b.central_projection(i, j);
                    if (std::abs(za.real() - zb.real()) > 1e-7)
                      return za.real() < zb.real();
                    if (std::abs(za.imag() - zb.imag()) > 1e-7)
                      return za.imag() < zb.imag();
                  }
                return false;
              });
    out.blocks = std::move(blocks);
    return out;
  }
  throw NonGeneric("wedderburn failed after retries");
}

}  // namespace cstarcat

#endif
