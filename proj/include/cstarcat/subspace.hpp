#ifndef CSTARCAT_SUBSPACE_HPP
#define CSTARCAT_SUBSPACE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "cstarcat/linalg.hpp"
#include "cstarcat/matrix.hpp"

namespace cstarcat {

// A linear subspace of the r x c complex matrices, stored as an
// orthonormal basis under the Hilbert-Schmidt inner product.
class MatrixSubspace {
public:
  MatrixSubspace() : rows_(0), cols_(0) {}
  MatrixSubspace(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t ambient_rows() const { return rows_; }
  std::size_t ambient_cols() const { return cols_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const ComplexMatrix& basis(std::size_t k) const { return basis_[k]; }

  // Projects m onto the span; returns (projection, residual norm). Two
  // orthogonalization passes keep residuals near machine precision.
  std::pair<ComplexMatrix, double> project(const ComplexMatrix& m) const {
    if (m.rows() != rows_ || m.cols() != cols_)
      throw ShapeMismatch("project: shape differs from ambient");
    ComplexMatrix rem = m;
    std::vector<cplx> coeff(basis_.size(), cplx(0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        cplx ip = hs_inner(basis_[k], rem);
        coeff[k] += ip;
        rem -= ip * basis_[k];
      }
    }
    ComplexMatrix proj = m - rem;
    return {proj, hs_norm(rem)};
  }

  std::vector<cplx> coefficients(const ComplexMatrix& m) const {
    if (m.rows() != rows_ || m.cols() != cols_)
      throw ShapeMismatch("coefficients: shape differs from ambient");
    ComplexMatrix rem = m;
    std::vector<cplx> coeff(basis_.size(), cplx(0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        cplx ip = hs_inner(basis_[k], rem);
        coeff[k] += ip;
        rem -= ip * basis_[k];
      }
    }
    return coeff;
  }

  double residual(const ComplexMatrix& m) const { return project(m).second; }

  ComplexMatrix from_coefficients(const std::vector<cplx>& coeff) const {
    if (coeff.size() != basis_.size())
      throw ShapeMismatch("coefficient count differs from dimension");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < coeff.size(); ++k) m += coeff[k] * basis_[k];
    return m;
  }

  bool contains(const ComplexMatrix& m, const Tolerances& tol = Tolerances{}) const {
    return residual(m) <= tol.membership(hs_norm(m));
  }

  // Adds m to the span unless it is already represented; returns true if
  // the dimension grew. add_tol is relative to the norm of m.
  bool extend(const ComplexMatrix& m, double add_tol = 1e-8) {
    if (m.rows() != rows_ || m.cols() != cols_)
      throw ShapeMismatch("extend: shape differs from ambient");
    ComplexMatrix rem = m;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < basis_.size(); ++k)
        rem -= hs_inner(basis_[k], rem) * basis_[k];
    double n = hs_norm(rem);
    if (n <= add_tol * (1.0 + hs_norm(m))) return false;
    basis_.push_back((1.0 / n) * rem);
    return true;
  }

  // Worst-case deviation of the basis Gram matrix from the identity.
  double orthonormality_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        cplx g = hs_inner(basis_[i], basis_[j]);
        double dev = std::abs(g - (i == j ? cplx(1.0) : cplx(0.0)));
        worst = std::max(worst, dev);
      }
    return worst;
  }

  ComplexMatrix random_element(Rng& rng) const {
    ComplexMatrix m(rows_, cols_);
    for (const auto& b : basis_) m += rng.cgaussian() * b;
    return m;
  }

  ComplexMatrix random_selfadjoint_element(Rng& rng) const {
    ComplexMatrix m = random_element(rng);
    ComplexMatrix h = m + m.adjoint();
    return 0.5 * h;
  }

  static MatrixSubspace span(std::size_t rows, std::size_t cols,
                             const std::vector<ComplexMatrix>& generators,
                             double add_tol = 1e-8) {
    MatrixSubspace s(rows, cols);
    for (const auto& g : generators) s.extend(g, add_tol);
    return s;
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ComplexMatrix> basis_;
};

// project_onto per the kernel contract: (projection, residual).
inline std::pair<ComplexMatrix, double> project_onto(const MatrixSubspace& s,
                                                     const ComplexMatrix& m) {
  return s.project(m);
}

// Smallest subspace containing the generators and closed under matrix
// multiplication (when `products`) and adjoints (when `adjoints`). The
// fixed point is reached when the dimension stabilizes; exceeding
// `max_dim` raises DimensionBlowup.
inline MatrixSubspace close_under(const std::vector<ComplexMatrix>& generators,
                                  bool products, bool adjoints,
                                  std::size_t max_dim = 4096,
                                  const Tolerances& tol = Tolerances{}) {
  if (generators.empty()) return MatrixSubspace();
  const std::size_t r = generators.front().rows();
  const std::size_t c = generators.front().cols();
  for (const auto& g : generators)
    if (g.rows() != r || g.cols() != c)
      throw ShapeMismatch("close_under: generators of mixed shape");
  if (products && r != c)
    throw ShapeMismatch("close_under: products require square matrices");

  MatrixSubspace s(r, c);
  for (const auto& g : generators) {
    s.extend(g, tol.rank);
    if (adjoints) s.extend(g.adjoint(), tol.rank);
    if (s.dim() > max_dim) throw DimensionBlowup("close_under exceeded cap");
  }
  if (!products) return s;

  // frontier loop: only products touching newly added elements
  std::size_t stable = 0;
  while (stable < s.dim()) {
    const std::size_t old_dim = s.dim();
    std::vector<ComplexMatrix> fresh;
    for (std::size_t i = 0; i < old_dim; ++i) {
      for (std::size_t j = 0; j < old_dim; ++j) {
        if (i < stable && j < stable) continue;
        fresh.push_back(s.basis(i) * s.basis(j));
      }
    }
    stable = old_dim;
    for (const auto& p : fresh) {
      if (s.extend(p, tol.rank) && s.dim() > max_dim)
        throw DimensionBlowup("close_under exceeded cap");
    }
  }
  return s;
}

// Orthonormal image of the compression f -> left* f right of a subspace.
inline MatrixSubspace compress_subspace(const ComplexMatrix& left,
                                        const ComplexMatrix& right,
                                        const MatrixSubspace& s,
                                        const Tolerances& tol = Tolerances{}) {
  MatrixSubspace out(left.cols(), right.cols());
  for (const auto& b : s.basis()) out.extend(left.adjoint() * b * right, tol.rank);
  return out;
}

// Two-sided identity of a multiplicatively closed *-subspace, if one
// exists in the span (finite-dimensional concrete *-algebras always have
// one). Returns (unit, residual of the defining equations).
inline std::pair<ComplexMatrix, double> find_unit(const MatrixSubspace& s) {
  if (s.dim() == 0) return {ComplexMatrix(s.ambient_rows(), s.ambient_cols()), 0.0};
  if (s.ambient_rows() != s.ambient_cols())
    throw ShapeMismatch("find_unit: ambient not square");
  const std::size_t d = s.dim();
  // least squares for u = sum x_k b_k with u b_i = b_i for all i
  // normal equations: sum_k x_k <b_j b_i, b_k b_i> = <b_j b_i, b_i>
  ComplexMatrix gram(d, d);
  ComplexMatrix rhs(d, 1);
  std::vector<std::vector<ComplexMatrix>> prod(d);
  for (std::size_t k = 0; k < d; ++k) {
    prod[k].reserve(d);
    for (std::size_t i = 0; i < d; ++i) prod[k].push_back(s.basis(k) * s.basis(i));
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      cplx g = 0.0;
      for (std::size_t i = 0; i < d; ++i) g += hs_inner(prod[j][i], prod[k][i]);
      gram(j, k) = g;
    }
  for (std::size_t j = 0; j < d; ++j) {
    cplx v = 0.0;
    for (std::size_t i = 0; i < d; ++i) v += hs_inner(prod[j][i], s.basis(i));
    rhs(j, 0) = v;
  }
  ComplexMatrix x = pinv(gram) * rhs;
  ComplexMatrix u(s.ambient_rows(), s.ambient_cols());
  for (std::size_t k = 0; k < d; ++k) u += x(k, 0) * s.basis(k);
  ComplexMatrix uh = 0.5 * (u + u.adjoint());
  double res = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    res = std::max(res, hs_norm(uh * s.basis(i) - s.basis(i)));
    res = std::max(res, hs_norm(s.basis(i) * uh - s.basis(i)));
  }
  return {uh, res};
}

}  // namespace cstarcat

#endif
