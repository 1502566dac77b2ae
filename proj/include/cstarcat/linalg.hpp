#ifndef CSTARCAT_LINALG_HPP
#define CSTARCAT_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cstarcat/matrix.hpp"

namespace cstarcat {

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, columns match eigenvalues
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations: m = V diag(lambda) V*, lambda ascending.
inline EigResult hermitian_eig(const ComplexMatrix& m,
                               const Tolerances& tol = Tolerances{}) {
  if (!m.is_square()) throw NotHermitian("matrix is not square");
  const std::size_t n = m.rows();
  const double scale = hs_norm(m);
  {
    ComplexMatrix d = m - m.adjoint();
    if (hs_norm(d) > 1e-10 * (1.0 + scale))
      throw NotHermitian("matrix is not Hermitian within tolerance");
  }
  ComplexMatrix a = 0.5 * (m + m.adjoint());  // exact Hermitian symmetrization
  ComplexMatrix v = ComplexMatrix::identity(n);

  if (n > 1) {
    const double stop = 1e-14 * (1.0 + scale);
    for (int sweep = 0; sweep < 128; ++sweep) {
      if (detail::offdiag_norm(a) <= stop) break;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const cplx b = a(p, q);
          const double babs = std::abs(b);
          if (babs <= stop / double(n * n) || babs <= 1e-300) continue;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          // factor the elementary unitary as phase * real rotation with
          // |theta| <= pi/4, the classical convergent Jacobi choice
          const cplx u = std::conj(b) / babs;  // removes the phase of a(p,q)
          const double tau = (aqq - app) / (2.0 * babs);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const cplx gp = -s * u;      // G(q,p)
          const cplx gq = cplx(c) * u; // G(q,q)
          // G differs from I in rows/cols p,q: col p = (c, -s u),
          // col q = (s, c u); update a <- G* a G, v <- v G
          for (std::size_t i = 0; i < n; ++i) {
            const cplx aip = a(i, p), aiq = a(i, q);
            a(i, p) = aip * c + aiq * gp;
            a(i, q) = aip * s + aiq * gq;
          }
          for (std::size_t j = 0; j < n; ++j) {
            const cplx apj = a(p, j), aqj = a(q, j);
            a(p, j) = c * apj + std::conj(gp) * aqj;
            a(q, j) = s * apj + std::conj(gq) * aqj;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vip = v(i, p), viq = v(i, q);
            v(i, p) = vip * c + viq * gp;
            v(i, q) = vip * s + viq * gq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, k) = v(i, order[k]);
  }
  (void)tol;
  return res;
}

// Largest singular value, computed from the spectrum of m* m.
inline double operator_norm(const ComplexMatrix& m) {
  if (!m.is_finite()) throw ShapeMismatch("operator_norm of non-finite matrix");
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // work with the smaller Gram matrix
  const bool tall = m.rows() >= m.cols();
  ComplexMatrix g = tall ? m.adjoint() * m : m * m.adjoint();
  EigResult e = hermitian_eig(g);
  double lam = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
  return std::sqrt(std::max(0.0, lam));
}

// Square root of a positive semidefinite Hermitian matrix.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m,
                              const Tolerances& tol = Tolerances{}) {
  EigResult e = hermitian_eig(m);
  const double top = e.eigenvalues.empty() ? 0.0 : std::abs(e.eigenvalues.back());
  for (double lam : e.eigenvalues)
    if (lam < -tol.cluster(top)) throw NotPSD("negative eigenvalue in sqrt_psd");
  const std::size_t n = m.rows();
  ComplexMatrix r(n, n);
  const ComplexMatrix& v = e.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(0.0, e.eigenvalues[k]));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += s * v(i, k) * std::conj(v(j, k));
  }
  return r;
}

// Inverse square root of a positive definite Hermitian matrix; eigenvalues
// must clear the rank threshold.
inline ComplexMatrix inv_sqrt_pd(const ComplexMatrix& m,
                                 const Tolerances& tol = Tolerances{}) {
  EigResult e = hermitian_eig(m);
  const double top = e.eigenvalues.empty() ? 0.0 : std::abs(e.eigenvalues.back());
  const std::size_t n = m.rows();
  ComplexMatrix r(n, n);
  const ComplexMatrix& v = e.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    if (e.eigenvalues[k] <= tol.cluster(top))
      throw NotPSD("matrix not positive definite in inv_sqrt_pd");
    const double s = 1.0 / std::sqrt(e.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += s * v(i, k) * std::conj(v(j, k));
  }
  return r;
}

struct SvdResult {
  std::vector<double> singular_values;  // descending
  ComplexMatrix u;                      // rows x rank
  ComplexMatrix v;                      // cols x rank
};

// Thin SVD restricted to singular values above a relative cutoff.
inline SvdResult svd_thin(const ComplexMatrix& m, double rel_cutoff = 1e-7) {
  SvdResult res;
  if (m.rows() == 0 || m.cols() == 0) {
    res.u = ComplexMatrix(m.rows(), 0);
    res.v = ComplexMatrix(m.cols(), 0);
    return res;
  }
  ComplexMatrix g = m.adjoint() * m;  // cols x cols
  EigResult e = hermitian_eig(g);
  const double top = e.eigenvalues.empty() ? 0.0 : std::max(0.0, e.eigenvalues.back());
  const double smax = std::sqrt(top);
  std::vector<std::size_t> keep;
  for (std::size_t k = e.eigenvalues.size(); k-- > 0;) {
    double s = std::sqrt(std::max(0.0, e.eigenvalues[k]));
    if (s > rel_cutoff * (smax > 0 ? smax : 1.0)) keep.push_back(k);
  }
  const std::size_t r = keep.size();
  res.u = ComplexMatrix(m.rows(), r);
  res.v = ComplexMatrix(m.cols(), r);
  res.singular_values.resize(r);
  for (std::size_t idx = 0; idx < r; ++idx) {
    const std::size_t k = keep[idx];
    const double s = std::sqrt(std::max(0.0, e.eigenvalues[k]));
    res.singular_values[idx] = s;
    ComplexMatrix vk(m.cols(), 1);
    for (std::size_t i = 0; i < m.cols(); ++i) vk(i, 0) = e.eigenvectors(i, k);
    ComplexMatrix uk = m * vk;
    for (std::size_t i = 0; i < m.rows(); ++i) res.u(i, idx) = uk(i, 0) / s;
    for (std::size_t i = 0; i < m.cols(); ++i) res.v(i, idx) = vk(i, 0);
  }
  return res;
}

// Moore-Penrose pseudoinverse.
inline ComplexMatrix pinv(const ComplexMatrix& m, double rel_cutoff = 1e-7) {
  SvdResult s = svd_thin(m, rel_cutoff);
  ComplexMatrix r(m.cols(), m.rows());
  for (std::size_t k = 0; k < s.singular_values.size(); ++k) {
    const double inv = 1.0 / s.singular_values[k];
    for (std::size_t i = 0; i < m.cols(); ++i)
      for (std::size_t j = 0; j < m.rows(); ++j)
        r(i, j) += inv * s.v(i, k) * std::conj(s.u(j, k));
  }
  return r;
}

inline std::size_t numeric_rank(const ComplexMatrix& m,
                                const Tolerances& tol = Tolerances{}) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  ComplexMatrix g = m.cols() <= m.rows() ? m.adjoint() * m : m * m.adjoint();
  EigResult e = hermitian_eig(g);
  const double top = e.eigenvalues.empty() ? 0.0 : std::max(0.0, e.eigenvalues.back());
  const double thr = tol.rank * (1.0 + std::sqrt(top));
  std::size_t r = 0;
  for (double lam : e.eigenvalues)
    if (lam > thr * thr) ++r;
  return r;
}

// Orthonormal basis of the range of a projection as columns; eigenvalues
// of a numerical projection sit near 0 or 1, so 1/2 is the threshold.
inline ComplexMatrix range_basis(const ComplexMatrix& p) {
  EigResult e = hermitian_eig(p);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < e.eigenvalues.size(); ++k)
    if (e.eigenvalues[k] > 0.5) keep.push_back(k);
  ComplexMatrix u(p.rows(), keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j)
    for (std::size_t i = 0; i < p.rows(); ++i) u(i, j) = e.eigenvectors(i, keep[j]);
  return u;
}

// Eigenvalue clustering: indices grouped by |lambda_i - lambda_j| within
// tol.cluster(scale); input eigenvalues must be ascending.
inline std::vector<std::vector<std::size_t>> cluster_eigenvalues(
    const std::vector<double>& lam, double scale, const Tolerances& tol = Tolerances{}) {
  std::vector<std::vector<std::size_t>> clusters;
  const double gap = tol.cluster(scale);
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (clusters.empty() || lam[i] - lam[clusters.back().back()] > gap)
      clusters.push_back({});
    clusters.back().push_back(i);
  }
  return clusters;
}

}  // namespace cstarcat

#endif
