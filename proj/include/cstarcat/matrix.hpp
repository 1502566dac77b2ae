#ifndef CSTARCAT_MATRIX_HPP
#define CSTARCAT_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cstarcat/errors.hpp"

namespace cstarcat {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Rows or columns may be zero (zero
// objects of Hilbert dimension 0 are legal everywhere).
class ComplexMatrix {
public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw ShapeMismatch("entry count does not match rows*cols");
  }
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeMismatch("ragged initializer");
      for (const auto& v : row) entries_.push_back(v);
    }
  }

  static ComplexMatrix zeros(std::size_t r, std::size_t c) { return ComplexMatrix(r, c); }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  // e_{ij} with a 1 in position (i,j)
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    ComplexMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<cplx>& entries() const { return entries_; }

  bool is_finite() const {
    for (const auto& v : entries_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : entries_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        const cplx* brow = &b.entries_[k * b.cols_];
        cplx* crow = &c.entries_[i * c.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    if (!is_square()) throw ShapeMismatch("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
    if (r0 + r > rows_ || c0 + c > cols_) throw ShapeMismatch("block out of range");
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw ShapeMismatch("block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }

  void add_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw ShapeMismatch("block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) += m(i, j);
  }

private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (!same_shape(o)) throw ShapeMismatch("shapes differ");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> entries_;
};

// Hilbert-Schmidt inner product <a,b> = trace(a* b), linear in b.
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw ShapeMismatch("hs_inner shape mismatch");
  cplx s = 0.0;
  const auto& ae = a.entries();
  const auto& be = b.entries();
  for (std::size_t k = 0; k < ae.size(); ++k) s += std::conj(ae[k]) * be[k];
  return s;
}

inline double hs_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

inline double max_abs_entry(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.entries()) s = std::max(s, std::abs(v));
  return s;
}

// Deterministic splitmix64-based generator. Distribution code is written
// out explicitly so that identical seeds reproduce identical streams on
// every platform (std::normal_distribution is implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  // standard normal via Box-Muller
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  cplx cgaussian() {
    double re = gaussian();
    double im = gaussian();
    return cplx(re, im) * (1.0 / std::sqrt(2.0));
  }

  Rng fork() { return Rng(next_u64()); }

private:
  std::uint64_t state_;
};

inline ComplexMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.cgaussian();
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  ComplexMatrix m = random_matrix(rng, n, n);
  ComplexMatrix h = m + m.adjoint();
  return 0.5 * h;
}

// Numeric tolerances shared across the library.
struct Tolerances {
  double orth = 1e-10;  // absolute, basis orthonormality
  double mem = 1e-8;    // relative, membership residuals
  double rank = 1e-7;   // rank / eigenvalue-cluster decisions

  double membership(double scale) const { return mem * (1.0 + scale); }
  double cluster(double scale) const { return rank * (1.0 + scale); }
};

}  // namespace cstarcat

#endif
