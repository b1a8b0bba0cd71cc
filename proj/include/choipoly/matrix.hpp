// Copyright 2026 The ChoiPoly Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHOIPOLY_MATRIX_HPP_
#define CHOIPOLY_MATRIX_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace choipoly {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dimensions (m, n) of a bipartite space C^m (x) C^n.  The composite index
// convention is first-factor-major throughout: (i, k) -> i*n + k.
struct BipartiteDims {
  std::size_t m = 0;
  std::size_t n = 0;

  std::size_t total() const { return m * n; }
  std::size_t pair_index(std::size_t i, std::size_t k) const { return i * n + k; }

  bool operator==(const BipartiteDims& o) const { return m == o.m && n == o.n; }
  bool operator!=(const BipartiteDims& o) const { return !(*this == o); }
};

// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, CVec entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
      throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }
  static ComplexMatrix identity(std::size_t order) {
    ComplexMatrix eye(order, order);
    for (std::size_t i = 0; i < order; ++i) eye(i, i) = 1.0;
    return eye;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  const CVec& entries() const { return a_; }
  CVec& entries() { return a_; }

  bool all_finite() const {
    for (const cplx& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t t = 0; t < a_.size(); ++t) a_[t] += o.a_[t];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t t = 0; t < a_.size(); ++t) a_[t] -= o.a_[t];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* who) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string(who) + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVec a_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
  return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix d(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d(j, i) = std::conj(a(i, j));
  return d;
}

inline cplx trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("trace: matrix is not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& v : a.entries()) s = std::max(s, std::abs(v));
  return s;
}

// Largest entrywise deviation from the adjoint; zero exactly for Hermitian input.
inline double hermitian_deviation(const ComplexMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("hermitian_deviation: matrix is not square");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      s = std::max(s, std::abs(a(i, j) - std::conj(a(j, i))));
  return s;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = 1e-9) {
  return a.is_square() && hermitian_deviation(a) <= tol;
}

// (A+A*)/2; used to clean round-off before eigendecompositions.
inline ComplexMatrix hermitize(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("hermitize: matrix is not square");
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

// Kronecker product with first-factor-major composite indices:
// (A (x) B)[(i,k),(j,l)] = A[i,j] * B[k,l].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

inline CVec kron_vec(const CVec& x, const CVec& y) {
  CVec z(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < y.size(); ++k) z[i * y.size() + k] = x[i] * y[k];
  return z;
}

inline CVec conj_vec(const CVec& x) {
  CVec c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::conj(x[i]);
  return c;
}

// Hermitian inner product, antilinear in the first argument.
inline cplx vdot(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vdot: length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline double vec_norm(const CVec& x) { return std::sqrt(std::real(vdot(x, x))); }

inline CVec matvec(const ComplexMatrix& a, const CVec& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: length mismatch");
  CVec y(a.rows(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// u v* as a rows(u) x rows(v) matrix.
inline ComplexMatrix outer(const CVec& u, const CVec& v) {
  ComplexMatrix o(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) o(i, j) = u[i] * std::conj(v[j]);
  return o;
}

inline void require_bipartite_order(const ComplexMatrix& c, const BipartiteDims& dims,
                                    const char* who) {
  if (!c.is_square() || c.rows() != dims.total())
    throw std::invalid_argument(std::string(who) +
                                ": matrix order does not match bipartite dimensions");
}

// Transpose on the second tensor factor:
// out[(i,k),(j,l)] = C[(i,l),(j,k)].  Involutive and trace preserving;
// sends A (x) B to A (x) B^T.
inline ComplexMatrix partial_transpose_second(const ComplexMatrix& c,
                                              const BipartiteDims& dims) {
  require_bipartite_order(c, dims, "partial_transpose_second");
  ComplexMatrix out(c.rows(), c.cols());
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k)
        for (std::size_t l = 0; l < dims.n; ++l)
          out(dims.pair_index(i, k), dims.pair_index(j, l)) =
              c(dims.pair_index(i, l), dims.pair_index(j, k));
  return out;
}

// Transpose on the first tensor factor:
// out[(i,k),(j,l)] = C[(j,k),(i,l)].  Composes with the second-factor
// transpose to the full transpose.
inline ComplexMatrix partial_transpose_first(const ComplexMatrix& c,
                                             const BipartiteDims& dims) {
  require_bipartite_order(c, dims, "partial_transpose_first");
  ComplexMatrix out(c.rows(), c.cols());
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k)
        for (std::size_t l = 0; l < dims.n; ++l)
          out(dims.pair_index(i, k), dims.pair_index(j, l)) =
              c(dims.pair_index(j, k), dims.pair_index(i, l));
  return out;
}

}  // namespace choipoly

#endif  // CHOIPOLY_MATRIX_HPP_
