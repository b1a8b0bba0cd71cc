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

#ifndef CHOIPOLY_EIG_HPP_
#define CHOIPOLY_EIG_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "choipoly/matrix.hpp"

namespace choipoly {

// Eigenvalues ascending; eigenvector i is column i of `vectors`.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

namespace detail {

// First component of modulus above `cut` (relative to the largest one) is
// rotated to the positive real axis, which pins the free global phase.
inline void normalize_column_phase(ComplexMatrix& v, std::size_t col) {
  double biggest = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) biggest = std::max(biggest, std::abs(v(i, col)));
  if (biggest == 0.0) return;
  const double cut = 1e-8 * biggest;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const double mag = std::abs(v(i, col));
    if (mag > cut) {
      const cplx phase = v(i, col) / mag;
      for (std::size_t r = 0; r < v.rows(); ++r) v(r, col) *= std::conj(phase);
      v(i, col) = cplx(std::abs(v(i, col)), 0.0);
      return;
    }
  }
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Robust and near machine precision at the small orders used here.
// Deterministic for fixed input: sweep order, tie handling, and the
// per-column phase normalization are all fixed.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& h_in, double herm_tol = 1e-9) {
  if (!h_in.is_square()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (hermitian_deviation(h_in) > herm_tol * std::max(1.0, max_abs(h_in)))
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");

  const std::size_t n = h_in.rows();
  ComplexMatrix a = hermitize(h_in);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(frobenius_norm(a), 1e-300);
  const double stop = 1e-15 * scale;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps && detail::off_diagonal_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-18 * scale) continue;

        // Unitary plane rotation in coordinates (p, q) annihilating a(p,q).
        const cplx phase = apq / g;  // a(p,q) = g * phase
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Smaller-magnitude root of t^2 - 2*zeta*t - 1 = 0 keeps the rotation
        // angle at most pi/4, which cyclic Jacobi needs for convergence.
        const double zeta = (aqq - app) / (2.0 * g);
        const double t = (zeta >= 0.0 ? -1.0 / (zeta + std::sqrt(1.0 + zeta * zeta))
                                      : 1.0 / (std::sqrt(1.0 + zeta * zeta) - zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns p and q of A and of the accumulated eigenvector matrix are
        // mixed by U = [[c, -s*phase], [s*conj(phase), c]] acting on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + s * std::conj(phase) * vkq;
          v(k, q) = -s * phase * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenDecomposition eig;
  eig.values.resize(n);
  eig.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    eig.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) eig.vectors(r, c) = v(r, order[c]);
    detail::normalize_column_phase(eig.vectors, c);
  }
  return eig;
}

inline CVec eig_column(const EigenDecomposition& eig, std::size_t col) {
  CVec x(eig.vectors.rows());
  for (std::size_t r = 0; r < x.size(); ++r) x[r] = eig.vectors(r, col);
  return x;
}

inline double min_eigenvalue(const ComplexMatrix& h, double herm_tol = 1e-9) {
  return hermitian_eig(h, herm_tol).values.front();
}

// Positive semidefiniteness up to tolerance: all eigenvalues >= -tol.
// Throws on non-Hermitian input.
inline bool is_psd(const ComplexMatrix& h, double tol = 1e-9) {
  if (h.rows() == 0) return true;
  return min_eigenvalue(h, tol) >= -tol;
}

// Singular values, descending, via the eigendecomposition of A*A.
// Adequate at the orders used here.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  // A*A is exactly Hermitian in floating point (conjugate-pair summation).
  const ComplexMatrix gram = adjoint(a) * a;
  EigenDecomposition eig = hermitian_eig(gram);
  std::vector<double> sv(eig.values.size());
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const double lam = eig.values[sv.size() - 1 - i];
    sv[i] = std::sqrt(std::max(lam, 0.0));
  }
  return sv;
}

// Count of eigenvalues of A*A above tol * (largest).  The cut lives in the
// eigenvalue domain on purpose: round-off in the Gram matrix sits at about
// 1e-16 of the top eigenvalue, and a singular-value cut would square-root
// that noise up to 1e-8 and miscount near-zero directions.
inline std::size_t numerical_rank(const ComplexMatrix& a, double tol = 1e-9) {
  const ComplexMatrix gram = adjoint(a) * a;
  const EigenDecomposition eig = hermitian_eig(gram);
  if (eig.values.empty() || eig.values.back() <= 0.0) return 0;
  const double cut = tol * eig.values.back();
  std::size_t r = 0;
  for (double lam : eig.values)
    if (lam > cut) ++r;
  return r;
}

// Reshape of z in C^(m*n) to the m x n coefficient matrix Z[i][k] = z[i*n+k],
// so that z = x (x) y iff Z = x y^T.
inline ComplexMatrix pair_reshape(const CVec& z, const BipartiteDims& dims) {
  if (z.size() != dims.total())
    throw std::invalid_argument("pair_reshape: length does not match dimensions");
  ComplexMatrix zm(dims.m, dims.n);
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t k = 0; k < dims.n; ++k) zm(i, k) = z[dims.pair_index(i, k)];
  return zm;
}

// Schmidt coefficients of z with respect to the (m, n) splitting: the
// singular values of the pair reshape, descending.
inline std::vector<double> schmidt_singular_values(const CVec& z, const BipartiteDims& dims) {
  return singular_values(pair_reshape(z, dims));
}

// z is a product vector iff its pair reshape has one Schmidt term.  As in
// numerical_rank, the count uses the squared coefficients relative to the
// largest so that Gram round-off stays below the cut.
inline bool is_product_vector(const CVec& z, const BipartiteDims& dims, double tol = 1e-9) {
  const ComplexMatrix zm = pair_reshape(z, dims);
  const EigenDecomposition eig = hermitian_eig(adjoint(zm) * zm);
  if (eig.values.empty() || eig.values.back() <= 0.0) return false;
  const double cut = tol * eig.values.back();
  std::size_t above = 0;
  for (double lam : eig.values)
    if (lam > cut) ++above;
  return above == 1;
}

// Unit factors (x, y) of a numerically rank-one z, with z ~ phase * x (x) y.
inline std::pair<CVec, CVec> product_factors(const CVec& z, const BipartiteDims& dims) {
  const ComplexMatrix zm = pair_reshape(z, dims);
  EigenDecomposition eig = hermitian_eig(adjoint(zm) * zm);
  const std::size_t top = dims.n - 1;
  CVec v = eig_column(eig, top);
  const double sigma = std::sqrt(std::max(eig.values[top], 0.0));
  if (sigma == 0.0) throw std::invalid_argument("product_factors: zero vector");
  CVec x = matvec(zm, conj_vec(v));
  const double xn = vec_norm(x);
  if (xn == 0.0) throw std::invalid_argument("product_factors: degenerate reshape");
  for (cplx& c : x) c /= xn;
  CVec y = conj_vec(v);
  return {x, y};
}

// Orthogonal projection onto the span of eigenvectors with eigenvalue at most
// rel_cut * max(|eigenvalue|, 1).  For a PSD input this is the kernel projector.
inline ComplexMatrix kernel_projector(const ComplexMatrix& h, double rel_cut = 1e-9,
                                      double herm_tol = 1e-9) {
  EigenDecomposition eig = hermitian_eig(h, herm_tol);
  double top = 1.0;
  for (double lam : eig.values) top = std::max(top, std::abs(lam));
  ComplexMatrix p(h.rows(), h.cols());
  for (std::size_t c = 0; c < eig.values.size(); ++c) {
    if (std::abs(eig.values[c]) > rel_cut * top) continue;
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j)
        p(i, j) += eig.vectors(i, c) * std::conj(eig.vectors(j, c));
  }
  return p;
}

}  // namespace choipoly

#endif  // CHOIPOLY_EIG_HPP_
