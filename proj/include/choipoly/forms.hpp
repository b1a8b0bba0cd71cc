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

#ifndef CHOIPOLY_FORMS_HPP_
#define CHOIPOLY_FORMS_HPP_

#include <stdexcept>
#include <vector>

#include "choipoly/eig.hpp"
#include "choipoly/matrix.hpp"

namespace choipoly {

// Biquadratic form p(x, y) = sum_{ijkl} p_{ijkl} x_i conj(x_j) y_k conj(y_l)
// represented by its Gram matrix W in the product basis z = x (x) y:
// p(x, y) = z* W z, with W[(j,l),(i,k)] = p_{ijkl}.  W is unique.
// The form is real valued for all (x, y) iff W is Hermitian.
struct GramForm {
  BipartiteDims dims;
  ComplexMatrix W;

  GramForm() = default;
  GramForm(BipartiteDims d, ComplexMatrix w) : dims(d), W(std::move(w)) {
    require_bipartite_order(W, dims, "GramForm");
  }

  bool is_hermitian(double tol = 1e-9) const { return choipoly::is_hermitian(W, tol); }
};

// Dense coefficient table p_{ijkl}, 0-based, i,j in [0,m), k,l in [0,n).
struct CoefficientTensor {
  BipartiteDims dims;
  CVec p;

  CoefficientTensor() = default;
  explicit CoefficientTensor(BipartiteDims d)
      : dims(d), p(d.m * d.m * d.n * d.n, cplx(0.0, 0.0)) {}

  std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return ((i * dims.m + j) * dims.n + k) * dims.n + l;
  }
  cplx& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return p[index(i, j, k, l)];
  }
  const cplx& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return p[index(i, j, k, l)];
  }
};

// W[(j,l),(i,k)] = p_{ijkl}.  This layout makes z* W z reproduce the form.
inline GramForm gram_from_coeffs(const CoefficientTensor& coeffs) {
  const BipartiteDims dims = coeffs.dims;
  ComplexMatrix w(dims.total(), dims.total());
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k)
        for (std::size_t l = 0; l < dims.n; ++l)
          w(dims.pair_index(j, l), dims.pair_index(i, k)) = coeffs.at(i, j, k, l);
  return GramForm(dims, std::move(w));
}

inline CoefficientTensor coeffs_from_gram(const GramForm& g) {
  CoefficientTensor coeffs(g.dims);
  for (std::size_t i = 0; i < g.dims.m; ++i)
    for (std::size_t j = 0; j < g.dims.m; ++j)
      for (std::size_t k = 0; k < g.dims.n; ++k)
        for (std::size_t l = 0; l < g.dims.n; ++l)
          coeffs.at(i, j, k, l) = g.W(g.dims.pair_index(j, l), g.dims.pair_index(i, k));
  return coeffs;
}

inline cplx eval_quadratic(const ComplexMatrix& w, const CVec& z) {
  cplx s = 0.0;
  for (std::size_t a = 0; a < w.rows(); ++a) {
    cplx row = 0.0;
    for (std::size_t b = 0; b < w.cols(); ++b) row += w(a, b) * z[b];
    s += std::conj(z[a]) * row;
  }
  return s;
}

// p(x, y) = (x (x) y)* W (x (x) y).
inline cplx eval_form(const GramForm& g, const CVec& x, const CVec& y) {
  if (x.size() != g.dims.m || y.size() != g.dims.n)
    throw std::invalid_argument("eval_form: argument lengths do not match dimensions");
  return eval_quadratic(g.W, kron_vec(x, y));
}

// Gram of sum_r |x^T A_r y|^2.  A bilinear form f = x^T A y satisfies
// f = conj(vec A)* z, so each summand contributes the rank-one Gram
// conj(vec A) conj(vec A)*.  PSD by construction.
inline GramForm blf_gram(const std::vector<ComplexMatrix>& a_list, const BipartiteDims& dims) {
  ComplexMatrix w(dims.total(), dims.total());
  for (const ComplexMatrix& a : a_list) {
    if (a.rows() != dims.m || a.cols() != dims.n)
      throw std::invalid_argument("blf_gram: coefficient matrix shape mismatch");
    CVec v(dims.total());
    for (std::size_t i = 0; i < dims.m; ++i)
      for (std::size_t k = 0; k < dims.n; ++k)
        v[dims.pair_index(i, k)] = std::conj(a(i, k));
    w += outer(v, v);
  }
  return GramForm(dims, std::move(w));
}

// Gram of sum_s |x* B_s y|^2.  In the partially conjugated basis
// w = x (x) conj(y) the Gram is R = sum vec(B) vec(B)*; pulled back to the
// z basis it is R with the second factor transposed, whose transform back
// is PSD.  Returned in the z basis.
inline GramForm slf_gram(const std::vector<ComplexMatrix>& b_list, const BipartiteDims& dims) {
  ComplexMatrix r(dims.total(), dims.total());
  for (const ComplexMatrix& b : b_list) {
    if (b.rows() != dims.m || b.cols() != dims.n)
      throw std::invalid_argument("slf_gram: coefficient matrix shape mismatch");
    CVec v(dims.total());
    for (std::size_t i = 0; i < dims.m; ++i)
      for (std::size_t k = 0; k < dims.n; ++k) v[dims.pair_index(i, k)] = b(i, k);
    r += outer(v, v);
  }
  return GramForm(dims, partial_transpose_second(r, dims));
}

// Membership in the cone of sums of squared moduli of bilinear forms:
// equivalent to W itself being PSD.
inline bool check_sos_blf(const GramForm& g, double tol = 1e-9) {
  if (!g.is_hermitian(tol))
    throw std::invalid_argument("check_sos_blf: Gram matrix is not Hermitian");
  return is_psd(g.W, tol);
}

// Membership in the cone of sums of squared moduli of sesquilinear forms:
// equivalent to the second-factor partial transpose of W being PSD.
inline bool check_sos_slf(const GramForm& g, double tol = 1e-9) {
  if (!g.is_hermitian(tol))
    throw std::invalid_argument("check_sos_slf: Gram matrix is not Hermitian");
  return is_psd(partial_transpose_second(g.W, g.dims), tol);
}

// Certificate that W = Q + R^G with Q, R PSD, where ^G is the second-factor
// partial transpose: the form is then a sum of bilinear squares (Q) plus
// sesquilinear squares (R), hence decomposable.
struct DecomposabilityCert {
  BipartiteDims dims;
  ComplexMatrix Q;
  ComplexMatrix R;
};

// Certificate that no such splitting exists: M and its second-factor partial
// transpose are PSD while trace(W M) < 0, which separates W from the
// decomposable cone.
struct IndecomposabilityWitness {
  BipartiteDims dims;
  ComplexMatrix M;
  double trace_value = 0.0;
};

inline bool verify_decomposability(const GramForm& g, const DecomposabilityCert& cert,
                                   double tol = 1e-9) {
  if (cert.dims != g.dims || cert.Q.rows() != g.W.rows() || !cert.Q.is_square() ||
      cert.R.rows() != g.W.rows() || !cert.R.is_square())
    throw std::invalid_argument("verify_decomposability: certificate shape mismatch");
  if (!is_hermitian(cert.Q, tol) || !is_hermitian(cert.R, tol)) return false;
  if (!is_psd(hermitize(cert.Q), tol) || !is_psd(hermitize(cert.R), tol)) return false;
  const ComplexMatrix recon = cert.Q + partial_transpose_second(cert.R, g.dims);
  return max_abs(recon - g.W) <= tol;
}

inline bool verify_indecomposability(const GramForm& g, const IndecomposabilityWitness& wit,
                                     double tol = 1e-9) {
  if (wit.dims != g.dims || wit.M.rows() != g.W.rows() || !wit.M.is_square())
    throw std::invalid_argument("verify_indecomposability: witness shape mismatch");
  if (!g.is_hermitian(tol))
    throw std::invalid_argument("verify_indecomposability: Gram matrix is not Hermitian");
  if (!is_hermitian(wit.M, tol))
    throw std::invalid_argument("verify_indecomposability: witness is not Hermitian");
  if (!is_psd(hermitize(wit.M), tol)) return false;
  if (!is_psd(hermitize(partial_transpose_second(wit.M, g.dims)), tol)) return false;
  cplx t = 0.0;
  for (std::size_t a = 0; a < g.W.rows(); ++a)
    for (std::size_t b = 0; b < g.W.cols(); ++b) t += g.W(a, b) * wit.M(b, a);
  return t.real() < -tol;
}

inline double witness_trace(const GramForm& g, const ComplexMatrix& m) {
  cplx t = 0.0;
  for (std::size_t a = 0; a < g.W.rows(); ++a)
    for (std::size_t b = 0; b < g.W.cols(); ++b) t += g.W(a, b) * m(b, a);
  return t.real();
}

// The form of p(x, y) - eps * |x|^2 |y|^2, i.e. W - eps * I.
inline GramForm shift_form(const GramForm& g, double eps) {
  ComplexMatrix w = g.W;
  for (std::size_t a = 0; a < w.rows(); ++a) w(a, a) -= eps;
  return GramForm(g.dims, std::move(w));
}

}  // namespace choipoly

#endif  // CHOIPOLY_FORMS_HPP_
