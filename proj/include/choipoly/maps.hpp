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

#ifndef CHOIPOLY_MAPS_HPP_
#define CHOIPOLY_MAPS_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "choipoly/eig.hpp"
#include "choipoly/forms.hpp"
#include "choipoly/matrix.hpp"
#include "choipoly/optimize.hpp"

namespace choipoly {

// Linear map phi: M_m -> M_n stored by its Choi matrix
// C = sum_{ij} e_ij (x) phi(e_ij), an (m*n) x (m*n) matrix whose (i, j)
// block of size n x n is phi(e_ij).
struct LinearMapRep {
  BipartiteDims dims;
  ComplexMatrix choi;

  LinearMapRep() = default;
  LinearMapRep(BipartiteDims d, ComplexMatrix c) : dims(d), choi(std::move(c)) {
    require_bipartite_order(choi, dims, "LinearMapRep");
  }

  static LinearMapRep from_blocks(const std::vector<std::vector<ComplexMatrix>>& blocks) {
    if (blocks.empty() || blocks[0].empty())
      throw std::invalid_argument("from_blocks: empty block grid");
    const std::size_t m = blocks.size();
    const std::size_t n = blocks[0][0].rows();
    BipartiteDims dims{m, n};
    ComplexMatrix c(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i) {
      if (blocks[i].size() != m) throw std::invalid_argument("from_blocks: grid is not m x m");
      for (std::size_t j = 0; j < m; ++j) {
        const ComplexMatrix& blk = blocks[i][j];
        if (blk.rows() != n || blk.cols() != n)
          throw std::invalid_argument("from_blocks: block shape mismatch");
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            c(dims.pair_index(i, k), dims.pair_index(j, l)) = blk(k, l);
      }
    }
    return LinearMapRep(dims, std::move(c));
  }

  // phi(e_ij), the (i, j) block of the Choi matrix.
  ComplexMatrix block(std::size_t i, std::size_t j) const {
    ComplexMatrix blk(dims.n, dims.n);
    for (std::size_t k = 0; k < dims.n; ++k)
      for (std::size_t l = 0; l < dims.n; ++l)
        blk(k, l) = choi(dims.pair_index(i, k), dims.pair_index(j, l));
    return blk;
  }
};

// phi(X) = sum_{ij} X[i,j] phi(e_ij).
inline ComplexMatrix apply_map(const LinearMapRep& phi, const ComplexMatrix& x) {
  if (x.rows() != phi.dims.m || x.cols() != phi.dims.m)
    throw std::invalid_argument("apply_map: argument is not m x m");
  ComplexMatrix out(phi.dims.n, phi.dims.n);
  for (std::size_t i = 0; i < phi.dims.m; ++i)
    for (std::size_t j = 0; j < phi.dims.m; ++j) {
      const cplx xij = x(i, j);
      if (xij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < phi.dims.n; ++k)
        for (std::size_t l = 0; l < phi.dims.n; ++l)
          out(k, l) += xij * phi.choi(phi.dims.pair_index(i, k), phi.dims.pair_index(j, l));
    }
  return out;
}

// The biquadratic form attached to phi:
// P(x, y) = y* phi(x x*) y = (conj(x) (x) y)* C (conj(x) (x) y).
inline cplx choi_poly_eval(const LinearMapRep& phi, const CVec& x, const CVec& y) {
  if (x.size() != phi.dims.m || y.size() != phi.dims.n)
    throw std::invalid_argument("choi_poly_eval: argument lengths do not match dimensions");
  const CVec z = kron_vec(conj_vec(x), y);
  return eval_quadratic(phi.choi, z);
}

// Gram matrix of the form P(x, y) in the x (x) y basis: the first-factor
// partial transpose of the Choi matrix.  eval_form on the result agrees
// with choi_poly_eval.
inline GramForm choi_to_gram(const LinearMapRep& phi) {
  return GramForm(phi.dims, partial_transpose_first(phi.choi, phi.dims));
}

// The map whose form has coefficient table p: the (l, k) entry of phi(e_ij)
// is p_{ijkl}.  Inverse of coeffs_from_map; the correspondence is one-to-one.
inline LinearMapRep map_from_coeffs(const CoefficientTensor& coeffs) {
  const BipartiteDims dims = coeffs.dims;
  ComplexMatrix c(dims.total(), dims.total());
  for (std::size_t i = 0; i < dims.m; ++i)
    for (std::size_t j = 0; j < dims.m; ++j)
      for (std::size_t k = 0; k < dims.n; ++k)
        for (std::size_t l = 0; l < dims.n; ++l)
          c(dims.pair_index(i, l), dims.pair_index(j, k)) = coeffs.at(i, j, k, l);
  return LinearMapRep(dims, std::move(c));
}

inline CoefficientTensor coeffs_from_map(const LinearMapRep& phi) {
  CoefficientTensor coeffs(phi.dims);
  for (std::size_t i = 0; i < phi.dims.m; ++i)
    for (std::size_t j = 0; j < phi.dims.m; ++j)
      for (std::size_t k = 0; k < phi.dims.n; ++k)
        for (std::size_t l = 0; l < phi.dims.n; ++l)
          coeffs.at(i, j, k, l) = phi.choi(phi.dims.pair_index(i, l), phi.dims.pair_index(j, k));
  return coeffs;
}

enum class TriState { yes, no, undecided };

inline const char* to_string(TriState t) {
  switch (t) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    default: return "undecided";
  }
}

// Scans negative eigenspaces of the Choi matrix for product eigenvectors.
// A unit product eigenvector u (x) v with eigenvalue lambda < -tol gives
// P(conj(u), v) = lambda < 0, so the returned pair disproves positivity.
// Degenerate negative eigenspaces are searched with a short see-saw, since
// the eigensolver may hand back entangled combinations of product vectors.
// Returning nothing decides nothing.
inline std::optional<ProductPair> negative_product_eigenvector_check(const LinearMapRep& phi,
                                                                     double tol = 1e-9) {
  if (!is_hermitian(phi.choi, tol))
    throw std::invalid_argument("negative_product_eigenvector_check: Choi is not Hermitian");
  EigenDecomposition eig = hermitian_eig(hermitize(phi.choi), tol);
  const std::size_t nn = phi.dims.total();
  double scale = 1.0;
  for (double lam : eig.values) scale = std::max(scale, std::abs(lam));

  std::size_t c = 0;
  while (c < nn && eig.values[c] < -tol) {
    // Cluster eigenvalues equal up to a relative gap.
    std::size_t end = c + 1;
    while (end < nn && eig.values[end] < -tol &&
           std::abs(eig.values[end] - eig.values[c]) <= 1e-8 * scale)
      ++end;
    if (end - c == 1) {
      const CVec z = eig_column(eig, c);
      if (is_product_vector(z, phi.dims, 1e-7)) {
        auto [u, v] = product_factors(z, phi.dims);
        return ProductPair{conj_vec(u), v};
      }
    } else {
      ComplexMatrix proj(nn, nn);
      for (std::size_t t = c; t < end; ++t) {
        const CVec z = eig_column(eig, t);
        proj += outer(z, z);
      }
      SeesawConfig cfg;
      cfg.restarts = 32;
      cfg.max_iters = 200;
      auto pair = product_vector_in_subspace(proj, phi.dims, cfg, 1e-9);
      if (pair) return ProductPair{conj_vec(pair->x), pair->y};
    }
    c = end;
  }
  return std::nullopt;
}

struct ClassifyOptions {
  SeesawConfig seesaw;
  double tol = 1e-9;
  bool search_witness = false;  // try the heuristic witness search when
                                // neither PSD route settles membership
  WitnessSearchConfig witness_cfg;
};

// Verdicts tied to spectral facts about the Choi matrix and its partial
// transposes: self-adjointness, complete (co)positivity, positivity of the
// map (heuristic via see-saw), and membership of the Gram matrix in the
// decomposable cone (certificate-driven, else undecided).
struct MapClassification {
  bool self_adjoint = false;
  double hermitian_defect = 0.0;
  bool real_preserving = false;

  bool completely_positive = false;
  bool completely_copositive = false;
  double choi_min_eig = 0.0;
  double choi_pt_min_eig = 0.0;

  TriState positive = TriState::undecided;
  std::optional<ProductPair> negativity_witness;
  std::optional<SeesawReport> min_report;

  TriState choi_in_D = TriState::undecided;
  std::optional<DecomposabilityCert> decomposability;
  std::optional<IndecomposabilityWitness> indecomposability;
};

inline MapClassification classify(const LinearMapRep& phi, const ClassifyOptions& opts = {}) {
  MapClassification res;
  res.hermitian_defect = hermitian_deviation(phi.choi);
  res.self_adjoint = res.hermitian_defect <= opts.tol * std::max(1.0, max_abs(phi.choi));

  double max_imag = 0.0;
  for (const cplx& v : phi.choi.entries()) max_imag = std::max(max_imag, std::abs(v.imag()));
  res.real_preserving = max_imag <= opts.tol;

  if (!res.self_adjoint) {
    // A map that fails to send Hermitian to Hermitian is not positive and
    // not in any of the certified cones.
    res.positive = TriState::no;
    res.choi_in_D = TriState::no;
    return res;
  }

  const ComplexMatrix c = hermitize(phi.choi);
  EigenDecomposition ce = hermitian_eig(c);
  res.choi_min_eig = ce.values.front();
  res.completely_positive = res.choi_min_eig >= -opts.tol;
  res.choi_pt_min_eig = min_eigenvalue(hermitize(partial_transpose_second(c, phi.dims)));
  res.completely_copositive = res.choi_pt_min_eig >= -opts.tol;

  const GramForm g = choi_to_gram(phi);

  if (res.completely_positive || res.completely_copositive) {
    res.positive = TriState::yes;
  } else {
    auto shortcut = negative_product_eigenvector_check(phi, opts.tol);
    if (shortcut) {
      res.positive = TriState::no;
      res.negativity_witness = shortcut;
    } else {
      SeesawReport rep = seesaw_min(g, opts.seesaw);
      res.min_report = rep;
      if (rep.value < -opts.tol) {
        res.positive = TriState::no;
        res.negativity_witness = rep.arg;
      } else {
        res.positive = TriState::yes;  // heuristic: no violation over restarts
      }
    }
  }

  if (is_psd(hermitize(g.W), opts.tol)) {
    res.choi_in_D = TriState::yes;
    res.decomposability = DecomposabilityCert{
        g.dims, hermitize(g.W), ComplexMatrix::zero(g.W.rows(), g.W.cols())};
  } else {
    const ComplexMatrix wg = hermitize(partial_transpose_second(g.W, g.dims));
    if (is_psd(wg, opts.tol)) {
      res.choi_in_D = TriState::yes;
      res.decomposability =
          DecomposabilityCert{g.dims, ComplexMatrix::zero(g.W.rows(), g.W.cols()), wg};
    } else if (opts.search_witness) {
      auto wit = witness_search(g, opts.witness_cfg);
      if (wit) {
        res.choi_in_D = TriState::no;
        res.indecomposability = wit;
      }
    }
  }
  if (res.choi_in_D == TriState::yes) res.positive = TriState::yes;
  return res;
}

// Unique splitting phi0 = phi1 + phi2 with phi1 completely positive and
// phi2 completely copositive, for the extremal family on M_2
//   phi0(X) = [[x11, alpha*x12 + beta*x21], [conj(alpha)*x21 + conj(beta)*x12, delta*x22]]
// with |alpha| = 1 and sqrt(delta) = 1 + |beta|.
struct StormerDecomposition {
  ComplexMatrix A;  // phi1(X) = A* X A
  ComplexMatrix B;  // phi2(X) = B* X^T B
  LinearMapRep phi1;
  LinearMapRep phi2;
};

inline LinearMapRep stormer_phi0(cplx alpha, cplx beta) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw std::invalid_argument("stormer_phi0: |alpha| must be 1");
  const double delta = (1.0 + std::abs(beta)) * (1.0 + std::abs(beta));
  ComplexMatrix b11(2, 2), b12(2, 2), b21(2, 2), b22(2, 2);
  b11(0, 0) = 1.0;
  b12(0, 1) = alpha;
  b12(1, 0) = std::conj(beta);
  b21(0, 1) = beta;
  b21(1, 0) = std::conj(alpha);
  b22(1, 1) = delta;
  return LinearMapRep::from_blocks({{b11, b12}, {b21, b22}});
}

inline LinearMapRep conjugation_map(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  std::vector<std::vector<ComplexMatrix>> blocks(m, std::vector<ComplexMatrix>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix eij(m, m);
      eij(i, j) = 1.0;
      blocks[i][j] = adjoint(a) * eij * a;
    }
  return LinearMapRep::from_blocks(blocks);
}

inline LinearMapRep transposed_conjugation_map(const ComplexMatrix& b) {
  const std::size_t m = b.rows();
  std::vector<std::vector<ComplexMatrix>> blocks(m, std::vector<ComplexMatrix>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix eji(m, m);
      eji(j, i) = 1.0;  // e_ij transposed
      blocks[i][j] = adjoint(b) * eji * b;
    }
  return LinearMapRep::from_blocks(blocks);
}

// The coefficient equations |a11|^2 + |b11|^2 = 1, |a22|^2 + |b22|^2 = delta,
// conj(a11) a22 = alpha, conj(b11) b22 = beta pin A and B up to one global
// phase each; both phases are fixed to zero here.
inline StormerDecomposition stormer_decompose(cplx alpha, cplx beta) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw std::invalid_argument("stormer_decompose: |alpha| must be 1");
  const double babs = std::abs(beta);
  const double s = std::sqrt(1.0 + babs);

  ComplexMatrix a(2, 2);
  a(0, 0) = std::conj(alpha) / s;
  a(1, 1) = s;

  ComplexMatrix b(2, 2);
  if (babs > 0.0) {
    b(0, 0) = std::sqrt(babs) / s;
    b(1, 1) = beta * s / std::sqrt(babs);
  }

  StormerDecomposition d;
  d.A = a;
  d.B = b;
  d.phi1 = conjugation_map(a);
  d.phi2 = transposed_conjugation_map(b);
  return d;
}

// Dimension threshold below which positivity already forces decomposability.
inline bool dimension_rule(std::size_t m, std::size_t n) { return m + n <= 5; }

}  // namespace choipoly

#endif  // CHOIPOLY_MAPS_HPP_
