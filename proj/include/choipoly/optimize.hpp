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

#ifndef CHOIPOLY_OPTIMIZE_HPP_
#define CHOIPOLY_OPTIMIZE_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "choipoly/eig.hpp"
#include "choipoly/forms.hpp"
#include "choipoly/matrix.hpp"

namespace choipoly {

// Deterministic Gaussian stream.  mt19937_64 output is fixed by the standard
// and Box-Muller avoids the implementation-defined std::normal_distribution,
// so identical seeds give identical draws on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Haar-uniform unit vector via normalized complex Gaussians.
inline CVec random_unit_vector(RandomStream& rng, std::size_t dim) {
  CVec x(dim);
  double nrm = 0.0;
  do {
    for (cplx& c : x) c = cplx(rng.normal(), rng.normal());
    nrm = vec_norm(x);
  } while (nrm < 1e-12);
  for (cplx& c : x) c /= nrm;
  return x;
}

struct SeesawConfig {
  int restarts = 100;
  int max_iters = 500;
  double tol = 1e-12;  // stationarity tolerance on the per-iteration value change
  std::uint64_t seed = 0;
};

struct ProductPair {
  CVec x;
  CVec y;
};

// Result of a multistart see-saw run.  `value` equals the form evaluated at
// `arg` and is the best over all restarts; restart r uses the RNG stream
// seeded with seed + r, so the report is independent of scheduling order.
struct SeesawReport {
  double value = 0.0;
  ProductPair arg;
  std::vector<double> restart_values;
  int iterations = 0;
};

using MinReport = SeesawReport;

// M_x = (x (x) I_n)* W (x (x) I_n), the n x n compression at fixed x:
// y* M_x y = (x (x) y)* W (x (x) y).
inline ComplexMatrix reduce_fix_x(const GramForm& g, const CVec& x) {
  if (!g.is_hermitian()) throw std::invalid_argument("reduce_fix_x: Gram is not Hermitian");
  if (x.size() != g.dims.m) throw std::invalid_argument("reduce_fix_x: length mismatch");
  const std::size_t n = g.dims.n;
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < g.dims.m; ++i) {
    const cplx xi = std::conj(x[i]);
    if (xi == cplx(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < g.dims.m; ++j) {
      const cplx f = xi * x[j];
      if (f == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          out(k, l) += f * g.W(g.dims.pair_index(i, k), g.dims.pair_index(j, l));
    }
  }
  return hermitize(out);
}

// M_y = (I_m (x) y)* W (I_m (x) y), the m x m compression at fixed y.
inline ComplexMatrix reduce_fix_y(const GramForm& g, const CVec& y) {
  if (!g.is_hermitian()) throw std::invalid_argument("reduce_fix_y: Gram is not Hermitian");
  if (y.size() != g.dims.n) throw std::invalid_argument("reduce_fix_y: length mismatch");
  const std::size_t m = g.dims.m;
  ComplexMatrix out(m, m);
  for (std::size_t k = 0; k < g.dims.n; ++k) {
    const cplx yk = std::conj(y[k]);
    if (yk == cplx(0.0, 0.0)) continue;
    for (std::size_t l = 0; l < g.dims.n; ++l) {
      const cplx f = yk * y[l];
      if (f == cplx(0.0, 0.0)) continue;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          out(i, j) += f * g.W(g.dims.pair_index(i, k), g.dims.pair_index(j, l));
    }
  }
  return hermitize(out);
}

namespace detail {

// Alternating exact eigenvector steps.  Each half-step solves its restricted
// problem exactly, so the value sequence is monotone and converges to a
// stationary pair.  `maximize` flips both eigenvector choices.
inline SeesawReport seesaw_run(const GramForm& g, const SeesawConfig& cfg, bool maximize) {
  if (!g.is_hermitian()) throw std::invalid_argument("seesaw: Gram is not Hermitian");
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw std::invalid_argument("seesaw: restarts and max_iters must be positive");

  SeesawReport best;
  best.value = maximize ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  best.restart_values.reserve(static_cast<std::size_t>(cfg.restarts));

  for (int r = 0; r < cfg.restarts; ++r) {
    RandomStream rng(cfg.seed + static_cast<std::uint64_t>(r));
    CVec x = random_unit_vector(rng, g.dims.m);
    CVec y;
    double prev = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    int used = 0;
    for (int it = 0; it < cfg.max_iters; ++it) {
      used = it + 1;
      EigenDecomposition ey = hermitian_eig(reduce_fix_x(g, x));
      y = eig_column(ey, maximize ? g.dims.n - 1 : 0);
      EigenDecomposition ex = hermitian_eig(reduce_fix_y(g, y));
      x = eig_column(ex, maximize ? g.dims.m - 1 : 0);
      const double value = ex.values[maximize ? g.dims.m - 1 : 0];
      if (std::abs(value - prev) <= cfg.tol) {
        prev = value;
        break;
      }
      prev = value;
    }
    // Report the exact form value at the final pair, not the eigenvalue.
    const double value = std::real(eval_form(g, x, y));
    best.restart_values.push_back(value);
    const bool better = maximize ? value > best.value : value < best.value;
    if (better) {
      best.value = value;
      best.arg = ProductPair{x, y};
      best.iterations = used;
    }
  }
  return best;
}

}  // namespace detail

// Multistart see-saw estimate of min p(x, y) over unit product pairs.
// The value is an upper bound on the true minimum (it is attained).
inline SeesawReport seesaw_min(const GramForm& g, const SeesawConfig& cfg = {}) {
  return detail::seesaw_run(g, cfg, false);
}

// Multistart see-saw estimate of sup p(x, y) over unit product pairs; lower
// bound on the true supremum.  For Gram matrices of the form a*I - W this
// locates the positivity threshold of the associated map family.
inline SeesawReport positivity_threshold_sup(const GramForm& g, const SeesawConfig& cfg = {}) {
  return detail::seesaw_run(g, cfg, true);
}

// Searches for a unit product vector in the range of the projection P by
// minimizing the form with Gram I - P; a value within accept_tol of zero
// yields the pair.  Returns nothing when the estimated minimum stays above
// accept_tol after all restarts.
inline std::optional<ProductPair> product_vector_in_subspace(const ComplexMatrix& p,
                                                             const BipartiteDims& dims,
                                                             const SeesawConfig& cfg = {},
                                                             double accept_tol = 1e-9) {
  require_bipartite_order(p, dims, "product_vector_in_subspace");
  if (!is_hermitian(p) || max_abs(p * p - p) > 1e-8)
    throw std::invalid_argument("product_vector_in_subspace: input is not a projection");
  GramForm g(dims, ComplexMatrix::identity(dims.total()) - p);
  SeesawReport rep = seesaw_min(g, cfg);
  if (rep.value <= accept_tol) return rep.arg;
  return std::nullopt;
}

struct WitnessSearchConfig {
  int iters = 300;          // projected subgradient steps
  int dykstra_iters = 12;   // cyclic projection rounds per step
  int polish_iters = 20;    // feasibility restoration rounds at the end
  double tol = 1e-9;
};

namespace detail {

inline ComplexMatrix psd_projection(const ComplexMatrix& h) {
  EigenDecomposition eig = hermitian_eig(hermitize(h), 1e-5 * std::max(1.0, max_abs(h)));
  ComplexMatrix out(h.rows(), h.cols());
  for (std::size_t c = 0; c < eig.values.size(); ++c) {
    const double lam = eig.values[c];
    if (lam <= 0.0) continue;
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j)
        out(i, j) += lam * eig.vectors(i, c) * std::conj(eig.vectors(j, c));
  }
  return out;
}

}  // namespace detail

// Heuristic search for an indecomposability witness: projected subgradient
// descent of trace(W M) over the convex body {M, M^G both PSD, trace M = N},
// with Dykstra's algorithm handling the projection.  The minimum of the
// linear objective is negative exactly when W lies outside the decomposable
// cone, so a verified witness is sound; failure to find one decides nothing.
// Deterministic: no randomness, fixed iteration budgets.
inline std::optional<IndecomposabilityWitness> witness_search(
    const GramForm& g, const WitnessSearchConfig& cfg = {}) {
  if (!g.is_hermitian()) throw std::invalid_argument("witness_search: Gram is not Hermitian");
  const std::size_t nn = g.dims.total();
  const double target_trace = static_cast<double>(nn);
  const ComplexMatrix w = hermitize(g.W);
  const double wnorm = std::max(frobenius_norm(w), 1e-12);

  ComplexMatrix m = ComplexMatrix::identity(nn);
  ComplexMatrix inc1(nn, nn), inc2(nn, nn), inc3(nn, nn);

  ComplexMatrix best_m = m;
  double best_obj = std::numeric_limits<double>::infinity();

  for (int t = 0; t < cfg.iters; ++t) {
    const double step = (target_trace / wnorm) / std::sqrt(1.0 + t);
    m -= step * w;

    inc1 = ComplexMatrix(nn, nn);
    inc2 = ComplexMatrix(nn, nn);
    inc3 = ComplexMatrix(nn, nn);
    for (int d = 0; d < cfg.dykstra_iters; ++d) {
      ComplexMatrix y1 = m + inc1;
      ComplexMatrix p1 = detail::psd_projection(y1);
      inc1 = y1 - p1;
      m = p1;

      ComplexMatrix y2 = m + inc2;
      ComplexMatrix p2 = partial_transpose_second(
          detail::psd_projection(partial_transpose_second(y2, g.dims)), g.dims);
      inc2 = y2 - p2;
      m = p2;

      ComplexMatrix y3 = m + inc3;
      const double shift = (target_trace - std::real(trace(y3))) / static_cast<double>(nn);
      ComplexMatrix p3 = y3;
      for (std::size_t a = 0; a < nn; ++a) p3(a, a) += shift;
      inc3 = y3 - p3;
      m = p3;
    }

    const double obj = witness_trace(g, m);
    if (obj < best_obj) {
      best_obj = obj;
      best_m = m;
    }
  }

  // Feasibility polish: alternate exact cone projections, then rescale.
  ComplexMatrix cand = best_m;
  for (int d = 0; d < cfg.polish_iters; ++d) {
    cand = detail::psd_projection(cand);
    cand = partial_transpose_second(detail::psd_projection(partial_transpose_second(cand, g.dims)),
                                    g.dims);
  }
  const double tr = std::real(trace(cand));
  if (tr > 1e-9) cand *= cplx(target_trace / tr, 0.0);

  IndecomposabilityWitness wit{g.dims, hermitize(cand), 0.0};
  wit.trace_value = witness_trace(g, wit.M);
  if (wit.trace_value < -std::max(10.0 * cfg.tol, 1e-8) &&
      verify_indecomposability(g, wit, cfg.tol))
    return wit;
  return std::nullopt;
}

}  // namespace choipoly

#endif  // CHOIPOLY_OPTIMIZE_HPP_
