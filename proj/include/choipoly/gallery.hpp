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

#ifndef CHOIPOLY_GALLERY_HPP_
#define CHOIPOLY_GALLERY_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "choipoly/eig.hpp"
#include "choipoly/forms.hpp"
#include "choipoly/maps.hpp"
#include "choipoly/matrix.hpp"
#include "choipoly/optimize.hpp"

namespace choipoly {

namespace detail {

inline CVec basis_vec(std::size_t dim, std::size_t idx) {
  CVec e(dim, cplx(0.0, 0.0));
  e[idx] = 1.0;
  return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// A rank-5 projection on C^3 (x) C^3 whose range contains no product vector.
// ---------------------------------------------------------------------------

struct PiExample {
  GramForm form;                              // W is the projection itself
  std::array<ComplexMatrix, 4> kernel_basis;  // 3x3 K with vec(K) spanning ker W
};

// The projection, stored exactly as rational entries over 18.  Invariants:
// Pi* = Pi, Pi^2 = Pi, rank 5, and the second-factor partial transpose is
// again a projection.  The four kernel matrices are annihilated row-major:
// W vec(K_i) = 0.
inline PiExample example_pi() {
  static const double deg18[9][9] = {
      {11, -7, 2, 2, 2, 2, 2, 2, 2},  //
      {-7, 11, 2, 2, 2, 2, 2, 2, 2},  //
      {2, 2, 11, 2, 2, -7, 2, 2, 2},  //
      {2, 2, 2, 11, 2, 2, -7, 2, 2},  //
      {2, 2, 2, 2, 2, 2, 2, 2, 2},    //
      {2, 2, -7, 2, 2, 11, 2, 2, 2},  //
      {2, 2, 2, -7, 2, 2, 11, 2, 2},  //
      {2, 2, 2, 2, 2, 2, 2, 11, -7},  //
      {2, 2, 2, 2, 2, 2, 2, -7, 11}};
  ComplexMatrix pi(9, 9);
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) pi(a, b) = deg18[a][b] / 18.0;

  static const double k1[3][3] = {{-0.5, -0.5, 0}, {0, 1, 0}, {0, 0, 0}};
  static const double k2[3][3] = {{-1, -1, 1}, {0, 0, 1}, {0, 0, 0}};
  static const double k3[3][3] = {{-1, -1, 0}, {1, 0, 0}, {1, 0, 0}};
  static const double k4[3][3] = {{-1, -1, 0}, {0, 0, 0}, {0, 1, 1}};
  const double(*tables[4])[3] = {k1, k2, k3, k4};

  PiExample ex;
  ex.form = GramForm(BipartiteDims{3, 3}, std::move(pi));
  for (std::size_t t = 0; t < 4; ++t) {
    ComplexMatrix k(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) k(r, c) = tables[t][r][c];
    ex.kernel_basis[t] = std::move(k);
  }
  return ex;
}

struct PiWitnessResult {
  GramForm form;  // W - eps I
  IndecomposabilityWitness witness;
  double delta;  // see-saw minimum of the unshifted form over product pairs
  double eps;
};

// Shifted form W - eps I together with the witness M = I - W.  Because the
// range of W contains no product vector, delta = min over unit product pairs
// of z* W z is strictly positive, and every eps in (0, delta] keeps the
// shifted form nonnegative on product vectors while
// trace((W - eps I)(I - W)) = -eps (9 - rank W) = -4 eps < 0.
// When eps is omitted it defaults to delta / 2.
inline PiWitnessResult pi_indecomposable_witness(std::optional<double> eps_opt = std::nullopt) {
  const PiExample ex = example_pi();
  SeesawConfig cfg;
  cfg.restarts = 48;
  cfg.max_iters = 400;
  cfg.seed = 0;
  const double delta = seesaw_min(ex.form, cfg).value;
  const double eps = eps_opt ? *eps_opt : 0.5 * delta;
  if (!(eps > 0.0) || eps > delta)
    throw std::invalid_argument("pi_indecomposable_witness: eps must lie in (0, delta]");
  GramForm shifted = shift_form(ex.form, eps);
  const ComplexMatrix m = ComplexMatrix::identity(9) - ex.form.W;
  IndecomposabilityWitness wit{ex.form.dims, m, witness_trace(shifted, m)};
  return {std::move(shifted), std::move(wit), delta, eps};
}

// ---------------------------------------------------------------------------
// A 2 (x) 4 state that is PPT and entangled, sitting on the boundary piece
// where no product vector of its range survives partial conjugation.
// ---------------------------------------------------------------------------

// Entries are exactly 1/9, 1/6, sqrt(3)/18 and 0; trace 1; both the state and
// its second-factor partial transpose are PSD.
inline ComplexMatrix horodecki_state() {
  const double a = 1.0 / 9.0;
  const double b = 1.0 / 6.0;
  const double c = std::sqrt(3.0) / 18.0;
  ComplexMatrix rho(8, 8);
  rho(0, 0) = a;
  rho(1, 1) = a;
  rho(2, 2) = a;
  rho(3, 3) = a;
  rho(5, 5) = a;
  rho(6, 6) = a;
  rho(4, 4) = b;
  rho(7, 7) = b;
  rho(0, 5) = a;
  rho(5, 0) = a;
  rho(1, 6) = a;
  rho(6, 1) = a;
  rho(2, 7) = a;
  rho(7, 2) = a;
  rho(4, 7) = c;
  rho(7, 4) = c;
  return rho;
}

struct EdgeReport {
  BipartiteDims dims;
  bool ppt = false;
  ComplexMatrix P_kernel_proj;  // projector onto ker rho
  ComplexMatrix Q_kernel_proj;  // projector onto ker rho^G
  GramForm gram;                // W = P + Q^G
  MinReport seesaw;
  double delta = 0.0;
  TriState is_edge = TriState::undecided;
  // Product pair achieving the minimum; a certificate when is_edge == no.
  std::optional<ProductPair> zero_pair;
  double requested_eps = 0.0;
  std::optional<GramForm> shifted_form;             // W - eps I
  std::optional<IndecomposabilityWitness> witness;  // M = the state itself
};

// Edge test for a PPT state rho: with P, Q the kernel projectors of rho and
// rho^G, the form W = P + Q^G evaluates on a unit product pair (x, y) to
// |P (x(x)y)|^2 + |Q (x(x)conj(y))|^2.  Its minimum delta is zero iff some
// product vector of Ran(rho) stays in Ran(rho^G) after partial conjugation;
// delta > 0 certifies the edge property and any eps in (0, delta] yields the
// witness pair (W - eps I, M = rho) with trace value -eps tr(rho).
inline EdgeReport edge_check(const ComplexMatrix& rho, const BipartiteDims& dims,
                             const SeesawConfig& cfg = {}, double requested_eps = 0.0,
                             double tol = 1e-9) {
  require_bipartite_order(rho, dims, "edge_check");
  if (!is_hermitian(rho, tol)) throw std::invalid_argument("edge_check: state is not Hermitian");
  const ComplexMatrix rho_pt = partial_transpose_second(rho, dims);
  if (!is_psd(hermitize(rho), tol) || !is_psd(hermitize(rho_pt), tol))
    throw std::invalid_argument("edge_check: state is not PPT");

  EdgeReport report;
  report.dims = dims;
  report.ppt = true;
  report.P_kernel_proj = kernel_projector(hermitize(rho));
  report.Q_kernel_proj = kernel_projector(hermitize(rho_pt));
  report.gram = GramForm(
      dims, hermitize(report.P_kernel_proj + partial_transpose_second(report.Q_kernel_proj, dims)));
  report.seesaw = seesaw_min(report.gram, cfg);
  report.delta = report.seesaw.value;
  if (report.delta <= tol) {
    report.is_edge = TriState::no;
    report.zero_pair = report.seesaw.arg;
  } else {
    report.is_edge = TriState::yes;
  }

  if (requested_eps != 0.0) {
    if (!(requested_eps > 0.0) || requested_eps > report.delta)
      throw std::invalid_argument("edge_check: requested eps outside (0, delta]");
    report.requested_eps = requested_eps;
    report.shifted_form = shift_form(report.gram, requested_eps);
    report.witness = IndecomposabilityWitness{
        dims, rho, witness_trace(*report.shifted_form, rho)};
  }
  return report;
}

// ---------------------------------------------------------------------------
// The shift-compression family Phi(X) = a tr(X) I_n - sum_a eps_a V_a X V_a*,
// where V_a embeds C^m into C^n shifted down by a positions.
// ---------------------------------------------------------------------------

struct PhiFamilySpec {
  double a = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> eps;  // one weight per shift, r + 1 = n - m + 1 entries

  std::size_t r() const { return n - m; }
};

inline void validate_phi_spec(const PhiFamilySpec& spec) {
  if (spec.m == 0 || spec.n < spec.m)
    throw std::invalid_argument("PhiFamilySpec: need n >= m >= 1");
  if (!(spec.a >= 0.0) || !std::isfinite(spec.a))
    throw std::invalid_argument("PhiFamilySpec: a must be a finite nonnegative real");
  if (spec.eps.size() != spec.r() + 1)
    throw std::invalid_argument("PhiFamilySpec: need exactly n - m + 1 weights");
  for (double e : spec.eps)
    if (!(e > 0.0) || e > 1.0)
      throw std::invalid_argument("PhiFamilySpec: weights must lie in (0, 1]");
}

// Block form: phi(e_ij) = a delta_ij I_n - sum_a eps_a E_{i+a, j+a}.
inline LinearMapRep phi_family_map(const PhiFamilySpec& spec) {
  validate_phi_spec(spec);
  const std::size_t m = spec.m, n = spec.n, r = spec.r();
  std::vector<std::vector<ComplexMatrix>> blocks(m);
  for (std::size_t i = 0; i < m; ++i) {
    blocks[i].reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix blk(n, n);
      if (i == j)
        for (std::size_t t = 0; t < n; ++t) blk(t, t) = spec.a;
      for (std::size_t al = 0; al <= r; ++al) blk(i + al, j + al) -= spec.eps[al];
      blocks[i].push_back(std::move(blk));
    }
  }
  return LinearMapRep::from_blocks(blocks);
}

// s_j = sum of the weights eps_a whose shifted window {a, .., m-1+a} covers
// column j; equivalently the coefficient of |y_j|^2 in
// sum_a eps_a |(V_a x)_j|^2 at |x_p| = 1.
inline std::vector<double> phi_s_profile(const PhiFamilySpec& spec) {
  validate_phi_spec(spec);
  const std::size_t m = spec.m, n = spec.n, r = spec.r();
  std::vector<double> s(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = (j + 1 > m) ? j + 1 - m : 0;
    const std::size_t hi = std::min(r, j);
    for (std::size_t al = lo; al <= hi; ++al) s[j] += spec.eps[al];
  }
  return s;
}

// Constructive splitting available whenever a >= max_j s_j.  The loss part
// satisfies, per shift a,
//   |x|^2 sum_p |y_{p+a}|^2 - |sum_p x_p conj(y_{p+a})|^2
//     = sum_{p<q} |x_p y_{q+a} - x_q y_{p+a}|^2,
// a sum of squared bilinear forms (no conjugation inside the squares; with a
// conjugated second factor the identity fails, e.g. x = (1, i), y = (1, i)).
// The remainder contributes the bilinear squares (a - s_j)|x_p y_j|^2.  All
// pieces are therefore squared bilinear forms, so Q carries the whole Gram
// and R = 0.
inline DecomposabilityCert phi_decomposability_cert(const PhiFamilySpec& spec) {
  validate_phi_spec(spec);
  const std::size_t m = spec.m, n = spec.n, r = spec.r();
  const std::vector<double> s = phi_s_profile(spec);
  double smax = 0.0;
  for (double v : s) smax = std::max(smax, v);
  if (spec.a < smax - 1e-9)
    throw std::invalid_argument(
        "phi_decomposability_cert: requires a >= max_j s_j; no splitting from this "
        "construction below the threshold");

  std::vector<ComplexMatrix> family;
  for (std::size_t j = 0; j < n; ++j) {
    const double coef = std::max(spec.a - s[j], 0.0);
    if (coef <= 0.0) continue;
    for (std::size_t p = 0; p < m; ++p) {
      ComplexMatrix a(m, n);
      a(p, j) = std::sqrt(coef);
      family.push_back(std::move(a));
    }
  }
  for (std::size_t al = 0; al <= r; ++al) {
    const double w = std::sqrt(spec.eps[al]);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        ComplexMatrix a(m, n);
        a(p, q + al) = w;
        a(q, p + al) = -w;
        family.push_back(std::move(a));
      }
  }
  const BipartiteDims dims{m, n};
  GramForm q = blf_gram(family, dims);
  return DecomposabilityCert{dims, std::move(q.W), ComplexMatrix(dims.total(), dims.total())};
}

// Tridiagonal comparison matrix for the m = 2 positivity threshold: the map
// is positive iff a >= lambda_max of this matrix.  Diagonal eps_a, adjacent
// couplings sqrt(eps_a eps_{a+1}) / 2.
inline ComplexMatrix phi_j_epsilon(const std::vector<double>& eps) {
  if (eps.empty()) throw std::invalid_argument("phi_j_epsilon: need at least one weight");
  for (double e : eps)
    if (!(e > 0.0) || e > 1.0)
      throw std::invalid_argument("phi_j_epsilon: weights must lie in (0, 1]");
  const std::size_t d = eps.size();
  ComplexMatrix j(d, d);
  for (std::size_t t = 0; t < d; ++t) {
    j(t, t) = eps[t];
    if (t + 1 < d) {
      const double off = 0.5 * std::sqrt(eps[t] * eps[t + 1]);
      j(t, t + 1) = off;
      j(t + 1, t) = off;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// The cyclic diagonal-compression map on M_4:
// tau(X) = 3 diag(X) + diag(S X S*) - X with S the cyclic shift.
// ---------------------------------------------------------------------------

// Blocks: tau(e_ii) = 2 E_ii + E_{i+1,i+1} (cyclic), tau(e_ij) = -e_ij else.
inline LinearMapRep tau41() {
  std::vector<std::vector<ComplexMatrix>> blocks(4);
  for (std::size_t i = 0; i < 4; ++i) {
    blocks[i].reserve(4);
    for (std::size_t j = 0; j < 4; ++j) {
      ComplexMatrix blk(4, 4);
      if (i == j) {
        blk(i, i) = 2.0;
        blk((i + 1) % 4, (i + 1) % 4) = 1.0;
      } else {
        blk(i, j) = -1.0;
      }
      blocks[i].push_back(std::move(blk));
    }
  }
  return LinearMapRep::from_blocks(blocks);
}

struct Tau41PositivityReport {
  MinReport seesaw;  // min of the form over unit product pairs
  double u_sum_max = 0.0;
  int u_trials = 0;
  double identity_max_abs_diff = 0.0;
  double identity_min_value = 0.0;
  int identity_trials = 0;
  bool passed = false;
};

// Numerical positivity evidence along three independent routes:
// (a) see-saw minimization of the form over unit product pairs (the form has
//     genuine zeros, so the expected minimum is 0 up to round-off);
// (b) the scalar inequality sum_i 1/(3 + u_i) <= 1 over random positive
//     tuples with u_1 u_2 u_3 u_4 = 1, the Cauchy-Schwarz reduction of (c);
// (c) the identity P(x, y) = sum_i (3 a_i + a_{i-1}) b_i - |sum_i conj(x_i) y_i|^2
//     with a_i = |x_i|^2, b_i = |y_i|^2 (index i - 1 cyclic), re-derived at
//     random complex points and checked nonnegative.
inline Tau41PositivityReport tau41_positivity_suite(const SeesawConfig& cfg = {}) {
  const LinearMapRep tau = tau41();
  const GramForm g = choi_to_gram(tau);

  Tau41PositivityReport report;
  report.seesaw = seesaw_min(g, cfg);

  RandomStream rng(cfg.seed);
  report.u_trials = 200;
  report.u_sum_max = 4.0 / 4.0;  // the AM-GM equality tuple u = (1,1,1,1)
  for (int t = 0; t < report.u_trials; ++t) {
    double u[4];
    double prod = 1.0;
    for (int i = 0; i < 3; ++i) {
      u[i] = std::exp(3.0 * (2.0 * rng.uniform() - 1.0));
      prod *= u[i];
    }
    u[3] = 1.0 / prod;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += 1.0 / (3.0 + u[i]);
    report.u_sum_max = std::max(report.u_sum_max, sum);
  }

  report.identity_trials = 100;
  double max_diff = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  for (int t = 0; t < report.identity_trials; ++t) {
    CVec x = random_unit_vector(rng, 4);
    CVec y = random_unit_vector(rng, 4);
    const double sx = 0.5 + rng.uniform();
    const double sy = 0.5 + rng.uniform();
    for (auto& v : x) v *= sx;
    for (auto& v : y) v *= sy;
    double recon = 0.0;
    cplx overlap = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double ai = std::norm(x[i]);
      const double aprev = std::norm(x[(i + 3) % 4]);
      recon += (3.0 * ai + aprev) * std::norm(y[i]);
      overlap += std::conj(x[i]) * y[i];
    }
    recon -= std::norm(overlap);
    const double direct = choi_poly_eval(tau, x, y).real();
    max_diff = std::max(max_diff, std::abs(direct - recon));
    min_value = std::min(min_value, recon);
  }
  report.identity_max_abs_diff = max_diff;
  report.identity_min_value = min_value;

  report.passed = report.seesaw.value >= -1e-9 && report.u_sum_max <= 1.0 + 1e-12 &&
                  report.identity_max_abs_diff <= 1e-9 && report.identity_min_value >= -1e-9;
  return report;
}

struct Tau41ObstructionReport {
  bool zeros_exact = false;
  std::size_t constraint_rows = 0;
  std::size_t coefficient_dim = 0;
  std::size_t nullspace_dim = 0;
  double span_distance = 0.0;
  double unreachable_residual = 0.0;
  bool passed = false;
};

// Restriction to real arguments and the obstruction to writing it as a sum
// of squares of real bilinear forms:
// (a) the restricted form vanishes exactly at eight basis pairs (e_i, e_j),
//     j not in {i, i+1 cyclic}, and at all sixteen sign pairs (s, s);
// (b) a bilinear form vanishing at all 24 of those points has coefficient
//     vector in a 3-dimensional space, the span of the diagonal differences
//     x_t y_t - x_1 y_1;
// (c) squares from that span only produce matched monomials x_i x_j y_i y_j,
//     so the monomial x_4^2 y_1^2 (coefficient 1 in the restricted form) is
//     unreachable.  No sum of squares of real bilinear forms represents the
//     restriction.
inline Tau41ObstructionReport tau41_real_sos_obstruction() {
  const LinearMapRep tau = tau41();
  Tau41ObstructionReport report;
  report.coefficient_dim = 16;

  // (a) the 24 zeros, exact in floating point since all products are small
  // integers.
  bool zeros_ok = true;
  static const int zero_pairs[8][2] = {{0, 2}, {0, 3}, {1, 0}, {1, 3},
                                       {2, 0}, {2, 1}, {3, 1}, {3, 2}};
  for (const auto& pr : zero_pairs) {
    const cplx v =
        choi_poly_eval(tau, detail::basis_vec(4, pr[0]), detail::basis_vec(4, pr[1]));
    if (v != cplx(0.0, 0.0)) zeros_ok = false;
  }
  std::vector<std::array<double, 4>> signs;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    signs.push_back(s);
    CVec xs(4);
    for (int i = 0; i < 4; ++i) xs[i] = s[i];
    if (choi_poly_eval(tau, xs, xs) != cplx(0.0, 0.0)) zeros_ok = false;
  }
  report.zeros_exact = zeros_ok;

  // (b) linear constraints on the 16 coefficients a_{ij} of F = sum a_ij x_i y_j.
  ComplexMatrix constraints(24, 16);
  std::size_t row = 0;
  for (const auto& pr : zero_pairs) constraints(row++, 4 * pr[0] + pr[1]) = 1.0;
  for (const auto& s : signs) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) constraints(row, 4 * i + j) = s[i] * s[j];
    ++row;
  }
  report.constraint_rows = row;

  const ComplexMatrix gram = adjoint(constraints) * constraints;
  const EigenDecomposition eig = hermitian_eig(gram);
  const double lam_max = std::max(eig.values.back(), 1.0);
  std::vector<CVec> null_basis;
  for (std::size_t c = 0; c < eig.values.size(); ++c)
    if (eig.values[c] <= 1e-10 * lam_max) null_basis.push_back(eig_column(eig, c));
  report.nullspace_dim = null_basis.size();

  // Projector comparison against the diagonal-difference span.
  std::vector<CVec> diag_span;
  for (int t = 1; t < 4; ++t) {
    CVec v(16, cplx(0.0, 0.0));
    v[static_cast<std::size_t>(4 * t + t)] = 1.0;
    v[0] = -1.0;
    diag_span.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < diag_span.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const cplx c = vdot(diag_span[j], diag_span[i]);
      for (std::size_t t = 0; t < 16; ++t) diag_span[i][t] -= c * diag_span[j][t];
    }
    const double norm = vec_norm(diag_span[i]);
    for (auto& v : diag_span[i]) v /= norm;
  }
  ComplexMatrix proj_null(16, 16), proj_diag(16, 16);
  for (const CVec& u : null_basis) proj_null += outer(u, u);
  for (const CVec& u : diag_span) proj_diag += outer(u, u);
  report.span_distance = max_abs(proj_null - proj_diag);

  // (c) least-squares distance from the target monomial to the span of all
  // products of two diagonal differences, in the canonical monomial basis
  // keyed by (min(i,j), max(i,j), min(k,l), max(k,l)).
  using MonoKey = std::array<int, 4>;
  auto diff_coeffs = [](int which) {
    // Coefficient c_t of the diagonal monomial x_t y_t in difference `which`.
    std::array<double, 4> c{};
    c[0] = -1.0;
    c[static_cast<std::size_t>(which)] = 1.0;
    return c;
  };
  std::vector<std::map<MonoKey, double>> products;
  for (int a = 1; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      const std::array<double, 4> ca = diff_coeffs(a);
      const std::array<double, 4> cb = diff_coeffs(b);
      std::map<MonoKey, double> prod;
      for (int t = 0; t < 4; ++t)
        for (int u = 0; u < 4; ++u) {
          if (ca[t] == 0.0 || cb[u] == 0.0) continue;
          const MonoKey key{std::min(t, u), std::max(t, u), std::min(t, u), std::max(t, u)};
          prod[key] += ca[t] * cb[u];
        }
      products.push_back(std::move(prod));
    }
  std::map<MonoKey, std::size_t> key_index;
  const MonoKey target_key{3, 3, 0, 0};  // x_4^2 y_1^2, 0-based factor indices
  key_index[target_key] = 0;
  for (const auto& prod : products)
    for (const auto& kv : prod)
      if (!key_index.count(kv.first)) key_index[kv.first] = key_index.size();
  const std::size_t mono_dim = key_index.size();
  std::vector<CVec> span_vecs;
  for (const auto& prod : products) {
    CVec v(mono_dim, cplx(0.0, 0.0));
    for (const auto& [key, coef] : prod) v[key_index[key]] = coef;
    span_vecs.push_back(std::move(v));
  }
  CVec target(mono_dim, cplx(0.0, 0.0));
  target[key_index[target_key]] = 1.0;
  // Modified Gram-Schmidt projection of the target onto the product span.
  std::vector<CVec> ortho;
  for (CVec v : span_vecs) {
    for (const CVec& q : ortho) {
      const cplx c = vdot(q, v);
      for (std::size_t t = 0; t < mono_dim; ++t) v[t] -= c * q[t];
    }
    const double norm = vec_norm(v);
    if (norm > 1e-12) {
      for (auto& e : v) e /= norm;
      ortho.push_back(std::move(v));
    }
  }
  CVec residual = target;
  for (const CVec& q : ortho) {
    const cplx c = vdot(q, residual);
    for (std::size_t t = 0; t < mono_dim; ++t) residual[t] -= c * q[t];
  }
  report.unreachable_residual = vec_norm(residual);

  report.passed = report.zeros_exact && report.nullspace_dim == 3 &&
                  report.span_distance <= 1e-9 && report.unreachable_residual >= 0.5;
  return report;
}

// ---------------------------------------------------------------------------
// Orthonormal unextendible families of product vectors.
// ---------------------------------------------------------------------------

struct UpbFamily {
  BipartiteDims dims;
  std::vector<ProductPair> vectors;
};

inline void validate_upb_family(const UpbFamily& family, double tol = 1e-12) {
  if (family.vectors.empty()) throw std::invalid_argument("UpbFamily: empty family");
  std::vector<CVec> joint;
  joint.reserve(family.vectors.size());
  for (const ProductPair& pair : family.vectors) {
    if (pair.x.size() != family.dims.m || pair.y.size() != family.dims.n)
      throw std::invalid_argument("UpbFamily: factor lengths do not match dims");
    if (std::abs(vec_norm(pair.x) - 1.0) > tol || std::abs(vec_norm(pair.y) - 1.0) > tol)
      throw std::invalid_argument("UpbFamily: factors must be unit vectors");
    joint.push_back(kron_vec(pair.x, pair.y));
  }
  for (std::size_t i = 0; i < joint.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(vdot(joint[i], joint[j])) > tol)
        throw std::invalid_argument("UpbFamily: vectors are not pairwise orthogonal");
}

// The five-tile family on C^3 (x) C^3: four "domino" vectors along the grid
// edges plus the uniform vector.  Orthonormal, and no sixth product vector
// is orthogonal to all five.
inline UpbFamily tiles_upb() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  auto vec3 = [](double a, double b, double c) {
    CVec v(3);
    v[0] = a;
    v[1] = b;
    v[2] = c;
    return v;
  };
  UpbFamily family;
  family.dims = BipartiteDims{3, 3};
  family.vectors = {
      ProductPair{vec3(1, 0, 0), vec3(s2, -s2, 0)},
      ProductPair{vec3(0, 0, 1), vec3(0, s2, -s2)},
      ProductPair{vec3(s2, -s2, 0), vec3(0, 0, 1)},
      ProductPair{vec3(0, s2, -s2), vec3(1, 0, 0)},
      ProductPair{vec3(s3, s3, s3), vec3(s3, s3, s3)},
  };
  return family;
}

struct UpbWitnessResult {
  GramForm form;  // P_E - eps I
  IndecomposabilityWitness witness;
  double delta = 0.0;
  double eps = 0.0;
};

// Witness construction from an orthonormal unextendible product family E:
// P_E = sum z z* is a projection, its partial transpose is again a projection
// (partial conjugation preserves the family's orthogonality), and
// delta_E = min over unit product pairs of z* P_E z is positive exactly
// because no product vector fits in the orthocomplement.  For eps in
// (0, delta_E] the pair (P_E - eps I, M = I - P_E) verifies:
// trace((P_E - eps I)(I - P_E)) = -eps (mn - k).
// When eps is omitted it defaults to delta_E / 2.
inline UpbWitnessResult upb_witness(const UpbFamily& family,
                                    std::optional<double> eps_opt = std::nullopt,
                                    const SeesawConfig& cfg = {}, double tol = 1e-9) {
  validate_upb_family(family);
  const std::size_t total = family.dims.total();
  if (family.vectors.size() >= total)
    throw std::invalid_argument(
        "upb_witness: family spans the whole space; the complement witness is zero");

  ComplexMatrix p(total, total);
  for (const ProductPair& pair : family.vectors) {
    const CVec z = kron_vec(pair.x, pair.y);
    p += outer(z, z);
  }
  p = hermitize(p);
  const ComplexMatrix p_pt = partial_transpose_second(p, family.dims);
  if (max_abs(p_pt * p_pt - p_pt) > 1e-10)
    throw std::invalid_argument(
        "upb_witness: partial transpose is not a projection; family is not a product family");

  GramForm g(family.dims, p);
  const MinReport min_report = seesaw_min(g, cfg);
  const double delta = min_report.value;
  if (delta <= tol)
    throw std::invalid_argument("upb_witness: family is not unextendible at this tolerance");
  const double eps = eps_opt ? *eps_opt : 0.5 * delta;
  if (!(eps > 0.0) || eps > delta)
    throw std::invalid_argument("upb_witness: eps must lie in (0, delta]");

  GramForm shifted = shift_form(g, eps);
  ComplexMatrix m = ComplexMatrix::identity(total) - p;
  IndecomposabilityWitness wit{family.dims, std::move(m), 0.0};
  wit.trace_value = witness_trace(shifted, wit.M);
  return UpbWitnessResult{std::move(shifted), std::move(wit), delta, eps};
}

}  // namespace choipoly

#endif  // CHOIPOLY_GALLERY_HPP_
