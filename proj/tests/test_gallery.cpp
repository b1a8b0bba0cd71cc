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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "choipoly/choipoly.hpp"
#include "test_helpers.hpp"

using namespace choipoly;

namespace {

CVec flatten(const ComplexMatrix& k, const BipartiteDims& dims) {
  CVec z(dims.total(), cplx(0.0, 0.0));
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < k.cols(); ++c) z[dims.pair_index(r, c)] = k(r, c);
  return z;
}

}  // namespace

// ------------------------------- projection with product-free range ---------

TEST_CASE("the rank-5 projection has the advertised spectral shape", "[gallery]") {
  const PiExample ex = example_pi();
  const ComplexMatrix& w = ex.form.W;
  REQUIRE(ex.form.dims == (BipartiteDims{3, 3}));
  REQUIRE(is_hermitian(w, 1e-14));
  REQUIRE(max_abs(w * w - w) < 1e-12);
  REQUIRE(numerical_rank(w) == 5);
  REQUIRE(trace(w).real() == Catch::Approx(5.0).margin(1e-12));

  const ComplexMatrix wpt = partial_transpose_second(w, ex.form.dims);
  REQUIRE(max_abs(wpt * wpt - wpt) < 1e-12);

  // The four listed matrices flatten to a basis of the kernel.
  ComplexMatrix gram(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const CVec zi = flatten(ex.kernel_basis[i], ex.form.dims);
    REQUIRE(vec_norm(matvec(w, zi)) < 1e-12);
    for (std::size_t j = 0; j < 4; ++j)
      gram(i, j) = vdot(flatten(ex.kernel_basis[i], ex.form.dims),
                        flatten(ex.kernel_basis[j], ex.form.dims));
  }
  REQUIRE(numerical_rank(gram) == 4);
}

TEST_CASE("the kernel of the projection is product-free", "[gallery]") {
  const PiExample ex = example_pi();
  SeesawConfig cfg;
  cfg.restarts = 60;
  cfg.max_iters = 400;

  // The positive see-saw floor of the form says exactly this: no unit
  // product vector is annihilated by the projection.
  const ComplexMatrix complement = ComplexMatrix::identity(9) - ex.form.W;
  REQUIRE_FALSE(product_vector_in_subspace(complement, ex.form.dims, cfg).has_value());

  // The five-dimensional range, by contrast, does contain product vectors.
  const auto hit = product_vector_in_subspace(ex.form.W, ex.form.dims, cfg);
  REQUIRE(hit.has_value());
  CVec z(ex.form.dims.total());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      z[ex.form.dims.pair_index(i, k)] = std::conj(hit->x[i]) * hit->y[k];
  REQUIRE(vec_norm(z) == Catch::Approx(1.0).margin(1e-9));
  CVec residual = matvec(complement, z);
  REQUIRE(vec_norm(residual) < 1e-6);
}

TEST_CASE("the shifted projection yields a verified witness", "[gallery]") {
  const PiWitnessResult res = pi_indecomposable_witness();
  REQUIRE(res.delta > 0.01);
  REQUIRE(res.delta < 0.06);
  REQUIRE(res.eps == 0.5 * res.delta);
  REQUIRE(res.witness.trace_value == Catch::Approx(-4.0 * res.eps).margin(1e-12));
  REQUIRE(verify_indecomposability(res.form, res.witness));

  // The explicit eps overload agrees and rejects out-of-range shifts.
  const PiWitnessResult fixed = pi_indecomposable_witness(0.02);
  REQUIRE(fixed.eps == 0.02);
  REQUIRE(fixed.witness.trace_value == Catch::Approx(-0.08).margin(1e-12));
  REQUIRE(verify_indecomposability(fixed.form, fixed.witness));
  REQUIRE_THROWS_AS(pi_indecomposable_witness(1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(pi_indecomposable_witness(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(pi_indecomposable_witness(-0.01), std::invalid_argument);
}

// ------------------------------- PPT entangled 2 (x) 4 state ----------------

TEST_CASE("the 2 (x) 4 state matches its closed-form entries", "[gallery]") {
  const ComplexMatrix rho = horodecki_state();
  const double a = 1.0 / 9.0;
  const double b = 1.0 / 6.0;
  const double c = std::sqrt(3.0) / 18.0;
  ComplexMatrix expect(8, 8);
  for (std::size_t d : {0u, 1u, 2u, 3u, 5u, 6u}) expect(d, d) = a;
  expect(4, 4) = b;
  expect(7, 7) = b;
  expect(0, 5) = a;
  expect(5, 0) = a;
  expect(1, 6) = a;
  expect(6, 1) = a;
  expect(2, 7) = a;
  expect(7, 2) = a;
  expect(4, 7) = c;
  expect(7, 4) = c;
  REQUIRE(max_abs(rho - expect) == 0.0);

  const BipartiteDims dims{2, 4};
  REQUIRE(trace(rho).real() == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(is_psd(rho));
  REQUIRE(is_psd(hermitize(partial_transpose_second(rho, dims))));
  REQUIRE(numerical_rank(rho) == 5);
  REQUIRE(trace(kernel_projector(rho)).real() == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("the 2 (x) 4 state is an edge state with a verified witness", "[gallery]") {
  const ComplexMatrix rho = horodecki_state();
  const BipartiteDims dims{2, 4};
  SeesawConfig cfg;
  cfg.restarts = 60;
  cfg.max_iters = 400;

  EdgeReport plain = edge_check(rho, dims, cfg);
  REQUIRE(plain.ppt);
  REQUIRE(plain.is_edge == TriState::yes);
  REQUIRE(plain.delta > 1e-3);
  REQUIRE_FALSE(plain.witness.has_value());

  const double eps = 0.5 * plain.delta;
  EdgeReport rep = edge_check(rho, dims, cfg, eps);
  REQUIRE(rep.witness.has_value());
  REQUIRE(rep.shifted_form.has_value());
  // trace((W - eps I) rho) = -eps tr(rho) = -eps because W rho = 0.
  REQUIRE(rep.witness->trace_value == Catch::Approx(-eps).margin(1e-10));
  REQUIRE(verify_indecomposability(*rep.shifted_form, *rep.witness));

  REQUIRE_THROWS_AS(edge_check(rho, dims, cfg, 2.0 * plain.delta), std::invalid_argument);
}

TEST_CASE("edge_check rejects non-PPT input and clears full-range states", "[gallery]") {
  const BipartiteDims dims22{2, 2};
  CVec bell{cplx(1.0 / std::sqrt(2.0), 0.0), 0.0, 0.0, cplx(1.0 / std::sqrt(2.0), 0.0)};
  REQUIRE_THROWS_AS(edge_check(outer(bell, bell), dims22, SeesawConfig{}), std::invalid_argument);

  SeesawConfig cfg;
  cfg.restarts = 20;
  const ComplexMatrix mixed = cplx(1.0 / 8.0, 0.0) * ComplexMatrix::identity(8);
  EdgeReport rep = edge_check(mixed, BipartiteDims{2, 4}, cfg);
  REQUIRE(rep.is_edge == TriState::no);
  REQUIRE(rep.zero_pair.has_value());

  // A pure product state is PPT but its own range kills the form.
  ComplexMatrix pure(4, 4);
  pure(0, 0) = 1.0;
  EdgeReport prod = edge_check(pure, dims22, cfg);
  REQUIRE(prod.is_edge == TriState::no);
}

// ------------------------------- shift-compression family -------------------

TEST_CASE("family spec validation", "[gallery]") {
  REQUIRE_THROWS_AS(validate_phi_spec({1.0, 0, 3, {1.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_phi_spec({1.0, 3, 2, {1.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_phi_spec({1.0, 2, 3, {1.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_phi_spec({1.0, 2, 3, {1.0, 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_phi_spec({1.0, 2, 3, {1.0, 1.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_phi_spec({-1.0, 2, 3, {1.0, 1.0}}), std::invalid_argument);
  REQUIRE_NOTHROW(validate_phi_spec({1.0, 2, 3, {1.0, 0.5}}));
}

TEST_CASE("family blocks match the closed form", "[gallery]") {
  const PhiFamilySpec spec{0.75, 2, 4, {0.5, 1.0, 0.25}};
  const LinearMapRep phi = phi_family_map(spec);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      ComplexMatrix expect(4, 4);
      if (i == j)
        for (std::size_t t = 0; t < 4; ++t) expect(t, t) = spec.a;
      for (std::size_t al = 0; al <= 2; ++al) expect(i + al, j + al) -= spec.eps[al];
      REQUIRE(max_abs(phi.block(i, j) - expect) == 0.0);
    }
}

TEST_CASE("family form evaluates to the shifted-overlap expansion", "[gallery]") {
  RandomStream rng(101);
  const PhiFamilySpec spec{1.25, 3, 5, {0.9, 0.4, 0.7}};
  const LinearMapRep phi = phi_family_map(spec);
  for (int t = 0; t < 50; ++t) {
    const CVec x = testutil::random_cvec(rng, 3);
    const CVec y = testutil::random_cvec(rng, 5);
    double nx = 0.0, ny = 0.0;
    for (const cplx& v : x) nx += std::norm(v);
    for (const cplx& v : y) ny += std::norm(v);
    double expect = spec.a * nx * ny;
    for (std::size_t al = 0; al <= 2; ++al) {
      cplx overlap = 0.0;
      for (std::size_t p = 0; p < 3; ++p) overlap += std::conj(x[p]) * y[p + al];
      expect -= spec.eps[al] * std::norm(overlap);
    }
    REQUIRE(choi_poly_eval(phi, x, y).real() == Catch::Approx(expect).margin(1e-10));
    REQUIRE(std::abs(choi_poly_eval(phi, x, y).imag()) < 1e-12);
  }
}

TEST_CASE("window sums match a direct count", "[gallery]") {
  RandomStream rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
    const std::size_t n = m + static_cast<std::size_t>(rng.uniform() * (7.0 - m));
    PhiFamilySpec spec{0.0, m, n, {}};
    for (std::size_t al = 0; al <= n - m; ++al) spec.eps.push_back(0.05 + 0.95 * rng.uniform());
    const std::vector<double> s = phi_s_profile(spec);
    for (std::size_t j = 0; j < n; ++j) {
      double direct = 0.0;
      for (std::size_t al = 0; al <= n - m; ++al)
        if (j >= al && j - al < m) direct += spec.eps[al];
      REQUIRE(s[j] == Catch::Approx(direct).margin(1e-14));
    }
  }

  // Unit weights give the window-count formula.
  const PhiFamilySpec unit{0.0, 3, 7, {1, 1, 1, 1, 1}};
  const std::vector<double> s = phi_s_profile(unit);
  for (std::size_t j = 0; j < 7; ++j) {
    const double lo = (j + 1 > 3) ? static_cast<double>(j + 1 - 3) : 0.0;
    const double hi = std::min<double>(4.0, static_cast<double>(j));
    REQUIRE(s[j] == Catch::Approx(hi - lo + 1.0).margin(1e-14));
  }
}

TEST_CASE("splitting certificate verifies at and above the threshold", "[gallery]") {
  for (const PhiFamilySpec& base : {PhiFamilySpec{0.0, 2, 4, {0.6, 1.0, 0.3}},
                                   PhiFamilySpec{0.0, 3, 3, {0.8}},
                                   PhiFamilySpec{0.0, 3, 5, {1.0, 1.0, 1.0}}}) {
    PhiFamilySpec spec = base;
    const std::vector<double> s = phi_s_profile(base);
    double smax = 0.0;
    for (double v : s) smax = std::max(smax, v);

    for (double margin : {0.0, 0.4}) {
      spec.a = smax + margin;
      const DecomposabilityCert cert = phi_decomposability_cert(spec);
      const GramForm g = choi_to_gram(phi_family_map(spec));
      REQUIRE(verify_decomposability(g, cert));
      REQUIRE(max_abs(cert.Q + partial_transpose_second(cert.R, g.dims) - g.W) < 1e-10);
      REQUIRE(max_abs(cert.R) == 0.0);
    }

    spec.a = std::max(smax - 0.1, 0.0);
    if (smax > 0.2) REQUIRE_THROWS_AS(phi_decomposability_cert(spec), std::invalid_argument);
  }
}

TEST_CASE("zero-shift member flips positivity exactly at the weight", "[gallery]") {
  const double e0 = 0.7;
  for (double off : {1e-3, -1e-3}) {
    PhiFamilySpec spec{e0 + off, 3, 3, {e0}};
    const MapClassification cls = classify(phi_family_map(spec));
    REQUIRE(cls.self_adjoint);
    if (off > 0) {
      REQUIRE(cls.completely_copositive);
      REQUIRE(cls.positive == TriState::yes);
      REQUIRE(cls.choi_in_D == TriState::yes);
    } else {
      REQUIRE_FALSE(cls.completely_copositive);
      REQUIRE_FALSE(cls.completely_positive);
      REQUIRE(cls.positive == TriState::no);
    }
  }
}

TEST_CASE("comparison matrix reproduces the two-row positivity threshold", "[gallery]") {
  // Unit weights: largest eigenvalue is 1 + cos(pi / (r + 2)).
  for (std::size_t r = 0; r <= 8; ++r) {
    const std::vector<double> eps(r + 1, 1.0);
    const double lam = hermitian_eig(phi_j_epsilon(eps)).values.back();
    REQUIRE(lam == Catch::Approx(1.0 + std::cos(3.14159265358979323846 / (r + 2.0)))
                       .margin(1e-10));
  }

  // One shift: closed form in the two weights.
  RandomStream rng(107);
  for (int t = 0; t < 20; ++t) {
    const double e0 = 0.05 + 0.95 * rng.uniform();
    const double e1 = 0.05 + 0.95 * rng.uniform();
    const double lam = hermitian_eig(phi_j_epsilon({e0, e1})).values.back();
    const double closed = 0.5 * (e0 + e1 + std::sqrt(e0 * e0 - e0 * e1 + e1 * e1));
    REQUIRE(lam == Catch::Approx(closed).margin(1e-10));
  }

  REQUIRE_THROWS_AS(phi_j_epsilon({}), std::invalid_argument);
  REQUIRE_THROWS_AS(phi_j_epsilon({0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("see-saw supremum meets the comparison matrix for two rows", "[gallery]") {
  RandomStream rng(109);
  SeesawConfig cfg;
  cfg.restarts = 120;
  cfg.max_iters = 400;
  for (int t = 0; t < 3; ++t) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform() * 3.0);
    std::vector<double> eps;
    for (std::size_t al = 0; al <= r; ++al) eps.push_back(0.1 + 0.9 * rng.uniform());
    PhiFamilySpec spec{0.0, 2, 2 + r, eps};
    // With a = 0 the form is minus the loss part; its supremum over unit
    // product pairs is the positivity threshold.
    const GramForm g = choi_to_gram(phi_family_map(spec));
    GramForm loss(g.dims, cplx(-1.0, 0.0) * g.W);
    const double sup = positivity_threshold_sup(loss, cfg).value;
    const double lam = hermitian_eig(phi_j_epsilon(eps)).values.back();
    REQUIRE(sup == Catch::Approx(lam).margin(1e-6));
  }
}

// ------------------------------- cyclic diagonal-compression map ------------

TEST_CASE("the cyclic map has the stated blocks and traces", "[gallery]") {
  const LinearMapRep tau = tau41();
  REQUIRE(tau.dims == (BipartiteDims{4, 4}));
  ComplexMatrix expect(4, 4);
  expect(0, 0) = 2.0;
  expect(1, 1) = 1.0;
  REQUIRE(max_abs(tau.block(0, 0) - expect) == 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      ComplexMatrix off(4, 4);
      off(i, j) = -1.0;
      REQUIRE(max_abs(tau.block(i, j) - off) == 0.0);
    }
  REQUIRE(max_abs(apply_map(tau, ComplexMatrix::identity(4)) -
                  cplx(3.0, 0.0) * ComplexMatrix::identity(4)) == 0.0);

  // Neither PSD route applies: the map is positive but not decomposable.
  REQUIRE(min_eigenvalue(hermitize(tau.choi)) < -0.1);
  REQUIRE(min_eigenvalue(hermitize(partial_transpose_second(tau.choi, tau.dims))) < -0.1);
}

TEST_CASE("positivity evidence for the cyclic map", "[gallery]") {
  SeesawConfig cfg;
  cfg.restarts = 40;
  cfg.max_iters = 300;
  const Tau41PositivityReport rep = tau41_positivity_suite(cfg);
  REQUIRE(rep.seesaw.value >= -1e-9);
  REQUIRE(rep.u_sum_max <= 1.0 + 1e-12);
  REQUIRE(rep.identity_max_abs_diff <= 1e-9);
  REQUIRE(rep.identity_min_value >= -1e-9);
  REQUIRE(rep.passed);
}

TEST_CASE("real restriction of the cyclic map escapes bilinear squares", "[gallery]") {
  const Tau41ObstructionReport rep = tau41_real_sos_obstruction();
  REQUIRE(rep.zeros_exact);
  REQUIRE(rep.constraint_rows == 24);
  REQUIRE(rep.coefficient_dim == 16);
  REQUIRE(rep.nullspace_dim == 3);
  REQUIRE(rep.span_distance <= 1e-9);
  REQUIRE(rep.unreachable_residual >= 0.5);
  REQUIRE(rep.passed);
}

TEST_CASE("witness search separates the cyclic map's form", "[gallery]") {
  const GramForm g = choi_to_gram(tau41());
  WitnessSearchConfig cfg;
  cfg.iters = 1200;
  cfg.dykstra_iters = 16;
  cfg.polish_iters = 40;
  auto wit = witness_search(g, cfg);
  REQUIRE(wit.has_value());
  REQUIRE(wit->trace_value < -1e-6);
  REQUIRE(verify_indecomposability(g, *wit));
}

// ------------------------------- unextendible product families --------------

TEST_CASE("the five-tile family is orthonormal and unextendible", "[gallery]") {
  const UpbFamily family = tiles_upb();
  REQUIRE_NOTHROW(validate_upb_family(family));

  std::vector<CVec> joint;
  for (const ProductPair& pr : family.vectors) joint.push_back(kron_vec(pr.x, pr.y));
  for (std::size_t i = 0; i < joint.size(); ++i)
    for (std::size_t j = 0; j < joint.size(); ++j) {
      const cplx ip = vdot(joint[i], joint[j]);
      REQUIRE(std::abs(ip - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-12);
    }

  ComplexMatrix p(9, 9);
  for (const CVec& z : joint) p += outer(z, z);
  REQUIRE(max_abs(p * p - p) < 1e-12);
  REQUIRE(numerical_rank(p) == 5);
  const ComplexMatrix ppt = partial_transpose_second(p, family.dims);
  REQUIRE(max_abs(ppt * ppt - ppt) < 1e-12);
}

TEST_CASE("the five-tile family yields a verified witness", "[gallery]") {
  SeesawConfig cfg;
  cfg.restarts = 60;
  cfg.max_iters = 400;
  const UpbWitnessResult res = upb_witness(tiles_upb(), std::nullopt, cfg);
  REQUIRE(res.delta > 1e-3);
  REQUIRE(res.eps == 0.5 * res.delta);
  REQUIRE(res.witness.trace_value == Catch::Approx(-4.0 * res.eps).margin(1e-12));
  REQUIRE(verify_indecomposability(res.form, res.witness));

  REQUIRE_THROWS_AS(upb_witness(tiles_upb(), 10.0, cfg), std::invalid_argument);
  REQUIRE_THROWS_AS(upb_witness(tiles_upb(), -1.0, cfg), std::invalid_argument);
}

TEST_CASE("degenerate product families are rejected", "[gallery]") {
  SeesawConfig cfg;
  cfg.restarts = 20;

  // The full computational product basis spans everything.
  UpbFamily full;
  full.dims = BipartiteDims{2, 2};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      CVec x(2, cplx(0.0, 0.0)), y(2, cplx(0.0, 0.0));
      x[i] = 1.0;
      y[k] = 1.0;
      full.vectors.push_back(ProductPair{x, y});
    }
  REQUIRE_THROWS_AS(upb_witness(full, std::nullopt, cfg), std::invalid_argument);

  // A single product vector is extendible.
  UpbFamily single;
  single.dims = BipartiteDims{2, 2};
  single.vectors.push_back(ProductPair{CVec{1.0, 0.0}, CVec{1.0, 0.0}});
  REQUIRE_THROWS_AS(upb_witness(single, std::nullopt, cfg), std::invalid_argument);

  // Orthogonality and normalization failures throw in validation.
  UpbFamily dup = single;
  dup.vectors.push_back(ProductPair{CVec{1.0, 0.0}, CVec{1.0, 0.0}});
  REQUIRE_THROWS_AS(validate_upb_family(dup), std::invalid_argument);
  UpbFamily unnorm;
  unnorm.dims = BipartiteDims{2, 2};
  unnorm.vectors.push_back(ProductPair{CVec{2.0, 0.0}, CVec{1.0, 0.0}});
  REQUIRE_THROWS_AS(validate_upb_family(unnorm), std::invalid_argument);
}
