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

#include <cstdio>
#include <filesystem>
#include <string>
#include <variant>

#include <catch2/catch_amalgamated.hpp>

#include "choipoly/choipoly.hpp"
#include "test_helpers.hpp"

using namespace choipoly;
using testutil::random_hermitian;
using testutil::random_matrix;

TEST_CASE("matrices round-trip bitwise through JSON", "[json]") {
  RandomStream rng(211);
  const ComplexMatrix a = random_matrix(rng, 3, 5);
  const Json j = matrix_to_json(a);
  const ComplexMatrix back = matrix_from_json(j);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 5);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 5; ++c) REQUIRE(back(r, c) == a(r, c));

  // Serialization text also round-trips bitwise.
  const ComplexMatrix reparsed = matrix_from_json(Json::parse(j.dump()));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 5; ++c) REQUIRE(reparsed(r, c) == a(r, c));
}

TEST_CASE("real entries still serialize as pairs", "[json]") {
  ComplexMatrix a(1, 2);
  a(0, 0) = 1.5;
  a(0, 1) = cplx(0.0, -2.0);
  const Json j = matrix_to_json(a);
  REQUIRE(j["data"].size() == 2);
  REQUIRE(j["data"][0].is_array());
  REQUIRE(j["data"][0].size() == 2);
  REQUIRE(j["data"][0][0].get<double>() == 1.5);
  REQUIRE(j["data"][0][1].get<double>() == 0.0);
  REQUIRE(j["data"][1][1].get<double>() == -2.0);
}

TEST_CASE("malformed matrix documents are rejected", "[json]") {
  Json ok = matrix_to_json(ComplexMatrix::identity(2));

  Json short_data = ok;
  short_data["data"].erase(3);
  REQUIRE_THROWS_AS(matrix_from_json(short_data), std::invalid_argument);

  Json zero_rows = ok;
  zero_rows["rows"] = 0;
  REQUIRE_THROWS_AS(matrix_from_json(zero_rows), std::invalid_argument);

  Json missing = ok;
  missing.erase("cols");
  REQUIRE_THROWS_AS(matrix_from_json(missing), std::invalid_argument);

  Json bad_entry = ok;
  bad_entry["data"][0] = "one";
  REQUIRE_THROWS_AS(matrix_from_json(bad_entry), std::invalid_argument);

  Json bad_pair = ok;
  bad_pair["data"][0] = Json::array({1.0});
  REQUIRE_THROWS_AS(matrix_from_json(bad_pair), std::invalid_argument);

  Json non_number = ok;
  non_number["data"][0] = Json::array({1.0, "x"});
  REQUIRE_THROWS_AS(matrix_from_json(non_number), std::invalid_argument);
}

TEST_CASE("forms and maps round-trip with their kinds enforced", "[json]") {
  RandomStream rng(223);
  const BipartiteDims dims{2, 3};
  const GramForm g(dims, random_hermitian(rng, 6));
  const GramForm g2 = form_from_json(form_to_json(g));
  REQUIRE(g2.dims == dims);
  REQUIRE(max_abs(g2.W - g.W) == 0.0);

  LinearMapRep phi;
  phi.dims = dims;
  phi.choi = random_matrix(rng, 6, 6);
  const LinearMapRep phi2 = map_from_json(map_to_json(phi));
  REQUIRE(phi2.dims == dims);
  REQUIRE(max_abs(phi2.choi - phi.choi) == 0.0);

  REQUIRE_THROWS_AS(form_from_json(map_to_json(phi)), std::invalid_argument);
  REQUIRE_THROWS_AS(map_from_json(form_to_json(g)), std::invalid_argument);

  Json wrong_size = form_to_json(g);
  wrong_size["m"] = 3;
  REQUIRE_THROWS_AS(form_from_json(wrong_size), std::invalid_argument);
}

TEST_CASE("certificates round-trip through the tagged document", "[json]") {
  RandomStream rng(227);
  const BipartiteDims dims{2, 2};
  DecomposabilityCert cert{dims, random_hermitian(rng, 4), random_hermitian(rng, 4)};
  const CertificateVariant v = cert_from_json(cert_to_json(cert));
  REQUIRE(std::holds_alternative<DecomposabilityCert>(v));
  const auto& c2 = std::get<DecomposabilityCert>(v);
  REQUIRE(c2.dims == dims);
  REQUIRE(max_abs(c2.Q - cert.Q) == 0.0);
  REQUIRE(max_abs(c2.R - cert.R) == 0.0);

  IndecomposabilityWitness wit{dims, random_hermitian(rng, 4), -0.125};
  const CertificateVariant w = cert_from_json(witness_to_json(wit));
  REQUIRE(std::holds_alternative<IndecomposabilityWitness>(w));
  const auto& w2 = std::get<IndecomposabilityWitness>(w);
  REQUIRE(w2.trace_value == -0.125);
  REQUIRE(max_abs(w2.M - wit.M) == 0.0);

  // Unknown and mismatched kinds are rejected.
  Json unknown = cert_to_json(cert);
  unknown["kind"] = "mystery";
  REQUIRE_THROWS_AS(cert_from_json(unknown), std::invalid_argument);
  REQUIRE_THROWS_AS(cert_from_json(form_to_json(GramForm(dims, ComplexMatrix::identity(4)))),
                    std::invalid_argument);
}

TEST_CASE("documents survive a trip through the filesystem", "[json]") {
  RandomStream rng(229);
  const GramForm g(BipartiteDims{2, 2}, random_hermitian(rng, 4));
  const auto dir = std::filesystem::temp_directory_path() / "choipoly_json_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "form.json").string();
  write_json_file(path, form_to_json(g));
  const GramForm g2 = form_from_json(load_json_file(path));
  REQUIRE(max_abs(g2.W - g.W) == 0.0);
  std::filesystem::remove_all(dir);

  REQUIRE_THROWS_AS(load_json_file((dir / "absent.json").string()), std::invalid_argument);
}

TEST_CASE("serialization is deterministic", "[json]") {
  RandomStream rng1(233), rng2(233);
  const GramForm a(BipartiteDims{2, 2}, random_hermitian(rng1, 4));
  const GramForm b(BipartiteDims{2, 2}, random_hermitian(rng2, 4));
  REQUIRE(form_to_json(a).dump(2) == form_to_json(b).dump(2));
}
