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

#ifndef CHOIPOLY_JSON_IO_HPP_
#define CHOIPOLY_JSON_IO_HPP_

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "choipoly/forms.hpp"
#include "choipoly/maps.hpp"
#include "choipoly/matrix.hpp"

namespace choipoly {

// Insertion order is preserved, so writers fix the key order and repeated
// runs with identical inputs produce byte-identical documents.
using Json = nlohmann::ordered_json;

namespace jsondetail {

inline const Json& require_key(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

inline std::size_t require_size(const Json& j, const char* key, const char* what) {
  const Json& v = require_key(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() > 0))
    throw std::invalid_argument(std::string(what) + ": \"" + key +
                                "\" must be a positive integer");
  const long long n = v.get<long long>();
  if (n <= 0)
    throw std::invalid_argument(std::string(what) + ": \"" + key +
                                "\" must be a positive integer");
  return static_cast<std::size_t>(n);
}

inline double require_number(const Json& j, const char* what) {
  if (!j.is_number())
    throw std::invalid_argument(std::string(what) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string(what) + ": entry is not finite");
  return x;
}

inline std::string require_kind(const Json& j, const char* what) {
  const Json& v = require_key(j, "kind", what);
  if (!v.is_string())
    throw std::invalid_argument(std::string(what) + ": \"kind\" must be a string");
  return v.get<std::string>();
}

}  // namespace jsondetail

// Matrix document: {"rows": R, "cols": C, "data": [[re, im], ...]} with the
// entries row-major. Complex values are always two-element arrays, even when
// the imaginary part vanishes.
inline Json matrix_to_json(const ComplexMatrix& a) {
  Json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  Json data = Json::array();
  for (const cplx& v : a.entries()) data.push_back(Json::array({v.real(), v.imag()}));
  j["data"] = std::move(data);
  return j;
}

inline ComplexMatrix matrix_from_json(const Json& j, const char* what = "matrix") {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
  const std::size_t rows = jsondetail::require_size(j, "rows", what);
  const std::size_t cols = jsondetail::require_size(j, "cols", what);
  const Json& data = jsondetail::require_key(j, "data", what);
  if (!data.is_array() || data.size() != rows * cols)
    throw std::invalid_argument(std::string(what) + ": \"data\" must be an array of " +
                                std::to_string(rows * cols) + " complex entries");
  ComplexMatrix a(rows, cols);
  std::size_t t = 0;
  for (const Json& e : data) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument(std::string(what) +
                                  ": complex entries must be [re, im] pairs");
    const double re = jsondetail::require_number(e[0], what);
    const double im = jsondetail::require_number(e[1], what);
    a(t / cols, t % cols) = cplx(re, im);
    ++t;
  }
  return a;
}

// Form document: {"kind": "form", "m": m, "n": n, "W": <matrix>} with W of
// size mn x mn in the paired row-major index order.
inline Json form_to_json(const GramForm& g) {
  Json j;
  j["kind"] = "form";
  j["m"] = g.dims.m;
  j["n"] = g.dims.n;
  j["W"] = matrix_to_json(g.W);
  return j;
}

inline GramForm form_from_json(const Json& j) {
  const char* what = "form";
  if (!j.is_object()) throw std::invalid_argument("form: expected an object");
  if (jsondetail::require_kind(j, what) != "form")
    throw std::invalid_argument("form: \"kind\" must be \"form\"");
  BipartiteDims dims{jsondetail::require_size(j, "m", what),
                     jsondetail::require_size(j, "n", what)};
  ComplexMatrix w = matrix_from_json(jsondetail::require_key(j, "W", what), "form W");
  require_bipartite_order(w, dims, "form W");
  return GramForm(dims, std::move(w));
}

// Map document: {"kind": "map", "m": m, "n": n, "choi": <matrix>}.
inline Json map_to_json(const LinearMapRep& rep) {
  Json j;
  j["kind"] = "map";
  j["m"] = rep.dims.m;
  j["n"] = rep.dims.n;
  j["choi"] = matrix_to_json(rep.choi);
  return j;
}

inline LinearMapRep map_from_json(const Json& j) {
  const char* what = "map";
  if (!j.is_object()) throw std::invalid_argument("map: expected an object");
  if (jsondetail::require_kind(j, what) != "map")
    throw std::invalid_argument("map: \"kind\" must be \"map\"");
  BipartiteDims dims{jsondetail::require_size(j, "m", what),
                     jsondetail::require_size(j, "n", what)};
  ComplexMatrix c = matrix_from_json(jsondetail::require_key(j, "choi", what), "map choi");
  require_bipartite_order(c, dims, "map choi");
  LinearMapRep rep;
  rep.dims = dims;
  rep.choi = std::move(c);
  return rep;
}

// Certificate documents. A decomposability certificate carries the two PSD
// Gram factors; an indecomposability witness carries the doubly PSD matrix
// and the negative pairing value it achieves.
//   {"kind": "decomposable", "m": m, "n": n, "Q": <matrix>, "R": <matrix>}
//   {"kind": "indecomposable-witness", "m": m, "n": n, "M": <matrix>,
//    "trace_value": t}
inline Json cert_to_json(const DecomposabilityCert& c) {
  Json j;
  j["kind"] = "decomposable";
  j["m"] = c.dims.m;
  j["n"] = c.dims.n;
  j["Q"] = matrix_to_json(c.Q);
  j["R"] = matrix_to_json(c.R);
  return j;
}

inline Json witness_to_json(const IndecomposabilityWitness& w) {
  Json j;
  j["kind"] = "indecomposable-witness";
  j["m"] = w.dims.m;
  j["n"] = w.dims.n;
  j["M"] = matrix_to_json(w.M);
  j["trace_value"] = w.trace_value;
  return j;
}

using CertificateVariant = std::variant<DecomposabilityCert, IndecomposabilityWitness>;

inline CertificateVariant cert_from_json(const Json& j) {
  const char* what = "certificate";
  if (!j.is_object()) throw std::invalid_argument("certificate: expected an object");
  const std::string kind = jsondetail::require_kind(j, what);
  if (kind == "decomposable") {
    BipartiteDims dims{jsondetail::require_size(j, "m", what),
                       jsondetail::require_size(j, "n", what)};
    ComplexMatrix q = matrix_from_json(jsondetail::require_key(j, "Q", what), "certificate Q");
    ComplexMatrix r = matrix_from_json(jsondetail::require_key(j, "R", what), "certificate R");
    require_bipartite_order(q, dims, "certificate Q");
    require_bipartite_order(r, dims, "certificate R");
    DecomposabilityCert c;
    c.dims = dims;
    c.Q = std::move(q);
    c.R = std::move(r);
    return c;
  }
  if (kind == "indecomposable-witness") {
    BipartiteDims dims{jsondetail::require_size(j, "m", what),
                       jsondetail::require_size(j, "n", what)};
    ComplexMatrix m = matrix_from_json(jsondetail::require_key(j, "M", what), "certificate M");
    require_bipartite_order(m, dims, "certificate M");
    IndecomposabilityWitness w;
    w.dims = dims;
    w.M = std::move(m);
    w.trace_value =
        jsondetail::require_number(jsondetail::require_key(j, "trace_value", what), what);
    return w;
  }
  throw std::invalid_argument("certificate: unknown kind \"" + kind + "\"");
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::invalid_argument("write failed: " + path);
}

}  // namespace choipoly

#endif  // CHOIPOLY_JSON_IO_HPP_
