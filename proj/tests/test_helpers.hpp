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

#ifndef CHOIPOLY_TESTS_TEST_HELPERS_HPP_
#define CHOIPOLY_TESTS_TEST_HELPERS_HPP_

#include <cstddef>

#include "choipoly/choipoly.hpp"

namespace testutil {

inline choipoly::cplx random_entry(choipoly::RandomStream& rng) {
  return choipoly::cplx(rng.normal(), rng.normal());
}

inline choipoly::CVec random_cvec(choipoly::RandomStream& rng, std::size_t dim) {
  choipoly::CVec v(dim);
  for (auto& c : v) c = random_entry(rng);
  return v;
}

inline choipoly::ComplexMatrix random_matrix(choipoly::RandomStream& rng, std::size_t rows,
                                             std::size_t cols) {
  choipoly::ComplexMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = random_entry(rng);
  return a;
}

inline choipoly::ComplexMatrix random_hermitian(choipoly::RandomStream& rng, std::size_t n) {
  return choipoly::hermitize(random_matrix(rng, n, n));
}

// PSD with numerical rank min(n, k).
inline choipoly::ComplexMatrix random_psd(choipoly::RandomStream& rng, std::size_t n,
                                          std::size_t k) {
  const choipoly::ComplexMatrix a = random_matrix(rng, n, k);
  return choipoly::hermitize(a * choipoly::adjoint(a));
}

inline choipoly::CVec basis_cvec(std::size_t dim, std::size_t idx) {
  choipoly::CVec e(dim, choipoly::cplx(0.0, 0.0));
  e[idx] = 1.0;
  return e;
}

}  // namespace testutil

#endif  // CHOIPOLY_TESTS_TEST_HELPERS_HPP_
