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

#ifndef CHOIPOLY_CHOIPOLY_HPP_
#define CHOIPOLY_CHOIPOLY_HPP_

#include "choipoly/eig.hpp"
#include "choipoly/forms.hpp"
#include "choipoly/gallery.hpp"
#include "choipoly/json_io.hpp"
#include "choipoly/maps.hpp"
#include "choipoly/matrix.hpp"
#include "choipoly/optimize.hpp"

#endif  // CHOIPOLY_CHOIPOLY_HPP_
