// Copyright 2026 The tcorr Authors
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

#pragma once

#include <doctest.h>

#include "tcorr/qcore.hpp"

namespace tcorr::test {

inline Operator mat2(Complex a, Complex b, Complex c, Complex d) {
  Operator m(2, 2);
  m << a, b, c, d;
  return m;
}

inline StateVector ket(Complex a, Complex b) {
  StateVector v(2);
  v << a, b;
  return v;
}

#define CHECK_OP_NEAR(a, b, tol) CHECK(::tcorr::max_abs_diff((a), (b)) < (tol))
#define CHECK_COMPLEX_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) < (tol))

}  // namespace tcorr::test
