// Copyright 2026 The wgqed Authors
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

#include "wgqed/model.hpp"

#include <doctest.h>

#include <cmath>

namespace wgqed::testing {

// J=6, omega10 = 2100, alpha = 100, gamma10 = 1, x = 0.
inline TransmonSpec canonical() { return TransmonSpec{}; }

inline TransmonSpec two_level() {
  TransmonSpec t;
  t.levels = 2;
  return t;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace wgqed::testing
