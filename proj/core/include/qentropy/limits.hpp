// Copyright 2026 The qentropy Authors
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

#include <string>
#include <vector>

#include "qentropy/entropies.hpp"
#include "qentropy/probsys.hpp"

namespace qentropy {

/// Approach points are q = 1 -/+ h0 * 2^-k for k = 0..steps. The smallest
/// offset must stay outside kQBranch so the direct formulas are exercised.
struct LimitOptions {
  double h0 = 1e-2;
  int steps = 10;
  double tolerance = 1e-8;      // |estimate - shannon(p)|
  double two_sided_tol = 1e-7;  // |left extrapolant - right extrapolant|
};

struct LimitReport {
  EntropyFunctional functional = EntropyFunctional::shannon();
  ProbVec p = ProbVec::uniform(1);
  double estimate = 0.0;
  double target = 0.0;  // shannon(p)
  double error = 0.0;   // |estimate - target|
  double left_extrapolant = 0.0;
  double right_extrapolant = 0.0;
  double q_min_offset = 0.0;
  std::vector<double> q_sequence;  // left points (descending offset), then right
  std::vector<double> values;      // functional value at each q_sequence entry
  bool extrapolated = true;

  bool converged(const LimitOptions& opt = {}) const noexcept {
    return error <= opt.tolerance && two_sided_gap() <= opt.two_sided_tol;
  }
  double two_sided_gap() const noexcept;
};

/// Numerical q -> 1 limit of `family` at `p`: one Richardson step per side on
/// the two finest approach points, averaged across sides. Throws
/// NonFiniteValue if any approach value is not finite.
LimitReport limit_check(const EntropyFunctional& family, const ProbVec& p,
                        const LimitOptions& options = {});

}  // namespace qentropy
