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

#include "qentropy/limits.hpp"

#include <cmath>

#include "qentropy/error.hpp"

namespace qentropy {

double LimitReport::two_sided_gap() const noexcept {
  return std::fabs(left_extrapolant - right_extrapolant);
}

LimitReport limit_check(const EntropyFunctional& family, const ProbVec& p,
                        const LimitOptions& options) {
  if (options.steps < 1 || !(options.h0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "limit check needs h0 > 0 and at least two points per side");
  }
  LimitReport report;
  report.functional = family;
  report.p = p;
  report.target = shannon(p);

  const auto offsets = [&] {
    std::vector<double> h;
    for (int k = 0; k <= options.steps; ++k) h.push_back(std::ldexp(options.h0, -k));
    return h;
  }();
  report.q_min_offset = offsets.back();

  auto eval_at = [&](double q) {
    const double v = family.at(q)(p);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFiniteValue,
                  family.name() + " is not finite at q = " + std::to_string(q));
    }
    report.q_sequence.push_back(q);
    report.values.push_back(v);
    return v;
  };

  std::vector<double> left, right;
  for (double h : offsets) left.push_back(eval_at(1.0 - h));
  for (double h : offsets) right.push_back(eval_at(1.0 + h));

  // Halving the offset: f(h) = L + a h + O(h^2) gives L ~ 2 f(h) - f(2h).
  const std::size_t fine = offsets.size() - 1;
  report.left_extrapolant = 2.0 * left[fine] - left[fine - 1];
  report.right_extrapolant = 2.0 * right[fine] - right[fine - 1];
  report.estimate = 0.5 * (report.left_extrapolant + report.right_extrapolant);
  report.error = std::fabs(report.estimate - report.target);
  return report;
}

}  // namespace qentropy
