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

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace qentropy {

/// Neumaier-compensated sum of `terms` in the order given.
template <class T>
T compensated_sum(std::span<const T> terms) noexcept {
  T sum = 0;
  T carry = 0;
  for (T t : terms) {
    const T next = sum + t;
    if (std::fabs(sum) >= std::fabs(t)) {
      carry += (sum - next) + t;
    } else {
      carry += (t - next) + sum;
    }
    sum = next;
  }
  return sum + carry;
}

/// Sorts ascending, then sums with compensation. The result depends only on
/// the multiset of terms, so any permutation of the input gives the same bits.
template <class T>
T ordered_sum(std::vector<T> terms) noexcept {
  std::sort(terms.begin(), terms.end());
  return compensated_sum(std::span<const T>(terms));
}

inline double compensated_sum(std::span<const double> terms) noexcept {
  return compensated_sum<double>(terms);
}

}  // namespace qentropy
