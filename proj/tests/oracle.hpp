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

// Independent reference evaluations for the tests. Everything here works in
// long double, straight from the defining quotients, with plain left-to-right
// loops and no branch handling near q = 1. None of it calls into the library.

#include <cmath>
#include <vector>

namespace oracle {

using Vec = std::vector<long double>;

inline long double power_sum(const Vec& p, long double e) {
  long double s = 0.0L;
  for (long double x : p) {
    if (x > 0.0L) s += std::pow(x, e);
  }
  return s;
}

inline long double shannon(const Vec& p) {
  long double s = 0.0L;
  for (long double x : p) {
    if (x > 0.0L) s -= x * std::log(x);
  }
  return s;
}

inline long double phi_example(long double q) { return (q - 1.0L) * (q * q + 1.0L) / 2.0L; }

inline long double tsallis(long double q, const Vec& p) { return (1.0L - power_sum(p, q)) / (q - 1.0L); }

inline long double normalized_tsallis(long double q, const Vec& p) {
  return (1.0L - power_sum(p, q)) / ((q - 1.0L) * power_sum(p, q));
}

inline long double class2(long double q, const Vec& p) {
  return (1.0L - power_sum(p, q)) / phi_example(q);
}

inline long double n_class2(long double q, const Vec& p) {
  return (1.0L - power_sum(p, q)) / (phi_example(q) * power_sum(p, q));
}

inline long double class3(long double q, const Vec& p) {
  return (power_sum(p, q + 1.0L / q - 1.0L) - power_sum(p, 1.0L / q)) /
         ((1.0L - q) * power_sum(p, 1.0L / q));
}

inline long double n_class3(long double q, const Vec& p) {
  const long double lo = (q * q + 1.0L) / 2.0L;
  return (power_sum(p, (q * q - 2.0L * q + 3.0L) / 2.0L) - power_sum(p, lo)) /
         ((q - 1.0L) * power_sum(p, lo));
}

inline Vec outer(const Vec& a, const Vec& b) {
  Vec out;
  for (long double x : a) {
    for (long double y : b) out.push_back(x * y);
  }
  return out;
}

/// Central difference of f at x with step h.
template <class F>
long double central_difference(F f, long double x, long double h) {
  return (f(x + h) - f(x - h)) / (2.0L * h);
}

inline Vec to_long(const std::vector<double>& v) { return Vec(v.begin(), v.end()); }

}  // namespace oracle
