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

#include "qentropy/probsys.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "qentropy/error.hpp"
#include "qentropy/numeric.hpp"

namespace qentropy {

ProbVec ProbVec::make(std::span<const double> values, bool normalize, double sum_tol) {
  if (values.empty()) {
    throw Error(ErrorCode::ZeroVector, "probability vector has no entries");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::NonFiniteValue, "entry " + std::to_string(i) + " is not finite");
    }
    if (values[i] < 0.0) {
      throw Error(ErrorCode::NegativeEntry,
                  "entry " + std::to_string(i) + " is negative: " + std::to_string(values[i]));
    }
  }
  // Sorted accumulation makes the normalizer independent of entry order.
  const double sum = ordered_sum(std::vector<double>(values.begin(), values.end()));
  if (sum <= 0.0) {
    throw Error(ErrorCode::ZeroVector, "probability vector has no positive entry");
  }
  if (!normalize && std::fabs(sum - 1.0) > sum_tol) {
    throw Error(ErrorCode::NotNormalized, "entries sum to " + std::to_string(sum));
  }
  std::vector<double> probs(values.begin(), values.end());
  if (sum != 1.0) {
    for (double& p : probs) p /= sum;
    // Fold the rounding residue into the largest entry so the stored sum is exactly 1.
    const auto largest = std::max_element(probs.begin(), probs.end());
    for (int pass = 0; pass < 4; ++pass) {
      const double s = ordered_sum(probs);
      if (s == 1.0) break;
      *largest += 1.0 - s;
    }
  }
  return ProbVec(std::move(probs));
}

ProbVec ProbVec::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "uniform distribution needs n >= 1");
  return ProbVec(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVec ProbVec::degenerate(std::size_t n, std::size_t index) {
  if (index >= n) throw Error(ErrorCode::InvalidArgument, "degenerate index out of range");
  std::vector<double> probs(n, 0.0);
  probs[index] = 1.0;
  return ProbVec(std::move(probs));
}

bool ProbVec::is_degenerate() const noexcept {
  return std::any_of(probs_.begin(), probs_.end(), [](double p) { return p == 1.0; });
}

ProbVec make_probvec(std::span<const double> values, bool normalize, double sum_tol) {
  return ProbVec::make(values, normalize, sum_tol);
}

Refinement make_refinement(const ProbVec& marginal,
                           std::vector<std::optional<ProbVec>> conditionals) {
  if (conditionals.size() != marginal.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "marginal has " + std::to_string(marginal.size()) + " entries but " +
                    std::to_string(conditionals.size()) + " conditional blocks were given");
  }
  std::vector<double> joint;
  std::vector<std::size_t> offsets{0};
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    const auto& block = conditionals[i];
    if (!block) {
      if (marginal[i] != 0.0) {
        throw Error(ErrorCode::UndefinedConditional,
                    "marginal entry " + std::to_string(i) + " is non-zero but has no conditional");
      }
      offsets.push_back(joint.size());
      continue;
    }
    for (double c : block->probs()) joint.push_back(marginal[i] * c);
    offsets.push_back(joint.size());
  }
  return Refinement(marginal, std::move(conditionals), ProbVec(std::move(joint)),
                    std::move(offsets));
}

Refinement make_refinement(const ProbVec& marginal, const std::vector<ProbVec>& conditionals) {
  return make_refinement(marginal,
                         std::vector<std::optional<ProbVec>>(conditionals.begin(), conditionals.end()));
}

Refinement ProductSystem::as_refinement() const {
  return make_refinement(a_, std::vector<ProbVec>(a_.size(), b_));
}

ProductSystem product(const ProbVec& a, const ProbVec& b) {
  std::vector<double> joint;
  joint.reserve(a.size() * b.size());
  for (double pa : a.probs()) {
    for (double pb : b.probs()) joint.push_back(pa * pb);
  }
  return ProductSystem(a, b, ProbVec(std::move(joint)));
}

SimplexSampler::SimplexSampler(std::uint64_t seed, double min_mass)
    : seed_(seed), min_mass_(min_mass), engine_(seed) {
  if (!(min_mass >= 0.0) || min_mass >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "min_mass must lie in [0, 1)");
  }
}

double SimplexSampler::uniform01() {
  // 53 random mantissa bits, offset by half a step so 0 is never produced.
  const auto bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::size_t SimplexSampler::uniform_index(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty index range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

ProbVec SimplexSampler::sample(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "simplex dimension must be >= 1");
  if (min_mass_ * static_cast<double>(dim) >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "min_mass too large for dimension " + std::to_string(dim));
  }
  if (dim == 1) return ProbVec::uniform(1);
  std::vector<double> spacings(dim);
  for (double& e : spacings) e = -std::log(uniform01());
  const double total = compensated_sum(spacings);
  const double scale = 1.0 - min_mass_ * static_cast<double>(dim);
  for (double& e : spacings) e = min_mass_ + scale * (e / total);
  return ProbVec::make(spacings, true);
}

ProbVec SimplexSampler::sample_degenerate(std::size_t dim) {
  return ProbVec::degenerate(dim, uniform_index(0, dim - 1));
}

SimplexSampler SimplexSampler::fork(std::uint64_t stream) const {
  return SimplexSampler(splitmix64(seed_ ^ splitmix64(stream + 1)), min_mass_);
}

ProbVec sample_simplex(SimplexSampler& sampler, std::size_t dim) { return sampler.sample(dim); }

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t content_hash(std::span<const double> values) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    for (int k = 0; k < 8; ++k) {
      h ^= (bits >> (8 * k)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace qentropy
