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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace qentropy {

class Refinement;
class ProductSystem;

inline constexpr double kDefaultSumTol = 1e-12;

/// A finite probability distribution: non-negative entries summing to one.
///
/// Construction validates and re-normalizes, so every instance sits on the
/// simplex to within a few ulps regardless of how the input was rounded.
class ProbVec {
 public:
  /// Validating constructor. With `normalize` set the values are divided by
  /// their sum; otherwise the sum must already be within `sum_tol` of 1.
  static ProbVec make(std::span<const double> values, bool normalize,
                      double sum_tol = kDefaultSumTol);

  static ProbVec uniform(std::size_t n);
  /// One-hot distribution with all mass on `index`.
  static ProbVec degenerate(std::size_t n, std::size_t index = 0);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// True when a single entry carries all the mass.
  bool is_degenerate() const noexcept;

  friend bool operator==(const ProbVec&, const ProbVec&) = default;

 private:
  friend class Refinement;
  friend class ProductSystem;
  friend Refinement make_refinement(const ProbVec&, std::vector<std::optional<ProbVec>>);
  friend ProductSystem product(const ProbVec&, const ProbVec&);

  explicit ProbVec(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

ProbVec make_probvec(std::span<const double> values, bool normalize,
                     double sum_tol = kDefaultSumTol);
inline ProbVec make_probvec(std::initializer_list<double> values, bool normalize = false,
                            double sum_tol = kDefaultSumTol) {
  return make_probvec(std::span<const double>(values.begin(), values.size()), normalize, sum_tol);
}

/// Two-level system: each coarse outcome i splits into m_i fine outcomes with
/// joint[i][j] = marginal[i] * conditional[i][j]. The joint is stored flat in
/// row-major order with recorded block offsets.
///
/// A marginal entry of exactly zero may carry no conditional (std::nullopt);
/// its block then has length zero. A present conditional on a zero marginal
/// is kept, and its joint block is all zeros.
class Refinement {
 public:
  const ProbVec& marginal() const noexcept { return marginal_; }
  const std::vector<std::optional<ProbVec>>& conditionals() const noexcept {
    return conditionals_;
  }
  const ProbVec& joint() const noexcept { return joint_; }

  std::size_t blocks() const noexcept { return marginal_.size(); }
  std::size_t block_offset(std::size_t i) const { return offsets_[i]; }
  std::size_t block_size(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  std::span<const double> joint_block(std::size_t i) const {
    return joint_.probs().subspan(offsets_[i], block_size(i));
  }

  friend bool operator==(const Refinement&, const Refinement&) = default;

 private:
  friend Refinement make_refinement(const ProbVec&, std::vector<std::optional<ProbVec>>);
  Refinement(ProbVec marginal, std::vector<std::optional<ProbVec>> conditionals,
             ProbVec joint, std::vector<std::size_t> offsets)
      : marginal_(std::move(marginal)),
        conditionals_(std::move(conditionals)),
        joint_(std::move(joint)),
        offsets_(std::move(offsets)) {}

  ProbVec marginal_;
  std::vector<std::optional<ProbVec>> conditionals_;
  ProbVec joint_;
  std::vector<std::size_t> offsets_;
};

/// Throws DimensionMismatch when the block count differs from the marginal
/// dimension, UndefinedConditional when a non-zero marginal has no block.
Refinement make_refinement(const ProbVec& marginal,
                           std::vector<std::optional<ProbVec>> conditionals);
Refinement make_refinement(const ProbVec& marginal, const std::vector<ProbVec>& conditionals);

/// Joint distribution of two independent systems, joint[i*m + j] = a[i]*b[j].
class ProductSystem {
 public:
  const ProbVec& a() const noexcept { return a_; }
  const ProbVec& b() const noexcept { return b_; }
  const ProbVec& joint() const noexcept { return joint_; }

  /// The same joint viewed as a refinement of `a` with every block equal to `b`.
  Refinement as_refinement() const;

  friend bool operator==(const ProductSystem&, const ProductSystem&) = default;

 private:
  friend ProductSystem product(const ProbVec&, const ProbVec&);
  ProductSystem(ProbVec a, ProbVec b, ProbVec joint)
      : a_(std::move(a)), b_(std::move(b)), joint_(std::move(joint)) {}

  ProbVec a_;
  ProbVec b_;
  ProbVec joint_;
};

ProductSystem product(const ProbVec& a, const ProbVec& b);

/// Seeded generator of points on the simplex.
///
/// Draws use the raw mt19937_64 stream (whose output sequence is fixed by the
/// standard) and hand-rolled transforms, so samples are bit-reproducible
/// across standard library implementations.
class SimplexSampler {
 public:
  explicit SimplexSampler(std::uint64_t seed, double min_mass = 0.0);

  std::uint64_t seed() const noexcept { return seed_; }
  double min_mass() const noexcept { return min_mass_; }

  /// Flat Dirichlet draw: normalized exponential spacings. Entries are
  /// floored at min_mass when it is positive.
  ProbVec sample(std::size_t dim);
  ProbVec sample_degenerate(std::size_t dim);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in (0, 1], never zero.
  double uniform01();
  /// Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);
  bool bernoulli(double p) { return uniform01() <= p; }

  /// Independent sampler for worker `stream`, seeded by a splitmix64 mix of
  /// this sampler's seed.
  SimplexSampler fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  double min_mass_;
  std::mt19937_64 engine_;
};

ProbVec sample_simplex(SimplexSampler& sampler, std::size_t dim);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a over the bit patterns of the entries; used for deterministic
/// tie-breaking and canonical ordering of reports.
std::uint64_t content_hash(std::span<const double> values) noexcept;

}  // namespace qentropy
