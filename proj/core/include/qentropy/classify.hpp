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
#include <string_view>
#include <vector>

#include "qentropy/additivity.hpp"
#include "qentropy/entropies.hpp"
#include "qentropy/limits.hpp"
#include "qentropy/probsys.hpp"

namespace qentropy {

enum class ClassLabel { class1, class2, class3, neither, inconclusive };

std::string_view to_string(ClassLabel label) noexcept;
std::optional<ClassLabel> parse_class_label(std::string_view s) noexcept;

/// How random systems are drawn for classification and counterexample search.
struct SamplingOptions {
  std::size_t dim_min = 2;
  std::size_t dim_max = 6;
  std::size_t block_min = 1;
  std::size_t block_max = 4;
  double degenerate_rate = 0.05;
};

struct ClassifyOptions {
  std::vector<double> q_grid{default_q_grid().begin(), default_q_grid().end()};
  Thresholds thresholds;
  SamplingOptions sampling;
  std::size_t max_witnesses = 8;
  /// Verify the q -> 1 limit on `limit_probes` sampled distributions first.
  bool check_limit = true;
  std::size_t limit_probes = 8;
  LimitOptions limit;
};

/// Per-identity outcome over all samples of a classification run.
struct IdentityTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t quarantined = 0;
  std::optional<ResidualReport> worst;

  /// fail if any sample failed; pass if all passed; inconclusive otherwise.
  Verdict overall() const noexcept;
  void add(const ResidualReport& report, const Thresholds& t);
};

struct ClassReport {
  ClassLabel label = ClassLabel::inconclusive;
  EntropyFunctional functional = EntropyFunctional::shannon();
  Form form = Form::original;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> q_grid;
  Thresholds thresholds;
  IdentityTally shannon;
  IdentityTally pseudo;
  /// Failing residuals, largest first, at most ClassifyOptions::max_witnesses.
  std::vector<ResidualReport> witnesses;
};

/// One random draw: a q from the grid, a refinement, and a product system.
struct SampleDraw {
  double q;
  Refinement refinement;
  ProductSystem product;
};

/// Draw number `index` of the stream seeded by `seed`. Each index uses its own
/// forked sampler, so draws can be computed in any order.
SampleDraw draw_sample(std::uint64_t seed, std::uint64_t index, std::span<const double> q_grid,
                       const SamplingOptions& options = {});

/// Label from the two tallies. A failing witness is decisive for its identity
/// even when other samples of that identity were quarantined.
ClassLabel label_for(const IdentityTally& shannon, const IdentityTally& pseudo) noexcept;

/// Randomized classification of the family `f` (its q is swept over the grid).
/// Throws LimitConditionFailed when the family does not tend to Shannon as
/// q -> 1, NonFiniteValue when any residual is not finite.
ClassReport classify(const EntropyFunctional& f, Form form, std::size_t samples, std::uint64_t seed,
                     const ClassifyOptions& options = {});

struct SearchResult {
  std::optional<ResidualReport> witness;
  std::size_t tried = 0;
};

/// Budgeted search for a violation of `identity` at f's own q. The first
/// candidate is a fixed probe (uniform 2x2 product, or [0.5,0.5] refined by
/// [[1],[0.5,0.5]]); the rest are random draws.
SearchResult find_counterexample(const EntropyFunctional& f, Identity identity, Form form,
                                 std::uint64_t seed, std::size_t budget,
                                 const Thresholds& thresholds = {},
                                 const SamplingOptions& sampling = {});

/// The value forced on `a` by eliminating the joint entropy between the
/// pseudoadditivity and the reduced refinement identity. Throws InvalidQ at
/// q == 1 and DegenerateInput for a degenerate `a` in the normalized form.
double class1_implied_value(const ProbVec& a, QParam q, Form form);

struct UniquenessReport {
  bool passed = false;
  std::size_t samples = 0;
  double max_value_mismatch = 0.0;  // relative, implied vs closed form
  double max_pseudo_residual = 0.0;
  double max_reduced_residual = 0.0;
  double worst_q = 0.0;
  std::optional<ProbVec> worst_a;
};

/// Checks class1_implied_value against the Tsallis form of `form` within
/// 1e-12 relative, and that the closed form satisfies both identities of the
/// elimination simultaneously (rel residual <= pass_tol) against a
/// non-degenerate partner.
UniquenessReport uniqueness_check(Form form, std::uint64_t seed, std::size_t samples,
                                  const ClassifyOptions& options = {});

struct EliminationMismatch {
  double max_mismatch = 0.0;  // |F(a) - implied| / (1 + |implied|)
  double worst_q = 0.0;
  std::optional<ProbVec> worst_a;
};

/// Largest disagreement between the family `f` and the value the elimination
/// forces, over sampled (a, q), q != 1.
EliminationMismatch elimination_mismatch(const EntropyFunctional& f, Form form, std::uint64_t seed,
                                         std::size_t samples, const ClassifyOptions& options = {});

}  // namespace qentropy
