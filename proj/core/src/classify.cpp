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

#include "qentropy/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "qentropy/error.hpp"
#include "qentropy/numeric.hpp"

namespace qentropy {

namespace {

constexpr double kValueTol = 1e-12;
constexpr std::uint64_t kLimitStream = ~0ULL;

ProbVec maybe_degenerate(SimplexSampler& s, std::size_t dim, double rate) {
  return s.bernoulli(rate) ? s.sample_degenerate(dim) : s.sample(dim);
}

// Larger residual wins; ties go to the larger input hash so the choice does
// not depend on evaluation order.
bool worse_than(const ResidualReport& x, const ResidualReport& y) noexcept {
  return std::make_tuple(x.rel_residual, x.input_hash()) > std::make_tuple(y.rel_residual, y.input_hash());
}

void require_finite(const ResidualReport& r) {
  if (!std::isfinite(r.lhs) || !std::isfinite(r.rhs)) {
    throw Error(ErrorCode::NonFiniteValue, r.functional.name() + " gave a non-finite " +
                                               r.identity_name + " side at q = " + std::to_string(r.q()));
  }
}

std::vector<double> grid_without_one(std::span<const double> grid) {
  std::vector<double> out;
  for (double q : grid) {
    if (q != 1.0) out.push_back(q);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "q grid has no point other than 1");
  return out;
}

void check_limit_condition(const EntropyFunctional& f, std::uint64_t seed, const ClassifyOptions& opt) {
  SimplexSampler sampler = SimplexSampler(seed).fork(kLimitStream);
  for (std::size_t k = 0; k < opt.limit_probes; ++k) {
    const ProbVec p = sampler.sample(sampler.uniform_index(opt.sampling.dim_min, opt.sampling.dim_max));
    const LimitReport report = limit_check(f, p, opt.limit);
    if (!report.converged(opt.limit)) {
      throw Error(ErrorCode::LimitConditionFailed,
                  f.name() + " tends to " + std::to_string(report.estimate) + " instead of Shannon " +
                      std::to_string(report.target) + " as q -> 1");
    }
  }
}

}  // namespace

std::string_view to_string(ClassLabel label) noexcept {
  switch (label) {
    case ClassLabel::class1: return "class1";
    case ClassLabel::class2: return "class2";
    case ClassLabel::class3: return "class3";
    case ClassLabel::neither: return "neither";
    case ClassLabel::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::optional<ClassLabel> parse_class_label(std::string_view s) noexcept {
  for (auto l : {ClassLabel::class1, ClassLabel::class2, ClassLabel::class3, ClassLabel::neither,
                 ClassLabel::inconclusive}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

Verdict IdentityTally::overall() const noexcept {
  if (failed > 0) return Verdict::fail;
  if (quarantined > 0) return Verdict::inconclusive;
  return Verdict::pass;
}

void IdentityTally::add(const ResidualReport& report, const Thresholds& t) {
  switch (report.verdict(t)) {
    case Verdict::pass: ++passed; break;
    case Verdict::fail: ++failed; break;
    case Verdict::inconclusive: ++quarantined; break;
  }
  if (!worst || worse_than(report, *worst)) worst = report;
}

ClassLabel label_for(const IdentityTally& shannon, const IdentityTally& pseudo) noexcept {
  const Verdict s = shannon.overall();
  const Verdict p = pseudo.overall();
  if (s == Verdict::pass && p == Verdict::pass) return ClassLabel::class1;
  if (s == Verdict::pass && p == Verdict::fail) return ClassLabel::class2;
  if (s == Verdict::fail && p == Verdict::pass) return ClassLabel::class3;
  if (s == Verdict::fail && p == Verdict::fail) return ClassLabel::neither;
  return ClassLabel::inconclusive;
}

SampleDraw draw_sample(std::uint64_t seed, std::uint64_t index, std::span<const double> q_grid,
                       const SamplingOptions& opt) {
  if (q_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty q grid");
  if (opt.dim_min < 1 || opt.dim_max < opt.dim_min || opt.block_min < 1 ||
      opt.block_max < opt.block_min) {
    throw Error(ErrorCode::InvalidArgument, "invalid sampling dimension ranges");
  }
  SimplexSampler s = SimplexSampler(seed).fork(index);
  const double q = q_grid[s.uniform_index(0, q_grid.size() - 1)];

  const ProbVec marginal =
      maybe_degenerate(s, s.uniform_index(opt.dim_min, opt.dim_max), opt.degenerate_rate);
  std::vector<std::optional<ProbVec>> blocks;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    const ProbVec cond =
        maybe_degenerate(s, s.uniform_index(opt.block_min, opt.block_max), opt.degenerate_rate);
    // Zero-mass blocks sometimes carry no conditional at all.
    if (marginal[i] == 0.0 && s.bernoulli(0.5)) {
      blocks.emplace_back(std::nullopt);
    } else {
      blocks.emplace_back(cond);
    }
  }
  Refinement refinement = make_refinement(marginal, std::move(blocks));

  const ProbVec a = maybe_degenerate(s, s.uniform_index(opt.dim_min, opt.dim_max), opt.degenerate_rate);
  const ProbVec b = maybe_degenerate(s, s.uniform_index(opt.dim_min, opt.dim_max), opt.degenerate_rate);
  return SampleDraw{q, std::move(refinement), product(a, b)};
}

ClassReport classify(const EntropyFunctional& f, Form form, std::size_t samples, std::uint64_t seed,
                     const ClassifyOptions& opt) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "classification needs at least one sample");
  if (opt.check_limit && f.kind() != Kind::shannon) check_limit_condition(f, seed, opt);

  ClassReport report;
  report.functional = f;
  report.form = form;
  report.samples = samples;
  report.seed = seed;
  report.q_grid = opt.q_grid;
  report.thresholds = opt.thresholds;

  const Identity shannon_identity = Identity::shannon;
  for (std::size_t i = 0; i < samples; ++i) {
    const SampleDraw draw = draw_sample(seed, i, opt.q_grid, opt.sampling);
    const EntropyFunctional fq = f.at(draw.q);
    const ResidualReport sh = evaluate_identity(fq, shannon_identity, form, draw.refinement);
    const ResidualReport ps = pseudo_residual(fq, draw.product, form);
    require_finite(sh);
    require_finite(ps);
    report.shannon.add(sh, opt.thresholds);
    report.pseudo.add(ps, opt.thresholds);
    for (const auto* r : {&sh, &ps}) {
      if (r->verdict(opt.thresholds) == Verdict::fail) report.witnesses.push_back(*r);
    }
    // Keep the witness list bounded while sampling.
    if (report.witnesses.size() > 4 * opt.max_witnesses + 8) {
      std::sort(report.witnesses.begin(), report.witnesses.end(), worse_than);
      report.witnesses.resize(opt.max_witnesses);
    }
  }
  std::sort(report.witnesses.begin(), report.witnesses.end(), worse_than);
  if (report.witnesses.size() > opt.max_witnesses) report.witnesses.resize(opt.max_witnesses);
  report.label = label_for(report.shannon, report.pseudo);
  return report;
}

SearchResult find_counterexample(const EntropyFunctional& f, Identity identity, Form form,
                                 std::uint64_t seed, std::size_t budget, const Thresholds& t,
                                 const SamplingOptions& sampling) {
  if (budget == 0) throw Error(ErrorCode::InvalidArgument, "search budget must be >= 1");
  SearchResult result;
  const double grid[] = {f.q()};
  for (std::size_t k = 0; k < budget; ++k) {
    ++result.tried;
    std::optional<ResidualReport> report;
    if (k == 0) {
      const ProbVec half = ProbVec::uniform(2);
      if (identity == Identity::shannon) {
        report = evaluate_identity(f, identity, form,
                                   make_refinement(half, std::vector<ProbVec>{ProbVec::uniform(1), half}));
      } else {
        report = evaluate_identity(f, identity, form, product(half, half));
      }
    } else {
      const SampleDraw draw = draw_sample(seed, k - 1, grid, sampling);
      report = identity == Identity::shannon
                   ? evaluate_identity(f, identity, form, draw.refinement)
                   : evaluate_identity(f, identity, form, draw.product);
    }
    if (report->verdict(t) == Verdict::fail) {
      result.witness = std::move(report);
      break;
    }
  }
  return result;
}

double class1_implied_value(const ProbVec& a, QParam q, Form form) {
  if (q.value() == 1.0) {
    throw Error(ErrorCode::InvalidQ, "the elimination is vacuous at q = 1");
  }
  // Coefficients are formed in extended precision with the stored mass in
  // place of 1, so the cancellation in 1 - sum a^q costs no digits near q = 1.
  std::vector<long double> powers;
  std::vector<long double> masses;
  for (const double ai : a.probs()) {
    if (ai == 0.0) continue;
    masses.push_back(ai);
    powers.push_back(std::pow(static_cast<long double>(ai), static_cast<long double>(q.value())));
  }
  const long double mass = ordered_sum(std::move(masses));
  const long double s = ordered_sum(std::move(powers));
  const long double ql = q.value();
  // The eliminated relation is linear in the unknown: coef * x + constant = 0.
  long double coef = 0.0L;
  long double constant = 0.0L;
  if (form == Form::original) {
    // S(B) [ (1 - q) S(A) + 1 - sum a^q ] = 0 with S(B) != 0.
    coef = 1.0L - ql;
    constant = mass - s;
  } else {
    if (a.is_degenerate()) {
      throw Error(ErrorCode::DegenerateInput, "normalized elimination needs a non-degenerate system");
    }
    // S(A) [ s (q - 1) S(B) + s - 1 ] = 0 with S(A) != 0, solved for S(B).
    coef = s * (ql - 1.0L);
    constant = s - mass;
  }
  const double x = static_cast<double>(-constant / coef);
  return x == 0.0 ? 0.0 : x;
}

UniquenessReport uniqueness_check(Form form, std::uint64_t seed, std::size_t samples,
                                  const ClassifyOptions& opt) {
  UniquenessReport report;
  report.samples = samples;
  const std::vector<double> grid = grid_without_one(opt.q_grid);
  const auto& so = opt.sampling;
  const double degenerate_rate = form == Form::original ? so.degenerate_rate : 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    SimplexSampler s = SimplexSampler(seed).fork(i);
    const double q = grid[s.uniform_index(0, grid.size() - 1)];
    const ProbVec a = maybe_degenerate(s, s.uniform_index(so.dim_min, so.dim_max), degenerate_rate);
    const ProbVec b = s.sample(s.uniform_index(std::max<std::size_t>(so.dim_min, 2), so.dim_max));

    const double implied = class1_implied_value(a, QParam(q), form);
    const auto family = form == Form::original ? EntropyFunctional::tsallis(q)
                                               : EntropyFunctional::normalized_tsallis(q);
    const double closed = family(a);
    const double mismatch = std::fabs(implied - closed) / (1.0 + std::fabs(closed));
    if (mismatch >= report.max_value_mismatch) {
      report.max_value_mismatch = mismatch;
      report.worst_q = q;
      report.worst_a = a;
    }
    const ProductSystem ab = product(a, b);
    report.max_pseudo_residual =
        std::max(report.max_pseudo_residual, pseudo_residual(family, ab, form).rel_residual);
    report.max_reduced_residual =
        std::max(report.max_reduced_residual, reduced_shannon_rhs(family, ab, form).rel_residual);
  }
  report.passed = samples > 0 && report.max_value_mismatch <= kValueTol &&
                  report.max_pseudo_residual <= opt.thresholds.pass_tol &&
                  report.max_reduced_residual <= opt.thresholds.pass_tol;
  return report;
}

EliminationMismatch elimination_mismatch(const EntropyFunctional& f, Form form, std::uint64_t seed,
                                         std::size_t samples, const ClassifyOptions& opt) {
  EliminationMismatch out;
  const std::vector<double> grid = grid_without_one(opt.q_grid);
  const auto& so = opt.sampling;
  for (std::size_t i = 0; i < samples; ++i) {
    SimplexSampler s = SimplexSampler(seed).fork(i);
    const double q = grid[s.uniform_index(0, grid.size() - 1)];
    const ProbVec a = s.sample(s.uniform_index(std::max<std::size_t>(so.dim_min, 2), so.dim_max));
    const double implied = class1_implied_value(a, QParam(q), form);
    const double mismatch = std::fabs(f.at(q)(a) - implied) / (1.0 + std::fabs(implied));
    if (mismatch >= out.max_mismatch) {
      out.max_mismatch = mismatch;
      out.worst_q = q;
      out.worst_a = a;
    }
  }
  return out;
}

}  // namespace qentropy
