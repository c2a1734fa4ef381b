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

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "qentropy/additivity.hpp"
#include "qentropy/classify.hpp"
#include "qentropy/error.hpp"

namespace qentropy {
namespace {

const PhiFunction kPhi = PhiFunction::paper_example();

Refinement canonical_refinement() {
  return make_refinement(ProbVec::uniform(2), std::vector<ProbVec>{ProbVec::uniform(1), ProbVec::uniform(2)});
}

ProductSystem uniform_pair() { return product(ProbVec::uniform(2), ProbVec::uniform(2)); }

TEST(ShannonAdditivity, Examples) {
  const auto r = canonical_refinement();
  EXPECT_LE(shannon_additivity_residual(EntropyFunctional::tsallis(2), r).rel_residual, 1e-12);
  EXPECT_LE(shannon_additivity_residual(EntropyFunctional::class2(2, kPhi), r).rel_residual, 1e-12);
  const auto c3 = shannon_additivity_residual(EntropyFunctional::class3(2), r);
  EXPECT_GT(c3.rel_residual, 1e-4);
  // 40-digit reference values.
  EXPECT_NEAR(c3.lhs, 0.6464466094067262378, 1e-15);
  EXPECT_NEAR(c3.rhs, 0.625, 1e-15);
  EXPECT_EQ(c3.identity_name, "shannon_additivity");
  EXPECT_EQ(c3.verdict(), Verdict::fail);
}

TEST(NShannonAdditivity, Examples) {
  SimplexSampler s(21);
  for (int k = 0; k < 50; ++k) {
    const auto draw = draw_sample(s.next_u64(), 0, std::vector<double>{2.0});
    EXPECT_LE(n_shannon_additivity_residual(EntropyFunctional::normalized_tsallis(2), draw.refinement).rel_residual,
              1e-12);
    EXPECT_LE(n_shannon_additivity_residual(EntropyFunctional::n_class2(2, kPhi), draw.refinement).rel_residual,
              1e-12);
  }
  const auto nc3 = n_shannon_additivity_residual(EntropyFunctional::n_class3(2), canonical_refinement());
  EXPECT_GT(nc3.rel_residual, 1e-4);
  EXPECT_NEAR(nc3.lhs, 0.57090290622280608189, 1e-15);
  EXPECT_NEAR(nc3.rhs, 0.625, 1e-15);
}

TEST(PseudoResidual, Examples) {
  const auto t = pseudo_residual(EntropyFunctional::tsallis(2), uniform_pair(), Form::original);
  EXPECT_DOUBLE_EQ(t.lhs, 0.75);
  EXPECT_DOUBLE_EQ(t.rhs, 0.75);
  EXPECT_EQ(t.residual, 0.0);

  const auto c2 = pseudo_residual(EntropyFunctional::class2(2, kPhi), uniform_pair(), Form::original);
  EXPECT_NEAR(c2.lhs, 0.3, 1e-15);
  EXPECT_NEAR(c2.rhs, 0.36, 1e-15);
  EXPECT_NEAR(c2.residual, -0.06, 1e-12);

  SimplexSampler s(4);
  for (int k = 0; k < 100; ++k) {
    const auto sys = product(s.sample(s.uniform_index(2, 6)), s.sample(s.uniform_index(2, 6)));
    EXPECT_LE(pseudo_residual(EntropyFunctional::class3(2), sys, Form::original).rel_residual, 1e-12);
    EXPECT_LE(pseudo_residual(EntropyFunctional::n_class3(2), sys, Form::normalized).rel_residual, 1e-12);
  }
}

TEST(ReducedShannon, Examples) {
  const auto t = reduced_shannon_rhs(EntropyFunctional::tsallis(2), uniform_pair(), Form::original);
  EXPECT_DOUBLE_EQ(t.lhs, 0.75);
  EXPECT_DOUBLE_EQ(t.rhs, 0.5 + 0.5 * 0.5);
  EXPECT_EQ(t.residual, 0.0);

  const auto sys = product(make_probvec({0.1, 0.9}), make_probvec({0.3, 0.3, 0.4}));
  const auto sh = reduced_shannon_rhs(EntropyFunctional::shannon(), sys, Form::original);
  EXPECT_LE(sh.rel_residual, 1e-15);
  EXPECT_NEAR(sh.rhs, shannon(sys.a()) + shannon(sys.b()), 1e-15);

  SimplexSampler s(6);
  for (int k = 0; k < 100; ++k) {
    const auto ab = product(s.sample(s.uniform_index(2, 6)), s.sample(s.uniform_index(2, 6)));
    EXPECT_LE(reduced_shannon_rhs(EntropyFunctional::normalized_tsallis(2), ab, Form::normalized).rel_residual,
              1e-12);
  }
}

TEST(ReducedShannon, AgreesWithFullIdentityOnProducts) {
  SimplexSampler s(13);
  const auto grid = default_q_grid();
  for (int k = 0; k < 300; ++k) {
    const auto ab = product(s.sample(s.uniform_index(2, 6)), s.sample(s.uniform_index(2, 6)));
    const double q = grid[s.uniform_index(0, grid.size() - 1)];
    for (const auto& f : {EntropyFunctional::tsallis(q), EntropyFunctional::class2(q, kPhi),
                          EntropyFunctional::class3(q), EntropyFunctional::n_class3(q)}) {
      const auto full = shannon_additivity_residual(f, ab.as_refinement());
      const auto reduced = reduced_shannon_rhs(f, ab, Form::original);
      EXPECT_NEAR(full.residual, reduced.residual, 1e-13 * (1 + std::fabs(full.lhs))) << f.name() << " q=" << q;
      // Normalized refinement residual is the reduced one scaled by sum a^q.
      const auto nfull = n_shannon_additivity_residual(f, ab.as_refinement());
      const auto nreduced = reduced_shannon_rhs(f, ab, Form::normalized);
      const double scale = power_sum(ab.a(), q);
      EXPECT_NEAR(nfull.residual, scale * nreduced.residual, 1e-12 * (1 + std::fabs(nfull.lhs)))
          << f.name() << " q=" << q;
    }
  }
}

// Long-double brute force of the refinement identity for the Tsallis entropy.
TEST(ShannonAdditivity, MatchesBruteForceOracle) {
  SimplexSampler s(99);
  for (int k = 0; k < 100; ++k) {
    const auto draw = draw_sample(s.next_u64(), 0, default_q_grid());
    const auto& r = draw.refinement;
    const long double q = draw.q;
    const auto joint = oracle::to_long({r.joint().probs().begin(), r.joint().probs().end()});
    const auto marg = oracle::to_long({r.marginal().probs().begin(), r.marginal().probs().end()});
    long double rhs = oracle::tsallis(q, marg);
    for (std::size_t i = 0; i < r.blocks(); ++i) {
      if (marg[i] == 0.0L) continue;
      const auto& c = *r.conditionals()[i];
      rhs += std::pow(marg[i], q) * oracle::tsallis(q, oracle::to_long({c.probs().begin(), c.probs().end()}));
    }
    const auto report = shannon_additivity_residual(EntropyFunctional::tsallis(draw.q), r);
    const double lhs = static_cast<double>(oracle::tsallis(q, joint));
    EXPECT_NEAR(report.lhs, lhs, 1e-12 * (1 + std::fabs(lhs)));
    EXPECT_NEAR(report.rhs, static_cast<double>(rhs), 1e-12 * (1 + std::fabs(lhs)));
  }
}

class AdditivityGrid : public ::testing::TestWithParam<double> {};

TEST_P(AdditivityGrid, ClassMembershipHoldsOnSamples) {
  const double q = GetParam();
  double worst_t = 0, worst_nt = 0, worst_c2 = 0, worst_nc2 = 0, worst_c3 = 0, worst_nc3 = 0;
  double best_c2_fail = 0, best_c3_fail = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const double grid[] = {q};
    const auto d = draw_sample(1234, i, grid);
    const auto t = EntropyFunctional::tsallis(q);
    const auto nt = EntropyFunctional::normalized_tsallis(q);
    worst_t = std::max({worst_t, shannon_additivity_residual(t, d.refinement).rel_residual,
                        pseudo_residual(t, d.product, Form::original).rel_residual});
    worst_nt = std::max({worst_nt, n_shannon_additivity_residual(nt, d.refinement).rel_residual,
                         pseudo_residual(nt, d.product, Form::normalized).rel_residual});
    worst_c2 = std::max(worst_c2, shannon_additivity_residual(EntropyFunctional::class2(q, kPhi), d.refinement).rel_residual);
    worst_nc2 = std::max(worst_nc2,
                         n_shannon_additivity_residual(EntropyFunctional::n_class2(q, kPhi), d.refinement).rel_residual);
    worst_c3 = std::max(worst_c3, pseudo_residual(EntropyFunctional::class3(q), d.product, Form::original).rel_residual);
    worst_nc3 = std::max(worst_nc3,
                         pseudo_residual(EntropyFunctional::n_class3(q), d.product, Form::normalized).rel_residual);
    best_c2_fail = std::max(best_c2_fail,
                            pseudo_residual(EntropyFunctional::class2(q, kPhi), d.product, Form::original).rel_residual);
    best_c3_fail = std::max(best_c3_fail,
                            shannon_additivity_residual(EntropyFunctional::class3(q), d.refinement).rel_residual);
  }
  EXPECT_LE(worst_t, 1e-11);
  EXPECT_LE(worst_nt, 1e-11);
  EXPECT_LE(worst_c2, 1e-11);
  EXPECT_LE(worst_nc2, 1e-11);
  EXPECT_LE(worst_c3, 1e-11);
  EXPECT_LE(worst_nc3, 1e-11);
  // Away from q = 1 the violations are large; next to it they shrink with |q - 1|.
  if (std::fabs(q - 1.0) > 0.05) {
    EXPECT_GT(best_c2_fail, 1e-4);
    EXPECT_GT(best_c3_fail, 1e-4);
  } else {
    EXPECT_GT(best_c2_fail, 1e-13);
    EXPECT_GT(best_c3_fail, 1e-13);
  }
}

INSTANTIATE_TEST_SUITE_P(DefaultGrid, AdditivityGrid, ::testing::ValuesIn(default_q_grid().begin(), default_q_grid().end()));

TEST(Additivity, CollapseToStandardAdditivityAtQOne) {
  SimplexSampler s(1);
  for (int k = 0; k < 100; ++k) {
    const auto ab = product(s.sample(s.uniform_index(2, 6)), s.sample(s.uniform_index(2, 6)));
    const double standard = shannon(ab.a()) + shannon(ab.b());
    for (const auto& f0 : {EntropyFunctional::shannon(), EntropyFunctional::tsallis(2),
                           EntropyFunctional::normalized_tsallis(2), EntropyFunctional::class2(2, kPhi),
                           EntropyFunctional::class3(2), EntropyFunctional::n_class2(2, kPhi),
                           EntropyFunctional::n_class3(2)}) {
      const auto f = f0.at(1.0);
      for (Form form : {Form::original, Form::normalized}) {
        for (Identity id : {Identity::shannon, Identity::pseudo, Identity::reduced}) {
          const auto r = evaluate_identity(f, id, form, ab);
          EXPECT_LE(r.rel_residual, 1e-12) << f.name() << " " << r.identity_name;
          EXPECT_NEAR(r.rhs, standard, 1e-12 * (1 + standard)) << f.name() << " " << r.identity_name;
        }
      }
    }
  }
}

TEST(Additivity, ZeroMarginalBlocksAreSkipped) {
  const auto r = make_refinement(make_probvec({0.0, 0.4, 0.6}),
                                 {std::nullopt, std::optional<ProbVec>(make_probvec({0.2, 0.8})),
                                  std::optional<ProbVec>(ProbVec::uniform(3))});
  for (double q : default_q_grid()) {
    EXPECT_LE(shannon_additivity_residual(EntropyFunctional::tsallis(q), r).rel_residual, 1e-12);
    EXPECT_LE(n_shannon_additivity_residual(EntropyFunctional::normalized_tsallis(q), r).rel_residual, 1e-12);
  }
}

TEST(Additivity, ThresholdsAndDispatch) {
  const Thresholds t;
  EXPECT_EQ(t.judge(0.0), Verdict::pass);
  EXPECT_EQ(t.judge(1e-11), Verdict::pass);
  EXPECT_EQ(t.judge(1e-8), Verdict::inconclusive);
  EXPECT_EQ(t.judge(1e-4), Verdict::inconclusive);
  EXPECT_EQ(t.judge(2e-4), Verdict::fail);
  EXPECT_EQ(t.judge(NAN), Verdict::fail);
  EXPECT_THROW(evaluate_identity(EntropyFunctional::tsallis(2), Identity::pseudo, Form::original,
                                 canonical_refinement()),
               Error);
  const auto via_product = evaluate_identity(EntropyFunctional::tsallis(2), Identity::shannon, Form::original, uniform_pair());
  EXPECT_EQ(via_product.lhs, 0.75);
  EXPECT_DOUBLE_EQ(rel_residual(3.0, 1.0), 2.0 / 4.0);
}

}  // namespace
}  // namespace qentropy
