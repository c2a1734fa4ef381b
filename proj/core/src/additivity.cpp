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

#include "qentropy/additivity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qentropy/error.hpp"
#include "qentropy/numeric.hpp"

namespace qentropy {

namespace {

ResidualReport make_report(double lhs, double rhs, std::string name, Identity identity, Form form,
                           const EntropyFunctional& f, System system) {
  ResidualReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.residual = lhs - rhs;
  report.rel_residual = rel_residual(lhs, rhs);
  report.identity_name = std::move(name);
  report.identity = identity;
  report.form = form;
  report.functional = f;
  report.system = std::move(system);
  return report;
}

// sum p^q over the stored entries; shannon has q = 1 and the sum is 1.
double weight_sum(const EntropyFunctional& f, std::span<const double> values) {
  std::vector<double> terms;
  terms.reserve(values.size());
  const double w = f.weight_exponent();
  for (double v : values) {
    if (v > 0.0) terms.push_back(std::pow(v, w));
  }
  return ordered_sum(std::move(terms));
}

double weight_sum(const EntropyFunctional& f, const ProbVec& p) {
  return weight_sum(f, p.probs());
}

}  // namespace

std::string_view to_string(Form form) noexcept {
  return form == Form::original ? "original" : "normalized";
}

std::string_view to_string(Identity identity) noexcept {
  switch (identity) {
    case Identity::shannon: return "shannon";
    case Identity::pseudo: return "pseudo";
    case Identity::reduced: return "reduced";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::optional<Form> parse_form(std::string_view s) noexcept {
  if (s == "original") return Form::original;
  if (s == "normalized") return Form::normalized;
  return std::nullopt;
}

std::optional<Identity> parse_identity(std::string_view s) noexcept {
  if (s == "shannon") return Identity::shannon;
  if (s == "pseudo") return Identity::pseudo;
  if (s == "reduced") return Identity::reduced;
  return std::nullopt;
}

Verdict Thresholds::judge(double rel) const noexcept {
  if (!std::isfinite(rel)) return Verdict::fail;
  if (rel <= pass_tol) return Verdict::pass;
  if (rel > fail_tol) return Verdict::fail;
  return Verdict::inconclusive;
}

double rel_residual(double lhs, double rhs) noexcept {
  return std::fabs(lhs - rhs) / (1.0 + std::max(std::fabs(lhs), std::fabs(rhs)));
}

std::uint64_t ResidualReport::input_hash() const noexcept {
  return std::visit([](const auto& s) { return content_hash(s.joint().probs()); }, system);
}

ResidualReport shannon_additivity_residual(const EntropyFunctional& f, const Refinement& r) {
  const double lhs = f(r.joint());
  std::vector<double> terms{f(r.marginal())};
  const double w = f.weight_exponent();
  for (std::size_t i = 0; i < r.blocks(); ++i) {
    const double pi = r.marginal()[i];
    if (pi == 0.0) continue;
    const auto& cond = r.conditionals()[i];
    if (!cond) {
      throw Error(ErrorCode::UndefinedConditional,
                  "block " + std::to_string(i) + " has non-zero mass but no conditional");
    }
    terms.push_back(std::pow(pi, w) * f(*cond));
  }
  return make_report(lhs, compensated_sum(terms), "shannon_additivity", Identity::shannon,
                     Form::original, f, r);
}

ResidualReport n_shannon_additivity_residual(const EntropyFunctional& f, const Refinement& r) {
  const double lhs = weight_sum(f, r.joint()) * f(r.joint());
  std::vector<double> terms{weight_sum(f, r.marginal()) * f(r.marginal())};
  for (std::size_t i = 0; i < r.blocks(); ++i) {
    if (r.marginal()[i] == 0.0) continue;
    const auto& cond = r.conditionals()[i];
    if (!cond) {
      throw Error(ErrorCode::UndefinedConditional,
                  "block " + std::to_string(i) + " has non-zero mass but no conditional");
    }
    terms.push_back(weight_sum(f, r.joint_block(i)) * f(*cond));
  }
  return make_report(lhs, compensated_sum(terms), "n_shannon_additivity", Identity::shannon,
                     Form::normalized, f, r);
}

ResidualReport pseudo_residual(const EntropyFunctional& f, const ProductSystem& s, Form form) {
  const double q = f.weight_exponent();
  const double c = form == Form::original ? 1.0 - q : q - 1.0;
  const double fa = f(s.a());
  const double fb = f(s.b());
  const double lhs = f(s.joint());
  const double parts[] = {fa, fb, c * fa * fb};
  return make_report(lhs, compensated_sum(parts),
                     form == Form::original ? "pseudoadditivity" : "n_pseudoadditivity",
                     Identity::pseudo, form, f, s);
}

ResidualReport reduced_shannon_rhs(const EntropyFunctional& f, const ProductSystem& s, Form form) {
  const double fa = f(s.a());
  const double fb = f(s.b());
  const double fj = f(s.joint());
  if (form == Form::original) {
    return make_report(fj, fa + weight_sum(f, s.a()) * fb, "reduced_shannon_additivity",
                       Identity::reduced, form, f, s);
  }
  const double wb = weight_sum(f, s.b());
  return make_report(wb * fj, fa + wb * fb, "n_reduced_shannon_additivity", Identity::reduced,
                     form, f, s);
}

ResidualReport evaluate_identity(const EntropyFunctional& f, Identity identity, Form form,
                                 const System& system) {
  if (identity == Identity::shannon) {
    const Refinement r = std::holds_alternative<Refinement>(system)
                             ? std::get<Refinement>(system)
                             : std::get<ProductSystem>(system).as_refinement();
    return form == Form::original ? shannon_additivity_residual(f, r)
                                  : n_shannon_additivity_residual(f, r);
  }
  const auto* s = std::get_if<ProductSystem>(&system);
  if (!s) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(identity)) + " identity needs a product system");
  }
  return identity == Identity::pseudo ? pseudo_residual(f, *s, form)
                                      : reduced_shannon_rhs(f, *s, form);
}

}  // namespace qentropy
