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

#include "qentropy/entropies.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "qentropy/error.hpp"
#include "qentropy/numeric.hpp"

namespace qentropy {

namespace {

constexpr std::array<double, 9> kDefaultGrid{0.1, 0.5, 0.9, 0.999, 1.001, 1.5, 2.0, 3.0, 5.0};

constexpr std::array<Kind, 7> kPaperKinds{Kind::shannon, Kind::tsallis, Kind::normalized_tsallis,
                                          Kind::class2,  Kind::class3,  Kind::n_class2,
                                          Kind::n_class3};

constexpr double kPhiDiffStep = 1e-6;

// Folds -0.0 into +0.0 so degenerate inputs print as plain zero.
double unsigned_zero(double v) noexcept { return v == 0.0 ? 0.0 : v; }

bool use_stable(double q, EvalMode mode) noexcept {
  switch (mode) {
    case EvalMode::direct: return false;
    case EvalMode::stable: return true;
    case EvalMode::automatic: return std::fabs(q - 1.0) < kQBranch;
  }
  return false;
}

// Power sums feeding the direct quotients are accumulated in extended
// precision: near q = 1 the numerator cancels to O(|q - 1|) and binary64
// rounding of the individual powers would dominate it.
long double extended_power_sum(const ProbVec& p, long double exponent) {
  std::vector<long double> terms;
  terms.reserve(p.size());
  for (double pi : p.probs()) {
    if (pi > 0.0) terms.push_back(std::pow(static_cast<long double>(pi), exponent));
  }
  return ordered_sum(std::move(terms));
}

// 1 - sum p^q, either directly or as -sum p * expm1((q-1) ln p). The direct
// form uses the stored total mass for the 1: stored vectors miss unit mass by
// rounding, and dividing that miss by q - 1 would swamp the result near q = 1.
double one_minus_power_sum(double q, const ProbVec& p, bool stable) {
  if (!stable) return static_cast<double>(extended_power_sum(p, 1.0L) - extended_power_sum(p, q));
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p.probs()) {
    if (pi > 0.0) terms.push_back(-pi * std::expm1((q - 1.0) * std::log(pi)));
  }
  return ordered_sum(std::move(terms));
}

// sum p^base * expm1(shift * ln p)
double shifted_power_diff(const ProbVec& p, double base, double shift) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p.probs()) {
    if (pi > 0.0) terms.push_back(std::pow(pi, base) * std::expm1(shift * std::log(pi)));
  }
  return ordered_sum(std::move(terms));
}

double checked_phi(const PhiFunction& phi, double q) {
  const double value = phi(q);
  if (value == 0.0 || !std::isfinite(value)) {
    throw Error(ErrorCode::PhiViolation,
                "phi '" + phi.name() + "' is " + std::to_string(value) + " at q = " + std::to_string(q));
  }
  return value;
}

}  // namespace

QParam::QParam(double q) : q_(q) {
  if (!std::isfinite(q) || !(q > 0.0)) {
    throw Error(ErrorCode::InvalidQ, "q must be finite and > 0, got " + std::to_string(q));
  }
}

PhiFunction::PhiFunction(std::string name, Fn eval, Fn deriv)
    : name_(std::move(name)), eval_(std::move(eval)), deriv_(std::move(deriv)) {
  if (!eval_) throw Error(ErrorCode::InvalidArgument, "phi needs an evaluation function");
}

PhiFunction PhiFunction::paper_example() {
  return PhiFunction(
      "paper_example", [](double q) { return (q - 1.0) * (q * q + 1.0) / 2.0; },
      [](double q) { return (3.0 * q * q - 2.0 * q + 1.0) / 2.0; });
}

PhiFunction PhiFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "phi polynomial has no coefficients");
  auto eval = [coeffs](double q) {
    const double t = q - 1.0;
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  auto deriv = [coeffs](double q) {
    const double t = q - 1.0;
    double acc = 0.0;
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
      acc = acc * t + static_cast<double>(k) * coeffs[k];
    }
    return acc;
  };
  std::string name = "poly[";
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k) name += ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", coeffs[k]);
    name += buf;
  }
  name += ']';
  PhiFunction phi(std::move(name), std::move(eval), std::move(deriv));
  phi.coeffs_ = std::move(coeffs);
  return phi;
}

std::optional<PhiFunction> PhiFunction::from_name(std::string_view name) {
  if (name == "paper_example") return paper_example();
  return std::nullopt;
}

double PhiFunction::derivative(double q) const {
  if (deriv_) return deriv_(q);
  return (eval_(q + kPhiDiffStep) - eval_(q - kPhiDiffStep)) / (2.0 * kPhiDiffStep);
}

double phi_example(QParam q) { return (q.value() - 1.0) * (q.value() * q.value() + 1.0) / 2.0; }

PhiCheck check_phi(const PhiFunction& phi, std::span<const double> q_grid) {
  PhiCheck check;
  check.value_at_one = phi(1.0);
  check.slope_at_one = phi.derivative(1.0);
  check.vanishes_at_one = std::fabs(check.value_at_one) <= 1e-12;
  check.unit_slope_at_one = std::fabs(check.slope_at_one - 1.0) <= 1e-8;
  check.nonzero_off_one = true;
  check.differs_everywhere = true;
  bool any_off_one = false;
  for (double q : q_grid) {
    if (q == 1.0) continue;
    any_off_one = true;
    const double value = phi(q);
    if (!(std::fabs(value) > 1e-12)) check.nonzero_off_one = false;
    if (std::fabs(value - (q - 1.0)) > 1e-12) {
      check.differs_somewhere = true;
    } else {
      check.differs_everywhere = false;
    }
  }
  if (!any_off_one) check.differs_everywhere = false;
  return check;
}

std::span<const double> default_q_grid() noexcept { return kDefaultGrid; }

double power_sum(const ProbVec& p, double exponent) {
  return static_cast<double>(extended_power_sum(p, exponent));
}

double shannon(const ProbVec& p) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double pi : p.probs()) {
    if (pi > 0.0) terms.push_back(-pi * std::log(pi));
  }
  return unsigned_zero(ordered_sum(std::move(terms)));
}

double tsallis(QParam q, const ProbVec& p, EvalMode mode) {
  if (q.value() == 1.0) return shannon(p);
  const double numerator = one_minus_power_sum(q, p, use_stable(q, mode));
  return unsigned_zero(numerator / (q - 1.0));
}

double normalized_tsallis(QParam q, const ProbVec& p, EvalMode mode) {
  if (q.value() == 1.0) return shannon(p);
  const double numerator = one_minus_power_sum(q, p, use_stable(q, mode));
  return unsigned_zero(numerator / ((q - 1.0) * power_sum(p, q)));
}

double class2(QParam q, const PhiFunction& phi, const ProbVec& p, EvalMode mode) {
  if (q.value() == 1.0) return shannon(p);
  const double denom = checked_phi(phi, q);
  return unsigned_zero(one_minus_power_sum(q, p, use_stable(q, mode)) / denom);
}

double n_class2(QParam q, const PhiFunction& phi, const ProbVec& p, EvalMode mode) {
  if (q.value() == 1.0) return shannon(p);
  const double denom = checked_phi(phi, q) * power_sum(p, q);
  return unsigned_zero(one_minus_power_sum(q, p, use_stable(q, mode)) / denom);
}

double class3(QParam q, const ProbVec& p, EvalMode mode) {
  if (q.value() == 1.0) return shannon(p);
  const double inv_q = 1.0 / q;
  const double base = power_sum(p, inv_q);
  double numerator = 0.0;
  if (use_stable(q, mode)) {
    numerator = shifted_power_diff(p, inv_q, q - 1.0);
  } else {
    const long double ql = q.value();
    numerator = static_cast<double>(extended_power_sum(p, ql + 1.0L / ql - 1.0L) -
                                    extended_power_sum(p, 1.0L / ql));
  }
  return unsigned_zero(numerator / ((1.0 - q) * base));
}

double n_class3(QParam q, const ProbVec& p, EvalMode mode) {
  if (q.value() == 1.0) return shannon(p);
  const double lower = (q * q + 1.0) / 2.0;
  const double base = power_sum(p, lower);
  double numerator = 0.0;
  if (use_stable(q, mode)) {
    numerator = shifted_power_diff(p, lower, 1.0 - q);
  } else {
    const long double ql = q.value();
    numerator = static_cast<double>(extended_power_sum(p, (ql * ql - 2.0L * ql + 3.0L) / 2.0L) -
                                    extended_power_sum(p, (ql * ql + 1.0L) / 2.0L));
  }
  return unsigned_zero(numerator / ((q - 1.0) * base));
}

double relation_check(QParam q, const ProbVec& p) {
  if (q.value() == 1.0) return 0.0;
  return std::fabs(tsallis(q, p) - power_sum(p, q) * normalized_tsallis(q, p));
}

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::shannon: return "shannon";
    case Kind::tsallis: return "tsallis";
    case Kind::normalized_tsallis: return "normalized_tsallis";
    case Kind::class2: return "class2";
    case Kind::class3: return "class3";
    case Kind::n_class2: return "n_class2";
    case Kind::n_class3: return "n_class3";
    case Kind::custom: return "custom";
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) noexcept {
  for (Kind k : kPaperKinds) {
    if (to_string(k) == name) return k;
  }
  if (name == "custom") return Kind::custom;
  return std::nullopt;
}

std::span<const Kind> paper_kinds() noexcept { return kPaperKinds; }

bool is_normalized_kind(Kind kind) noexcept {
  return kind == Kind::normalized_tsallis || kind == Kind::n_class2 || kind == Kind::n_class3;
}

EntropyFunctional EntropyFunctional::shannon() { return {Kind::shannon, 1.0}; }

EntropyFunctional EntropyFunctional::tsallis(double q) {
  return {Kind::tsallis, QParam(q).value()};
}

EntropyFunctional EntropyFunctional::normalized_tsallis(double q) {
  return {Kind::normalized_tsallis, QParam(q).value()};
}

EntropyFunctional EntropyFunctional::class2(double q, PhiFunction phi) {
  EntropyFunctional f(Kind::class2, QParam(q).value());
  f.phi_ = std::move(phi);
  return f;
}

EntropyFunctional EntropyFunctional::class3(double q) { return {Kind::class3, QParam(q).value()}; }

EntropyFunctional EntropyFunctional::n_class2(double q, PhiFunction phi) {
  EntropyFunctional f(Kind::n_class2, QParam(q).value());
  f.phi_ = std::move(phi);
  return f;
}

EntropyFunctional EntropyFunctional::n_class3(double q) {
  return {Kind::n_class3, QParam(q).value()};
}

EntropyFunctional EntropyFunctional::custom(std::string name, double q, CustomFn fn) {
  if (!fn) throw Error(ErrorCode::InvalidArgument, "custom functional needs an evaluation function");
  EntropyFunctional f(Kind::custom, QParam(q).value());
  f.custom_name_ = std::move(name);
  f.custom_ = std::move(fn);
  return f;
}

EntropyFunctional EntropyFunctional::of_kind(Kind kind, double q, std::optional<PhiFunction> phi) {
  switch (kind) {
    case Kind::shannon: return shannon();
    case Kind::tsallis: return tsallis(q);
    case Kind::normalized_tsallis: return normalized_tsallis(q);
    case Kind::class3: return class3(q);
    case Kind::n_class3: return n_class3(q);
    case Kind::class2:
    case Kind::n_class2:
      if (!phi) {
        throw Error(ErrorCode::InvalidArgument, std::string(to_string(kind)) + " requires a phi function");
      }
      return kind == Kind::class2 ? class2(q, std::move(*phi)) : n_class2(q, std::move(*phi));
    case Kind::custom: break;
  }
  throw Error(ErrorCode::InvalidArgument, "custom functionals must be built with custom()");
}

std::string EntropyFunctional::name() const {
  if (kind_ == Kind::custom) return custom_name_;
  std::string out(to_string(kind_));
  if (phi_) out += "[" + phi_->name() + "]";
  return out;
}

EntropyFunctional EntropyFunctional::at(double q) const {
  EntropyFunctional f = *this;
  if (kind_ != Kind::shannon) f.q_ = QParam(q).value();
  return f;
}

double EntropyFunctional::weight_exponent() const noexcept {
  return kind_ == Kind::shannon ? 1.0 : q_;
}

double EntropyFunctional::operator()(const ProbVec& p, EvalMode mode) const {
  const QParam q(q_);
  switch (kind_) {
    case Kind::shannon: return qentropy::shannon(p);
    case Kind::tsallis: return qentropy::tsallis(q, p, mode);
    case Kind::normalized_tsallis: return qentropy::normalized_tsallis(q, p, mode);
    case Kind::class2: return qentropy::class2(q, *phi_, p, mode);
    case Kind::class3: return qentropy::class3(q, p, mode);
    case Kind::n_class2: return qentropy::n_class2(q, *phi_, p, mode);
    case Kind::n_class3: return qentropy::n_class3(q, p, mode);
    case Kind::custom: return custom_(q_, p);
  }
  return 0.0;
}

}  // namespace qentropy
