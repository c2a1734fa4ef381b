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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qentropy/probsys.hpp"

namespace qentropy {

/// Width of the window around q = 1 inside which the expm1-based forms
/// replace the direct quotients.
inline constexpr double kQBranch = 1e-6;

/// The entropic index; always finite and strictly positive.
class QParam {
 public:
  explicit QParam(double q);
  double value() const noexcept { return q_; }
  operator double() const noexcept { return q_; }

 private:
  double q_;
};

/// Denominator function of the Class-2 families. It must vanish at q = 1 with
/// unit slope there, stay non-zero elsewhere, and differ from q - 1.
class PhiFunction {
 public:
  using Fn = std::function<double(double)>;

  /// `deriv` may be empty, in which case derivative() falls back to a
  /// central difference with step 1e-6.
  PhiFunction(std::string name, Fn eval, Fn deriv = {});

  /// (q - 1)(q^2 + 1) / 2, registered as "paper_example".
  static PhiFunction paper_example();
  /// sum_k coeffs[k] * (q - 1)^k.
  static PhiFunction polynomial(std::vector<double> coeffs);
  /// Looks up a registered name; currently only "paper_example".
  static std::optional<PhiFunction> from_name(std::string_view name);

  double operator()(double q) const { return eval_(q); }
  double derivative(double q) const;
  bool has_analytic_derivative() const noexcept { return static_cast<bool>(deriv_); }

  const std::string& name() const noexcept { return name_; }
  /// Coefficients in powers of (q - 1) when built by polynomial().
  const std::optional<std::vector<double>>& coefficients() const noexcept { return coeffs_; }

 private:
  std::string name_;
  Fn eval_;
  Fn deriv_;
  std::optional<std::vector<double>> coeffs_;
};

double phi_example(QParam q);

struct PhiCheck {
  double value_at_one = 0.0;
  double slope_at_one = 0.0;
  bool vanishes_at_one = false;      // |phi(1)| <= 1e-12
  bool unit_slope_at_one = false;    // |phi'(1) - 1| <= 1e-8
  bool nonzero_off_one = false;      // |phi(q)| > 1e-12 on the grid minus {1}
  bool differs_somewhere = false;    // |phi(q) - (q-1)| > 1e-12 for some grid q != 1
  bool differs_everywhere = false;   // ... for every grid q != 1

  /// The conditions required of a Class-2 denominator. Uses the existential
  /// reading of phi != q - 1; differs_everywhere is reported separately.
  bool ok() const noexcept {
    return vanishes_at_one && unit_slope_at_one && nonzero_off_one && differs_somewhere;
  }
};

PhiCheck check_phi(const PhiFunction& phi, std::span<const double> q_grid);

/// {0.1, 0.5, 0.9, 0.999, 1.001, 1.5, 2, 3, 5}
std::span<const double> default_q_grid() noexcept;

enum class EvalMode {
  automatic,  // q == 1: Shannon; |q - 1| < kQBranch: stable; otherwise direct
  direct,     // closed-form quotient (Shannon at q == 1 exactly)
  stable,     // expm1-based form (Shannon at q == 1 exactly)
};

/// sum_i p_i^exponent over the non-zero entries, accumulated in sorted order.
double power_sum(const ProbVec& p, double exponent);

double shannon(const ProbVec& p);
double tsallis(QParam q, const ProbVec& p, EvalMode mode = EvalMode::automatic);
double normalized_tsallis(QParam q, const ProbVec& p, EvalMode mode = EvalMode::automatic);
/// Throws PhiViolation when phi(q) is zero or non-finite for q != 1.
double class2(QParam q, const PhiFunction& phi, const ProbVec& p,
              EvalMode mode = EvalMode::automatic);
double class3(QParam q, const ProbVec& p, EvalMode mode = EvalMode::automatic);
double n_class2(QParam q, const PhiFunction& phi, const ProbVec& p,
                EvalMode mode = EvalMode::automatic);
double n_class3(QParam q, const ProbVec& p, EvalMode mode = EvalMode::automatic);

/// |tsallis(q, p) - (sum_j p_j^q) * normalized_tsallis(q, p)|
double relation_check(QParam q, const ProbVec& p);

enum class Kind { shannon, tsallis, normalized_tsallis, class2, class3, n_class2, n_class3, custom };

std::string_view to_string(Kind kind) noexcept;
std::optional<Kind> parse_kind(std::string_view name) noexcept;
/// The six q-parameterized kinds plus shannon, in declaration order.
std::span<const Kind> paper_kinds() noexcept;
/// True for the kinds whose natural additivities are the normalized forms.
bool is_normalized_kind(Kind kind) noexcept;

/// A named entropy functional bound to a value of q. Families are swept over
/// q with at(); shannon ignores q.
class EntropyFunctional {
 public:
  using CustomFn = std::function<double(double q, const ProbVec& p)>;

  static EntropyFunctional shannon();
  static EntropyFunctional tsallis(double q);
  static EntropyFunctional normalized_tsallis(double q);
  static EntropyFunctional class2(double q, PhiFunction phi);
  static EntropyFunctional class3(double q);
  static EntropyFunctional n_class2(double q, PhiFunction phi);
  static EntropyFunctional n_class3(double q);
  static EntropyFunctional custom(std::string name, double q, CustomFn fn);
  /// Builds any non-custom kind; phi is required for class2/n_class2.
  static EntropyFunctional of_kind(Kind kind, double q, std::optional<PhiFunction> phi = {});

  Kind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }
  const std::optional<PhiFunction>& phi() const noexcept { return phi_; }
  /// e.g. "tsallis", "class2[paper_example]", or the custom name.
  std::string name() const;

  /// Same family at another q.
  EntropyFunctional at(double q) const;

  /// Exponent of the marginal weights in the refinement identity: q, or 1 for
  /// shannon.
  double weight_exponent() const noexcept;

  double operator()(const ProbVec& p, EvalMode mode = EvalMode::automatic) const;

 private:
  EntropyFunctional(Kind kind, double q) : kind_(kind), q_(q) {}

  Kind kind_;
  double q_;
  std::optional<PhiFunction> phi_;
  std::string custom_name_;
  CustomFn custom_;
};

}  // namespace qentropy
