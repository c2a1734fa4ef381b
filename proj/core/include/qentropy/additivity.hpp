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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "qentropy/entropies.hpp"
#include "qentropy/probsys.hpp"

namespace qentropy {

/// Which family of additivities applies: the ones for the original Tsallis
/// entropy (pseudoadditivity coefficient 1 - q), or for the normalized one
/// (coefficient q - 1, power-sum weighted refinement identity).
enum class Form { original, normalized };

enum class Identity {
  shannon,  // refinement (grouping) identity
  pseudo,   // composition rule for independent systems
  reduced,  // refinement identity specialized to independent systems
};

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Form form) noexcept;
std::string_view to_string(Identity identity) noexcept;
std::string_view to_string(Verdict verdict) noexcept;
std::optional<Form> parse_form(std::string_view s) noexcept;
std::optional<Identity> parse_identity(std::string_view s) noexcept;

/// Residuals at or below pass_tol hold; above fail_tol they are violations;
/// anything between is quarantined as inconclusive.
struct Thresholds {
  double pass_tol = 1e-11;
  double fail_tol = 1e-4;

  Verdict judge(double rel_residual) const noexcept;
};

using System = std::variant<Refinement, ProductSystem>;

struct ResidualReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;      // lhs - rhs
  double rel_residual = 0.0;  // |lhs - rhs| / (1 + max(|lhs|, |rhs|))
  std::string identity_name;
  Identity identity = Identity::shannon;
  Form form = Form::original;
  EntropyFunctional functional = EntropyFunctional::shannon();
  System system = product(ProbVec::uniform(1), ProbVec::uniform(1));

  Verdict verdict(const Thresholds& t = {}) const noexcept { return t.judge(rel_residual); }
  double q() const noexcept { return functional.q(); }
  /// content_hash of the system's joint distribution.
  std::uint64_t input_hash() const noexcept;
};

double rel_residual(double lhs, double rhs) noexcept;

/// F(joint) against F(marginal) + sum_i marginal_i^w F(conditional_i), with
/// w = F.weight_exponent(). Zero-marginal blocks are skipped.
ResidualReport shannon_additivity_residual(const EntropyFunctional& f, const Refinement& r);

/// (sum joint^q) F(joint) against
/// (sum marginal^q) F(marginal) + sum_i (sum_j joint_ij^q) F(conditional_i).
ResidualReport n_shannon_additivity_residual(const EntropyFunctional& f, const Refinement& r);

/// F(joint) against F(a) + F(b) + c F(a) F(b), c = 1 - q (original) or
/// q - 1 (normalized).
ResidualReport pseudo_residual(const EntropyFunctional& f, const ProductSystem& s, Form form);

/// Original: F(joint) against F(a) + (sum a^q) F(b).
/// Normalized: (sum b^q) F(joint) against F(a) + (sum b^q) F(b).
ResidualReport reduced_shannon_rhs(const EntropyFunctional& f, const ProductSystem& s, Form form);

/// Dispatches on identity and form. A ProductSystem passed for the shannon
/// identity is viewed through as_refinement(); a Refinement passed for
/// pseudo/reduced throws InvalidArgument.
ResidualReport evaluate_identity(const EntropyFunctional& f, Identity identity, Form form,
                                 const System& system);

}  // namespace qentropy
