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

#include <string>

#include <nlohmann/json.hpp>

#include "qentropy/additivity.hpp"
#include "qentropy/classify.hpp"
#include "qentropy/entropies.hpp"
#include "qentropy/limits.hpp"
#include "qentropy/probsys.hpp"

// JSON encodings of the domain types. Doubles are written in shortest
// round-trip form, so decode(encode(x)) reproduces every bit.
namespace qentropy {

using nlohmann::json;

json to_json(const ProbVec& p);
json to_json(const Refinement& r);
json to_json(const ProductSystem& s);
json to_json(const System& s);
json to_json(const PhiFunction& phi);
json to_json(const EntropyFunctional& f);
json to_json(const ResidualReport& r, const Thresholds& t = {});
json to_json(const LimitReport& r, const LimitOptions& opt = {});
json to_json(const IdentityTally& t);
json to_json(const ClassReport& r);
json to_json(const UniquenessReport& r);

/// Accepts {"p":[...]} or a bare array.
ProbVec probvec_from_json(const json& j);
Refinement refinement_from_json(const json& j);
ProductSystem product_from_json(const json& j);
/// Object with "marginal" decodes as a Refinement, with "a"/"b" as a product.
System system_from_json(const json& j);
/// A registered name ("paper_example") or a coefficient list in powers of (q-1).
PhiFunction phi_from_json(const json& j);
/// {"kind":"tsallis","q":2.0}; class2/n_class2 also need "phi". Custom
/// functionals cannot be decoded.
EntropyFunctional functional_from_json(const json& j);
/// Rebuilds the functional and system of a serialized report and evaluates
/// the identity again.
ResidualReport recompute_report(const json& j);

std::string residual_csv_header();
/// identity,kind,q,n,m,lhs,rhs,residual,rel_residual,verdict with 15
/// significant digits. n is the first-level size; m is |b| for a product and
/// the largest block for a refinement.
std::string to_csv_row(const ResidualReport& r, const Thresholds& t = {});

std::string limit_csv_header();
/// functional,q_min_offset,estimate,target,error
std::string to_csv_row(const LimitReport& r);

/// printf("%.15g")
std::string format_number(double v);

}  // namespace qentropy
