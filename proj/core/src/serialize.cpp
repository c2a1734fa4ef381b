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

#include "qentropy/serialize.hpp"

#include <cstdio>
#include <vector>

#include "qentropy/error.hpp"

namespace qentropy {

namespace {

std::vector<double> as_doubles(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::size_t second_level_size(const System& s) {
  if (const auto* p = std::get_if<ProductSystem>(&s)) return p->b().size();
  const auto& r = std::get<Refinement>(s);
  std::size_t m = 0;
  for (std::size_t i = 0; i < r.blocks(); ++i) m = std::max(m, r.block_size(i));
  return m;
}

std::size_t first_level_size(const System& s) {
  if (const auto* p = std::get_if<ProductSystem>(&s)) return p->a().size();
  return std::get<Refinement>(s).marginal().size();
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json to_json(const ProbVec& p) { return json{{"p", std::vector<double>(p.probs().begin(), p.probs().end())}}; }

json to_json(const Refinement& r) {
  json conds = json::array();
  for (const auto& c : r.conditionals()) {
    conds.push_back(c ? json(std::vector<double>(c->probs().begin(), c->probs().end())) : json::array());
  }
  const auto m = r.marginal().probs();
  return json{{"marginal", std::vector<double>(m.begin(), m.end())}, {"conditionals", conds}};
}

json to_json(const ProductSystem& s) {
  return json{{"a", std::vector<double>(s.a().probs().begin(), s.a().probs().end())},
              {"b", std::vector<double>(s.b().probs().begin(), s.b().probs().end())}};
}

json to_json(const System& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

json to_json(const PhiFunction& phi) {
  if (phi.coefficients()) return json(*phi.coefficients());
  return json(phi.name());
}

json to_json(const EntropyFunctional& f) {
  json j{{"kind", std::string(to_string(f.kind()))}};
  if (f.kind() == Kind::custom) j["name"] = f.name();
  if (f.kind() != Kind::shannon) j["q"] = f.q();
  if (f.phi()) j["phi"] = to_json(*f.phi());
  return j;
}

json to_json(const ResidualReport& r, const Thresholds& t) {
  return json{{"identity", std::string(to_string(r.identity))},
              {"identity_name", r.identity_name},
              {"form", std::string(to_string(r.form))},
              {"functional", to_json(r.functional)},
              {"q", r.q()},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"residual", r.residual},
              {"rel_residual", r.rel_residual},
              {"verdict", std::string(to_string(r.verdict(t)))},
              {"input_hash", hex64(r.input_hash())},
              {"system", to_json(r.system)}};
}

json to_json(const LimitReport& r, const LimitOptions& opt) {
  return json{{"functional", to_json(r.functional)},
              {"p", to_json(r.p)},
              {"estimate", r.estimate},
              {"target", r.target},
              {"error", r.error},
              {"left_extrapolant", r.left_extrapolant},
              {"right_extrapolant", r.right_extrapolant},
              {"q_min_offset", r.q_min_offset},
              {"q_sequence", r.q_sequence},
              {"values", r.values},
              {"extrapolated", r.extrapolated},
              {"converged", r.converged(opt)}};
}

json to_json(const IdentityTally& t) {
  json j{{"passed", t.passed},
         {"failed", t.failed},
         {"quarantined", t.quarantined},
         {"overall", std::string(to_string(t.overall()))}};
  j["worst"] = t.worst ? to_json(*t.worst) : json(nullptr);
  return j;
}

json to_json(const ClassReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w, r.thresholds));
  json shannon = to_json(r.shannon);
  json pseudo = to_json(r.pseudo);
  if (r.shannon.worst) shannon["worst"] = to_json(*r.shannon.worst, r.thresholds);
  if (r.pseudo.worst) pseudo["worst"] = to_json(*r.pseudo.worst, r.thresholds);
  return json{{"label", std::string(to_string(r.label))},
              {"functional", to_json(r.functional)},
              {"form", std::string(to_string(r.form))},
              {"samples", r.samples},
              {"seed", r.seed},
              {"q_grid", r.q_grid},
              {"pass_tol", r.thresholds.pass_tol},
              {"fail_tol", r.thresholds.fail_tol},
              {"shannon", shannon},
              {"pseudo", pseudo},
              {"witnesses", witnesses}};
}

json to_json(const UniquenessReport& r) {
  return json{{"passed", r.passed},
              {"samples", r.samples},
              {"max_value_mismatch", r.max_value_mismatch},
              {"max_pseudo_residual", r.max_pseudo_residual},
              {"max_reduced_residual", r.max_reduced_residual},
              {"worst_q", r.worst_q},
              {"worst_a", r.worst_a ? to_json(*r.worst_a) : json(nullptr)}};
}

ProbVec probvec_from_json(const json& j) {
  const auto values = as_doubles(j.is_object() ? member(j, "p") : j, "p");
  return make_probvec(values, false);
}

Refinement refinement_from_json(const json& j) {
  const ProbVec marginal = make_probvec(as_doubles(member(j, "marginal"), "marginal"), false);
  const json& conds = member(j, "conditionals");
  if (!conds.is_array()) throw Error(ErrorCode::ParseError, "conditionals must be an array");
  std::vector<std::optional<ProbVec>> blocks;
  for (const auto& c : conds) {
    if (c.is_null() || (c.is_array() && c.empty())) {
      blocks.emplace_back(std::nullopt);
    } else {
      blocks.emplace_back(make_probvec(as_doubles(c, "conditional"), false));
    }
  }
  return make_refinement(marginal, std::move(blocks));
}

ProductSystem product_from_json(const json& j) {
  return product(make_probvec(as_doubles(member(j, "a"), "a"), false),
                 make_probvec(as_doubles(member(j, "b"), "b"), false));
}

System system_from_json(const json& j) {
  if (j.is_object() && j.contains("marginal")) return refinement_from_json(j);
  if (j.is_object() && j.contains("a")) return product_from_json(j);
  throw Error(ErrorCode::ParseError, "system must have 'marginal' or 'a'/'b' fields");
}

PhiFunction phi_from_json(const json& j) {
  if (j.is_string()) {
    auto phi = PhiFunction::from_name(j.get<std::string>());
    if (!phi) throw Error(ErrorCode::ParseError, "unknown phi '" + j.get<std::string>() + "'");
    return *phi;
  }
  return PhiFunction::polynomial(as_doubles(j, "phi"));
}

EntropyFunctional functional_from_json(const json& j) {
  const json& kind_field = member(j, "kind");
  if (!kind_field.is_string()) throw Error(ErrorCode::ParseError, "kind must be a string");
  const auto kind = parse_kind(kind_field.get<std::string>());
  if (!kind) throw Error(ErrorCode::ParseError, "unknown kind '" + kind_field.get<std::string>() + "'");
  if (*kind == Kind::custom) throw Error(ErrorCode::ParseError, "custom functionals cannot be decoded");
  if (*kind == Kind::shannon) return EntropyFunctional::shannon();
  const json& q = member(j, "q");
  if (!q.is_number()) throw Error(ErrorCode::ParseError, "q must be a number");
  std::optional<PhiFunction> phi;
  if (j.contains("phi")) phi = phi_from_json(j.at("phi"));
  return EntropyFunctional::of_kind(*kind, q.get<double>(), std::move(phi));
}

ResidualReport recompute_report(const json& j) {
  const auto identity = parse_identity(member(j, "identity").get<std::string>());
  const auto form = parse_form(member(j, "form").get<std::string>());
  if (!identity || !form) throw Error(ErrorCode::ParseError, "bad identity or form");
  return evaluate_identity(functional_from_json(member(j, "functional")), *identity, *form,
                           system_from_json(member(j, "system")));
}

std::string residual_csv_header() { return "identity,kind,q,n,m,lhs,rhs,residual,rel_residual,verdict"; }

std::string to_csv_row(const ResidualReport& r, const Thresholds& t) {
  return r.identity_name + "," + r.functional.name() + "," + format_number(r.q()) + "," +
         std::to_string(first_level_size(r.system)) + "," + std::to_string(second_level_size(r.system)) +
         "," + format_number(r.lhs) + "," + format_number(r.rhs) + "," + format_number(r.residual) + "," +
         format_number(r.rel_residual) + "," + std::string(to_string(r.verdict(t)));
}

std::string limit_csv_header() { return "functional,q_min_offset,estimate,target,error"; }

std::string to_csv_row(const LimitReport& r) {
  return r.functional.name() + "," + format_number(r.q_min_offset) + "," + format_number(r.estimate) +
         "," + format_number(r.target) + "," + format_number(r.error);
}

}  // namespace qentropy
