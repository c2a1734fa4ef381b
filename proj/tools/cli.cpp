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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qentropy/additivity.hpp"
#include "qentropy/classify.hpp"
#include "qentropy/entropies.hpp"
#include "qentropy/error.hpp"
#include "qentropy/limits.hpp"
#include "qentropy/probsys.hpp"
#include "qentropy/serialize.hpp"

namespace qentropy::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Output { table, json, csv };

struct Config {
  std::string command;
  std::vector<std::string> kinds;
  std::vector<double> q;
  std::vector<double> q_grid;
  std::string phi = "paper_example";
  std::vector<double> p;
  std::string in;
  std::string form;
  std::string identity;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 100;
  std::string expect;
  std::string out;
  double pass_tol = Thresholds{}.pass_tol;
  double fail_tol = Thresholds{}.fail_tol;
  double tol = LimitOptions{}.tolerance;
  bool strict = false;
  bool no_timestamp = false;
};

json config_json(const Config& c) {
  json j{{"command", c.command},
         {"kind", c.kinds},
         {"phi", c.phi},
         {"seed", c.seed},
         {"pass_tol", c.pass_tol},
         {"fail_tol", c.fail_tol},
         {"strict", c.strict},
         {"out", c.out}};
  if (!c.q.empty()) j["q"] = c.q;
  if (!c.q_grid.empty()) j["q_grid"] = c.q_grid;
  if (!c.p.empty()) j["p"] = c.p;
  if (!c.in.empty()) j["in"] = c.in;
  if (!c.form.empty()) j["form"] = c.form;
  if (!c.identity.empty()) j["identity"] = c.identity;
  if (c.samples > 0) j["samples"] = c.samples;
  if (c.command == "search") j["budget"] = c.budget;
  if (c.command == "limit") j["tol"] = c.tol;
  if (!c.expect.empty()) j["expect"] = c.expect;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Output output_of(const Config& c) {
  if (c.out == "json") return Output::json;
  if (c.out == "csv") return Output::csv;
  if (c.out == "table") return Output::table;
  throw UsageError("--out must be one of json, csv, table");
}

json document(const Config& c) {
  json doc{{"config", config_json(c)}};
  if (!c.no_timestamp) doc["timestamp"] = utc_timestamp();
  return doc;
}

void csv_preamble(std::ostream& out, const Config& c) {
  json header = config_json(c);
  if (!c.no_timestamp) header["timestamp"] = utc_timestamp();
  out << "# qentropy " << c.command << ' ' << header.dump() << '\n';
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << line << '\n';
  }
}

std::string join_numbers(std::span<const double> v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += sep;
    s += format_number(v[i]);
  }
  return s;
}

std::vector<Kind> kinds_of(const Config& c) {
  if (c.kinds.empty()) throw UsageError("--kind is required");
  std::vector<Kind> kinds;
  for (const auto& name : c.kinds) {
    if (name == "all") {
      kinds.insert(kinds.end(), paper_kinds().begin(), paper_kinds().end());
      continue;
    }
    const auto k = parse_kind(name);
    if (!k || *k == Kind::custom) throw UsageError("unknown --kind '" + name + "'");
    kinds.push_back(*k);
  }
  return kinds;
}

PhiFunction phi_of(const Config& c) {
  if (auto named = PhiFunction::from_name(c.phi)) return *named;
  std::vector<double> coeffs;
  std::stringstream ss(c.phi);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      coeffs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--phi must be 'paper_example' or a comma list of coefficients in (q-1)");
    }
  }
  if (coeffs.empty()) throw UsageError("--phi is empty");
  PhiFunction phi = PhiFunction::polynomial(std::move(coeffs));
  const std::vector<double> grid(default_q_grid().begin(), default_q_grid().end());
  if (!check_phi(phi, grid).ok()) {
    throw Error(ErrorCode::PhiViolation, "phi " + phi.name() + " violates the class-2 conditions");
  }
  return phi;
}

EntropyFunctional family_of(Kind kind, double q, const Config& c) {
  const bool needs_phi = kind == Kind::class2 || kind == Kind::n_class2;
  return EntropyFunctional::of_kind(kind, q, needs_phi ? std::optional(phi_of(c)) : std::nullopt);
}

Form form_of(Kind kind, const Config& c) {
  if (c.form.empty()) return is_normalized_kind(kind) ? Form::normalized : Form::original;
  const auto f = parse_form(c.form);
  if (!f) throw UsageError("--form must be original or normalized");
  return *f;
}

Identity identity_of(const Config& c) {
  if (c.identity.empty()) throw UsageError("--identity is required");
  const auto id = parse_identity(c.identity);
  if (!id) throw UsageError("--identity must be shannon, pseudo or reduced");
  return *id;
}

std::vector<double> grid_of(const Config& c) {
  if (!c.q_grid.empty()) return c.q_grid;
  if (!c.q.empty()) return c.q;
  return {default_q_grid().begin(), default_q_grid().end()};
}

Thresholds thresholds_of(const Config& c) {
  if (!(c.pass_tol >= 0.0) || !(c.fail_tol >= c.pass_tol)) {
    throw UsageError("tolerances must satisfy 0 <= pass-tol <= fail-tol");
  }
  return Thresholds{c.pass_tol, c.fail_tol};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

bool is_list_of_items(const json& j) {
  return j.is_array() && !j.empty() && (j.front().is_array() || j.front().is_object());
}

std::vector<ProbVec> distributions_of(const Config& c) {
  std::vector<ProbVec> ps;
  if (!c.p.empty()) ps.push_back(make_probvec(c.p, false));
  if (!c.in.empty()) {
    const json j = read_json_file(c.in);
    if (is_list_of_items(j)) {
      for (const auto& item : j) ps.push_back(probvec_from_json(item));
    } else {
      ps.push_back(probvec_from_json(j));
    }
  }
  return ps;
}

std::vector<System> systems_of(const Config& c) {
  std::vector<System> systems;
  const json j = read_json_file(c.in);
  if (j.is_array()) {
    for (const auto& item : j) systems.push_back(system_from_json(item));
  } else {
    systems.push_back(system_from_json(j));
  }
  return systems;
}

void sort_canonical(std::vector<ResidualReport>& reports) {
  const auto key = [](const ResidualReport& r) {
    return std::make_tuple(std::string(to_string(r.identity)), r.functional.name(), r.q(),
                           r.input_hash());
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const ResidualReport& a, const ResidualReport& b) { return key(a) < key(b); });
}

std::size_t joint_size(const System& s) {
  return std::visit([](const auto& v) { return v.joint().size(); }, s);
}

std::vector<std::string> residual_row(const ResidualReport& r, const Thresholds& t) {
  return {r.identity_name,
          r.functional.name(),
          format_number(r.q()),
          std::to_string(joint_size(r.system)),
          format_number(r.residual),
          format_number(r.rel_residual),
          std::string(to_string(r.verdict(t)))};
}

const std::vector<std::string> kResidualColumns{"identity", "functional", "q",      "joint",
                                                "residual", "rel_residual", "verdict"};

int cmd_eval(const Config& c, std::ostream& out) {
  const auto kinds = kinds_of(c);
  const auto ps = distributions_of(c);
  if (ps.empty()) throw UsageError("eval needs --p or --in");
  std::vector<double> qs = c.q;
  qs.insert(qs.end(), c.q_grid.begin(), c.q_grid.end());

  struct Row {
    EntropyFunctional f;
    const ProbVec* p;
    double value;
  };
  std::vector<Row> rows;
  for (const Kind kind : kinds) {
    if (kind == Kind::shannon) {
      for (const auto& p : ps) rows.push_back({EntropyFunctional::shannon(), &p, shannon(p)});
      continue;
    }
    if (qs.empty()) throw UsageError("--q or --q-grid is required for " + std::string(to_string(kind)));
    for (const double q : qs) {
      const auto f = family_of(kind, q, c);
      for (const auto& p : ps) rows.push_back({f, &p, f(p)});
    }
  }

  switch (output_of(c)) {
    case Output::json: {
      json doc = document(c);
      json list = json::array();
      for (const auto& r : rows) {
        list.push_back({{"functional", to_json(r.f)}, {"p", to_json(*r.p).at("p")}, {"value", r.value}});
      }
      doc["rows"] = list;
      out << doc.dump(2) << '\n';
      break;
    }
    case Output::csv:
      csv_preamble(out, c);
      out << "kind,q,p,value\n";
      for (const auto& r : rows) {
        out << r.f.name() << ',' << (r.f.kind() == Kind::shannon ? "" : format_number(r.f.q())) << ','
            << join_numbers(r.p->probs(), ' ') << ',' << format_number(r.value) << '\n';
      }
      break;
    case Output::table: {
      std::vector<std::vector<std::string>> table{{"kind", "q", "p", "value"}};
      for (const auto& r : rows) {
        table.push_back({r.f.name(), r.f.kind() == Kind::shannon ? "-" : format_number(r.f.q()),
                         join_numbers(r.p->probs(), ','), format_number(r.value)});
      }
      print_table(out, table);
      break;
    }
  }
  return kOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const auto kinds = kinds_of(c);
  const Identity identity = identity_of(c);
  const Thresholds t = thresholds_of(c);
  const auto grid = grid_of(c);
  std::vector<System> inputs;
  if (!c.in.empty()) inputs = systems_of(c);

  std::vector<ResidualReport> reports;
  for (const Kind kind : kinds) {
    const auto family = family_of(kind, grid.front(), c);
    const Form form = form_of(kind, c);
    if (!inputs.empty()) {
      for (const double q : grid) {
        for (const auto& s : inputs) reports.push_back(evaluate_identity(family.at(q), identity, form, s));
      }
      continue;
    }
    for (std::size_t i = 0; i < c.samples; ++i) {
      const SampleDraw d = draw_sample(c.seed, i, grid);
      const System s = identity == Identity::shannon ? System(d.refinement) : System(d.product);
      reports.push_back(evaluate_identity(family.at(d.q), identity, form, s));
    }
  }
  sort_canonical(reports);

  IdentityTally tally;
  for (const auto& r : reports) tally.add(r, t);
  const Verdict overall = tally.overall();

  switch (output_of(c)) {
    case Output::json: {
      json doc = document(c);
      doc["summary"] = to_json(tally);
      doc["summary"]["verdict"] = std::string(to_string(overall));
      json list = json::array();
      for (const auto& r : reports) list.push_back(to_json(r, t));
      doc["reports"] = list;
      out << doc.dump(2) << '\n';
      break;
    }
    case Output::csv:
      csv_preamble(out, c);
      out << residual_csv_header() << '\n';
      for (const auto& r : reports) out << to_csv_row(r, t) << '\n';
      break;
    case Output::table: {
      out << "verdict " << to_string(overall) << ": " << tally.passed << " pass, " << tally.failed
          << " fail, " << tally.quarantined << " inconclusive\n";
      std::vector<std::vector<std::string>> table{kResidualColumns};
      for (const auto& r : reports) {
        if (r.verdict(t) != Verdict::pass) table.push_back(residual_row(r, t));
      }
      if (table.size() > 1) print_table(out, table);
      break;
    }
  }

  if (c.strict && overall == Verdict::inconclusive) return kInconclusiveStrict;
  if (c.expect.empty()) return kOk;
  if (c.expect == "pass") return overall == Verdict::pass ? kOk : kExpectationFailed;
  return overall == Verdict::fail ? kOk : kExpectationFailed;
}

int cmd_classify(const Config& c, std::ostream& out) {
  const auto kinds = kinds_of(c);
  std::optional<ClassLabel> expected;
  if (!c.expect.empty()) {
    expected = parse_class_label(c.expect);
    if (!expected) throw UsageError("classify --expect takes class1, class2 or class3");
  }
  ClassifyOptions opt;
  opt.q_grid = grid_of(c);
  opt.thresholds = thresholds_of(c);

  std::vector<ClassReport> reports;
  for (const Kind kind : kinds) {
    reports.push_back(classify(family_of(kind, opt.q_grid.front(), c), form_of(kind, c), c.samples,
                               c.seed, opt));
    sort_canonical(reports.back().witnesses);
  }

  switch (output_of(c)) {
    case Output::json: {
      json doc = document(c);
      json list = json::array();
      for (const auto& r : reports) list.push_back(to_json(r));
      doc["reports"] = list;
      out << doc.dump(2) << '\n';
      break;
    }
    case Output::csv:
      csv_preamble(out, c);
      out << "functional,form,label,samples,shannon_pass,shannon_fail,shannon_inconclusive,"
             "pseudo_pass,pseudo_fail,pseudo_inconclusive\n";
      for (const auto& r : reports) {
        out << r.functional.name() << ',' << to_string(r.form) << ',' << to_string(r.label) << ','
            << r.samples << ',' << r.shannon.passed << ',' << r.shannon.failed << ','
            << r.shannon.quarantined << ',' << r.pseudo.passed << ',' << r.pseudo.failed << ','
            << r.pseudo.quarantined << '\n';
      }
      break;
    case Output::table:
      for (const auto& r : reports) {
        out << r.functional.name() << " (" << to_string(r.form) << "): " << to_string(r.label) << '\n';
        for (const auto* tally : {&r.shannon, &r.pseudo}) {
          out << "  " << (tally == &r.shannon ? "shannon" : "pseudo ") << ' '
              << to_string(tally->overall()) << "  pass " << tally->passed << "  fail "
              << tally->failed << "  inconclusive " << tally->quarantined;
          if (tally->worst) out << "  worst " << format_number(tally->worst->rel_residual);
          out << '\n';
        }
        if (!r.witnesses.empty()) {
          std::vector<std::vector<std::string>> table{kResidualColumns};
          for (const auto& w : r.witnesses) table.push_back(residual_row(w, r.thresholds));
          print_table(out, table);
        }
      }
      break;
  }

  const bool inconclusive = std::any_of(reports.begin(), reports.end(), [](const ClassReport& r) {
    return r.label == ClassLabel::inconclusive;
  });
  if (c.strict && inconclusive) return kInconclusiveStrict;
  if (!expected) return kOk;
  const bool all_match = std::all_of(reports.begin(), reports.end(),
                                     [&](const ClassReport& r) { return r.label == *expected; });
  return all_match ? kOk : kExpectationFailed;
}

int cmd_limit(const Config& c, std::ostream& out) {
  const auto kinds = kinds_of(c);
  LimitOptions opt;
  opt.tolerance = c.tol;
  auto ps = distributions_of(c);
  if (ps.empty()) {
    SimplexSampler sampler(c.seed);
    for (std::size_t i = 0; i < c.samples; ++i) ps.push_back(sampler.sample(sampler.uniform_index(2, 6)));
  }

  std::vector<LimitReport> reports;
  for (const Kind kind : kinds) {
    const auto family = family_of(kind, 2.0, c);
    for (const auto& p : ps) reports.push_back(limit_check(family, p, opt));
  }
  std::stable_sort(reports.begin(), reports.end(), [](const LimitReport& a, const LimitReport& b) {
    return std::make_tuple(a.functional.name(), content_hash(a.p.probs())) <
           std::make_tuple(b.functional.name(), content_hash(b.p.probs()));
  });
  const bool all_converged = std::all_of(reports.begin(), reports.end(),
                                         [&](const LimitReport& r) { return r.converged(opt); });

  switch (output_of(c)) {
    case Output::json: {
      json doc = document(c);
      json list = json::array();
      for (const auto& r : reports) list.push_back(to_json(r, opt));
      doc["reports"] = list;
      doc["converged"] = all_converged;
      out << doc.dump(2) << '\n';
      break;
    }
    case Output::csv:
      csv_preamble(out, c);
      out << limit_csv_header() << '\n';
      for (const auto& r : reports) out << to_csv_row(r) << '\n';
      break;
    case Output::table: {
      std::vector<std::vector<std::string>> table{
          {"functional", "n", "estimate", "target", "error", "converged"}};
      for (const auto& r : reports) {
        table.push_back({r.functional.name(), std::to_string(r.p.size()), format_number(r.estimate),
                         format_number(r.target), format_number(r.error),
                         r.converged(opt) ? "yes" : "no"});
      }
      print_table(out, table);
      break;
    }
  }
  return all_converged ? kOk : kExpectationFailed;
}

int cmd_search(const Config& c, std::ostream& out) {
  const auto kinds = kinds_of(c);
  const Identity identity = identity_of(c);
  const Thresholds t = thresholds_of(c);
  if (c.q.empty()) throw UsageError("search needs --q");
  if (!c.expect.empty() && c.expect != "pass" && c.expect != "fail") {
    throw UsageError("search --expect takes pass or fail");
  }

  struct Row {
    EntropyFunctional f;
    Form form;
    SearchResult result;
  };
  std::vector<Row> rows;
  for (const Kind kind : kinds) {
    for (const double q : c.q) {
      const auto f = family_of(kind, q, c);
      const Form form = form_of(kind, c);
      rows.push_back({f, form, find_counterexample(f, identity, form, c.seed, c.budget, t)});
    }
  }

  switch (output_of(c)) {
    case Output::json: {
      json doc = document(c);
      json list = json::array();
      for (const auto& r : rows) {
        list.push_back({{"functional", to_json(r.f)},
                        {"identity", std::string(to_string(identity))},
                        {"form", std::string(to_string(r.form))},
                        {"tried", r.result.tried},
                        {"found", r.result.witness.has_value()},
                        {"witness", r.result.witness ? to_json(*r.result.witness, t) : json(nullptr)}});
      }
      doc["results"] = list;
      out << doc.dump(2) << '\n';
      break;
    }
    case Output::csv:
      csv_preamble(out, c);
      out << residual_csv_header() << '\n';
      for (const auto& r : rows) {
        if (r.result.witness) out << to_csv_row(*r.result.witness, t) << '\n';
      }
      break;
    case Output::table:
      for (const auto& r : rows) {
        out << r.f.name() << " q=" << format_number(r.f.q()) << ' ' << to_string(identity) << " ("
            << to_string(r.form) << "): ";
        if (r.result.witness) {
          out << "witness after " << r.result.tried << " tries, rel_residual "
              << format_number(r.result.witness->rel_residual) << '\n';
        } else {
          out << "not found in " << r.result.tried << " tries\n";
        }
      }
      break;
  }

  const bool all_found = std::all_of(rows.begin(), rows.end(),
                                     [](const Row& r) { return r.result.witness.has_value(); });
  const bool none_found = std::none_of(rows.begin(), rows.end(),
                                       [](const Row& r) { return r.result.witness.has_value(); });
  if (c.expect == "pass") return none_found ? kOk : kExpectationFailed;
  return all_found ? kOk : kExpectationFailed;
}

void add_kind(CLI::App* app, Config& c) {
  app->add_option("--kind", c.kinds, "Functional kind(s), comma separated, or 'all'")
      ->delimiter(',')
      ->required();
  app->add_option("--phi", c.phi, "Class-2 denominator: paper_example or coefficients in (q-1)");
}

void add_output(CLI::App* app, Config& c, const std::string& default_out) {
  app->add_option("--out", c.out, "Output format (default: " + default_out + ")")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp from reports");
}

void add_thresholds(CLI::App* app, Config& c) {
  app->add_option("--pass-tol", c.pass_tol, "Largest relative residual judged pass")->capture_default_str();
  app->add_option("--fail-tol", c.fail_tol, "Relative residual above which a sample fails")
      ->capture_default_str();
  app->add_flag("--strict", c.strict, "Exit 3 when the outcome is inconclusive");
}

void add_seed(CLI::App* app, Config& c) {
  app->add_option("--seed", c.seed, "Random seed")->envname("QENTROPY_SEED")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Nonextensive entropy functionals, additivity checks and classification", "qentropy"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate functionals on distributions");
  add_kind(eval, c);
  eval->add_option("--q", c.q, "Entropic index value(s)")->delimiter(',');
  eval->add_option("--q-grid", c.q_grid, "Additional q values")->delimiter(',');
  eval->add_option("--p", c.p, "Distribution, comma separated")->delimiter(',');
  eval->add_option("--in", c.in, "JSON file with one or more distributions");
  add_output(eval, c, "table");

  auto* verify = app.add_subcommand("verify", "Compute additivity residuals");
  add_kind(verify, c);
  verify->add_option("--identity", c.identity, "shannon, pseudo or reduced")->required();
  verify->add_option("--q", c.q, "Entropic index value(s)")->delimiter(',');
  verify->add_option("--q-grid", c.q_grid, "Grid of q values to sample from")->delimiter(',');
  verify->add_option("--form", c.form, "original or normalized (default: natural form of the kind)");
  verify->add_option("--samples", c.samples, "Number of sampled systems (default: 100)");
  verify->add_option("--in", c.in, "JSON file with one or more systems");
  verify->add_option("--expect", c.expect, "Expected overall verdict")
      ->check(CLI::IsMember({"pass", "fail"}));
  add_seed(verify, c);
  add_thresholds(verify, c);
  add_output(verify, c, "json");

  auto* classify_cmd = app.add_subcommand("classify", "Assign a class label to a functional");
  add_kind(classify_cmd, c);
  classify_cmd->add_option("--q-grid", c.q_grid, "Grid of q values")->delimiter(',');
  classify_cmd->add_option("--form", c.form, "original or normalized (default: natural form)");
  classify_cmd->add_option("--samples", c.samples, "Samples per identity (default: 1000)");
  classify_cmd->add_option("--expect", c.expect, "Expected label")
      ->check(CLI::IsMember({"class1", "class2", "class3"}));
  add_seed(classify_cmd, c);
  add_thresholds(classify_cmd, c);
  add_output(classify_cmd, c, "json");

  auto* limit = app.add_subcommand("limit", "Check the q -> 1 limit against Shannon entropy");
  add_kind(limit, c);
  limit->add_option("--p", c.p, "Distribution, comma separated")->delimiter(',');
  limit->add_option("--in", c.in, "JSON file with one or more distributions");
  limit->add_option("--samples", c.samples, "Sampled distributions when no input is given (default: 100)");
  limit->add_option("--tol", c.tol, "Largest accepted |estimate - shannon|")->capture_default_str();
  add_seed(limit, c);
  add_output(limit, c, "json");

  auto* search = app.add_subcommand("search", "Budgeted counterexample search");
  add_kind(search, c);
  search->add_option("--identity", c.identity, "shannon, pseudo or reduced")->required();
  search->add_option("--q", c.q, "Entropic index value(s)")->delimiter(',')->required();
  search->add_option("--form", c.form, "original or normalized (default: natural form)");
  search->add_option("--budget", c.budget, "Candidates to try")->capture_default_str();
  search->add_option("--expect", c.expect, "fail: a witness must exist; pass: none may")
      ->check(CLI::IsMember({"pass", "fail"}));
  add_seed(search, c);
  add_thresholds(search, c);
  add_output(search, c, "table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (c.out.empty()) c.out = c.command == "eval" || c.command == "search" ? "table" : "json";
    if (c.samples == 0 && c.command != "eval" && c.command != "search") {
      c.samples = c.command == "classify" ? 1000 : 100;
    }
    if (c.command == "eval") return cmd_eval(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "classify") return cmd_classify(c, out);
    if (c.command == "limit") return cmd_limit(c, out);
    return cmd_search(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace qentropy::cli
