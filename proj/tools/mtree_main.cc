// Copyright 2026 The mtree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 ok, 1 negative verdict, 2 unknown,
// 64 usage error, 65 data error, 70 internal error.

#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mtree/calculus.h"
#include "mtree/embed.h"
#include "mtree/formula.h"
#include "mtree/json_io.h"
#include "mtree/normalize.h"
#include "mtree/prover.h"
#include "mtree/rules.h"
#include "mtree/tree.h"

namespace {

using mtree::Json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 64;
constexpr int kData = 65;
constexpr int kInternal = 70;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadPayload(const std::string& arg) {
  if (arg != "-") return arg;
  return std::string(std::istreambuf_iterator<char>(std::cin),
                     std::istreambuf_iterator<char>());
}

bool LooksLikeJson(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (s[p] == '{' || s[p] == '"' || s[p] == '[');
}

mtree::Formula ReadFormula(const std::string& arg) {
  const std::string text = ReadPayload(arg);
  if (LooksLikeJson(text)) {
    return mtree::FormulaFromJson(mtree::ParseJsonText(text));
  }
  return mtree::Parse(text);
}

mtree::ModalTree ReadTree(const std::string& arg) {
  return mtree::TreeFromJson(mtree::ParseJsonText(ReadPayload(arg)));
}

mtree::RuleInstance ReadRule(const std::string& arg) {
  const std::string text = ReadPayload(arg);
  if (LooksLikeJson(text)) {
    return mtree::RuleFromJson(mtree::ParseJsonText(text));
  }
  try {
    return mtree::ParseRule(text);
  } catch (const std::exception& e) {
    throw mtree::JsonDataError("", e.what());
  }
}

mtree::System ReadSystem(const std::string& name) {
  try {
    return mtree::System::Parse(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void Emit(const Json& j) { std::cout << j.dump() << "\n"; }

std::string Abbreviate(const std::string& digits) {
  if (digits.size() <= 24) return digits;
  return digits.substr(0, 6) + "... (" + std::to_string(digits.size()) +
         " digits)";
}

struct Options {
  std::string format = "json";
  std::string sys = "k+";
  std::string a, b;
  bool to_tree = false;
  bool to_formula = false;
  bool trace = false;
  bool verify_bounds = false;
  mtree::SearchBudget budget;
};

bool Text(const Options& o) { return o.format == "text"; }

int CmdParse(const Options& o) {
  const mtree::Formula f = ReadFormula(o.a);
  if (Text(o)) {
    std::cout << mtree::Print(f) << "\n";
  } else {
    Emit(mtree::ToJson(f));
  }
  return kOk;
}

int CmdEmbed(const Options& o) {
  if (o.to_tree == o.to_formula) {
    throw UsageError("embed needs exactly one of --to-tree, --to-formula");
  }
  if (o.to_tree) {
    const mtree::ModalTree t = mtree::ToTree(ReadFormula(o.a));
    if (Text(o)) {
      std::cout << mtree::DebugString(t) << "\n";
    } else {
      Emit(mtree::ToJson(t));
    }
  } else {
    const mtree::Formula f = mtree::ToFormula(ReadTree(o.a));
    if (Text(o)) {
      std::cout << mtree::Print(f) << "\n";
    } else {
      Emit(mtree::ToJson(f));
    }
  }
  return kOk;
}

int CmdMetrics(const Options& o) {
  const mtree::ModalTree t = ReadTree(o.a);
  Emit(Json{{"width", mtree::Width(t)},
            {"height", mtree::Height(t)},
            {"nodes", mtree::NodeCount(t)}});
  return kOk;
}

int CmdApply(const Options& o) {
  const mtree::ModalTree t = ReadTree(o.a);
  const mtree::RuleInstance r = ReadRule(o.b);
  if (auto why = mtree::WhyNotApplicable(t, r)) {
    std::cerr << "not applicable: " << mtree::ToString(r) << ": " << *why
              << "\n";
    return kNegative;
  }
  const mtree::ModalTree out = mtree::Apply(t, r);
  if (Text(o)) {
    std::cout << mtree::DebugString(out) << "\n";
  } else {
    Emit(mtree::ToJson(out));
  }
  return kOk;
}

mtree::Derivation ReadDerivation(const std::string& arg) {
  return mtree::DerivationFromJson(mtree::ParseJsonText(ReadPayload(arg)));
}

int CmdCheck(const Options& o) {
  const mtree::Derivation d = ReadDerivation(o.a);
  const mtree::System sys = ReadSystem(o.sys);
  std::vector<mtree::ModalTree> trace;
  try {
    const mtree::ModalTree end = mtree::Check(d, sys, &trace);
    if (!o.trace) {
      Emit(mtree::ToJson(end));
      return kOk;
    }
    Json steps = Json::array();
    for (const auto& t : trace) steps.push_back(mtree::ToJson(t));
    Emit(Json{{"end", mtree::ToJson(end)}, {"trace", steps}});
    return kOk;
  } catch (const mtree::DerivationError& e) {
    std::cerr << "derivation rejected at step " << e.step() << ": " << e.what()
              << "\n";
    return kNegative;
  }
}

int CmdNormalize(const Options& o) {
  const mtree::Derivation d = ReadDerivation(o.a);
  const mtree::System sys = ReadSystem(o.sys);
  mtree::NormalShape shape;
  try {
    shape = mtree::Normalize(d, sys);
  } catch (const mtree::DerivationError& e) {
    std::cerr << "derivation rejected at step " << e.step() << ": " << e.what()
              << "\n";
    return kData;
  } catch (const mtree::NoNormalForm& e) {
    std::cerr << "no normal form: " << e.what() << "\n";
    return kNegative;
  }
  const mtree::BoundReport b = mtree::TheoremBounds(d, sys);
  const Json report = mtree::ToJson(b, shape);
  Emit(Json{{"normal", mtree::ToJson(shape)}, {"bounds", report}});
  std::cerr << "block              length  bound\n";
  for (const char* key :
       {"replicative", "modal", "decreasing_atomic", "structural"}) {
    const Json& row = report.at(key);
    std::ostringstream line;
    line << key << std::string(19 - std::string(key).size(), ' ')
         << row.at("length").get<std::size_t>() << "       "
         << Abbreviate(row.at("bound").get<std::string>())
         << (row.at("ok").get<bool>() ? "" : "  VIOLATED");
    std::cerr << line.str() << "\n";
  }
  if (o.verify_bounds && !b.Violations(shape).empty()) return kNegative;
  return kOk;
}

int CmdProve(const Options& o) {
  const mtree::Formula phi = ReadFormula(o.a);
  const mtree::Formula psi = ReadFormula(o.b);
  const mtree::System sys = ReadSystem(o.sys);
  const mtree::ProofResult r = mtree::Prove(phi, psi, sys, o.budget);
  if (Text(o)) {
    std::cout << mtree::VerdictName(r.verdict);
    if (r.derivation) std::cout << " " << mtree::ToString(r.derivation->steps);
    std::cout << "\n";
  } else {
    Emit(mtree::ToJson(r));
  }
  switch (r.verdict) {
    case mtree::Verdict::kProved:
      return kOk;
    case mtree::Verdict::kRefuted:
      return kNegative;
    case mtree::Verdict::kUnknown:
      return kUnknown;
  }
  return kInternal;
}

int CmdOracle(const Options& o) {
  const bool v = mtree::EntailsKPlus(ReadFormula(o.a), ReadFormula(o.b));
  if (Text(o)) {
    std::cout << (v ? "true" : "false") << "\n";
  } else {
    Emit(Json{{"entails", v}});
  }
  return v ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewriting toolkit for strictly positive modal logics"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  auto* parse = app.add_subcommand("parse", "Parse a formula");
  parse->add_option("formula", o.a, "Formula text or JSON, - for stdin")
      ->required();

  auto* embed = app.add_subcommand("embed", "Convert formula <-> tree");
  embed->add_flag("--to-tree", o.to_tree, "Formula to tree");
  embed->add_flag("--to-formula", o.to_formula, "Tree JSON to formula");
  embed->add_option("input", o.a, "Payload, - for stdin")->required();

  auto* metrics = app.add_subcommand("metrics", "Width, height, node count");
  metrics->add_option("tree", o.a, "Tree JSON, - for stdin")->required();

  auto* apply = app.add_subcommand("apply", "Apply one rule instance");
  apply->add_option("tree", o.a, "Tree JSON, - for stdin")->required();
  apply->add_option("rule", o.b, "Rule text (kind@pos(i=..)) or JSON")
      ->required();

  auto* check = app.add_subcommand("check", "Replay a derivation");
  check->add_option("derivation", o.a, "Derivation JSON, - for stdin")
      ->required();
  check->add_option("--sys", o.sys, "System")->capture_default_str();
  check->add_flag("--trace", o.trace, "Emit every intermediate tree");

  auto* normalize = app.add_subcommand("normalize", "Normalize a derivation");
  normalize->add_option("derivation", o.a, "Derivation JSON, - for stdin")
      ->required();
  normalize->add_option("--sys", o.sys, "System")->capture_default_str();
  normalize->add_flag("--verify-bounds", o.verify_bounds,
                      "Exit 1 when a block exceeds its bound");

  auto* prove = app.add_subcommand("prove", "Search for a derivation");
  prove->add_option("phi", o.a, "Premise")->required();
  prove->add_option("psi", o.b, "Conclusion")->required();
  prove->add_option("--sys", o.sys, "System")->capture_default_str();
  prove->add_option("--budget", o.budget.max_steps, "Maximum steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  prove->add_option("--max-nodes", o.budget.max_nodes, "Node cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  prove->add_option("--max-states", o.budget.max_states, "State cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  prove->add_option("--threads", o.budget.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "K+ semantic verdict");
  oracle->add_option("phi", o.a, "Premise")->required();
  oracle->add_option("psi", o.b, "Conclusion")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return CmdParse(o);
    if (*embed) return CmdEmbed(o);
    if (*metrics) return CmdMetrics(o);
    if (*apply) return CmdApply(o);
    if (*check) return CmdCheck(o);
    if (*normalize) return CmdNormalize(o);
    if (*prove) return CmdProve(o);
    if (*oracle) return CmdOracle(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const mtree::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kData;
  } catch (const mtree::JsonDataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const mtree::InvalidPosition& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
