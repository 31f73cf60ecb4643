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

#ifndef MTREE_JSON_IO_H_
#define MTREE_JSON_IO_H_

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mtree/calculus.h"
#include "mtree/formula.h"
#include "mtree/normalize.h"
#include "mtree/prover.h"
#include "mtree/rules.h"
#include "mtree/tree.h"

namespace mtree {

using Json = nlohmann::json;

// Malformed JSON payload; `path` locates the offending value (e.g.
// "/steps/3/pos").
class JsonDataError : public std::runtime_error {
 public:
  JsonDataError(const std::string& path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Formulas: "T", {"var":"p"}, {"dia":[a, f]}, {"and":[f, g]}. A bare string
// other than "T" is parsed as formula text.
Json ToJson(const Formula& f);
Formula FormulaFromJson(const Json& j, const std::string& path = "");

// {"atoms":[...], "children":[[label, tree], ...]}; both keys optional.
Json ToJson(const ModalTree& t);
ModalTree TreeFromJson(const Json& j, const std::string& path = "");

// Array of 1-based indices; [] is the root. A string "1.2" or "e" is accepted.
Json PositionToJson(const Position& k);
Position PositionFromJson(const Json& j, const std::string& path = "");

// {"kind":"J","pos":[1],"i":1,"j":2,"b":0}; a string uses the rule text form.
Json ToJson(const RuleInstance& r);
RuleInstance RuleFromJson(const Json& j, const std::string& path = "");

Json ToJson(const std::vector<RuleInstance>& rs);

// {"start": tree, "steps": [rule, ...]}
Json ToJson(const Derivation& d);
Derivation DerivationFromJson(const Json& j);

// {"rule": name, "conclusion": [lhs, rhs], "premises": [proof, ...]}
Json ToJson(const SequentProof& p);
SequentProof SequentProofFromJson(const Json& j, const std::string& path = "");

Json ToJson(const NormalShape& s);
Json ToJson(const BoundReport& b, const NormalShape& s);
Json ToJson(const ProofResult& r);

// Parses text, mapping parse failures to JsonDataError at the byte offset.
Json ParseJsonText(const std::string& text);

}  // namespace mtree

#endif  // MTREE_JSON_IO_H_
