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

#ifndef MTREE_FORMULA_H_
#define MTREE_FORMULA_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtree {

using Label = std::uint32_t;

// Strictly positive formula: T | p | <a> f | f & g.
// Immutable; copies share structure.
class Formula {
 public:
  enum class Kind { kTop, kVar, kDia, kAnd };

  Formula();  // Top.

  static Formula Top();
  static Formula Var(std::string name);
  static Formula Dia(Label label, Formula body);
  static Formula And(Formula left, Formula right);

  Kind kind() const { return node_->kind; }
  bool is_top() const { return kind() == Kind::kTop; }
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_dia() const { return kind() == Kind::kDia; }
  bool is_and() const { return kind() == Kind::kAnd; }

  // Valid for kVar only.
  const std::string& name() const { return node_->name; }
  // Valid for kDia only.
  Label label() const { return node_->label; }
  const Formula& body() const { return node_->kids[0]; }
  // Valid for kAnd only.
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  struct Node {
    Kind kind = Kind::kTop;
    std::string name;
    Label label = 0;
    std::vector<Formula> kids;
  };
  explicit Formula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Sequent {
  Formula lhs;
  Formula rhs;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  // Zero-based character offset into the input.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar:  f ::= conj ;  conj ::= unary ('&' unary)* ;
//           unary ::= '<' nat '>' unary | 'T' | ident | '(' f ')'.
Formula Parse(std::string_view text);

// Minimal parentheses; Parse(Print(f)) == f.
std::string Print(const Formula& f);

std::size_t ModalDepth(const Formula& f);

// T for the empty list, otherwise And(head, BigAnd(tail)).
Formula BigAnd(const std::vector<Formula>& fs);

// Number of Top/Var/Dia/And nodes.
std::size_t FormulaSize(const Formula& f);

}  // namespace mtree

#endif  // MTREE_FORMULA_H_
