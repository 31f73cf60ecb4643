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

#include "mtree/formula.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>
#include <utility>

namespace mtree {

Formula::Formula() : Formula(Top()) {}

Formula Formula::Top() {
  static const auto* top = new std::shared_ptr<const Node>(
      std::make_shared<const Node>(Node{Kind::kTop, "", 0, {}}));
  return Formula(*top);
}

Formula Formula::Var(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kVar, std::move(name), 0, {}}));
}

Formula Formula::Dia(Label label, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kDia, "", label, {std::move(body)}}));
}

Formula Formula::And(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAnd, "", 0, {std::move(left), std::move(right)}}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kTop:
      return true;
    case Formula::Kind::kVar:
      return a.name() == b.name();
    case Formula::Kind::kDia:
      return a.label() == b.label() && a.body() == b.body();
    case Formula::Kind::kAnd:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error("parse error at offset " + std::to_string(offset) +
                         ": " + message),
      offset_(offset) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula ParseAll() {
    Formula f = ParseConj();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    std::string msg = what;
    if (pos_ < text_.size()) {
      msg += " '";
      msg += text_[pos_];
      msg += "'";
    } else {
      msg += " (end of input)";
    }
    throw ParseError(msg, pos_);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Peek(char c) {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Formula ParseConj() {
    Formula f = ParseUnary();
    while (Peek('&')) {
      ++pos_;
      f = Formula::And(std::move(f), ParseUnary());
    }
    return f;
  }

  Label ParseLabel() {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      Fail("negative diamond label");
    }
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      Fail("expected natural-number diamond label, got");
    }
    const std::size_t start = pos_;
    unsigned long long value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (value > std::numeric_limits<Label>::max()) {
        pos_ = start;
        Fail("diamond label out of range");
      }
      ++pos_;
    }
    return static_cast<Label>(value);
  }

  Formula ParseUnary() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("expected formula");
    const char c = text_[pos_];
    if (c == '<') {
      ++pos_;
      const Label label = ParseLabel();
      if (!Peek('>')) Fail("expected '>' after diamond label, got");
      ++pos_;
      return Formula::Dia(label, ParseUnary());
    }
    if (c == '(') {
      ++pos_;
      Formula f = ParseConj();
      if (!Peek(')')) Fail("expected ')', got");
      ++pos_;
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      std::string ident(text_.substr(start, pos_ - start));
      if (ident == "T") return Formula::Top();
      return Formula::Var(std::move(ident));
    }
    Fail("expected formula, got");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void PrintTo(const Formula& f, std::string* out);

void PrintOperand(const Formula& f, std::string* out) {
  if (f.is_and()) {
    out->push_back('(');
    PrintTo(f, out);
    out->push_back(')');
  } else {
    PrintTo(f, out);
  }
}

void PrintTo(const Formula& f, std::string* out) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
      out->push_back('T');
      return;
    case Formula::Kind::kVar:
      out->append(f.name());
      return;
    case Formula::Kind::kDia:
      out->push_back('<');
      out->append(std::to_string(f.label()));
      out->push_back('>');
      if (!f.body().is_and()) out->push_back(' ');
      PrintOperand(f.body(), out);
      return;
    case Formula::Kind::kAnd:
      PrintTo(f.left(), out);  // '&' is left-associative.
      out->append(" & ");
      PrintOperand(f.right(), out);
      return;
  }
}

}  // namespace

Formula Parse(std::string_view text) { return Parser(text).ParseAll(); }

std::string Print(const Formula& f) {
  std::string out;
  PrintTo(f, &out);
  return out;
}

std::size_t ModalDepth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
    case Formula::Kind::kVar:
      return 0;
    case Formula::Kind::kDia:
      return ModalDepth(f.body()) + 1;
    case Formula::Kind::kAnd:
      return std::max(ModalDepth(f.left()), ModalDepth(f.right()));
  }
  return 0;
}

Formula BigAnd(const std::vector<Formula>& fs) {
  Formula acc = Formula::Top();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    acc = Formula::And(*it, std::move(acc));
  }
  return acc;
}

std::size_t FormulaSize(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
    case Formula::Kind::kVar:
      return 1;
    case Formula::Kind::kDia:
      return 1 + FormulaSize(f.body());
    case Formula::Kind::kAnd:
      return 1 + FormulaSize(f.left()) + FormulaSize(f.right());
  }
  return 0;
}

}  // namespace mtree
