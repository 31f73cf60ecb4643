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

#include "mtree/bounds.h"

#include <boost/multiprecision/integer.hpp>

namespace mtree {

namespace {

unsigned BitLength(const BigInt& v) {
  return v == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
}

}  // namespace

BigBound::BigBound(BigInt v) : value_(std::move(v)) { *this = Normalized(); }

BigBound BigBound::Saturated() {
  BigBound b;
  b.saturated_ = true;
  return b;
}

BigBound BigBound::Normalized() const {
  if (!saturated_ && value_ > (BigInt(1) << kCapBits)) return Saturated();
  return *this;
}

std::string BigBound::ToString() const {
  if (saturated_) return "> 2^" + std::to_string(kCapBits);
  return value_.str();
}

BigBound operator+(const BigBound& a, const BigBound& b) {
  if (a.saturated_ || b.saturated_) return BigBound::Saturated();
  return BigBound(a.value_ + b.value_);
}

BigBound operator*(const BigBound& a, const BigBound& b) {
  if ((!a.saturated_ && a.value_ == 0) || (!b.saturated_ && b.value_ == 0)) {
    return BigBound::Of(0);
  }
  if (a.saturated_ || b.saturated_) return BigBound::Saturated();
  if (BitLength(a.value_) + BitLength(b.value_) > BigBound::kCapBits + 1) {
    return BigBound::Saturated();
  }
  return BigBound(a.value_ * b.value_);
}

BigBound Pow(const BigBound& base, const BigBound& exponent) {
  if (!exponent.saturated() && exponent.value() == 0) return BigBound::Of(1);
  if (!base.saturated() && base.value() <= 1) return base;
  if (base.saturated() || exponent.saturated()) return BigBound::Saturated();
  // base >= 2: the result has at least `exponent` * (bits(base) - 1) bits.
  const unsigned base_bits = BitLength(base.value());
  if (exponent.value() > BigBound::kCapBits) return BigBound::Saturated();
  const unsigned e = exponent.value().convert_to<unsigned>();
  if (static_cast<unsigned long long>(e) * (base_bits - 1) >
      BigBound::kCapBits) {
    return BigBound::Saturated();
  }
  return BigBound(boost::multiprecision::pow(base.value(), e));
}

}  // namespace mtree
