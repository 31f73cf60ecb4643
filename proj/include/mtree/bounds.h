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

#ifndef MTREE_BOUNDS_H_
#define MTREE_BOUNDS_H_

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mtree {

using BigInt = boost::multiprecision::cpp_int;

// Non-negative integer, exact up to 2^kCapBits and saturated beyond. Bounds
// are compared with block lengths that fit in 64 bits, so a saturated value
// admits every length.
class BigBound {
 public:
  static constexpr unsigned kCapBits = 4096;

  BigBound() = default;
  explicit BigBound(BigInt v);
  static BigBound Of(std::size_t v) { return BigBound(BigInt(v)); }
  static BigBound Saturated();

  bool saturated() const { return saturated_; }
  // Valid when !saturated().
  const BigInt& value() const { return value_; }

  bool Admits(std::size_t n) const { return saturated_ || BigInt(n) <= value_; }
  std::string ToString() const;

  friend BigBound operator+(const BigBound& a, const BigBound& b);
  friend BigBound operator*(const BigBound& a, const BigBound& b);
  friend bool operator==(const BigBound& a, const BigBound& b) {
    return a.saturated_ == b.saturated_ && a.value_ == b.value_;
  }

 private:
  BigBound Normalized() const;

  bool saturated_ = false;
  BigInt value_ = 0;
};

BigBound Pow(const BigBound& base, const BigBound& exponent);

}  // namespace mtree

#endif  // MTREE_BOUNDS_H_
