// Copyright 2026 The Authors.
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

#ifndef IVLAB_ELEMENT_SET_H_
#define IVLAB_ELEMENT_SET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ivlab {

inline constexpr int kMaxElements = 64;

// A subset of a ground set {0, ..., 63}, stored as a bitmask. Agents and
// matroid elements share this representation: agent i is element i.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<int> elements) {
    for (int e : elements) Insert(e);
  }

  static constexpr ElementSet Range(int n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static ElementSet FromVector(const std::vector<int>& elements) {
    ElementSet s;
    for (int e : elements) s.Insert(e);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool Contains(int e) const { return (bits_ >> e) & 1U; }
  constexpr int Size() const { return std::popcount(bits_); }
  constexpr bool Empty() const { return bits_ == 0; }

  constexpr void Insert(int e) { bits_ |= std::uint64_t{1} << e; }
  constexpr void Erase(int e) { bits_ &= ~(std::uint64_t{1} << e); }

  constexpr ElementSet With(int e) const {
    return ElementSet(bits_ | (std::uint64_t{1} << e));
  }
  constexpr ElementSet Without(int e) const {
    return ElementSet(bits_ & ~(std::uint64_t{1} << e));
  }

  constexpr bool IsSubsetOf(ElementSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ | b.bits_);
  }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) {
    return ElementSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(ElementSet a, ElementSet b) = default;
  friend constexpr bool operator<(ElementSet a, ElementSet b) {
    return a.bits_ < b.bits_;
  }

  // Elements in ascending order.
  std::vector<int> ToVector() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(Size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  // "{0,2,5}"
  std::string ToString() const {
    std::string out = "{";
    bool first = true;
    for (int e : ToVector()) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
    return out + "}";
  }

 private:
  std::uint64_t bits_ = 0;
};

// Invokes fn(subset) for every subset of `set`, including the empty set and
// `set` itself.
template <typename Fn>
void ForEachSubset(ElementSet set, Fn&& fn) {
  const std::uint64_t mask = set.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(ElementSet(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace ivlab

#endif  // IVLAB_ELEMENT_SET_H_
