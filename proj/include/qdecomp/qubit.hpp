// Copyright 2026 The qdecomp authors
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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace qdecomp {

/// Reference to one circuit line. Main lines are programmer-allocated and
/// map 1:1 to physical qubits; Aux lines are created by the compiler during
/// a decomposition and disappear once the allocator rewrites them onto
/// main qubits.
struct QubitRef {
  enum class Kind : std::uint8_t { Main, Aux };

  Kind kind = Kind::Main;
  std::int32_t group = -1;  // aux group id, -1 for main qubits
  std::int32_t index = 0;

  static QubitRef main(std::int32_t index) {
    return QubitRef{Kind::Main, -1, index};
  }
  static QubitRef aux(std::int32_t group, std::int32_t index) {
    return QubitRef{Kind::Aux, group, index};
  }

  bool is_main() const { return kind == Kind::Main; }
  bool is_aux() const { return kind == Kind::Aux; }

  auto operator<=>(const QubitRef&) const = default;

  std::string str() const {
    if (is_main()) return "q" + std::to_string(index);
    return "aux" + std::to_string(group) + "." + std::to_string(index);
  }
};

}  // namespace qdecomp

template <>
struct std::hash<qdecomp::QubitRef> {
  std::size_t operator()(const qdecomp::QubitRef& q) const noexcept {
    std::uint64_t v = (static_cast<std::uint64_t>(q.kind) << 62) ^
                      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(q.group)) << 31) ^
                      static_cast<std::uint32_t>(q.index);
    return std::hash<std::uint64_t>{}(v);
  }
};
