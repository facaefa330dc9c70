// Copyright 2026 The selfdeg Authors
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

#ifndef SELFDEG_DSL_HPP_
#define SELFDEG_DSL_HPP_

// The manifold description language.
//
//   manifold   := piece ("#" piece)*
//   piece      := (nat "*")? atom
//   atom       := "S2xS1" | lens | spher | "~" lens | "~" spher
//               | bundle | semibundle | seifert
//   lens       := "L(" nat "," int ")"
//   spher      := "D*(" nat ")" | "T24" | "O48" | "I120" | "T'(" nat ")"
//               | "D'(" nat "," nat ")" | "Z(" nat ")x" spher
//   bundle     := "TB[" int "," int ";" int "," int "]"
//   semibundle := "TSB[" int "," int ";" int "," int "]"
//   seifert    := "SF(" ("o"|"n") nat (";" slope ("," slope)*)? ")"
//   slope      := int "/" nat
//
// Whitespace may separate any two tokens and "//" starts a comment running to
// the end of the line. "~" reverses orientation. A single piece without a
// multiplicity is a prime manifold; anything else is a connected sum.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfdeg/manifold.hpp"

namespace selfdeg::dsl {

/// Byte offsets [begin, end) into the parsed text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

struct ParseResult {
  /// Set iff parsing and validation succeeded. Not canonicalized.
  std::optional<manifold::ManifoldDesc> desc;
  std::vector<Diagnostic> diagnostics;
  /// Span of each summand in `desc`, in input order.
  std::vector<SourceSpan> piece_spans;

  bool ok() const { return desc.has_value(); }
};

/// Parses and validates. Never throws on malformed input.
ParseResult parse(std::string_view text);

/// Renders the canonical form of `desc`; parse(render(d)) == canonicalize(d).
std::string render(const manifold::ManifoldDesc& desc);

/// "bytes B-E: message" one-liner.
std::string format_diagnostic(const Diagnostic& d);

}  // namespace selfdeg::dsl

#endif  // SELFDEG_DSL_HPP_
