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

#ifndef SELFDEG_DEGSET_HPP_
#define SELFDEG_DEGSET_HPP_

// Symbolic, exactly queryable sets of integers.
//
// A DegreeSet is an immutable expression tree. Leaves are periodic residue
// sets, squares of integers obeying an arithmetic side condition, and images
// of binary quadratic forms; inner nodes scale, negate, unite and intersect.
// The one non-decidable leaf is the trivial band {0, 1} <= D <= {0, 1, -1},
// whose membership of -1 is reported as unknown.
//
// describe() output grammar (stable; the CLI prints it verbatim):
//
//   set      := "Z" | "∅" | periodic | finite | squares | form | units
//             | scaled | negated | union | inter | band
//   periodic := M "Z + {" r ("," " " r)* "}"        residues ascending
//   finite   := "{" n ("," " " n)* "}"               members ascending
//   squares  := "{ l^2 : " predicate " }"
//   form     := "{ " poly " : x, y ∈ Z }"
//             | "{ " poly " : p, r ∈ Z }"
//             | "{ (" poly ")/" c " : p, r ∈ Z, " sol-condition " }"
//   units    := "{ (" k "t+1)(" poly ") : t, p, q ∈ Z }"
//   scaled   := c " * " operand
//   negated  := "-" operand
//   union    := operand (" ∪ " operand)+
//   inter    := operand (" ∩ " operand)+
//   band     := "{0, 1} ⊆ D ⊆ {0, 1, -1}"
//
// where operand is a set wrapped in parentheses when it is itself a union,
// intersection, scaled or negated set.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "selfdeg/forms.hpp"
#include "selfdeg/numth.hpp"

namespace selfdeg::degset {

using numth::Int;

/// Three-valued membership answer.
enum class Membership { kNo, kYes, kUnknown };

std::string to_string(Membership m);

/// Condition on the nonnegative root l of a member l^2.
enum class RootPredicate {
  kAny,                  // every l >= 0
  kOdd,                  // l odd
  kLoeschianOneModSix,   // l = m^2+mn+n^2, l = 1 (mod 6)
  kLoeschianOneModThree, // l = m^2+mn+n^2, l = 1 (mod 3)
  kTwoSquareOneModFour,  // l = m^2+n^2, l = 1 (mod 4)
};

bool root_satisfies(RootPredicate pred, Int l);

/// Monodromy entries of a Sol torus bundle; ad - bc = 1 and |a + d| > 2.
struct SolConditions {
  Int a, b, c, d;

  /// Whether (p, r) passes the integrality side conditions modulo c.
  bool admits(forms::Vec2 point) const;

  friend bool operator==(const SolConditions&, const SolConditions&) = default;
};

class DegreeSet;

struct AllIntegers {};
struct Periodic {
  numth::ResidueSet residues;
};
/// A finite set of integers, sorted and duplicate-free.
struct Finite {
  std::vector<Int> members;
};
struct SquaresOf {
  RootPredicate predicate;
};
/// Without conditions: the values of `form`. With conditions: the values
/// form(p, r) / c over points (p, r) admitted by the conditions, where
/// form = c p^2 + (d - a) pr - b r^2.
struct FormImage {
  forms::BinaryForm form;
  std::optional<SolConditions> conditions;
};
/// {(k t + 1) v : t in Z, v a value of form}.
struct UnitTimesForm {
  Int k;
  forms::BinaryForm form;
};
struct Scaled {
  Int factor;
  std::shared_ptr<const DegreeSet> inner;
};
struct Negated {
  std::shared_ptr<const DegreeSet> inner;
};
struct Union {
  std::vector<DegreeSet> parts;
};
struct Intersection {
  std::vector<DegreeSet> parts;
};
struct TrivialBand {};

/// Raised when a finite listing is requested from the trivial band.
class UnsupportedEnumeration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeSet {
 public:
  using Node = std::variant<AllIntegers, Periodic, Finite, SquaresOf, FormImage, UnitTimesForm, Scaled,
                            Negated, Union, Intersection, TrivialBand>;

  DegreeSet() : node_(AllIntegers{}) {}
  explicit DegreeSet(Node node) : node_(std::move(node)) {}

  static DegreeSet all_integers() { return DegreeSet(AllIntegers{}); }
  static DegreeSet periodic(numth::ResidueSet residues) { return DegreeSet(Periodic{std::move(residues)}); }
  static DegreeSet finite(std::vector<Int> members);
  static DegreeSet squares_of(RootPredicate p) { return DegreeSet(SquaresOf{p}); }
  static DegreeSet form_image(forms::BinaryForm f, std::optional<SolConditions> cond = std::nullopt);
  static DegreeSet unit_times_form(Int k, forms::BinaryForm f);
  static DegreeSet trivial_band() { return DegreeSet(TrivialBand{}); }

  const Node& node() const { return node_; }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(node_);
  }

 private:
  Node node_;
};

Membership contains(const DegreeSet& s, Int d);

/// Sorted members in [lo, hi]. Throws std::invalid_argument for lo > hi and
/// UnsupportedEnumeration when the trivial band occurs in the tree.
std::vector<Int> enumerate(const DegreeSet& s, Int lo, Int hi);

DegreeSet intersect(const DegreeSet& s, const DegreeSet& t);
DegreeSet unite(const DegreeSet& s, const DegreeSet& t);
DegreeSet negate(const DegreeSet& s);
/// {c s : s in S}; c must be nonzero.
DegreeSet scale(Int c, const DegreeSet& s);

/// Folds periodic parts of unions and intersections into one residue set at
/// least period, pushes negation into residue and finite sets, merges finite
/// parts and flattens nested unions/intersections. Membership is unchanged; form-based leaves stay
/// symbolic.
DegreeSet normalize(const DegreeSet& s);

/// Deterministic rendering in the grammar above.
std::string describe(const DegreeSet& s);

/// True when the trivial band appears anywhere in the tree.
bool has_trivial_band(const DegreeSet& s);

}  // namespace selfdeg::degset

#endif  // SELFDEG_DEGSET_HPP_
