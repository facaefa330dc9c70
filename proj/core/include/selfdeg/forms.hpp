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

#ifndef SELFDEG_FORMS_HPP_
#define SELFDEG_FORMS_HPP_

// Integer binary quadratic forms A x^2 + B xy + C y^2.
//
// Definite forms are handled by exact bounded enumeration (the level sets are
// ellipses), with the two model forms x^2 + xy + y^2 and x^2 + y^2 decided by
// their factorization criteria. Indefinite forms of non-square discriminant
// are decided by the classical route: every primitive representation of n
// corresponds to a root s of s^2 = D (mod 4|n|) for which (n, s, (s^2-D)/4n)
// is properly equivalent to the form, and proper equivalence is tested by
// walking cycles of reduced forms. Forms of square or zero discriminant are
// rejected.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "selfdeg/numth.hpp"

namespace selfdeg::forms {

using numth::Int;

struct Vec2 {
  Int x = 0;
  Int y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

/// Row-major 2x2 integer matrix (a b; c d), acting on column vectors.
struct Matrix2 {
  Int a = 1, b = 0, c = 0, d = 1;

  static Matrix2 identity() { return {1, 0, 0, 1}; }

  Int det() const;
  Int trace() const;
  Vec2 apply(Vec2 v) const;
  /// Inverse of a determinant +-1 matrix.
  Matrix2 inverse_unimodular() const;

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r);
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

class BinaryForm {
 public:
  BinaryForm(Int a, Int b, Int c);

  Int a() const { return a_; }
  Int b() const { return b_; }
  Int c() const { return c_; }
  Int discriminant() const { return discriminant_; }

  Int operator()(Int x, Int y) const;
  Int operator()(Vec2 v) const { return (*this)(v.x, v.y); }

  /// gcd(A, B, C), nonnegative.
  Int content() const;
  BinaryForm primitive_part() const;

  bool is_definite() const { return discriminant_ < 0; }
  /// Positive, non-square discriminant.
  bool is_indefinite() const;

  /// The form (x, y) -> f(M (x, y)).
  BinaryForm transformed(const Matrix2& m) const;

  /// e.g. "x^2 - xy - y^2"; the variable names are configurable.
  std::string to_string(std::string_view x = "x", std::string_view y = "y") const;

  friend bool operator==(const BinaryForm& l, const BinaryForm& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_;
  }
  friend auto operator<=>(const BinaryForm& l, const BinaryForm& r) {
    if (auto cmp = l.a_ <=> r.a_; cmp != 0) return cmp;
    if (auto cmp = l.b_ <=> r.b_; cmp != 0) return cmp;
    return l.c_ <=> r.c_;
  }

 private:
  Int a_, b_, c_;
  Int discriminant_;
};

/// Raised for forms whose discriminant is zero or a positive square.
class UnsupportedForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n = m^2 + mn + n^2 for some integers m, n.
bool is_loeschian(Int n);
/// n = m^2 + n^2 for some integers m, n.
bool is_sum_two_squares(Int n);

struct PellSolution {
  Int t;
  Int u;
};

/// Minimal positive solution of t^2 - D u^2 = 4 for positive non-square D,
/// read off the cycle of reduced principal forms.
PellSolution minimal_pell_solution(Int discriminant);

/// ((t - B u)/2, -C u; A u, (t + B u)/2) for the minimal Pell solution of the
/// form's own discriminant. Determinant 1, never +-identity, preserves f.
Matrix2 fundamental_automorph(const BinaryForm& f);

/// Generator (with -I) of the proper automorph group of f; this is the
/// fundamental automorph of the primitive part of f.
Matrix2 automorph_generator(const BinaryForm& f);

// Reduction theory for indefinite forms.

/// |sqrt(D) - 2|A|| < B < sqrt(D).
bool is_reduced(const BinaryForm& f);

struct Reduced {
  BinaryForm form;
  Matrix2 transform;  // original.transformed(transform) == form
};

/// Applies the reduction operator until the form is reduced.
Reduced reduce(const BinaryForm& f);

/// The cycle of reduced forms starting at a reduced form, each paired with the
/// matrix taking the start to it. The start appears first, once.
std::vector<Reduced> reduced_cycle(const BinaryForm& reduced_form);

/// A determinant-1 matrix M with f.transformed(M) == g, if one exists.
std::optional<Matrix2> proper_equivalence(const BinaryForm& f, const BinaryForm& g);

/// Solutions of f(x, y) = n up to the proper automorph group. For an
/// indefinite form this is one point per orbit (finitely many); for a definite
/// form it is every solution. n = 0 yields {(0, 0)}.
std::vector<Vec2> representation_orbits(const BinaryForm& f, Int n);

/// True iff f(x, y) = n has an integer solution.
bool represents(const BinaryForm& f, Int n);

/// Sorted n in [lo, hi] represented by f. Throws std::invalid_argument when
/// lo > hi.
std::vector<Int> form_values_in(const BinaryForm& f, Int lo, Int hi);

}  // namespace selfdeg::forms

#endif  // SELFDEG_FORMS_HPP_
