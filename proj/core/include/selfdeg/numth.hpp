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

#ifndef SELFDEG_NUMTH_HPP_
#define SELFDEG_NUMTH_HPP_

// Exact elementary number theory on 64-bit integers: checked arithmetic,
// trial-division factorization, unit groups and periodic residue sets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace selfdeg::numth {

using Int = std::int64_t;
// Intermediate width for products of two Int values.
__extension__ typedef __int128 Wide;

// Checked 64-bit arithmetic. Every overflow throws std::overflow_error; the
// library never silently wraps.
Int add(Int a, Int b);
Int sub(Int a, Int b);
Int mul(Int a, Int b);
Int neg(Int a);

/// Least nonnegative residue of a modulo m (m >= 1).
Int mod(Int a, Int m);
/// (a * b) mod m without intermediate overflow.
Int mul_mod(Int a, Int b, Int m);
/// base^exp mod m for exp >= 0.
Int pow_mod(Int base, std::uint64_t exp, Int m);
/// Inverse of a modulo m; requires gcd(a, m) == 1.
Int inverse_mod(Int a, Int m);

Int gcd(Int a, Int b);
/// Nonnegative lcm; throws on overflow.
Int lcm(Int a, Int b);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(Int n);

/// Nonnegative square root of n when n is a perfect square.
std::optional<Int> is_perfect_square(Int n);

struct PrimePower {
  Int prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  Int n = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  /// Multiplies the prime powers back together (checked).
  Int value() const;
  /// Exponent of p in n (0 if p does not divide n).
  int exponent_of(Int p) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Trial-division factorization. Throws std::invalid_argument for n <= 0.
Factorization factorize(Int n);

/// Positive divisors of n >= 1, ascending.
std::vector<Int> divisors(Int n);

/// Root lists longer than this are rejected with std::length_error.
inline constexpr std::size_t kMaxSquareRoots = std::size_t{1} << 20;

/// Every x in [0, m) with x^2 = a (mod m), ascending, where m is the value of
/// the given factorization. Roots are found per prime power (Tonelli-Shanks
/// and Hensel lifting, or a scan when the power is small) and glued by CRT.
std::vector<Int> square_roots_mod(Int a, const Factorization& m);
std::vector<Int> square_roots_mod(Int a, Int m);

/// A set of integers closed under translation by `modulus`, stored as its
/// sorted, duplicate-free residues in [0, modulus). Modulus 1 with residue {0}
/// is the whole of Z.
class ResidueSet {
 public:
  /// The empty set, modulus 1.
  ResidueSet();
  /// Reduces and deduplicates `residues`. Throws std::invalid_argument when
  /// modulus < 1.
  ResidueSet(Int modulus, std::vector<Int> residues);

  static ResidueSet all_integers();
  static ResidueSet none(Int modulus = 1);

  Int modulus() const { return modulus_; }
  const std::vector<Int>& residues() const { return residues_; }
  std::size_t size() const { return residues_.size(); }
  bool empty() const { return residues_.empty(); }
  bool is_all_integers() const {
    return residues_.size() == static_cast<std::size_t>(modulus_);
  }

  bool contains(Int d) const;

  /// Same set written with a multiple of the current modulus.
  ResidueSet lifted(Int new_modulus) const;
  /// Same set written with its least period.
  ResidueSet reduced() const;
  /// {-d : d in this}.
  ResidueSet negated() const;

  /// Members of the set in [lo, hi], ascending.
  std::vector<Int> members_in(Int lo, Int hi) const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  Int modulus_;
  std::vector<Int> residues_;
};

/// {r in [0, m) : gcd(r, m) = 1}; units_mod(1) is {0} mod 1.
ResidueSet units_mod(Int m);

/// Intersection over the lcm of the two moduli; moduli need not be coprime.
ResidueSet crt_merge(const ResidueSet& a, const ResidueSet& b);

/// Union over the lcm of the two moduli.
ResidueSet residue_union(const ResidueSet& a, const ResidueSet& b);

/// Moduli beyond this bound are rejected by lifting operations.
inline constexpr Int kMaxResidueModulus = Int{1} << 28;

}  // namespace selfdeg::numth

#endif  // SELFDEG_NUMTH_HPP_
