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

#ifndef SELFDEG_MANIFOLD_HPP_
#define SELFDEG_MANIFOLD_HPP_

// Coordinate descriptions of closed orientable 3-manifolds in the classes the
// calculator covers: spherical space forms, S2 x S1, connected sums of those,
// torus bundles and semi-bundles given by their gluing matrix, and Seifert
// fibered spaces given by base genus and exceptional slopes.
//
// A ManifoldDesc is a list of summands with multiplicities. One summand of
// multiplicity one is a prime manifold; anything else is a connected sum.

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "selfdeg/numth.hpp"

namespace selfdeg::manifold {

using numth::Int;
using Rational = boost::rational<Int>;

// Finite fundamental groups of spherical space forms.

struct Lens {
  Int p, q;
  auto operator<=>(const Lens&) const = default;
};
struct DStar {  // binary dihedral, order 4n
  Int n;
  auto operator<=>(const DStar&) const = default;
};
struct T24 {
  auto operator<=>(const T24&) const = default;
};
struct O48 {
  auto operator<=>(const O48&) const = default;
};
struct I120 {
  auto operator<=>(const I120&) const = default;
};
struct TPrime {  // order 8 * 3^q
  Int q;
  auto operator<=>(const TPrime&) const = default;
};
struct DPrime {  // order n' * 2^q
  Int n_prime, q;
  auto operator<=>(const DPrime&) const = default;
};

/// The non-cyclic groups that may appear as the second factor of Z_m x G.
using NonCyclicGroup = std::variant<DStar, T24, O48, I120, TPrime, DPrime>;

struct ProductZm {  // Z_m x inner, gcd(m, |inner|) = 1
  Int m;
  NonCyclicGroup inner;
  auto operator<=>(const ProductZm&) const = default;
};

using SphericalGroup = std::variant<Lens, DStar, T24, O48, I120, TPrime, DPrime, ProductZm>;

/// Group order; throws std::overflow_error when it exceeds 64 bits.
Int order(const SphericalGroup& g);
Int order(const NonCyclicGroup& g);

// Prime pieces.

struct S2xS1 {
  auto operator<=>(const S2xS1&) const = default;
};
struct Spherical {
  SphericalGroup group;
  bool reversed = false;
  auto operator<=>(const Spherical&) const = default;
};
struct TorusBundle {
  Int a, b, c, d;
  auto operator<=>(const TorusBundle&) const = default;
};
struct TorusSemiBundle {
  Int a, b, c, d;
  auto operator<=>(const TorusSemiBundle&) const = default;
};
struct Slope {
  Int beta, alpha;
  auto operator<=>(const Slope&) const = default;
};
struct Seifert {
  Int genus;
  bool orientable_base;
  std::vector<Slope> slopes;
  auto operator<=>(const Seifert&) const = default;
};

using Prime = std::variant<S2xS1, Spherical, TorusBundle, TorusSemiBundle, Seifert>;

struct Summand {
  Prime piece;
  Int multiplicity = 1;
  auto operator<=>(const Summand&) const = default;
};

struct ManifoldDesc {
  std::vector<Summand> summands;

  static ManifoldDesc prime(Prime p) { return ManifoldDesc{{Summand{std::move(p), 1}}}; }

  bool is_prime() const { return summands.size() == 1 && summands.front().multiplicity == 1; }
  const Prime& prime_piece() const { return summands.front().piece; }

  auto operator<=>(const ManifoldDesc&) const = default;
};

enum class Geometry { kS3, kS2xE1, kE3, kNil, kSol, kH2xE1, kPslOrOther, kNonPrime };

/// "S3", "S2xE1", "E3", "Nil", "Sol", "H2xE1", "PSL-or-other", "NonPrime".
std::string to_string(Geometry g);

struct Violation {
  std::size_t summand;  // index into ManifoldDesc::summands
  std::string message;
};

/// Empty iff the descriptor satisfies every structural constraint.
std::vector<Violation> validate(const ManifoldDesc& desc);

/// Raised by operations that need a valid descriptor, and by classify for
/// Seifert data whose geometry has its own dedicated syntax.
class InvalidManifold : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lens q reduced into [0, p), reversed lenses rewritten as L(p, p - q),
/// Seifert slopes sorted, S3 summands of a sum dropped, summands sorted with
/// multiplicities merged. Idempotent.
ManifoldDesc canonicalize(const ManifoldDesc& desc);

/// Sum of beta/alpha, exact.
Rational euler_number(const Seifert& s);
/// Euler characteristic of the base orbifold, exact.
Rational orbifold_chi(const Seifert& s);

/// Semi-bundle gluing shapes in canonical coordinates.
enum class SemiBundleShape { kIdentity, kSwap, kLowerShear, kSwapShear, kUpperShear, kSol };
std::optional<SemiBundleShape> semibundle_shape(const TorusSemiBundle& m);

/// Exceptional fiber orders of a Nil Seifert space with one of the three
/// supported triples, sorted ascending; nullopt otherwise.
std::optional<std::vector<Int>> nil_triple(const Seifert& s);

/// Order of a finite-order monodromy (1, 2, 3, 4 or 6), nullopt otherwise.
std::optional<int> finite_order(const TorusBundle& m);

/// True for L(2,1) # L(2,1).
bool is_rp3_sum(const ManifoldDesc& canonical);

/// Throws InvalidManifold when validation fails or a Seifert descriptor
/// belongs to a geometry that must be entered with another syntax.
Geometry classify(const ManifoldDesc& desc);

}  // namespace selfdeg::manifold

#endif  // SELFDEG_MANIFOLD_HPP_
