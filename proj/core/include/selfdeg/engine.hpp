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

#ifndef SELFDEG_ENGINE_HPP_
#define SELFDEG_ENGINE_HPP_

// Self-mapping degree sets D(M) per manifold class.
//
// Outputs are literal: where the closed formula for a class omits 0 (degree of
// a constant map), so does the returned set. Callers that want the full set
// unite with {0} themselves.

#include <map>
#include <vector>

#include "selfdeg/degset.hpp"
#include "selfdeg/manifold.hpp"
#include "selfdeg/numth.hpp"

namespace selfdeg::engine {

using degset::DegreeSet;
using degset::Membership;
using manifold::ManifoldDesc;
using numth::Int;
using numth::ResidueSet;

/// Squares of units modulo the group order.
DegreeSet d_iso_spherical(const manifold::SphericalGroup& g);

/// D of the spherical manifold with fundamental group g (orientation does not
/// matter for a prime piece).
DegreeSet d_spherical(const manifold::SphericalGroup& g);

/// Degrees of maps L(p,q) -> L(p,q') inducing isomorphisms: k^2 q^-1 q' mod p
/// over units k. Throws std::invalid_argument unless q and q' are units mod p.
DegreeSet d_iso_lens_pair(Int p, Int q, Int q_prime);

/// Bookkeeping behind the lens-sum and Seifert stabilizer constructions.
struct UnitClassData {
  Int modulus = 1;
  /// Class representative -> number of inputs landing in it. For lens sums the
  /// classes are cosets of the unit squares (represented by their least
  /// element); for Seifert data they are single units.
  std::map<Int, Int> counts;
  /// l -> classes hit exactly l times (l >= 1, nonempty only).
  std::map<Int, std::vector<Int>> b_sets;
  /// l -> classes c with c * B_l = B_l.
  std::map<Int, std::vector<Int>> c_sets;
  /// Intersection of every C_l, as class representatives.
  std::vector<Int> stabilizer;
  /// Units mod `modulus` whose class lies in the stabilizer.
  ResidueSet preimage;
};

/// Classes are cosets of U_p^2 in U_p. Throws std::invalid_argument when some
/// q is not a unit mod p.
UnitClassData lens_class_partition(Int p, const std::vector<Int>& qs);

/// Classes are the units mod alpha themselves; betas are reduced mod alpha.
UnitClassData unit_class_partition(Int alpha, const std::vector<Int>& betas);

/// D_iso of L(p,q_1) # ... # L(p,q_n): the preimage of the coset stabilizer.
DegreeSet d_iso_lens_group(Int p, const std::vector<Int>& qs);

/// D_iso of m P # n P-bar for a non-lens spherical P.
DegreeSet d_iso_oriented_pair_group(const manifold::SphericalGroup& g, Int m, Int n);

/// D of a connected sum of spherical pieces and copies of S2 x S1. Sums with
/// any other kind of piece yield the trivial band. Expects a canonical
/// descriptor that is not RP3 # RP3.
DegreeSet d_connected_sum(const ManifoldDesc& canonical);

DegreeSet d_torus_bundle(const manifold::TorusBundle& m);
DegreeSet d_torus_semibundle(const manifold::TorusSemiBundle& m);
DegreeSet d_nil_seifert(const manifold::Seifert& s);
DegreeSet d_h2e1(const manifold::Seifert& s);

/// Validates, canonicalizes and dispatches by class. Throws
/// manifold::InvalidManifold for invalid or unsupported input.
DegreeSet degrees(const ManifoldDesc& desc);

Membership minus_one_in(const ManifoldDesc& desc);

struct ReversalReport {
  bool has_degree_minus_one;
  bool has_orientation_reversing_homeo;
  bool every_degree_minus_one_homotopic_to_homeo;
};

/// Orientation-reversal predicates for L(p,q). Throws std::invalid_argument
/// when gcd(p, q) != 1 or p < 1.
ReversalReport lens_reversal_report(Int p, Int q);

}  // namespace selfdeg::engine

#endif  // SELFDEG_ENGINE_HPP_
