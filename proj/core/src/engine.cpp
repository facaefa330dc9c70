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

#include "selfdeg/engine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace selfdeg::engine {

using namespace manifold;  // NOLINT: descriptor types are used throughout
using degset::RootPredicate;
using forms::BinaryForm;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_modulus(Int n) {
  if (n > numth::kMaxResidueModulus) throw std::length_error("group order too large for residue tables");
}

std::vector<Int> squares_mod(Int n) {
  check_modulus(n);
  std::vector<Int> out;
  for (Int k = 0; k < n; ++k) out.push_back(numth::mul_mod(k, k, n));
  return out;
}

std::vector<Int> unit_squares_mod(Int n) {
  const ResidueSet units = numth::units_mod(n);
  std::vector<Int> out;
  for (Int u : units.residues()) out.push_back(numth::mul_mod(u, u, n));
  return out;
}

ResidueSet unit_squares(Int n) {
  check_modulus(n);
  return ResidueSet(n, unit_squares_mod(n));
}

DegreeSet periodic(Int n, std::vector<Int> residues) {
  return degset::normalize(DegreeSet::periodic(ResidueSet(n, std::move(residues))));
}

// Residues reachable from `seed` by repeated multiplication with `factors`.
std::vector<Int> multiplicative_closure(Int n, std::vector<Int> seed, const std::vector<Int>& factors) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Int> frontier;
  for (Int r : seed) {
    r = numth::mod(r, n);
    if (!seen[static_cast<std::size_t>(r)]) {
      seen[static_cast<std::size_t>(r)] = 1;
      frontier.push_back(r);
    }
  }
  std::vector<Int> out = frontier;
  while (!frontier.empty()) {
    std::vector<Int> next;
    for (Int r : frontier) {
      for (Int f : factors) {
        const Int v = numth::mul_mod(r, f, n);
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          next.push_back(v);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<Int> dstar_residues(Int n) {
  const Int big = numth::mul(4, n);
  check_modulus(big);
  std::vector<Int> out{0, numth::mul_mod(n, n, big)};
  for (Int h = 1; h < 2 * n; h += 2) out.push_back(numth::mul_mod(h, h, big));
  return out;
}

Int ipow(Int base, Int exp) {
  Int r = 1;
  for (Int i = 0; i < exp; ++i) r = numth::mul(r, base);
  return r;
}

std::vector<Int> tprime_residues(Int q) {
  const Int big = numth::mul(8, ipow(3, q));
  check_modulus(big);
  const Int tail = ipow(3, q % 2 == 0 ? q : q + 1);
  std::set<Int> multipliers;
  for (Int p = 1; p <= q; ++p) multipliers.insert(numth::mod(ipow(3, 2 * q - 2 * p) - tail, big));
  std::vector<char> seen(static_cast<std::size_t>(big), 0);
  for (Int k = 1; k < big; ++k) {
    if (k % 3 == 0) continue;
    const Int k2 = numth::mul_mod(k, k, big);
    for (Int v : multipliers) seen[static_cast<std::size_t>(numth::mul_mod(k2, v, big))] = 1;
  }
  std::vector<Int> out{0};
  for (Int r = 0; r < big; ++r) {
    if (seen[static_cast<std::size_t>(r)]) out.push_back(r);
  }
  for (Int r : unit_squares_mod(big)) out.push_back(r);
  return out;
}

std::vector<Int> dprime_residues(Int n_prime, Int q) {
  const Int big = numth::mul(n_prime, ipow(2, q));
  check_modulus(big);
  if (q >= 63) throw std::length_error("D'(n,q): q too large");
  const auto a_exp = (std::uint64_t{1} << static_cast<unsigned>(q)) - 1;
  const Int a = numth::mod(1 - numth::pow_mod(n_prime, a_exp, big), big);
  const std::vector<Int> squares = squares_mod(big);
  std::vector<char> seen(static_cast<std::size_t>(big), 0);
  for (Int p = 1; p <= q; ++p) {
    const Int e = (2 * p - q) * (n_prime - 1);
    if (e < 0) continue;  // 2 is not a unit mod n' 2^q
    const Int b = numth::mod(1 - numth::pow_mod(2, static_cast<std::uint64_t>(e), big), big);
    for (Int r : multiplicative_closure(big, squares, {a, b})) seen[static_cast<std::size_t>(r)] = 1;
  }
  std::vector<Int> out{0};
  for (Int r = 0; r < big; ++r) {
    if (seen[static_cast<std::size_t>(r)]) out.push_back(r);
  }
  for (Int r : unit_squares_mod(big)) out.push_back(r);
  return out;
}

ResidueSet noncyclic_residues(const NonCyclicGroup& g) {
  return std::visit(Overloaded{
                        [](const DStar& d) { return ResidueSet(4 * d.n, dstar_residues(d.n)); },
                        [](const T24&) { return ResidueSet(24, {0, 1, 16}); },
                        [](const O48&) { return ResidueSet(48, {0, 1, 25}); },
                        [](const I120&) { return ResidueSet(120, {0, 1, 49}); },
                        [](const TPrime& t) { return ResidueSet(order(NonCyclicGroup(t)), tprime_residues(t.q)); },
                        [](const DPrime& d) {
                          return ResidueSet(order(NonCyclicGroup(d)), dprime_residues(d.n_prime, d.q));
                        },
                    },
                    g);
}

// Counts are attached to class representatives produced by `rep`.
template <class Rep>
UnitClassData partition(Int modulus, const std::vector<Int>& classes, const std::map<Int, Int>& counts,
                        Rep rep) {
  UnitClassData out;
  out.modulus = modulus;
  out.counts = counts;
  for (const auto& [cls, n] : counts) {
    if (n > 0) out.b_sets[n].push_back(cls);
  }
  std::vector<Int> stabilizer = classes;
  for (const auto& [l, bl] : out.b_sets) {
    std::vector<Int> cl;
    for (Int c : classes) {
      const bool keeps = std::all_of(bl.begin(), bl.end(), [&](Int a) {
        return std::binary_search(bl.begin(), bl.end(), rep(numth::mul_mod(c, a, modulus)));
      });
      if (keeps) cl.push_back(c);
    }
    std::vector<Int> next;
    std::set_intersection(stabilizer.begin(), stabilizer.end(), cl.begin(), cl.end(), std::back_inserter(next));
    stabilizer = std::move(next);
    out.c_sets[l] = std::move(cl);
  }
  out.stabilizer = stabilizer;
  const ResidueSet units = numth::units_mod(modulus);
  std::vector<Int> pre;
  for (Int u : units.residues()) {
    if (std::binary_search(stabilizer.begin(), stabilizer.end(), rep(u))) pre.push_back(u);
  }
  out.preimage = ResidueSet(modulus, std::move(pre));
  return out;
}

void require_unit(Int v, Int modulus) {
  if (numth::gcd(v, modulus) != 1) throw std::invalid_argument("value is not a unit modulo " + std::to_string(modulus));
}

// Lens sum partition with weighted inputs (q, multiplicity).
UnitClassData lens_partition_weighted(Int p, const std::vector<std::pair<Int, Int>>& qs) {
  if (p < 1) throw std::invalid_argument("lens order must be positive");
  check_modulus(p);
  const std::vector<Int> units = numth::units_mod(p).residues();
  const std::vector<Int> sq = unit_squares_mod(p);
  std::map<Int, Int> rep_of;
  for (Int u : units) {
    Int best = u;
    for (Int s : sq) best = std::min(best, numth::mul_mod(u, s, p));
    rep_of[u] = best;
  }
  auto rep = [&](Int u) { return rep_of.at(numth::mod(u, p)); };
  std::set<Int> class_set;
  for (Int u : units) class_set.insert(rep(u));
  std::map<Int, Int> counts;
  for (Int c : class_set) counts[c] = 0;
  for (const auto& [q, mult] : qs) {
    require_unit(q, p);
    counts[rep(q)] = numth::add(counts[rep(q)], mult);
  }
  return partition(p, std::vector<Int>(class_set.begin(), class_set.end()), counts, rep);
}

bool is_lens(const SphericalGroup& g) { return std::holds_alternative<Lens>(g); }

DegreeSet sol_bundle(const TorusBundle& m) {
  const BinaryForm f(m.c, numth::sub(m.d, m.a), numth::neg(m.b));
  return DegreeSet::form_image(f, degset::SolConditions{m.a, m.b, m.c, m.d});
}

}  // namespace

DegreeSet d_iso_spherical(const SphericalGroup& g) { return degset::normalize(DegreeSet::periodic(unit_squares(order(g)))); }

DegreeSet d_spherical(const SphericalGroup& g) {
  return std::visit(Overloaded{
                        [](const Lens& l) { return periodic(l.p, squares_mod(l.p)); },
                        [](const ProductZm& z) {
                          const ResidueSet inner = noncyclic_residues(z.inner);
                          const ResidueSet squares(z.m, squares_mod(z.m));
                          return degset::normalize(DegreeSet::periodic(numth::crt_merge(inner, squares)));
                        },
                        [](const auto& other) {
                          return degset::normalize(DegreeSet::periodic(noncyclic_residues(NonCyclicGroup(other))));
                        },
                    },
                    g);
}

DegreeSet d_iso_lens_pair(Int p, Int q, Int q_prime) {
  if (p < 1) throw std::invalid_argument("lens order must be positive");
  require_unit(q, p);
  require_unit(q_prime, p);
  check_modulus(p);
  const Int factor = numth::mul_mod(numth::inverse_mod(q, p), q_prime, p);
  std::vector<Int> out;
  for (Int s : unit_squares_mod(p)) out.push_back(numth::mul_mod(s, factor, p));
  return periodic(p, std::move(out));
}

UnitClassData lens_class_partition(Int p, const std::vector<Int>& qs) {
  std::vector<std::pair<Int, Int>> weighted;
  for (Int q : qs) weighted.emplace_back(q, 1);
  return lens_partition_weighted(p, weighted);
}

UnitClassData unit_class_partition(Int alpha, const std::vector<Int>& betas) {
  if (alpha < 1) throw std::invalid_argument("fiber order must be positive");
  check_modulus(alpha);
  const std::vector<Int> units = numth::units_mod(alpha).residues();
  std::map<Int, Int> counts;
  for (Int u : units) counts[u] = 0;
  for (Int b : betas) {
    require_unit(b, alpha);
    ++counts[numth::mod(b, alpha)];
  }
  return partition(alpha, units, counts, [alpha](Int u) { return numth::mod(u, alpha); });
}

DegreeSet d_iso_lens_group(Int p, const std::vector<Int>& qs) {
  if (qs.empty()) throw std::invalid_argument("lens group needs at least one summand");
  return degset::normalize(DegreeSet::periodic(lens_class_partition(p, qs).preimage));
}

DegreeSet d_iso_oriented_pair_group(const SphericalGroup& g, Int m, Int n) {
  if (is_lens(g)) throw std::invalid_argument("oriented pair group expects a non-lens spherical group");
  if (m < 0 || n < 0 || m + n < 1) throw std::invalid_argument("oriented pair group needs m, n >= 0, m + n >= 1");
  const DegreeSet iso = d_iso_spherical(g);
  if (m != n) return iso;
  return degset::normalize(degset::unite(iso, degset::negate(iso)));
}

DegreeSet d_connected_sum(const ManifoldDesc& canonical) {
  std::map<Int, std::vector<std::pair<Int, Int>>> lenses;
  std::map<SphericalGroup, std::pair<Int, Int>> others;  // group -> (m, n)
  for (const Summand& s : canonical.summands) {
    if (std::holds_alternative<S2xS1>(s.piece)) continue;
    const auto* sph = std::get_if<Spherical>(&s.piece);
    // Sums with aspherical pieces admit no degree > 1 self-map.
    if (sph == nullptr) return DegreeSet::trivial_band();
    if (const auto* l = std::get_if<Lens>(&sph->group)) {
      const Int q = sph->reversed ? l->p - l->q : l->q;
      lenses[l->p].emplace_back(q, s.multiplicity);
    } else {
      auto& [m, n] = others[sph->group];
      (sph->reversed ? n : m) = numth::add(sph->reversed ? n : m, s.multiplicity);
    }
  }
  std::vector<DegreeSet> parts;
  for (const auto& [g, mn] : others) parts.push_back(d_iso_oriented_pair_group(g, mn.first, mn.second));
  for (const auto& [p, qs] : lenses) {
    parts.push_back(degset::normalize(DegreeSet::periodic(lens_partition_weighted(p, qs).preimage)));
  }
  if (parts.empty()) return DegreeSet::all_integers();
  return degset::normalize(DegreeSet(degset::Intersection{std::move(parts)}));
}

DegreeSet d_torus_bundle(const TorusBundle& m) {
  if (numth::sub(numth::mul(m.a, m.d), numth::mul(m.b, m.c)) != 1) {
    throw InvalidManifold("torus bundle monodromy must have determinant 1");
  }
  if (const auto k = finite_order(m)) {
    if (*k <= 2) return DegreeSet::all_integers();
    const Int delta = *k == 4 ? 0 : 1;
    return DegreeSet::unit_times_form(*k, BinaryForm(1, -delta, 1));
  }
  const Int tr = m.a + m.d;
  if (tr == 2 || tr == -2) return DegreeSet::squares_of(RootPredicate::kAny);
  return sol_bundle(m);
}

DegreeSet d_torus_semibundle(const TorusSemiBundle& m) {
  const auto shape = semibundle_shape(m);
  if (!shape) throw InvalidManifold("semi-bundle matrix is not in a canonical shape");
  switch (*shape) {
    case SemiBundleShape::kIdentity:
      return DegreeSet::all_integers();
    case SemiBundleShape::kSwap:
      return DegreeSet::periodic(ResidueSet(2, {1}));
    case SemiBundleShape::kLowerShear:
      return DegreeSet::squares_of(RootPredicate::kAny);
    case SemiBundleShape::kSwapShear:
    case SemiBundleShape::kUpperShear:
      return DegreeSet::squares_of(RootPredicate::kOdd);
    case SemiBundleShape::kSol:
      break;
  }
  const Int g = numth::gcd(m.a, m.d);
  const Int delta = numth::mul(m.a / g, m.d / g);
  const DegreeSet odd = DegreeSet::squares_of(RootPredicate::kOdd);
  if (delta % 2 == 0 || delta == 1) return odd;
  return degset::unite(odd, degset::scale(delta, odd));
}

DegreeSet d_nil_seifert(const Seifert& s) {
  const auto triple = nil_triple(s);
  if (!triple || euler_number(s) == Rational(0)) {
    throw InvalidManifold("SF: not one of the Nil Seifert shapes (0; b/2,b/3,b/6), (0; b/3,b/3,b/3), "
                          "(0; b/2,b/4,b/4) with e != 0; use TB[...] or TSB[...]");
  }
  if ((*triple)[2] == 6) return DegreeSet::squares_of(RootPredicate::kLoeschianOneModSix);
  if ((*triple)[0] == 3) return DegreeSet::squares_of(RootPredicate::kLoeschianOneModThree);
  return DegreeSet::squares_of(RootPredicate::kTwoSquareOneModFour);
}

DegreeSet d_h2e1(const Seifert& s) {
  if (euler_number(s) != Rational(0) || orbifold_chi(s) >= Rational(0)) {
    throw InvalidManifold("SF: H2xE1 needs e = 0 and negative orbifold Euler characteristic");
  }
  std::map<Int, std::vector<Int>> by_alpha;
  for (const Slope& sl : s.slopes) {
    if (sl.alpha >= 2) by_alpha[sl.alpha].push_back(sl.beta);
  }
  ResidueSet acc = ResidueSet::all_integers();
  for (const auto& [alpha, betas] : by_alpha) acc = numth::crt_merge(acc, unit_class_partition(alpha, betas).preimage);
  return degset::normalize(DegreeSet::periodic(acc));
}

DegreeSet degrees(const ManifoldDesc& desc) {
  const Geometry geometry = classify(desc);  // validates
  const ManifoldDesc c = canonicalize(desc);
  if (is_rp3_sum(c)) return DegreeSet::all_integers();
  if (!c.is_prime()) return degset::normalize(d_connected_sum(c));
  const DegreeSet out = std::visit(
      Overloaded{
          [](const S2xS1&) { return DegreeSet::all_integers(); },
          [](const Spherical& s) { return d_spherical(s.group); },
          [](const TorusBundle& m) { return d_torus_bundle(m); },
          [](const TorusSemiBundle& m) { return d_torus_semibundle(m); },
          [geometry](const Seifert& s) {
            switch (geometry) {
              case Geometry::kNil:
                return d_nil_seifert(s);
              case Geometry::kH2xE1:
                return d_h2e1(s);
              default:
                return DegreeSet::trivial_band();
            }
          },
      },
      c.prime_piece());
  return degset::normalize(out);
}

Membership minus_one_in(const ManifoldDesc& desc) { return degset::contains(degrees(desc), -1); }

ReversalReport lens_reversal_report(Int p, Int q) {
  if (p < 1) throw std::invalid_argument("lens order must be positive");
  if (numth::gcd(p, q) != 1) throw std::invalid_argument("gcd(p, q) must be 1");
  const numth::Factorization f = numth::factorize(p);
  const bool odd_primes_ok = std::all_of(f.factors.begin(), f.factors.end(), [](const numth::PrimePower& pp) {
    return pp.prime == 2 || pp.prime % 4 == 1;
  });
  ReversalReport r{};
  r.has_degree_minus_one = p % 4 != 0 && odd_primes_ok;
  r.has_orientation_reversing_homeo = numth::mod(numth::add(numth::mul_mod(q, q, p), 1), p) == 0;
  const int two = f.exponent_of(2);
  const std::size_t odd_count = f.factors.size() - (two > 0 ? 1 : 0);
  const bool shape = two <= 1 && odd_count <= 1 && odd_primes_ok;
  r.every_degree_minus_one_homotopic_to_homeo = r.has_orientation_reversing_homeo && shape;
  if (r.has_orientation_reversing_homeo && !r.has_degree_minus_one) {
    throw std::logic_error("reversal report: homeomorphism without a degree -1 map");
  }
  if (r.every_degree_minus_one_homotopic_to_homeo && r.has_degree_minus_one && !r.has_orientation_reversing_homeo) {
    throw std::logic_error("reversal report: inconsistent homotopy flag");
  }
  return r;
}

}  // namespace selfdeg::engine
