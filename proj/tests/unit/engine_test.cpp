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

#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"

namespace selfdeg::engine {
namespace {

using manifold::Spherical;
using manifold::SphericalGroup;
using manifold::Summand;

std::set<Int> unit_squares(Int p) {
  std::set<Int> out;
  for (Int k = 0; k < p; ++k) {
    if (numth::gcd(k, p) == 1) out.insert(k * k % p);
  }
  return out;
}

// Pointwise comparison of a set with an oracle that is periodic mod n.
template <class Pred>
void expect_periodic(const DegreeSet& s, Int n, Pred oracle) {
  for (Int x = -2 * n; x <= 2 * n; ++x) {
    ASSERT_EQ(degset::contains(s, x) == Membership::kYes, oracle(numth::mod(x, n))) << degset::describe(s) << " " << x;
  }
}

ManifoldDesc lens_sum(Int p, const std::vector<Int>& qs) {
  ManifoldDesc m;
  for (Int q : qs) m.summands.push_back({Spherical{manifold::Lens{p, q}}, 1});
  return m;
}

TEST(Spherical, IsoDegreesAreUnitSquares) {
  for (Int p = 1; p <= 40; ++p) {
    const std::set<Int> sq = unit_squares(p);
    expect_periodic(d_iso_spherical(SphericalGroup(manifold::Lens{p, 1})), p, [&](Int r) { return sq.count(r) > 0; });
  }
  const std::set<Int> i120 = unit_squares(120);
  expect_periodic(d_iso_spherical(SphericalGroup(manifold::I120{})), 120, [&](Int r) { return i120.count(r) > 0; });
}

TEST(Spherical, BinaryDihedralFromDefinition) {
  for (Int n = 2; n <= 15; ++n) {
    std::set<Int> want{0, numth::mod(n * n, 4 * n)};
    for (Int h = 1; h < 4 * n; h += 2) want.insert(h * h % (4 * n));
    expect_periodic(d_spherical(SphericalGroup(manifold::DStar{n})), 4 * n, [&](Int r) { return want.count(r) > 0; });
  }
}

TEST(Spherical, LensIgnoresQAndContainsIso) {
  testing::Gen gen(31);
  for (int i = 0; i < 60; ++i) {
    const SphericalGroup g = gen.spherical_group();
    const DegreeSet full = d_spherical(g);
    const DegreeSet iso = d_iso_spherical(g);
    const Int n = manifold::order(g);
    for (Int x = -n; x <= n; ++x) {
      if (degset::contains(iso, x) == Membership::kYes) {
        ASSERT_EQ(degset::contains(full, x), Membership::kYes);
      }
    }
    ASSERT_EQ(degset::contains(full, 0), Membership::kYes);
    ASSERT_EQ(degset::contains(full, 1), Membership::kYes);
  }
  EXPECT_EQ(degset::describe(d_spherical(SphericalGroup(manifold::Lens{9, 2}))),
            degset::describe(d_spherical(SphericalGroup(manifold::Lens{9, 4}))));
}

TEST(Spherical, ProductWithCyclicFactor) {
  const DegreeSet z7 = d_spherical(SphericalGroup(manifold::ProductZm{7, manifold::I120{}}));
  const std::set<Int> sq7{0, 1, 2, 4};
  expect_periodic(z7, 840, [&](Int r) {
    const Int s = r % 120;
    return (s == 0 || s == 1 || s == 49) && sq7.count(r % 7) > 0;
  });
}

TEST(Spherical, ClosedUnderProducts) {
  testing::Gen gen(37);
  for (int i = 0; i < 40; ++i) {
    const SphericalGroup g = gen.spherical_group();
    const DegreeSet d = d_spherical(g);
    ASSERT_TRUE(d.is<degset::Periodic>() || d.is<degset::AllIntegers>());
    const Int n = manifold::order(g);
    std::vector<Int> members;
    for (Int x = 0; x < std::min<Int>(n, 400); ++x) {
      if (degset::contains(d, x) == Membership::kYes) members.push_back(x);
    }
    for (Int x : members) {
      for (Int y : members) ASSERT_EQ(degset::contains(d, x * y), Membership::kYes);
    }
  }
}

TEST(LensSums, PairDegreesFromDefinition) {
  for (Int p = 2; p <= 25; ++p) {
    for (Int q = 1; q < p; ++q) {
      if (numth::gcd(p, q) != 1) continue;
      for (Int q2 = 1; q2 < p; ++q2) {
        if (numth::gcd(p, q2) != 1) continue;
        std::set<Int> want;
        for (Int k = 1; k < p; ++k) {
          if (numth::gcd(k, p) == 1) want.insert(numth::mod(k * k * numth::inverse_mod(q, p) * q2, p));
        }
        expect_periodic(d_iso_lens_pair(p, q, q2), p, [&](Int r) { return want.count(r) > 0; });
      }
    }
  }
  EXPECT_THROW(d_iso_lens_pair(6, 2, 1), std::invalid_argument);
}

TEST(LensSums, PartitionStabilizerFromDefinition) {
  // A unit k is allowed iff multiplying by k preserves how many summands fall
  // in each square class.
  testing::Gen gen(41);
  for (int i = 0; i < 150; ++i) {
    const Int p = gen.uniform(3, 40);
    std::vector<Int> qs;
    for (Int j = gen.uniform(1, 5); j > 0; --j) qs.push_back(gen.coprime_to(p, 1, p - 1));
    const std::set<Int> sq = unit_squares(p);
    const auto same_class = [&](Int x, Int y) {
      return sq.count(numth::mod(x * numth::inverse_mod(y, p), p)) > 0;
    };
    const auto count = [&](Int x) {
      Int c = 0;
      for (Int q : qs) c += same_class(q, x) ? 1 : 0;
      return c;
    };
    const UnitClassData data = lens_class_partition(p, qs);
    for (Int k = 0; k < p; ++k) {
      bool allowed = numth::gcd(k, p) == 1;
      for (Int x = 1; x < p && allowed; ++x) {
        if (numth::gcd(x, p) == 1) allowed = count(x) == count(numth::mod(k * x, p));
      }
      ASSERT_EQ(data.preimage.contains(k), allowed) << "p=" << p << " k=" << k;
    }
    expect_periodic(d_connected_sum(manifold::canonicalize(lens_sum(p, qs))), p,
                    [&](Int r) { return data.preimage.contains(r); });
  }
}

TEST(LensSums, PartitionBookkeeping) {
  const UnitClassData d = lens_class_partition(7, {1, 2, 3, 3});
  // Square classes mod 7: {1, 2, 4} and {3, 5, 6}.
  EXPECT_EQ(d.counts, (std::map<Int, Int>{{1, 2}, {3, 2}}));
  EXPECT_EQ(d.b_sets.at(2), (std::vector<Int>{1, 3}));
  EXPECT_EQ(d.stabilizer, (std::vector<Int>{1, 3}));
  EXPECT_THROW(lens_class_partition(6, {2}), std::invalid_argument);
}

TEST(ConnectedSums, MixedAndTrivialCases) {
  ManifoldDesc m{{{Spherical{manifold::Lens{5, 1}}, 1}, {manifold::S2xS1{}, 1}}};
  EXPECT_TRUE(degset::has_trivial_band(degrees(ManifoldDesc{{{manifold::TorusBundle{2, 1, 1, 1}, 1},
                                                             {Spherical{manifold::Lens{3, 1}}, 1}}})));
  EXPECT_TRUE(degrees(ManifoldDesc{{{manifold::S2xS1{}, 3}}}).is<degset::AllIntegers>());
  expect_periodic(degrees(m), 5, [](Int r) { return r == 1 || r == 4; });
  // An oriented pair of non-lens pieces admits -1 exactly when the counts agree.
  const ManifoldDesc balanced{{{Spherical{manifold::I120{}, false}, 1}, {Spherical{manifold::I120{}, true}, 1}}};
  const ManifoldDesc skewed{{{Spherical{manifold::I120{}, false}, 2}, {Spherical{manifold::I120{}, true}, 1}}};
  EXPECT_EQ(minus_one_in(balanced), Membership::kYes);
  EXPECT_EQ(minus_one_in(skewed), Membership::kNo);
  EXPECT_THROW(d_iso_oriented_pair_group(SphericalGroup(manifold::Lens{5, 1}), 1, 1), std::invalid_argument);
}

TEST(Bundles, FiniteOrderAndNil) {
  EXPECT_TRUE(d_torus_bundle({1, 0, 0, 1}).is<degset::AllIntegers>());
  EXPECT_TRUE(d_torus_bundle({-1, 0, 0, -1}).is<degset::AllIntegers>());
  EXPECT_EQ(degset::describe(d_torus_bundle({0, -1, 1, 0})), "{ (4t+1)(p^2 + q^2) : t, p, q ∈ Z }");
  EXPECT_EQ(degset::describe(d_torus_bundle({0, -1, 1, 1})), "{ (6t+1)(p^2 - pq + q^2) : t, p, q ∈ Z }");
  EXPECT_EQ(degset::describe(d_torus_bundle({1, 5, 0, 1})), "{ l^2 : l ∈ Z }");
  EXPECT_EQ(degset::describe(d_torus_bundle({-1, 0, 3, -1})), "{ l^2 : l ∈ Z }");
  EXPECT_THROW(d_torus_bundle({2, 1, 1, 2}), manifold::InvalidManifold);
}

TEST(Bundles, SolMinusOne) {
  EXPECT_EQ(minus_one_in(ManifoldDesc::prime(manifold::TorusBundle{2, 1, 1, 1})), Membership::kYes);
  EXPECT_EQ(minus_one_in(ManifoldDesc::prime(manifold::TorusBundle{2, 3, 1, 2})), Membership::kNo);
}

TEST(SemiBundles, Shapes) {
  EXPECT_TRUE(d_torus_semibundle({1, 0, 0, 1}).is<degset::AllIntegers>());
  expect_periodic(d_torus_semibundle({0, 1, 1, 0}), 2, [](Int r) { return r == 1; });
  EXPECT_EQ(degset::describe(d_torus_semibundle({1, 0, 2, 1})), "{ l^2 : l ∈ Z }");
  EXPECT_EQ(degset::describe(d_torus_semibundle({1, 2, 0, 1})), "{ l^2 : l odd }");
  EXPECT_EQ(degset::describe(d_torus_semibundle({1, 2, 1, 3})), "{ l^2 : l odd } ∪ (3 * { l^2 : l odd })");
  EXPECT_EQ(degset::describe(d_torus_semibundle({2, 3, 1, 2})), "{ l^2 : l odd }");
}

TEST(Seifert, NilTriples) {
  using manifold::Seifert;
  EXPECT_EQ(degset::describe(d_nil_seifert(Seifert{0, true, {{1, 3}, {1, 3}, {1, 3}}})),
            "{ l^2 : l = m^2+mn+n^2, l ≡ 1 (mod 3) }");
  EXPECT_EQ(degset::describe(d_nil_seifert(Seifert{0, true, {{1, 2}, {1, 4}, {1, 4}}})),
            "{ l^2 : l = m^2+n^2, l ≡ 1 (mod 4) }");
  EXPECT_THROW(d_nil_seifert(Seifert{0, true, {{1, 2}, {-1, 4}, {-1, 4}}}), manifold::InvalidManifold);
}

TEST(Seifert, ProductGeometryStabilizer) {
  using manifold::Seifert;
  // Betas 1 and 4 mod 5: multiplying by 1 or 4 swaps or fixes them.
  expect_periodic(d_h2e1(Seifert{2, true, {{1, 5}, {-1, 5}}}), 5, [](Int r) { return r == 1 || r == 4; });
  // Betas 1, 1, 3 mod 5 are hit twice and once; only 1 preserves that.
  expect_periodic(d_h2e1(Seifert{2, true, {{1, 5}, {1, 5}, {-2, 5}}}), 5, [](Int r) { return r == 1; });
  EXPECT_TRUE(degset::has_trivial_band(degrees(ManifoldDesc::prime(Seifert{2, true, {{1, 5}}}))));
}

TEST(Reversal, MatchesBruteForce) {
  for (Int p = 1; p <= 80; ++p) {
    bool minus_one_square = false;
    for (Int k = 0; k < p && !minus_one_square; ++k) minus_one_square = numth::mod(k * k + 1, p) == 0;
    for (Int q = 0; q < p; ++q) {
      if (numth::gcd(p, q) != 1) continue;
      const ReversalReport r = lens_reversal_report(p, q);
      ASSERT_EQ(r.has_degree_minus_one, minus_one_square) << p << "," << q;
      ASSERT_EQ(r.has_orientation_reversing_homeo, numth::mod(q * q + 1, p) == 0) << p << "," << q;
    }
  }
  EXPECT_THROW(lens_reversal_report(6, 2), std::invalid_argument);
  EXPECT_THROW(lens_reversal_report(0, 1), std::invalid_argument);
}

TEST(Dispatch, RpThreeSpecialCase) {
  const ManifoldDesc two{{{Spherical{manifold::Lens{2, 1}}, 2}}};
  const ManifoldDesc three{{{Spherical{manifold::Lens{2, 1}}, 3}}};
  EXPECT_TRUE(degrees(two).is<degset::AllIntegers>());
  EXPECT_EQ(degset::describe(degrees(three)), degset::describe(d_connected_sum(manifold::canonicalize(three))));
  EXPECT_EQ(minus_one_in(ManifoldDesc::prime(manifold::Seifert{2, true, {{1, 5}}})), Membership::kUnknown);
  EXPECT_THROW(degrees(ManifoldDesc::prime(Spherical{manifold::Lens{4, 2}})), manifold::InvalidManifold);
}

}  // namespace
}  // namespace selfdeg::engine
