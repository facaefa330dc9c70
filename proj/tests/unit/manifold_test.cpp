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

#include "selfdeg/manifold.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"

namespace selfdeg::manifold {
namespace {

ManifoldDesc sum(std::vector<Summand> s) { return ManifoldDesc{std::move(s)}; }
Prime lens(Int p, Int q, bool reversed = false) { return Spherical{Lens{p, q}, reversed}; }

bool has_message(const ManifoldDesc& m, const std::string& fragment) {
  for (const Violation& v : validate(m)) {
    if (v.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

TEST(Validate, AcceptsWellFormed) {
  EXPECT_TRUE(validate(ManifoldDesc::prime(lens(7, 3))).empty());
  EXPECT_TRUE(validate(ManifoldDesc::prime(Spherical{ProductZm{7, I120{}}})).empty());
  EXPECT_TRUE(validate(ManifoldDesc::prime(TorusBundle{2, 1, 1, 1})).empty());
  EXPECT_TRUE(validate(ManifoldDesc::prime(Seifert{2, true, {{1, 5}, {-2, 5}}})).empty());
}

TEST(Validate, ReportsEachProblem) {
  EXPECT_TRUE(has_message(ManifoldDesc::prime(lens(6, 3)), "gcd(p, q) = 3"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(lens(0, 1)), "p >= 1"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(Spherical{DStar{1}}), "D*(n) needs n >= 2"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(Spherical{DPrime{4, 1}}), "odd n >= 3"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(Spherical{ProductZm{5, I120{}}}), "coprime to the group order"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(TorusBundle{2, 1, 1, 2}), "det = 3"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(TorusSemiBundle{2, 0, 0, 2}), "canonical shape"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(Seifert{0, false, {}}), "nonorientable base"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(Seifert{0, true, {{2, 4}}}), "lowest terms"));
  EXPECT_TRUE(has_message(ManifoldDesc::prime(Seifert{0, true, {{1, 0}}}), "positive denominator"));
  EXPECT_TRUE(has_message(sum({{lens(3, 1), 0}}), "multiplicit"));
  const auto v = validate(sum({{lens(3, 1), 1}, {lens(4, 2), 1}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.front().summand, 1u);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(ManifoldDesc::prime(lens(7, -4))), ManifoldDesc::prime(lens(7, 3)));
  EXPECT_EQ(canonicalize(ManifoldDesc::prime(lens(7, 2, true))), ManifoldDesc::prime(lens(7, 5)));
  EXPECT_EQ(canonicalize(sum({{lens(7, 3), 1}, {lens(1, 0), 1}, {lens(7, 10), 1}})), sum({{lens(7, 3), 2}}));
  EXPECT_EQ(canonicalize(sum({{lens(1, 0), 3}})), ManifoldDesc::prime(lens(1, 0)));
  const Seifert s = std::get<Seifert>(
      canonicalize(ManifoldDesc::prime(Seifert{0, true, {{1, 6}, {1, 2}, {-1, 3}}})).prime_piece());
  EXPECT_EQ(s.slopes, (std::vector<Slope>{{1, 2}, {-1, 3}, {1, 6}}));
}

TEST(Canonicalize, IdempotentAndOrderFree) {
  testing::Gen gen(17);
  for (int i = 0; i < 200; ++i) {
    ManifoldDesc m = gen.spherical_sum();
    const ManifoldDesc c = canonicalize(m);
    ASSERT_EQ(canonicalize(c), c);
    std::reverse(m.summands.begin(), m.summands.end());
    ASSERT_EQ(canonicalize(m), c);
  }
}

TEST(Invariants, EulerNumberAndChi) {
  const Seifert ex{2, true, {{1, 5}, {1, 5}, {-2, 5}, {1, 7}, {2, 7}, {-3, 7}}};
  EXPECT_EQ(euler_number(ex), Rational(0));
  EXPECT_EQ(orbifold_chi(ex), Rational(-2) - Rational(4, 5) * 3 - Rational(6, 7) * 3);
  const Seifert nil{0, true, {{1, 2}, {1, 3}, {1, 6}}};
  EXPECT_EQ(euler_number(nil), Rational(1));
  EXPECT_EQ(orbifold_chi(nil), Rational(0));
  EXPECT_EQ(orbifold_chi(Seifert{1, false, {}}), Rational(1));
  EXPECT_EQ(orbifold_chi(Seifert{2, false, {}}), Rational(0));
}

TEST(Classify, Geometries) {
  EXPECT_EQ(classify(ManifoldDesc::prime(lens(5, 2))), Geometry::kS3);
  EXPECT_EQ(classify(ManifoldDesc::prime(S2xS1{})), Geometry::kS2xE1);
  EXPECT_EQ(classify(sum({{lens(2, 1), 2}})), Geometry::kS2xE1);
  EXPECT_EQ(classify(sum({{lens(3, 1), 1}, {lens(5, 1), 1}})), Geometry::kNonPrime);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusBundle{1, 0, 0, 1})), Geometry::kE3);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusBundle{0, -1, 1, 0})), Geometry::kE3);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusBundle{1, 3, 0, 1})), Geometry::kNil);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusBundle{2, 1, 1, 1})), Geometry::kSol);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusSemiBundle{0, 1, 1, 0})), Geometry::kE3);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusSemiBundle{1, 2, 0, 1})), Geometry::kNil);
  EXPECT_EQ(classify(ManifoldDesc::prime(TorusSemiBundle{1, 2, 1, 3})), Geometry::kSol);
  EXPECT_EQ(classify(ManifoldDesc::prime(Seifert{0, true, {{1, 2}, {1, 3}, {1, 6}}})), Geometry::kNil);
  EXPECT_EQ(classify(ManifoldDesc::prime(Seifert{2, true, {{1, 5}, {-1, 5}}})), Geometry::kH2xE1);
  EXPECT_EQ(classify(ManifoldDesc::prime(Seifert{2, true, {{1, 5}}})), Geometry::kPslOrOther);
  EXPECT_THROW(classify(ManifoldDesc::prime(Seifert{0, true, {{1, 2}, {1, 3}}})), InvalidManifold);
  EXPECT_THROW(classify(ManifoldDesc::prime(Seifert{1, true, {}})), InvalidManifold);
  EXPECT_THROW(classify(ManifoldDesc::prime(lens(4, 2))), InvalidManifold);
  EXPECT_EQ(to_string(Geometry::kPslOrOther), "PSL-or-other");
}

TEST(Classify, GeneratorsLandInTheirClass) {
  testing::Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(classify(ManifoldDesc::prime(gen.sol_bundle())), Geometry::kSol);
    EXPECT_EQ(classify(ManifoldDesc::prime(gen.nil_seifert())), Geometry::kNil);
    EXPECT_EQ(classify(ManifoldDesc::prime(gen.h2e1_seifert())), Geometry::kH2xE1);
    EXPECT_EQ(classify(ManifoldDesc::prime(gen.psl_seifert())), Geometry::kPslOrOther);
    EXPECT_TRUE(validate(ManifoldDesc::prime(gen.semibundle())).empty());
    EXPECT_TRUE(validate(gen.spherical_prime()).empty());
  }
}

TEST(FiniteOrder, MatchesMatrixPowers) {
  testing::Gen gen(29);
  for (int i = 0; i < 300; ++i) {
    const TorusBundle m = gen.torus_bundle();
    Int a = 1, b = 0, c = 0, d = 1;
    std::optional<int> order;
    for (int k = 1; k <= 6; ++k) {
      const Int na = a * m.a + b * m.c, nb = a * m.b + b * m.d;
      const Int nc = c * m.a + d * m.c, nd = c * m.b + d * m.d;
      a = na, b = nb, c = nc, d = nd;
      if (a == 1 && b == 0 && c == 0 && d == 1) {
        order = k;
        break;
      }
    }
    ASSERT_EQ(finite_order(m), order) << m.a << " " << m.b << " " << m.c << " " << m.d;
  }
}

TEST(Shapes, SemiBundlesAndNilTriples) {
  EXPECT_EQ(semibundle_shape({1, 0, 0, 1}), SemiBundleShape::kIdentity);
  EXPECT_EQ(semibundle_shape({0, 1, 1, 0}), SemiBundleShape::kSwap);
  EXPECT_EQ(semibundle_shape({1, 0, 3, 1}), SemiBundleShape::kLowerShear);
  EXPECT_EQ(semibundle_shape({0, 1, 1, -2}), SemiBundleShape::kSwapShear);
  EXPECT_EQ(semibundle_shape({1, 4, 0, 1}), SemiBundleShape::kUpperShear);
  EXPECT_EQ(semibundle_shape({2, 3, 1, 2}), SemiBundleShape::kSol);
  EXPECT_FALSE(semibundle_shape({2, 3, 1, 1}).has_value());
  EXPECT_EQ(nil_triple(Seifert{0, true, {{1, 4}, {1, 2}, {1, 4}}}), (std::vector<Int>{2, 4, 4}));
  EXPECT_FALSE(nil_triple(Seifert{0, true, {{1, 2}, {1, 3}, {1, 7}}}).has_value());
  EXPECT_TRUE(is_rp3_sum(canonicalize(sum({{lens(2, 1), 1}, {lens(2, 1), 1}}))));
  EXPECT_FALSE(is_rp3_sum(canonicalize(sum({{lens(2, 1), 3}}))));
}

}  // namespace
}  // namespace selfdeg::manifold
