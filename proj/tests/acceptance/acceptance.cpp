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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Reference values that can be recomputed are
// recomputed here by brute force before they are compared.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "selfdeg/degset.hpp"
#include "selfdeg/dsl.hpp"
#include "selfdeg/engine.hpp"
#include "selfdeg/forms.hpp"
#include "selfdeg/manifold.hpp"

namespace {

using namespace selfdeg;
using degset::DegreeSet;
using degset::Membership;
using numth::Int;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why << what;
    }
  }
};

manifold::ManifoldDesc parse_or_die(const std::string& text) {
  dsl::ParseResult r = dsl::parse(text);
  if (!r.ok()) {
    std::cerr << "cannot parse '" << text << "'\n";
    std::exit(2);
  }
  return *r.desc;
}

DegreeSet degrees_of(const std::string& text) { return engine::degrees(parse_or_die(text)); }

// Exact comparison against a residue set: the computed set must itself be a
// single periodic leaf and agree on every residue.
bool is_periodic_set(const DegreeSet& s, const numth::ResidueSet& want) {
  numth::ResidueSet got;
  if (s.is<degset::AllIntegers>()) {
    got = numth::ResidueSet::all_integers();
  } else if (s.is<degset::Periodic>()) {
    got = s.as<degset::Periodic>().residues;
  } else {
    return false;
  }
  return got.reduced() == want.reduced();
}

std::vector<Int> brute_squares_mod(Int p) {
  std::set<Int> out;
  for (Int k = 0; k < p; ++k) out.insert(k * k % p);
  return {out.begin(), out.end()};
}

Check mod_840_sum() {
  Check c;
  const DegreeSet d = degrees_of("I120 # ~I120 # L(7,1) # L(7,2) # 2*L(7,3)");
  const numth::ResidueSet want(840, {1, 71, 121, 169, 191, 239, 241, 289, 311, 359, 361, 409, 431, 479, 481, 529, 551,
                                     599, 601, 649, 671, 719, 769, 839});
  c.require(is_periodic_set(d, want), "residues differ: " + degset::describe(d));
  c.require(degset::describe(d) == degset::describe(DegreeSet::periodic(want)), "description differs");
  return c;
}

Check mod_840_sum_without_minus_one() {
  Check c;
  const std::string text = "2*I120 # ~I120 # L(7,1) # L(7,2) # L(7,3)";
  const DegreeSet d = degrees_of(text);
  c.require(is_periodic_set(d, numth::ResidueSet(840, {1, 121, 169, 289, 361, 529})),
            "residues differ: " + degset::describe(d));
  c.require(degset::contains(d, -1) == Membership::kNo, "-1 reported as a member");
  c.require(engine::minus_one_in(parse_or_die(text)) == Membership::kNo, "minus_one_in disagrees");
  return c;
}

Check anosov_bundle_listing() {
  Check c;
  const std::vector<Int> got = degset::enumerate(degrees_of("TB[2,1;1,1]"), 1, 20);
  c.require(got == std::vector<Int>{1, 4, 5, 9, 11, 16, 19, 20}, "listing differs");
  return c;
}

Check nil_listing() {
  Check c;
  // Independent oracle: l = m^2 + mn + n^2 <= 100 with l = 1 (mod 6).
  std::set<Int> roots;
  for (Int m = -100; m <= 100; ++m) {
    for (Int n = -100; n <= 100; ++n) {
      const Int l = m * m + m * n + n * n;
      if (l <= 100 && l % 6 == 1) roots.insert(l);
    }
  }
  std::vector<Int> oracle;
  for (Int l : roots) oracle.push_back(l * l);

  const std::vector<Int> printed = {1, 49, 169, 361, 625, 961, 1369, 1849, 2401, 3721, 4489, 5329, 6241, 8291, 9409};
  std::vector<Int> corrected;
  for (Int v : printed) {
    if (std::find(oracle.begin(), oracle.end(), v) != oracle.end()) {
      corrected.push_back(v);
    } else {
      c.require(v == 8291, "oracle rejects printed entry " + std::to_string(v));
      c.require(std::find(oracle.begin(), oracle.end(), 8281) != oracle.end(), "oracle lacks 8281");
      corrected.push_back(8281);
    }
  }
  c.require(corrected == oracle, "oracle and corrected list differ");
  c.require(!roots.count(55) && !roots.count(85), "55 or 85 accepted by the oracle");

  const std::vector<Int> got = degset::enumerate(degrees_of("SF(o0; 1/2,1/3,1/6)"), 1, 10000);
  c.require(got == oracle, "listing differs from oracle");
  c.require(std::find(got.begin(), got.end(), 55 * 55) == got.end(), "55^2 listed");
  c.require(std::find(got.begin(), got.end(), 85 * 85) == got.end(), "85^2 listed");
  return c;
}

Check genus_two_product() {
  Check c;
  const DegreeSet d = degrees_of("SF(o2; 1/5,1/5,-2/5,1/7,2/7,-3/7)");
  c.require(is_periodic_set(d, numth::ResidueSet(35, {1, 11, 16})), "residues differ: " + degset::describe(d));
  return c;
}

Check bundle_minus_one() {
  Check c;
  c.require(engine::minus_one_in(parse_or_die("TB[2,1;1,1]")) == Membership::kYes, "TB[2,1;1,1] lacks -1");
  c.require(engine::minus_one_in(parse_or_die("TB[2,3;1,2]")) == Membership::kNo, "TB[2,3;1,2] has -1");
  testing::Gen gen(0x7b5u);
  for (int i = 0; i < 20; ++i) {
    const manifold::TorusBundle m = gen.trace_three_bundle();
    std::ostringstream os;
    os << "trace-3 bundle [" << m.a << "," << m.b << ";" << m.c << "," << m.d << "] lacks -1";
    c.require(engine::minus_one_in(manifold::ManifoldDesc::prime(m)) == Membership::kYes, os.str());
  }
  return c;
}

Check spherical_table() {
  Check c;
  using manifold::SphericalGroup;
  c.require(is_periodic_set(engine::d_spherical(SphericalGroup(manifold::T24{})), numth::ResidueSet(24, {0, 1, 16})),
            "T24");
  c.require(is_periodic_set(engine::d_spherical(SphericalGroup(manifold::O48{})), numth::ResidueSet(48, {0, 1, 25})),
            "O48");
  c.require(
      is_periodic_set(engine::d_spherical(SphericalGroup(manifold::I120{})), numth::ResidueSet(120, {0, 1, 49})),
      "I120");
  for (Int p = 2; p <= 30; ++p) {
    const DegreeSet d = engine::d_spherical(SphericalGroup(manifold::Lens{p, 1}));
    c.require(is_periodic_set(d, numth::ResidueSet(p, brute_squares_mod(p))), "Z_" + std::to_string(p));
  }
  return c;
}

Check tprime_matches_t24() {
  Check c;
  const DegreeSet a = engine::d_spherical(manifold::SphericalGroup(manifold::TPrime{1}));
  const DegreeSet b = engine::d_spherical(manifold::SphericalGroup(manifold::T24{}));
  c.require(a.is<degset::Periodic>() && b.is<degset::Periodic>(), "not periodic");
  if (c.ok) {
    c.require(a.as<degset::Periodic>().residues.lifted(24) == b.as<degset::Periodic>().residues.lifted(24),
              degset::describe(a) + " vs " + degset::describe(b));
  }
  return c;
}

// Values of f in [-bound, bound] over the box |x|, |y| <= radius.
std::set<Int> box_values(const forms::BinaryForm& f, Int radius, Int bound) {
  std::set<Int> out;
  for (Int x = -radius; x <= radius; ++x) {
    for (Int y = -radius; y <= radius; ++y) {
      const Int v = f(x, y);
      if (v >= -bound && v <= bound) out.insert(v);
    }
  }
  return out;
}

Check property_suite() {
  Check c;
  testing::Gen gen(20261015);

  // (a) identity degree, (b) multiplicative closure, (c) listing vs membership.
  for (const auto& cls : testing::class_cases()) {
    for (int i = 0; i < 12; ++i) {
      const manifold::ManifoldDesc m = cls.make(gen);
      const DegreeSet d = engine::degrees(m);
      const std::string tag = std::string(cls.name) + " " + dsl::render(m);
      c.require(degset::contains(d, 1) == Membership::kYes, "1 missing for " + tag);
      if (i < 2) {
        std::vector<Int> members;
        for (Int x = -50; x <= 50; ++x) {
          if (degset::contains(d, x) == Membership::kYes) members.push_back(x);
        }
        for (Int x : members) {
          for (Int y : members) {
            c.require(degset::contains(d, x * y) != Membership::kNo,
                      "not closed: " + std::to_string(x) + "*" + std::to_string(y) + " for " + tag);
          }
        }
      }
      if (!degset::has_trivial_band(d)) {
        const Int lo = gen.uniform(-2000, 2000);
        const Int hi = lo + gen.uniform(0, 300);
        std::vector<Int> filtered;
        for (Int x = lo; x <= hi; ++x) {
          if (degset::contains(d, x) == Membership::kYes) filtered.push_back(x);
        }
        c.require(degset::enumerate(d, lo, hi) == filtered, "listing disagrees with membership for " + tag);
      }
    }
  }

  // (d) indefinite representation vs an exhaustive box.
  for (int i = 0; i < 10; ++i) {
    manifold::TorusBundle m = gen.sol_bundle();
    while ((m.a + m.d) * (m.a + m.d) - 4 > 200) m = gen.sol_bundle();
    const forms::BinaryForm f(m.c, m.d - m.a, -m.b);
    const std::set<Int> seen = box_values(f, 1000, 50);
    for (Int n = -50; n <= 50; ++n) {
      c.require(forms::represents(f, n) == (seen.count(n) > 0),
                "represents(" + f.to_string() + ", " + std::to_string(n) + ") disagrees with box");
    }
  }

  // (e) summand order does not matter.
  for (int i = 0; i < 20; ++i) {
    manifold::ManifoldDesc m = gen.spherical_sum();
    const std::string before = degset::describe(engine::degrees(m));
    std::shuffle(m.summands.begin(), m.summands.end(), gen.engine());
    c.require(degset::describe(engine::degrees(m)) == before, "order-dependent result for " + dsl::render(m));
  }

  // (f) RP3 # RP3 is special; three copies go through the general sum.
  c.require(degrees_of("L(2,1) # L(2,1)").is<degset::AllIntegers>(), "RP3 # RP3 is not Z");
  const manifold::ManifoldDesc three = manifold::canonicalize(parse_or_die("L(2,1) # L(2,1) # L(2,1)"));
  c.require(!manifold::is_rp3_sum(three), "three copies taken for RP3 # RP3");
  c.require(degset::describe(engine::degrees(three)) ==
                degset::describe(degset::normalize(engine::d_connected_sum(three))),
            "three copies of RP3 bypass the sum formula");
  return c;
}

Check lens_reversal() {
  Check c;
  const auto same = [](const engine::ReversalReport& r, bool x, bool y, bool z) {
    return r.has_degree_minus_one == x && r.has_orientation_reversing_homeo == y &&
           r.every_degree_minus_one_homotopic_to_homeo == z;
  };
  c.require(same(engine::lens_reversal_report(5, 1), true, false, false), "(5,1)");
  c.require(same(engine::lens_reversal_report(5, 2), true, true, true), "(5,2)");
  c.require(same(engine::lens_reversal_report(4, 1), false, false, false), "(4,1)");
  for (Int p = 1; p <= 60; ++p) {
    for (Int q = 0; q < p; ++q) {
      if (numth::gcd(p, q) != 1) continue;
      const engine::ReversalReport r = engine::lens_reversal_report(p, q);
      const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      c.require(!r.has_orientation_reversing_homeo || r.has_degree_minus_one, "homeo without degree -1 at " + tag);
      c.require(!r.every_degree_minus_one_homotopic_to_homeo || r.has_orientation_reversing_homeo,
                "'every' without a homeo at " + tag);
      const Membership m = engine::minus_one_in(manifold::ManifoldDesc::prime(manifold::Spherical{manifold::Lens{p, q}}));
      c.require((m == Membership::kYes) == r.has_degree_minus_one, "degree set disagrees at " + tag);
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"icosahedral and lens sum, mod 840", mod_840_sum},
      {"icosahedral and lens sum without -1, mod 840", mod_840_sum_without_minus_one},
      {"Anosov bundle TB[2,1;1,1] over [1,20]", anosov_bundle_listing},
      {"Nil (2,3,6) listing below 10000 against brute force", nil_listing},
      {"genus two H2xE1 space, mod 35", genus_two_product},
      {"degree -1 on Sol bundles", bundle_minus_one},
      {"spherical table and Z_p squares", spherical_table},
      {"T'(1) agrees with T24", tprime_matches_t24},
      {"property suite", property_suite},
      {"lens orientation-reversal predicates", lens_reversal},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
    if (!c.ok) std::cout << " (" << c.why.str() << ")";
    std::cout << '\n';
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
