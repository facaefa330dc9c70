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

#include <algorithm>
#include <sstream>

namespace selfdeg::manifold {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Int power(Int base, Int exp) {
  Int r = 1;
  for (Int i = 0; i < exp; ++i) r = numth::mul(r, base);
  return r;
}

void check_noncyclic(const NonCyclicGroup& g, std::vector<std::string>& out) {
  std::visit(Overloaded{
                 [&](const DStar& d) {
                   if (d.n < 2) out.push_back("D*(n) needs n >= 2 (D*(1) is cyclic; use L(4,q))");
                 },
                 [&](const TPrime& t) {
                   if (t.q < 1) out.push_back("T'(q) needs q >= 1");
                 },
                 [&](const DPrime& d) {
                   if (d.n_prime < 3 || d.n_prime % 2 == 0) out.push_back("D'(n,q) needs odd n >= 3");
                   if (d.q < 1) out.push_back("D'(n,q) needs q >= 1");
                 },
                 [](const auto&) {},
             },
             g);
}

std::vector<std::string> check_group(const SphericalGroup& g) {
  std::vector<std::string> out;
  std::visit(Overloaded{
                 [&](const Lens& l) {
                   if (l.p < 1) {
                     out.push_back("L(p,q) needs p >= 1");
                   } else if (numth::gcd(l.p, l.q) != 1) {
                     std::ostringstream os;
                     os << "L(" << l.p << "," << l.q << "): gcd(p, q) = " << numth::gcd(l.p, l.q) << " != 1";
                     out.push_back(os.str());
                   }
                 },
                 [&](const ProductZm& z) {
                   if (z.m < 2) out.push_back("Z(m)x needs m >= 2");
                   const std::size_t before = out.size();
                   check_noncyclic(z.inner, out);
                   if (out.size() == before && z.m >= 2) {
                     try {
                       const Int inner = order(z.inner);
                       if (numth::gcd(z.m, inner) != 1) {
                         std::ostringstream os;
                         os << "Z(" << z.m << ")x: m must be coprime to the group order " << inner;
                         out.push_back(os.str());
                       }
                     } catch (const std::overflow_error&) {
                       out.push_back("group order exceeds the 64-bit range");
                     }
                   }
                 },
                 [&](const auto& other) { check_noncyclic(NonCyclicGroup(other), out); },
             },
             g);
  if (out.empty()) {
    try {
      (void)order(g);
    } catch (const std::overflow_error&) {
      out.push_back("group order exceeds the 64-bit range");
    }
  }
  return out;
}

std::vector<std::string> check_prime(const Prime& p) {
  std::vector<std::string> out;
  std::visit(
      Overloaded{
          [](const S2xS1&) {},
          [&](const Spherical& s) { out = check_group(s.group); },
          [&](const TorusBundle& m) {
            const Int det = numth::sub(numth::mul(m.a, m.d), numth::mul(m.b, m.c));
            if (det != 1) {
              std::ostringstream os;
              os << "TB: det = " << det << " != 1";
              out.push_back(os.str());
            }
          },
          [&](const TorusSemiBundle& m) {
            if (!semibundle_shape(m)) {
              out.push_back(
                  "TSB: matrix is not in a canonical shape ([1,0;0,1], [0,1;1,0], [1,0;z,1], "
                  "[0,1;1,z], [1,z;0,1] with z != 0, or abcd != 0 with ad - bc = 1)");
            }
          },
          [&](const Seifert& s) {
            if (s.genus < 0) out.push_back("SF: genus must be >= 0");
            if (!s.orientable_base && s.genus < 1) out.push_back("SF: a nonorientable base needs genus >= 1");
            // Keeps the exact e and chi sums inside 64 bits.
            Int common = 1, weight = 0;
            for (const Slope& sl : s.slopes) {
              if (sl.alpha >= 1) common = numth::lcm(common, sl.alpha);
            }
            for (const Slope& sl : s.slopes) {
              if (sl.alpha >= 1) weight = numth::add(weight, numth::mul(numth::add(sl.beta < 0 ? numth::neg(sl.beta) : sl.beta, 1), common / sl.alpha));
            }
            (void)numth::mul(weight, 4);
            for (const Slope& sl : s.slopes) {
              std::ostringstream os;
              if (sl.alpha < 1) {
                os << "SF: slope " << sl.beta << "/" << sl.alpha << " needs a positive denominator";
                out.push_back(os.str());
              } else if (sl.alpha >= 2 && numth::gcd(sl.beta, sl.alpha) != 1) {
                os << "SF: slope " << sl.beta << "/" << sl.alpha << " is not in lowest terms";
                out.push_back(os.str());
              }
            }
          },
      },
      p);
  return out;
}

bool is_s3(const Prime& p) {
  if (const auto* s = std::get_if<Spherical>(&p)) {
    if (const auto* l = std::get_if<Lens>(&s->group)) return l->p == 1;
  }
  return false;
}

Prime canonical_prime(const Prime& p) {
  return std::visit(Overloaded{
                        [](const Spherical& s) -> Prime {
                          Spherical out = s;
                          if (const auto* l = std::get_if<Lens>(&s.group)) {
                            Int q = numth::mod(l->q, l->p);
                            if (s.reversed) q = numth::mod(l->p - q, l->p);
                            out.group = Lens{l->p, q};
                            out.reversed = false;
                          }
                          return out;
                        },
                        [](const Seifert& s) -> Prime {
                          Seifert out = s;
                          std::sort(out.slopes.begin(), out.slopes.end(), [](const Slope& x, const Slope& y) {
                            return std::pair{x.alpha, x.beta} < std::pair{y.alpha, y.beta};
                          });
                          return out;
                        },
                        [](const auto& other) -> Prime { return other; },
                    },
                    p);
}

Geometry classify_seifert(const Seifert& s) {
  const Rational chi = orbifold_chi(s);
  const Rational e = euler_number(s);
  if (chi < Rational(0)) return e == Rational(0) ? Geometry::kH2xE1 : Geometry::kPslOrOther;
  if (chi > Rational(0)) {
    throw InvalidManifold(
        "SF: base orbifold has positive Euler characteristic (S3 or S2xE1 geometry); enter the "
        "manifold as a spherical group such as L(p,q), D*(n), T24, O48, I120, or as S2xS1");
  }
  if (e != Rational(0) && nil_triple(s)) return Geometry::kNil;
  if (e == Rational(0)) {
    throw InvalidManifold(
        "SF: Euclidean base with e = 0 is a flat torus (semi-)bundle; use TB[...] or TSB[...]");
  }
  throw InvalidManifold(
      "SF: this Nil Seifert space is a torus (semi-)bundle; use TB[...] or TSB[...]");
}

Geometry classify_prime(const Prime& p) {
  return std::visit(Overloaded{
                        [](const S2xS1&) { return Geometry::kS2xE1; },
                        [](const Spherical&) { return Geometry::kS3; },
                        [](const TorusBundle& m) {
                          if (finite_order(m)) return Geometry::kE3;
                          const Int tr = m.a + m.d;
                          return (tr == 2 || tr == -2) ? Geometry::kNil : Geometry::kSol;
                        },
                        [](const TorusSemiBundle& m) {
                          switch (*semibundle_shape(m)) {
                            case SemiBundleShape::kIdentity:
                            case SemiBundleShape::kSwap:
                              return Geometry::kE3;
                            case SemiBundleShape::kSol:
                              return Geometry::kSol;
                            default:
                              return Geometry::kNil;
                          }
                        },
                        [](const Seifert& s) { return classify_seifert(s); },
                    },
                    p);
}

}  // namespace

Int order(const NonCyclicGroup& g) {
  return std::visit(Overloaded{
                        [](const DStar& d) { return numth::mul(4, d.n); },
                        [](const T24&) { return Int{24}; },
                        [](const O48&) { return Int{48}; },
                        [](const I120&) { return Int{120}; },
                        [](const TPrime& t) { return numth::mul(8, power(3, t.q)); },
                        [](const DPrime& d) { return numth::mul(d.n_prime, power(2, d.q)); },
                    },
                    g);
}

Int order(const SphericalGroup& g) {
  return std::visit(Overloaded{
                        [](const Lens& l) { return l.p; },
                        [](const ProductZm& z) { return numth::mul(z.m, order(z.inner)); },
                        [](const auto& other) { return order(NonCyclicGroup(other)); },
                    },
                    g);
}

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::kS3:
      return "S3";
    case Geometry::kS2xE1:
      return "S2xE1";
    case Geometry::kE3:
      return "E3";
    case Geometry::kNil:
      return "Nil";
    case Geometry::kSol:
      return "Sol";
    case Geometry::kH2xE1:
      return "H2xE1";
    case Geometry::kPslOrOther:
      return "PSL-or-other";
    case Geometry::kNonPrime:
      return "NonPrime";
  }
  return "?";
}

std::vector<Violation> validate(const ManifoldDesc& desc) {
  std::vector<Violation> out;
  if (desc.summands.empty()) out.push_back({0, "empty manifold description"});
  for (std::size_t i = 0; i < desc.summands.size(); ++i) {
    const Summand& s = desc.summands[i];
    if (s.multiplicity < 1) out.push_back({i, "multiplicity must be >= 1"});
    try {
      for (auto& msg : check_prime(s.piece)) out.push_back({i, std::move(msg)});
    } catch (const std::overflow_error&) {
      out.push_back({i, "values exceed the supported 64-bit range"});
    }
  }
  return out;
}

ManifoldDesc canonicalize(const ManifoldDesc& desc) {
  std::vector<Summand> pieces;
  for (const Summand& s : desc.summands) pieces.push_back({canonical_prime(s.piece), s.multiplicity});
  const bool is_sum = !desc.is_prime();
  if (is_sum) {
    std::erase_if(pieces, [](const Summand& s) { return is_s3(s.piece); });
    if (pieces.empty()) return ManifoldDesc::prime(Spherical{Lens{1, 0}, false});
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Summand& x, const Summand& y) { return x.piece < y.piece; });
  std::vector<Summand> merged;
  for (Summand& s : pieces) {
    if (!merged.empty() && merged.back().piece == s.piece) {
      merged.back().multiplicity = numth::add(merged.back().multiplicity, s.multiplicity);
    } else {
      merged.push_back(std::move(s));
    }
  }
  return ManifoldDesc{std::move(merged)};
}

Rational euler_number(const Seifert& s) {
  Rational e(0);
  for (const Slope& sl : s.slopes) e += Rational(sl.beta, sl.alpha);
  return e;
}

Rational orbifold_chi(const Seifert& s) {
  Rational chi(s.orientable_base ? 2 - 2 * s.genus : 2 - s.genus);
  for (const Slope& sl : s.slopes) {
    if (sl.alpha >= 2) chi -= Rational(1) - Rational(1, sl.alpha);
  }
  return chi;
}

std::optional<SemiBundleShape> semibundle_shape(const TorusSemiBundle& m) {
  const auto [a, b, c, d] = m;
  if (a == 1 && b == 0 && c == 0 && d == 1) return SemiBundleShape::kIdentity;
  if (a == 0 && b == 1 && c == 1 && d == 0) return SemiBundleShape::kSwap;
  if (a == 1 && b == 0 && c != 0 && d == 1) return SemiBundleShape::kLowerShear;
  if (a == 0 && b == 1 && c == 1 && d != 0) return SemiBundleShape::kSwapShear;
  if (a == 1 && b != 0 && c == 0 && d == 1) return SemiBundleShape::kUpperShear;
  if (a != 0 && b != 0 && c != 0 && d != 0 &&
      numth::sub(numth::mul(a, d), numth::mul(b, c)) == 1) {
    return SemiBundleShape::kSol;
  }
  return std::nullopt;
}

std::optional<std::vector<Int>> nil_triple(const Seifert& s) {
  if (s.genus != 0 || !s.orientable_base) return std::nullopt;
  std::vector<Int> alphas;
  for (const Slope& sl : s.slopes) {
    if (sl.alpha >= 2) alphas.push_back(sl.alpha);
  }
  std::sort(alphas.begin(), alphas.end());
  static const std::vector<std::vector<Int>> kTriples{{2, 3, 6}, {3, 3, 3}, {2, 4, 4}};
  for (const auto& t : kTriples) {
    if (alphas == t) return alphas;
  }
  return std::nullopt;
}

std::optional<int> finite_order(const TorusBundle& m) {
  if (m.b == 0 && m.c == 0 && m.a == m.d && (m.a == 1 || m.a == -1)) return m.a == 1 ? 1 : 2;
  switch (m.a + m.d) {
    case 1:
      return 6;
    case 0:
      return 4;
    case -1:
      return 3;
    default:
      return std::nullopt;
  }
}

bool is_rp3_sum(const ManifoldDesc& canonical) {
  if (canonical.summands.size() != 1 || canonical.summands.front().multiplicity != 2) return false;
  const auto* s = std::get_if<Spherical>(&canonical.summands.front().piece);
  if (s == nullptr) return false;
  const auto* l = std::get_if<Lens>(&s->group);
  return l != nullptr && l->p == 2;
}

Geometry classify(const ManifoldDesc& desc) {
  if (const auto v = validate(desc); !v.empty()) throw InvalidManifold(v.front().message);
  const ManifoldDesc c = canonicalize(desc);
  if (is_rp3_sum(c)) return Geometry::kS2xE1;
  if (!c.is_prime()) return Geometry::kNonPrime;
  return classify_prime(c.prime_piece());
}

}  // namespace selfdeg::manifold
