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

#include "selfdeg/degset.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

namespace selfdeg::degset {

using forms::BinaryForm;
using forms::Vec2;
using numth::ResidueSet;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Int abs_checked(Int v) { return v < 0 ? numth::neg(v) : v; }

Membership from_bool(bool b) { return b ? Membership::kYes : Membership::kNo; }

Membership contains_form_image(const FormImage& fi, Int d) {
  if (!fi.conditions) return from_bool(forms::represents(fi.form, d));
  const SolConditions& cond = *fi.conditions;
  const Int modulus = abs_checked(cond.c);
  const Int level = numth::mul(cond.c, d);
  const std::vector<Vec2> reps = forms::representation_orbits(fi.form, level);
  if (reps.empty()) return Membership::kNo;
  if (modulus == 1) return Membership::kYes;
  // The conditions only see (p, r) mod c, and the automorph group acts on
  // (Z/c)^2 through a finite cyclic image, so walking each orbit modulo c
  // until it closes visits every class the full orbit reaches.
  const forms::Matrix2 gen = forms::automorph_generator(fi.form);
  const forms::Matrix2 gen_mod{numth::mod(gen.a, modulus), numth::mod(gen.b, modulus),
                               numth::mod(gen.c, modulus), numth::mod(gen.d, modulus)};
  for (const Vec2& rep : reps) {
    const Vec2 start{numth::mod(rep.x, modulus), numth::mod(rep.y, modulus)};
    Vec2 cur = start;
    do {
      if (cond.admits(cur)) return Membership::kYes;
      const Vec2 next = gen_mod.apply(cur);
      cur = {numth::mod(next.x, modulus), numth::mod(next.y, modulus)};
    } while (cur != start);
  }
  return Membership::kNo;
}

Membership contains_unit_times_form(const UnitTimesForm& u, Int d) {
  if (d == 0) return Membership::kYes;
  for (Int div : numth::divisors(abs_checked(d))) {
    for (Int unit : {div, -div}) {
      if (numth::mod(unit - 1, u.k) != 0) continue;
      if (forms::represents(u.form, d / unit)) return Membership::kYes;
    }
  }
  return Membership::kNo;
}

bool is_compound(const DegreeSet& s) {
  return s.is<Union>() || s.is<Intersection>() || s.is<Scaled>() || s.is<Negated>();
}

std::string operand(const DegreeSet& s) {
  return is_compound(s) ? "(" + describe(s) + ")" : describe(s);
}

std::string predicate_text(RootPredicate p) {
  switch (p) {
    case RootPredicate::kAny:
      return "l ∈ Z";
    case RootPredicate::kOdd:
      return "l odd";
    case RootPredicate::kLoeschianOneModSix:
      return "l = m^2+mn+n^2, l ≡ 1 (mod 6)";
    case RootPredicate::kLoeschianOneModThree:
      return "l = m^2+mn+n^2, l ≡ 1 (mod 3)";
    case RootPredicate::kTwoSquareOneModFour:
      return "l = m^2+n^2, l ≡ 1 (mod 4)";
  }
  return "?";
}

// "3p - 2r" style rendering of a linear form.
std::string linear_text(Int coeff_p, Int coeff_r) {
  std::ostringstream os;
  bool first = true;
  for (auto [coeff, var] : {std::pair{coeff_p, 'p'}, std::pair{coeff_r, 'r'}}) {
    if (coeff == 0) continue;
    if (first) {
      if (coeff < 0) os << '-';
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    const Int mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) os << mag;
    os << var;
    first = false;
  }
  return first ? std::string("0") : os.str();
}

std::string describe_form_image(const FormImage& fi) {
  std::ostringstream os;
  if (!fi.conditions) {
    os << "{ " << fi.form.to_string() << " : x, y ∈ Z }";
    return os.str();
  }
  const SolConditions& c = *fi.conditions;
  if (c.c == 1 || c.c == -1) {
    const BinaryForm f(fi.form.a() * c.c, fi.form.b() * c.c, fi.form.c() * c.c);
    os << "{ " << f.to_string("p", "r") << " : p, r ∈ Z }";
    return os.str();
  }
  const Int m = abs_checked(c.c);
  os << "{ (" << fi.form.to_string("p", "r") << ")/" << c.c << " : p, r ∈ Z, " << m << " | "
     << linear_text(0, c.b) << " and " << m << " | " << linear_text(0, c.d - c.a) << ", or " << m
     << " | " << linear_text(c.d - c.a, -c.b) << " }";
  return os.str();
}

std::string describe_periodic(const ResidueSet& r) {
  if (r.empty()) return "∅";
  if (r.is_all_integers()) return "Z";
  std::ostringstream os;
  os << r.modulus() << "Z + {";
  for (std::size_t i = 0; i < r.residues().size(); ++i) {
    if (i > 0) os << ", ";
    os << r.residues()[i];
  }
  os << '}';
  return os.str();
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

std::vector<Int> filter_range(const DegreeSet& s, Int lo, Int hi) {
  std::vector<Int> out;
  for (Int d = lo;; ++d) {
    if (contains(s, d) == Membership::kYes) out.push_back(d);
    if (d == hi) break;
  }
  return out;
}

std::vector<Int> sorted_unique(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Cheap-to-list parts come first when an intersection picks its generator.
int listing_cost(const DegreeSet& s) {
  if (s.is<Finite>()) return -1;
  if (s.is<Periodic>() || s.is<SquaresOf>()) return 0;
  if (s.is<AllIntegers>()) return 2;
  return 1;
}

void flatten_into(std::vector<DegreeSet>& out, const DegreeSet& s, bool unions) {
  if (unions && s.is<Union>()) {
    for (const auto& p : s.as<Union>().parts) flatten_into(out, p, unions);
  } else if (!unions && s.is<Intersection>()) {
    for (const auto& p : s.as<Intersection>().parts) flatten_into(out, p, unions);
  } else {
    out.push_back(s);
  }
}

DegreeSet from_residues(const ResidueSet& r) {
  const ResidueSet reduced = r.reduced();
  if (reduced.is_all_integers()) return DegreeSet::all_integers();
  return DegreeSet::periodic(reduced);
}

}  // namespace

std::string to_string(Membership m) {
  switch (m) {
    case Membership::kNo:
      return "false";
    case Membership::kYes:
      return "true";
    case Membership::kUnknown:
      return "unknown";
  }
  return "unknown";
}

bool root_satisfies(RootPredicate pred, Int l) {
  if (l < 0) return false;
  switch (pred) {
    case RootPredicate::kAny:
      return true;
    case RootPredicate::kOdd:
      return l % 2 == 1;
    case RootPredicate::kLoeschianOneModSix:
      return l % 6 == 1 && forms::is_loeschian(l);
    case RootPredicate::kLoeschianOneModThree:
      return l % 3 == 1 && forms::is_loeschian(l);
    case RootPredicate::kTwoSquareOneModFour:
      return l % 4 == 1 && forms::is_sum_two_squares(l);
  }
  return false;
}

bool SolConditions::admits(Vec2 point) const {
  const Int m = abs_checked(c);
  const Int br = numth::mul_mod(b, point.y, m);
  const Int dar = numth::mul_mod(numth::sub(d, a), point.y, m);
  if (br == 0 && dar == 0) return true;
  const Int mixed = numth::mod(numth::sub(numth::mul_mod(point.x, numth::sub(d, a), m), br), m);
  return mixed == 0;
}

DegreeSet DegreeSet::finite(std::vector<Int> members) {
  return DegreeSet(Finite{sorted_unique(std::move(members))});
}

DegreeSet DegreeSet::form_image(BinaryForm f, std::optional<SolConditions> cond) {
  if (cond) {
    const BinaryForm expected(cond->c, numth::sub(cond->d, cond->a), numth::neg(cond->b));
    if (!(f == expected)) throw std::invalid_argument("form does not match its Sol conditions");
    if (cond->c == 0) throw std::invalid_argument("Sol conditions need c != 0");
  }
  if (!f.is_definite() && !f.is_indefinite()) {
    throw forms::UnsupportedForm("form image needs a definite or non-square discriminant");
  }
  return DegreeSet(FormImage{std::move(f), cond});
}

DegreeSet DegreeSet::unit_times_form(Int k, BinaryForm f) {
  if (k < 1) throw std::invalid_argument("unit modulus must be positive");
  if (!f.is_definite() && !f.is_indefinite()) {
    throw forms::UnsupportedForm("unit-times-form needs a definite or non-square discriminant");
  }
  return DegreeSet(UnitTimesForm{k, std::move(f)});
}

Membership contains(const DegreeSet& s, Int d) {
  return std::visit(
      Overloaded{
          [](const AllIntegers&) { return Membership::kYes; },
          [d](const Periodic& p) { return from_bool(p.residues.contains(d)); },
          [d](const Finite& f) {
            return from_bool(std::binary_search(f.members.begin(), f.members.end(), d));
          },
          [d](const SquaresOf& q) {
            const auto root = numth::is_perfect_square(d);
            return from_bool(root && root_satisfies(q.predicate, *root));
          },
          [d](const FormImage& fi) { return contains_form_image(fi, d); },
          [d](const UnitTimesForm& u) { return contains_unit_times_form(u, d); },
          [d](const Scaled& sc) {
            if (d % sc.factor != 0) return Membership::kNo;
            return contains(*sc.inner, d / sc.factor);
          },
          [d](const Negated& n) { return contains(*n.inner, numth::neg(d)); },
          [d](const Union& u) {
            Membership acc = Membership::kNo;
            for (const auto& p : u.parts) {
              const Membership m = contains(p, d);
              if (m == Membership::kYes) return Membership::kYes;
              if (m == Membership::kUnknown) acc = Membership::kUnknown;
            }
            return acc;
          },
          [d](const Intersection& in) {
            Membership acc = Membership::kYes;
            for (const auto& p : in.parts) {
              const Membership m = contains(p, d);
              if (m == Membership::kNo) return Membership::kNo;
              if (m == Membership::kUnknown) acc = Membership::kUnknown;
            }
            return acc;
          },
          [d](const TrivialBand&) {
            if (d == 0 || d == 1) return Membership::kYes;
            if (d == -1) return Membership::kUnknown;
            return Membership::kNo;
          },
      },
      s.node());
}

std::vector<Int> enumerate(const DegreeSet& s, Int lo, Int hi) {
  if (lo > hi) throw std::invalid_argument("empty range: lo > hi");
  if (has_trivial_band(s)) {
    throw UnsupportedEnumeration(
        "this manifold admits no self-map of degree > 1; D is {0, 1} or {0, 1, -1} and "
        "membership of -1 is not decided, so its members cannot be listed");
  }
  return std::visit(
      Overloaded{
          [&](const AllIntegers&) {
            std::vector<Int> out;
            for (Int d = lo;; ++d) {
              out.push_back(d);
              if (d == hi) break;
            }
            return out;
          },
          [&](const Periodic& p) { return p.residues.members_in(lo, hi); },
          [&](const Finite& f) {
            std::vector<Int> out;
            for (Int v : f.members) {
              if (v >= lo && v <= hi) out.push_back(v);
            }
            return out;
          },
          [&](const SquaresOf& q) {
            std::vector<Int> out;
            if (hi < 0) return out;
            const Int start = lo <= 0 ? 0 : numth::isqrt(lo - 1) + 1;
            for (Int l = start; l <= hi / std::max<Int>(l, 1); ++l) {
              const Int sq = l * l;
              if (sq > hi) break;
              if (sq >= lo && root_satisfies(q.predicate, l)) out.push_back(sq);
            }
            return out;
          },
          [&](const Scaled& sc) {
            const Int c = sc.factor;
            const Int inner_lo = c > 0 ? ceil_div(lo, c) : ceil_div(hi, c);
            const Int inner_hi = c > 0 ? floor_div(hi, c) : floor_div(lo, c);
            std::vector<Int> out;
            if (inner_lo > inner_hi) return out;
            for (Int v : enumerate(*sc.inner, inner_lo, inner_hi)) out.push_back(numth::mul(v, c));
            return sorted_unique(std::move(out));
          },
          [&](const Negated& n) {
            std::vector<Int> out;
            for (Int v : enumerate(*n.inner, numth::neg(hi), numth::neg(lo))) out.push_back(-v);
            return sorted_unique(std::move(out));
          },
          [&](const Union& u) {
            std::vector<Int> out;
            for (const auto& p : u.parts) {
              auto part = enumerate(p, lo, hi);
              out.insert(out.end(), part.begin(), part.end());
            }
            return sorted_unique(std::move(out));
          },
          [&](const Intersection& in) {
            if (in.parts.empty()) return enumerate(DegreeSet::all_integers(), lo, hi);
            auto best = std::min_element(in.parts.begin(), in.parts.end(),
                                         [](const DegreeSet& x, const DegreeSet& y) {
                                           return listing_cost(x) < listing_cost(y);
                                         });
            std::vector<Int> out;
            for (Int v : enumerate(*best, lo, hi)) {
              bool keep = true;
              for (auto it = in.parts.begin(); it != in.parts.end() && keep; ++it) {
                if (it != best) keep = contains(*it, v) == Membership::kYes;
              }
              if (keep) out.push_back(v);
            }
            return out;
          },
          [&](const auto&) { return filter_range(s, lo, hi); },
      },
      s.node());
}

DegreeSet intersect(const DegreeSet& s, const DegreeSet& t) {
  return DegreeSet(Intersection{{s, t}});
}

DegreeSet unite(const DegreeSet& s, const DegreeSet& t) { return DegreeSet(Union{{s, t}}); }

DegreeSet negate(const DegreeSet& s) { return DegreeSet(Negated{std::make_shared<const DegreeSet>(s)}); }

DegreeSet scale(Int c, const DegreeSet& s) {
  if (c == 0) throw std::invalid_argument("scale factor must be nonzero");
  return DegreeSet(Scaled{c, std::make_shared<const DegreeSet>(s)});
}

DegreeSet normalize(const DegreeSet& s) {
  return std::visit(
      Overloaded{
          [](const AllIntegers&) { return DegreeSet::all_integers(); },
          [](const Periodic& p) { return from_residues(p.residues); },
          [](const Negated& n) {
            const DegreeSet inner = normalize(*n.inner);
            if (inner.is<AllIntegers>()) return inner;
            if (inner.is<Periodic>()) return from_residues(inner.as<Periodic>().residues.negated());
            if (inner.is<Finite>()) {
              std::vector<Int> out;
              for (Int v : inner.as<Finite>().members) out.push_back(numth::neg(v));
              return DegreeSet::finite(std::move(out));
            }
            if (inner.is<Negated>()) return *inner.as<Negated>().inner;
            return negate(inner);
          },
          [](const Scaled& sc) {
            const DegreeSet inner = normalize(*sc.inner);
            if (sc.factor == 1) return inner;
            if (sc.factor == -1) return normalize(negate(inner));
            const Int m = abs_checked(sc.factor);
            if (inner.is<AllIntegers>()) return DegreeSet::periodic(ResidueSet(m, {0}));
            if (inner.is<Finite>()) {
              std::vector<Int> out;
              for (Int v : inner.as<Finite>().members) out.push_back(numth::mul(v, sc.factor));
              return DegreeSet::finite(std::move(out));
            }
            if (inner.is<Periodic>()) {
              const ResidueSet& r = inner.as<Periodic>().residues;
              std::vector<Int> scaled;
              for (Int v : r.residues()) scaled.push_back(numth::mul(v, sc.factor));
              return from_residues(ResidueSet(numth::mul(m, r.modulus()), std::move(scaled)));
            }
            return scale(sc.factor, inner);
          },
          [](const Union& u) {
            std::vector<DegreeSet> flat;
            for (const auto& p : u.parts) flatten_into(flat, normalize(p), true);
            std::optional<ResidueSet> periodic;
            std::vector<Int> finite;
            std::vector<DegreeSet> rest;
            for (const auto& p : flat) {
              if (p.is<AllIntegers>()) return DegreeSet::all_integers();
              if (p.is<Periodic>()) {
                const ResidueSet& r = p.as<Periodic>().residues;
                periodic = periodic ? numth::residue_union(*periodic, r) : r;
              } else if (p.is<Finite>()) {
                const auto& m = p.as<Finite>().members;
                finite.insert(finite.end(), m.begin(), m.end());
              } else {
                rest.push_back(p);
              }
            }
            std::vector<DegreeSet> parts;
            if (periodic) {
              const DegreeSet folded = from_residues(*periodic);
              if (folded.is<AllIntegers>()) return folded;
              if (!folded.as<Periodic>().residues.empty()) parts.push_back(folded);
            }
            parts.insert(parts.end(), rest.begin(), rest.end());
            // Finite members already covered elsewhere are redundant.
            std::erase_if(finite, [&](Int v) {
              return std::any_of(parts.begin(), parts.end(),
                                 [v](const DegreeSet& p) { return contains(p, v) == Membership::kYes; });
            });
            if (!finite.empty()) parts.push_back(DegreeSet::finite(std::move(finite)));
            if (parts.empty()) return DegreeSet::periodic(ResidueSet::none());
            if (parts.size() == 1) return parts.front();
            return DegreeSet(Union{std::move(parts)});
          },
          [](const Intersection& in) {
            std::vector<DegreeSet> flat;
            for (const auto& p : in.parts) flatten_into(flat, normalize(p), false);
            std::optional<ResidueSet> periodic;
            std::vector<DegreeSet> rest;
            for (const auto& p : flat) {
              if (p.is<AllIntegers>()) continue;
              if (p.is<Periodic>()) {
                const ResidueSet& r = p.as<Periodic>().residues;
                periodic = periodic ? numth::crt_merge(*periodic, r) : r;
              } else {
                rest.push_back(p);
              }
            }
            std::vector<DegreeSet> parts;
            if (periodic) {
              const DegreeSet folded = from_residues(*periodic);
              if (folded.is<Periodic>() && folded.as<Periodic>().residues.empty()) return folded;
              if (!folded.is<AllIntegers>()) parts.push_back(folded);
            }
            parts.insert(parts.end(), rest.begin(), rest.end());
            // A finite part bounds the whole intersection; decide it outright
            // unless some other part cannot answer.
            const auto fin = std::find_if(parts.begin(), parts.end(), [](const DegreeSet& p) { return p.is<Finite>(); });
            if (fin != parts.end()) {
              std::vector<Int> kept;
              bool decided = true;
              for (Int v : fin->as<Finite>().members) {
                Membership m = Membership::kYes;
                for (const auto& p : parts) {
                  const Membership pm = contains(p, v);
                  if (pm == Membership::kNo) {
                    m = Membership::kNo;
                    break;
                  }
                  if (pm == Membership::kUnknown) m = Membership::kUnknown;
                }
                if (m == Membership::kUnknown) decided = false;
                if (m == Membership::kYes) kept.push_back(v);
              }
              if (decided) return DegreeSet::finite(std::move(kept));
            }
            if (parts.empty()) return DegreeSet::all_integers();
            if (parts.size() == 1) return parts.front();
            return DegreeSet(Intersection{std::move(parts)});
          },
          [&s](const auto&) { return s; },
      },
      s.node());
}

std::string describe(const DegreeSet& s) {
  return std::visit(
      Overloaded{
          [](const AllIntegers&) { return std::string("Z"); },
          [](const Periodic& p) { return describe_periodic(p.residues); },
          [](const Finite& f) {
            if (f.members.empty()) return std::string("∅");
            std::string out = "{";
            for (std::size_t i = 0; i < f.members.size(); ++i) {
              if (i > 0) out += ", ";
              out += std::to_string(f.members[i]);
            }
            return out + "}";
          },
          [](const SquaresOf& q) { return "{ l^2 : " + predicate_text(q.predicate) + " }"; },
          [](const FormImage& fi) { return describe_form_image(fi); },
          [](const UnitTimesForm& u) {
            return "{ (" + std::to_string(u.k) + "t+1)(" + u.form.to_string("p", "q") + ") : t, p, q ∈ Z }";
          },
          [](const Scaled& sc) { return std::to_string(sc.factor) + " * " + operand(*sc.inner); },
          [](const Negated& n) { return "-" + operand(*n.inner); },
          [](const Union& u) {
            std::string out;
            for (std::size_t i = 0; i < u.parts.size(); ++i) {
              if (i > 0) out += " ∪ ";
              out += operand(u.parts[i]);
            }
            return u.parts.empty() ? std::string("∅") : out;
          },
          [](const Intersection& in) {
            std::string out;
            for (std::size_t i = 0; i < in.parts.size(); ++i) {
              if (i > 0) out += " ∩ ";
              out += operand(in.parts[i]);
            }
            return in.parts.empty() ? std::string("Z") : out;
          },
          [](const TrivialBand&) { return std::string("{0, 1} ⊆ D ⊆ {0, 1, -1}"); },
      },
      s.node());
}

bool has_trivial_band(const DegreeSet& s) {
  return std::visit(Overloaded{
                        [](const TrivialBand&) { return true; },
                        [](const Scaled& sc) { return has_trivial_band(*sc.inner); },
                        [](const Negated& n) { return has_trivial_band(*n.inner); },
                        [](const Union& u) {
                          return std::any_of(u.parts.begin(), u.parts.end(), has_trivial_band);
                        },
                        [](const Intersection& in) {
                          return std::any_of(in.parts.begin(), in.parts.end(), has_trivial_band);
                        },
                        [](const auto&) { return false; },
                    },
                    s.node());
}

}  // namespace selfdeg::degset
