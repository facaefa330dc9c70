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

#include "selfdeg/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

namespace selfdeg::forms {

using numth::add;
using numth::mul;
using numth::sub;

namespace {

// Longest reduction walk or cycle accepted before declaring an internal error.
constexpr int kMaxSteps = 1'000'000;

Int abs_checked(Int v) { return v < 0 ? numth::neg(v) : v; }

void require_indefinite(const BinaryForm& f) {
  if (!f.is_indefinite()) {
    throw UnsupportedForm("form " + f.to_string() + " has discriminant " +
                          std::to_string(f.discriminant()) +
                          "; only definite forms and positive non-square discriminants are supported");
  }
}

void require_supported(const BinaryForm& f) {
  if (!f.is_definite()) require_indefinite(f);
}

// Representative of b modulo 2|a| used by the reduction operator: in
// (-|a|, |a|] when |a| > sqrt(D), else in (sqrt(D) - 2|a|, sqrt(D)).
Int normalize_middle(Int b, Int a, Int root_floor) {
  const Int abs_a = abs_checked(a);
  const Int m = mul(2, abs_a);
  if (abs_a > root_floor) {
    Int r = numth::mod(b, m);
    if (r > abs_a) r -= m;
    return r;
  }
  return sub(root_floor, numth::mod(sub(root_floor, b), m));
}

struct Step {
  BinaryForm form;
  Matrix2 matrix;
};

// (a, b, c) -> (c, s, (s^2 - D) / 4c) with s = normalize(-b, c); the matrix is
// (0, -1; 1, t) where s = -b + 2ct.
Step rho(const BinaryForm& f, Int root_floor) {
  const Int s = normalize_middle(numth::neg(f.b()), f.c(), root_floor);
  using Wide = numth::Wide;
  // |s| <= |c| keeps the quotient small even when s^2 is not.
  const Wide next_c = (static_cast<Wide>(s) * s - f.discriminant()) / (4 * static_cast<Wide>(f.c()));
  if (next_c > std::numeric_limits<Int>::max() || next_c < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("reduction step leaves the 64-bit range");
  }
  const Int t = static_cast<Int>((static_cast<Wide>(s) + f.b()) / (2 * static_cast<Wide>(f.c())));
  return {BinaryForm(f.c(), s, static_cast<Int>(next_c)), Matrix2{0, -1, 1, t}};
}

using FormKey = std::tuple<Int, Int, Int>;

FormKey key_of(const BinaryForm& f) { return {f.a(), f.b(), f.c()}; }

struct Cycle {
  std::vector<Reduced> members;
  Matrix2 period;  // start.transformed(period) == start
};

Cycle walk_cycle(const BinaryForm& start) {
  if (!is_reduced(start)) throw std::invalid_argument("cycle start must be a reduced form");
  const Int root = numth::isqrt(start.discriminant());
  Cycle out{{{start, Matrix2::identity()}}, Matrix2::identity()};
  BinaryForm cur = start;
  Matrix2 acc = Matrix2::identity();
  for (int i = 0; i < kMaxSteps; ++i) {
    Step st = rho(cur, root);
    acc = acc * st.matrix;
    cur = st.form;
    if (cur == start) {
      out.period = acc;
      return out;
    }
    if (!is_reduced(cur)) throw std::logic_error("reduction operator left the set of reduced forms");
    out.members.push_back({cur, acc});
  }
  throw std::logic_error("reduced cycle did not close");
}

// Proper-equivalence oracle for one fixed form: precomputes its reduced cycle
// once, then answers equivalence queries by reducing the query.
class EquivalenceClass {
 public:
  explicit EquivalenceClass(const BinaryForm& f) {
    Reduced r = reduce(f);
    to_start_ = r.transform;
    for (Reduced& m : walk_cycle(r.form).members) index_.emplace(key_of(m.form), m.transform);
  }

  std::optional<Matrix2> equivalence_to(const BinaryForm& g) const {
    Reduced rg = reduce(g);
    auto it = index_.find(key_of(rg.form));
    if (it == index_.end()) return std::nullopt;
    return to_start_ * it->second * rg.transform.inverse_unimodular();
  }

 private:
  Matrix2 to_start_;
  std::map<FormKey, Matrix2> index_;
};

// All solutions of a definite form at level n (finite).
std::vector<Vec2> definite_solutions(const BinaryForm& f, Int n) {
  if (n == 0) return {{0, 0}};
  Int a = f.a(), b = f.b(), c = f.c();
  if (a < 0) {
    a = -a;
    b = -b;
    c = -c;
    n = numth::neg(n);
  }
  if (n < 0) return {};
  const numth::Wide abs_disc = -static_cast<numth::Wide>(f.discriminant());
  const numth::Wide bound = (static_cast<numth::Wide>(4) * a * n) / abs_disc;
  if (bound > std::numeric_limits<Int>::max()) throw std::overflow_error("definite search bound too large");
  const Int y_max = numth::isqrt(static_cast<Int>(bound));
  std::vector<Vec2> out;
  for (Int y = -y_max; y <= y_max; ++y) {
    // a x^2 + (b y) x + (c y^2 - n) = 0
    const numth::Wide disc = static_cast<numth::Wide>(f.discriminant()) * y * y + static_cast<numth::Wide>(4) * a * n;
    if (disc < 0 || disc > std::numeric_limits<Int>::max()) continue;
    auto root = numth::is_perfect_square(static_cast<Int>(disc));
    if (!root) continue;
    for (Int sign : {1, -1}) {
      const numth::Wide num = -static_cast<numth::Wide>(b) * y + sign * static_cast<numth::Wide>(*root);
      if (num % (2 * a) == 0) {
        out.push_back({static_cast<Int>(num / (2 * a)), y});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

numth::Wide size_of(Vec2 v) {
  return static_cast<numth::Wide>(v.x) * v.x + static_cast<numth::Wide>(v.y) * v.y;
}

// Walks v along the automorph orbit in whichever direction shrinks it and
// returns the smallest point met.
Vec2 shortest_in_orbit(Vec2 v, const Matrix2& generator) {
  const Matrix2 inverse = generator.inverse_unimodular();
  for (const Matrix2* step : {&generator, &inverse}) {
    for (;;) {
      Vec2 next;
      try {
        next = step->apply(v);
      } catch (const std::overflow_error&) {
        break;
      }
      if (size_of(next) >= size_of(v)) break;
      v = next;
    }
  }
  return v;
}

// Orbit representatives for an indefinite form; stops after the first one
// when `first_only` is set.
std::vector<Vec2> indefinite_orbits(const BinaryForm& f, Int n, bool first_only) {
  if (n == 0) return {{0, 0}};
  const Int g = f.content();
  if (n % g != 0) return {};
  const BinaryForm prim = f.primitive_part();
  const Int level = n / g;
  const Int disc = prim.discriminant();
  const EquivalenceClass cls(prim);
  const Matrix2 generator = fundamental_automorph(prim);
  const numth::Factorization lf = numth::factorize(abs_checked(level));
  // Square divisors e^2 of the level, with the factorization of 4|level / e^2|.
  std::vector<std::pair<Int, numth::Factorization>> splits;
  std::vector<int> halves(lf.factors.size(), 0);
  for (;;) {
    Int e = 1;
    numth::Factorization rest;
    rest.factors.push_back({2, 2});
    for (std::size_t i = 0; i < lf.factors.size(); ++i) {
      const auto [p, k] = lf.factors[i];
      for (int j = 0; j < halves[i]; ++j) e = mul(e, p);
      const int left = k - 2 * halves[i];
      if (left == 0) continue;
      if (p == 2) {
        rest.factors.front().exponent += left;
      } else {
        rest.factors.push_back({p, left});
      }
    }
    rest.n = rest.value();
    splits.emplace_back(e, std::move(rest));
    std::size_t i = 0;
    while (i < halves.size() && 2 * (halves[i] + 1) > lf.factors[i].exponent) halves[i++] = 0;
    if (i == halves.size()) break;
    ++halves[i];
  }
  std::sort(splits.begin(), splits.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Vec2> out;
  for (const auto& [e, four_np] : splits) {
    const Int np = level / mul(e, e);
    const Int abs_np = four_np.n / 4;
    for (Int s : numth::square_roots_mod(disc, four_np)) {
      if (s >= 2 * abs_np) break;
      const numth::Wide c = (static_cast<numth::Wide>(s) * s - disc) / (4 * static_cast<numth::Wide>(np));
      if (c > std::numeric_limits<Int>::max() || c < std::numeric_limits<Int>::min()) {
        throw std::overflow_error("representation target leaves the 64-bit range");
      }
      const BinaryForm target(np, s, static_cast<Int>(c));
      if (auto m = cls.equivalence_to(target)) {
        const Vec2 v = shortest_in_orbit({m->a, m->c}, generator);
        out.push_back({mul(e, v.x), mul(e, v.y)});
        if (first_only) return out;
      }
    }
  }
  return out;
}

bool is_model_loeschian(const BinaryForm& f) {
  return f.a() == 1 && f.c() == 1 && (f.b() == 1 || f.b() == -1);
}

bool is_model_two_square(const BinaryForm& f) { return f.a() == 1 && f.b() == 0 && f.c() == 1; }

}  // namespace

// Matrix2

Int Matrix2::det() const {
  const numth::Wide v = static_cast<numth::Wide>(a) * d - static_cast<numth::Wide>(b) * c;
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("determinant out of 64-bit range");
  }
  return static_cast<Int>(v);
}

Int Matrix2::trace() const { return add(a, d); }

Vec2 Matrix2::apply(Vec2 v) const {
  return {add(mul(a, v.x), mul(b, v.y)), add(mul(c, v.x), mul(d, v.y))};
}

Matrix2 Matrix2::inverse_unimodular() const {
  const Int dt = det();
  if (dt == 1) return {d, numth::neg(b), numth::neg(c), a};
  if (dt == -1) return {numth::neg(d), b, c, numth::neg(a)};
  throw std::invalid_argument("matrix is not unimodular");
}

Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
  return {add(mul(l.a, r.a), mul(l.b, r.c)), add(mul(l.a, r.b), mul(l.b, r.d)),
          add(mul(l.c, r.a), mul(l.d, r.c)), add(mul(l.c, r.b), mul(l.d, r.d))};
}

// BinaryForm

namespace {

// b^2 - 4ac; intermediates may exceed 64 bits as long as the result does not.
Int discriminant_of(Int a, Int b, Int c) {
  using Wide = numth::Wide;
  Wide ac4;
  Wide d;
  if (__builtin_mul_overflow(static_cast<Wide>(a) * c, Wide{4}, &ac4) ||
      __builtin_sub_overflow(static_cast<Wide>(b) * b, ac4, &d) || d > std::numeric_limits<Int>::max() ||
      d < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("discriminant out of 64-bit range");
  }
  return static_cast<Int>(d);
}

}  // namespace

BinaryForm::BinaryForm(Int a, Int b, Int c) : a_(a), b_(b), c_(c), discriminant_(discriminant_of(a, b, c)) {}

Int BinaryForm::operator()(Int x, Int y) const {
  using Wide = numth::Wide;
  const Wide v = static_cast<Wide>(a_) * x * x + static_cast<Wide>(b_) * x * y + static_cast<Wide>(c_) * y * y;
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("form value out of 64-bit range");
  }
  return static_cast<Int>(v);
}

Int BinaryForm::content() const { return numth::gcd(numth::gcd(a_, b_), c_); }

BinaryForm BinaryForm::primitive_part() const {
  const Int g = content();
  if (g == 0) return *this;
  return BinaryForm(a_ / g, b_ / g, c_ / g);
}

bool BinaryForm::is_indefinite() const {
  return discriminant_ > 0 && !numth::is_perfect_square(discriminant_);
}

BinaryForm BinaryForm::transformed(const Matrix2& m) const {
  // f(m.a x + m.b y, m.c x + m.d y)
  const Int na = (*this)(m.a, m.c);
  const Int nc = (*this)(m.b, m.d);
  // The middle coefficient is the polarization f(u + v) - f(u) - f(v), where
  // u, v are the columns of m; it fits whenever the other two do and D does.
  using Wide = numth::Wide;
  const Wide nb = 2 * static_cast<Wide>(a_) * m.a * m.b + static_cast<Wide>(b_) * (static_cast<Wide>(m.a) * m.d + static_cast<Wide>(m.b) * m.c) +
                  2 * static_cast<Wide>(c_) * m.c * m.d;
  if (nb > std::numeric_limits<Int>::max() || nb < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("transformed form leaves the 64-bit range");
  }
  return BinaryForm(na, static_cast<Int>(nb), nc);
}

std::string BinaryForm::to_string(std::string_view x, std::string_view y) const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](Int coeff, const std::string& mono) {
    if (coeff == 0) return;
    if (first) {
      if (coeff < 0) os << '-';
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    const Int mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) os << mag;
    os << mono;
    first = false;
  };
  term(a_, std::string(x) + "^2");
  term(b_, std::string(x) + std::string(y));
  term(c_, std::string(y) + "^2");
  if (first) os << '0';
  return os.str();
}

bool is_loeschian(Int n) {
  if (n < 0) return false;
  if (n == 0) return true;
  for (const auto& [p, e] : numth::factorize(n).factors) {
    if (p % 3 == 2 && e % 2 != 0) return false;
  }
  return true;
}

bool is_sum_two_squares(Int n) {
  if (n < 0) return false;
  if (n == 0) return true;
  for (const auto& [p, e] : numth::factorize(n).factors) {
    if (p % 4 == 3 && e % 2 != 0) return false;
  }
  return true;
}

bool is_reduced(const BinaryForm& f) {
  if (!f.is_indefinite()) return false;
  const Int root = numth::isqrt(f.discriminant());
  const Int two_a = mul(2, abs_checked(f.a()));
  const Int b = f.b();
  return b > 0 && b <= root && add(two_a, b) > root && sub(two_a, b) <= root;
}

Reduced reduce(const BinaryForm& f) {
  require_indefinite(f);
  const Int root = numth::isqrt(f.discriminant());
  Reduced r{f, Matrix2::identity()};
  for (int i = 0; i < kMaxSteps; ++i) {
    if (is_reduced(r.form)) return r;
    Step st = rho(r.form, root);
    r.form = st.form;
    r.transform = r.transform * st.matrix;
  }
  throw std::logic_error("reduction did not terminate");
}

std::vector<Reduced> reduced_cycle(const BinaryForm& reduced_form) {
  return walk_cycle(reduced_form).members;
}

std::optional<Matrix2> proper_equivalence(const BinaryForm& f, const BinaryForm& g) {
  require_indefinite(f);
  if (g.discriminant() != f.discriminant()) return std::nullopt;
  return EquivalenceClass(f).equivalence_to(g);
}

PellSolution minimal_pell_solution(Int discriminant) {
  if (discriminant <= 0 || (discriminant % 4 != 0 && discriminant % 4 != 1)) {
    throw UnsupportedForm("discriminant must be positive and congruent to 0 or 1 mod 4");
  }
  const Int parity = discriminant % 2;
  const BinaryForm principal(1, parity, (parity - discriminant) / 4);
  require_indefinite(principal);
  const Cycle cyc = walk_cycle(reduce(principal).form);
  const Int t = abs_checked(cyc.period.trace());
  const numth::Wide rest = static_cast<numth::Wide>(t) * t - 4;
  if (rest <= 0 || rest % discriminant != 0) throw std::logic_error("cycle period is not an automorph");
  const numth::Wide u2 = rest / discriminant;
  const auto u = static_cast<Int>(__builtin_sqrtl(static_cast<long double>(u2)));
  Int root = u;
  while (static_cast<numth::Wide>(root) * root > u2) --root;
  while (static_cast<numth::Wide>(root + 1) * (root + 1) <= u2) ++root;
  if (static_cast<numth::Wide>(root) * root != u2 || root == 0) {
    throw std::logic_error("cycle period is not an automorph");
  }
  return {t, root};
}

Matrix2 fundamental_automorph(const BinaryForm& f) {
  require_indefinite(f);
  const auto [t, u] = minimal_pell_solution(f.discriminant());
  const Int bu = mul(f.b(), u);
  return {sub(t, bu) / 2, numth::neg(mul(f.c(), u)), mul(f.a(), u), add(t, bu) / 2};
}

Matrix2 automorph_generator(const BinaryForm& f) { return fundamental_automorph(f.primitive_part()); }

std::vector<Vec2> representation_orbits(const BinaryForm& f, Int n) {
  require_supported(f);
  if (f.is_definite()) return definite_solutions(f, n);
  return indefinite_orbits(f, n, false);
}

bool represents(const BinaryForm& f, Int n) {
  require_supported(f);
  if (f.is_definite()) {
    if (is_model_loeschian(f)) return is_loeschian(n);
    if (is_model_two_square(f)) return is_sum_two_squares(n);
    return !definite_solutions(f, n).empty();
  }
  return !indefinite_orbits(f, n, true).empty();
}

std::vector<Int> form_values_in(const BinaryForm& f, Int lo, Int hi) {
  if (lo > hi) throw std::invalid_argument("empty range: lo > hi");
  require_supported(f);
  std::vector<Int> out;
  for (Int n = lo;; ++n) {
    if (represents(f, n)) out.push_back(n);
    if (n == hi) break;
  }
  return out;
}

}  // namespace selfdeg::forms
