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

#include "selfdeg/numth.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace selfdeg::numth {

Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

Int neg(Int a) { return sub(0, a); }

Int mod(Int a, Int m) {
  if (m < 1) throw std::invalid_argument("modulus must be positive");
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mul_mod(Int a, Int b, Int m) {
  const Wide p = static_cast<Wide>(mod(a, m)) * mod(b, m);
  return static_cast<Int>(p % m);
}

Int pow_mod(Int base, std::uint64_t exp, Int m) {
  Int result = mod(1, m);
  Int b = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

Int inverse_mod(Int a, Int m) {
  // extended Euclid on (a mod m, m)
  Int old_r = mod(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    const Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1 && m != 1) throw std::invalid_argument("value is not invertible modulo m");
  return mod(old_s, m);
}

Int gcd(Int a, Int b) {
  if (a == std::numeric_limits<Int>::min() || b == std::numeric_limits<Int>::min()) {
    throw std::overflow_error("gcd argument out of range");
  }
  return std::gcd(a, b);
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  a = a < 0 ? neg(a) : a;
  b = b < 0 ? neg(b) : b;
  return mul(a / gcd(a, b), b);
}

Int isqrt(Int n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative value");
  auto r = static_cast<Int>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<Wide>(r) * r > n) --r;
  while (static_cast<Wide>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::optional<Int> is_perfect_square(Int n) {
  if (n < 0) return std::nullopt;
  const Int r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

Int Factorization::value() const {
  Int v = 1;
  for (const auto& f : factors) {
    for (int i = 0; i < f.exponent; ++i) v = mul(v, f.prime);
  }
  return v;
}

int Factorization::exponent_of(Int p) const {
  for (const auto& f : factors) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

Factorization factorize(Int n) {
  if (n <= 0) throw std::invalid_argument("factorize requires a positive integer");
  Factorization out;
  out.n = n;
  auto take = [&](Int p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (Int p = 5; p <= n / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

std::vector<Int> divisors(Int n) {
  const Factorization f = factorize(n);
  std::vector<Int> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Prime powers up to this size are scanned directly.
constexpr Int kScanLimit = 64;

void check_root_count(std::size_t n) {
  if (n > kMaxSquareRoots) throw std::length_error("too many square roots to list");
}

Int prime_power(Int p, int k) {
  Int v = 1;
  for (int i = 0; i < k; ++i) v = mul(v, p);
  return v;
}

// x with x^2 = u (mod p) for an odd prime p and a unit u, if any.
std::optional<Int> tonelli_shanks(Int u, Int p) {
  u = mod(u, p);
  if (pow_mod(u, static_cast<std::uint64_t>((p - 1) / 2), p) != 1) return std::nullopt;
  Int q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (pow_mod(z, static_cast<std::uint64_t>((p - 1) / 2), p) != p - 1) ++z;
  Int c = pow_mod(z, static_cast<std::uint64_t>(q), p);
  Int x = pow_mod(u, static_cast<std::uint64_t>((q + 1) / 2), p);
  Int t = pow_mod(u, static_cast<std::uint64_t>(q), p);
  int m = s;
  while (t != 1) {
    int i = 0;
    for (Int t2 = t; t2 != 1; t2 = mul_mod(t2, t2, p)) ++i;
    Int b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

// Roots of y^2 = u (mod p^j) for a unit u and j >= 1.
std::vector<Int> unit_roots(Int u, Int p, int j) {
  const Int pj = prime_power(p, j);
  if (p == 2) {
    // Lift bit by bit; there are never more than four roots.
    std::vector<Int> roots{1};
    Int level = 2;
    for (int i = 1; i < j; ++i) {
      const Int next = mul(level, 2);
      std::vector<Int> lifted;
      for (Int r : roots) {
        for (Int x : {r, r + level}) {
          if (mul_mod(x, x, next) == mod(u, next)) lifted.push_back(x);
        }
      }
      roots = std::move(lifted);
      level = next;
    }
    return roots;
  }
  const auto r0 = tonelli_shanks(u, p);
  if (!r0) return {};
  Int r = *r0;
  Int level = p;
  for (int i = 1; i < j; ++i) {
    level = mul(level, p);
    // r <- r - (r^2 - u) / (2r)
    const Int err = mod(static_cast<Int>((static_cast<Wide>(r) * r - u) % level), level);
    r = mod(r - mul_mod(err, inverse_mod(mod(mul(2, r), level), level), level), level);
  }
  return r == 0 ? std::vector<Int>{0} : std::vector<Int>{std::min(r, pj - r), std::max(r, pj - r)};
}

std::vector<Int> prime_power_roots(Int a, Int p, int k) {
  const Int pk = prime_power(p, k);
  a = mod(a, pk);
  std::vector<Int> out;
  if (pk <= kScanLimit) {
    for (Int x = 0; x < pk; ++x) {
      if (mul_mod(x, x, pk) == a) out.push_back(x);
    }
    return out;
  }
  if (a == 0) {
    const Int step = prime_power(p, (k + 1) / 2);
    check_root_count(static_cast<std::size_t>(pk / step));
    for (Int x = 0; x < pk; x += step) out.push_back(x);
    return out;
  }
  int v = 0;
  Int u = a;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  if (v % 2 != 0) return out;
  // x = p^(v/2) y with y^2 = u (mod p^(k-v)); y matters modulo p^(k-v/2).
  const int j = k - v;
  const Int half = prime_power(p, v / 2);
  const Int pj = prime_power(p, j);
  const std::vector<Int> ys = unit_roots(u, p, j);
  check_root_count(ys.size() * static_cast<std::size_t>(half));
  for (Int y : ys) {
    for (Int t = 0; t < half; ++t) out.push_back(mul_mod(half, y + t * pj, pk));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Int> square_roots_mod(Int a, const Factorization& m) {
  std::vector<Int> roots{0};
  Int modulus = 1;
  for (const auto& [p, k] : m.factors) {
    const Int pk = prime_power(p, k);
    const std::vector<Int> local = prime_power_roots(a, p, k);
    if (local.empty()) return {};
    check_root_count(roots.size() * local.size());
    // x = r + modulus * ((s - r) * modulus^-1 mod pk)
    const Int inv = inverse_mod(mod(modulus, pk), pk);
    const Int next = mul(modulus, pk);
    std::vector<Int> merged;
    merged.reserve(roots.size() * local.size());
    for (Int r : roots) {
      for (Int s : local) {
        const Int t = mul_mod(mod(s - mod(r, pk), pk), inv, pk);
        merged.push_back(static_cast<Int>(r + static_cast<Wide>(modulus) * t));
      }
    }
    roots = std::move(merged);
    modulus = next;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Int> square_roots_mod(Int a, Int m) { return square_roots_mod(a, factorize(m)); }

// ResidueSet

ResidueSet::ResidueSet() : modulus_(1) {}

ResidueSet::ResidueSet(Int modulus, std::vector<Int> residues) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("residue set modulus must be >= 1");
  for (Int& r : residues) r = mod(r, modulus);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  residues_ = std::move(residues);
}

ResidueSet ResidueSet::all_integers() { return ResidueSet(1, {0}); }

ResidueSet ResidueSet::none(Int modulus) { return ResidueSet(modulus, {}); }

bool ResidueSet::contains(Int d) const {
  return std::binary_search(residues_.begin(), residues_.end(), mod(d, modulus_));
}

ResidueSet ResidueSet::lifted(Int new_modulus) const {
  if (new_modulus < 1 || new_modulus % modulus_ != 0) {
    throw std::invalid_argument("lift target must be a multiple of the modulus");
  }
  if (new_modulus > kMaxResidueModulus) throw std::length_error("residue modulus too large");
  std::vector<Int> out;
  out.reserve(residues_.size() * static_cast<std::size_t>(new_modulus / modulus_));
  for (Int k = 0; k < new_modulus; k += modulus_) {
    for (Int r : residues_) out.push_back(k + r);
  }
  return ResidueSet(new_modulus, std::move(out));
}

ResidueSet ResidueSet::reduced() const {
  // Periods of a periodic set are closed under gcd, so the least period is a
  // divisor of the current modulus.
  for (Int d : divisors(modulus_)) {
    if (residues_.size() % static_cast<std::size_t>(modulus_ / d) != 0) continue;
    bool periodic = true;
    for (Int r : residues_) {
      if (!contains(r + d)) {
        periodic = false;
        break;
      }
    }
    if (!periodic) continue;
    std::vector<Int> small;
    for (Int r : residues_) {
      if (r < d) small.push_back(r);
    }
    return ResidueSet(d, std::move(small));
  }
  return *this;
}

ResidueSet ResidueSet::negated() const {
  std::vector<Int> out;
  out.reserve(residues_.size());
  for (Int r : residues_) out.push_back(modulus_ - r);
  return ResidueSet(modulus_, std::move(out));
}

std::vector<Int> ResidueSet::members_in(Int lo, Int hi) const {
  std::vector<Int> out;
  if (lo > hi || residues_.empty()) return out;
  const Int base = sub(lo, mod(lo, modulus_));
  for (Int block = base;; block = add(block, modulus_)) {
    for (Int r : residues_) {
      const Int v = add(block, r);
      if (v > hi) return out;
      if (v >= lo) out.push_back(v);
    }
    if (hi - block < modulus_) return out;
  }
}

ResidueSet units_mod(Int m) {
  if (m < 1) throw std::invalid_argument("units_mod requires m >= 1");
  if (m == 1) return ResidueSet::all_integers();
  std::vector<Int> out;
  for (Int r = 1; r < m; ++r) {
    if (std::gcd(r, m) == 1) out.push_back(r);
  }
  return ResidueSet(m, std::move(out));
}

ResidueSet crt_merge(const ResidueSet& a, const ResidueSet& b) {
  const Int m = lcm(a.modulus(), b.modulus());
  if (m > kMaxResidueModulus) throw std::length_error("residue modulus too large");
  std::vector<Int> out;
  for (Int r : a.residues()) {
    for (Int x = r; x < m; x += a.modulus()) {
      if (b.contains(x)) out.push_back(x);
    }
  }
  return ResidueSet(m, std::move(out));
}

ResidueSet residue_union(const ResidueSet& a, const ResidueSet& b) {
  const Int m = lcm(a.modulus(), b.modulus());
  ResidueSet la = a.lifted(m);
  ResidueSet lb = b.lifted(m);
  std::vector<Int> out = la.residues();
  out.insert(out.end(), lb.residues().begin(), lb.residues().end());
  return ResidueSet(m, std::move(out));
}

}  // namespace selfdeg::numth
