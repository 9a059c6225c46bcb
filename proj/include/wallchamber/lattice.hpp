// Copyright 2026 The wallchamber Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wallchamber/errors.hpp"

namespace wallchamber::lattice {

/// A divisor class b*H + a1*E1 + ... + an*En on the plane blown up at n
/// points, stored as exact integer coordinates in the (H, E1..En) basis.
/// The intersection form is H^2 = 1, Ei^2 = -1, mixed products 0.
struct DivisorClass {
  long long h = 0;
  std::vector<long long> e;

  DivisorClass() = default;
  DivisorClass(long long h_coeff, std::vector<long long> e_coeffs)
      : h(h_coeff), e(std::move(e_coeffs)) {}

  std::size_t blowups() const { return e.size(); }

  bool is_zero() const {
    if (h != 0) return false;
    return std::all_of(e.begin(), e.end(), [](long long a) { return a == 0; });
  }

  DivisorClass operator-() const {
    DivisorClass r = *this;
    r.h = -r.h;
    for (auto& a : r.e) a = -a;
    return r;
  }
  DivisorClass operator+(const DivisorClass& o) const {
    DivisorClass r = *this;
    r.h += o.h;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += o.e[i];
    return r;
  }
  DivisorClass operator-(const DivisorClass& o) const { return *this + (-o); }
  DivisorClass operator*(long long k) const {
    DivisorClass r = *this;
    r.h *= k;
    for (auto& a : r.e) a *= k;
    return r;
  }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  /// Lexicographic order on (b, a1, ..., an); the canonical order for
  /// class sets produced by enumerations.
  friend auto operator<=>(const DivisorClass& lhs, const DivisorClass& rhs) {
    if (auto c = lhs.h <=> rhs.h; c != 0) return c;
    return lhs.e <=> rhs.e;
  }

  /// Renders as "b,a1,...,an", the wire format used by the CLI.
  std::string str() const {
    std::ostringstream os;
    os << h;
    for (long long a : e) os << ',' << a;
    return os.str();
  }
};

/// The lattice context: Pic of the plane blown up at n general points,
/// 0 <= n <= 8.
struct SurfaceModel {
  int n = 0;

  explicit SurfaceModel(int blowups) : n(blowups) {
    if (n < 0 || n > 8)
      throw InvalidInput("SurfaceModel: n must be in [0, 8], got " +
                         std::to_string(n));
  }

  int rank() const { return n + 1; }

  /// K = (-3; 1, ..., 1).
  DivisorClass canonical() const {
    return DivisorClass(-3, std::vector<long long>(n, 1));
  }
  DivisorClass anticanonical() const { return -canonical(); }

  DivisorClass hyperplane() const {
    return DivisorClass(1, std::vector<long long>(n, 0));
  }
  DivisorClass exceptional(int i) const {
    std::vector<long long> a(n, 0);
    a.at(static_cast<std::size_t>(i)) = 1;
    return DivisorClass(0, std::move(a));
  }

  void check(const DivisorClass& d, const char* who) const {
    if (d.e.size() != static_cast<std::size_t>(n))
      throw InvalidInput(std::string(who) + ": class has " +
                         std::to_string(d.e.size()) + " exceptional " +
                         "coordinates but the surface has n = " +
                         std::to_string(n));
  }
};

/// b1*b2 - sum(a1_i * a2_i). Symmetric and bilinear.
inline long long intersect(const SurfaceModel& s, const DivisorClass& d1,
                           const DivisorClass& d2) {
  s.check(d1, "intersect");
  s.check(d2, "intersect");
  long long v = d1.h * d2.h;
  for (int i = 0; i < s.n; ++i)
    v -= d1.e[static_cast<std::size_t>(i)] * d2.e[static_cast<std::size_t>(i)];
  return v;
}

inline DivisorClass canonical_class(const SurfaceModel& s) {
  return s.canonical();
}

/// Riemann-Roch characteristic 1 + (D.D - D.K)/2. The division is exact:
/// D^2 + D.K is even for every integral class.
inline long long euler_characteristic(const SurfaceModel& s,
                                      const DivisorClass& d) {
  long long dd = intersect(s, d, d);
  long long dk = intersect(s, d, s.canonical());
  if ((dd - dk) % 2 != 0)
    throw InternalError("euler_characteristic: parity violation");
  return 1 + (dd - dk) / 2;
}

/// zeta.K/2 - zeta^2/2 - 1. Equals -euler_characteristic(s, zeta).
inline long long h1_wall(const SurfaceModel& s, const DivisorClass& zeta) {
  long long zz = intersect(s, zeta, zeta);
  long long zk = intersect(s, zeta, s.canonical());
  if ((zk - zz) % 2 != 0) throw InternalError("h1_wall: parity violation");
  return (zk - zz) / 2 - 1;
}

namespace detail {

// Integer floor sqrt for v >= 0.
inline long long isqrt(long long v) {
  if (v < 0) throw InternalError("isqrt of negative value");
  if (v == 0) return 0;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// All classes C with C.C = -1 and C.K = -1 whose coordinates are bounded
// by `bound` in absolute value. Recursion over the exceptional coordinates
// with a Cauchy-Schwarz prune on the remaining linear sum.
inline void minus_one_search(int n, long long bound,
                             std::set<DivisorClass>* out) {
  for (long long b = -bound; b <= bound; ++b) {
    const long long target_sq = b * b + 1;   // sum a_i^2
    const long long target_lin = 1 - 3 * b;  // sum a_i
    if (target_sq > n * bound * bound && n > 0) continue;
    if (n == 0) continue;
    std::vector<long long> a(static_cast<std::size_t>(n), 0);
    // depth-first over coordinates
    auto rec = [&](auto&& self, int i, long long sq, long long lin) -> void {
      if (sq > target_sq) return;
      long long rem = n - i;
      long long need_lin = target_lin - lin;
      long long need_sq = target_sq - sq;
      if (need_lin * need_lin > rem * need_sq) return;  // Cauchy-Schwarz
      if (i == n) {
        if (sq == target_sq && lin == target_lin)
          out->insert(DivisorClass(b, a));
        return;
      }
      long long amax = std::min(bound, isqrt(need_sq));
      for (long long v = -amax; v <= amax; ++v) {
        a[static_cast<std::size_t>(i)] = v;
        self(self, i + 1, sq + v * v, lin + v);
      }
      a[static_cast<std::size_t>(i)] = 0;
    };
    rec(rec, 0, 0, 0);
  }
}

}  // namespace detail

/// The complete set of (-1)-classes {C : C.C = -1, C.K = -1}, canonically
/// sorted. Completeness is certified by re-running the bounded search with
/// the coefficient bound doubled and checking that the set is unchanged.
/// Counts for n = 1..8 are 1, 3, 6, 10, 16, 27, 56, 240.
inline std::set<DivisorClass> minus_one_classes(const SurfaceModel& s,
                                                long long initial_bound = 8) {
  std::set<DivisorClass> first, doubled;
  detail::minus_one_search(s.n, initial_bound, &first);
  detail::minus_one_search(s.n, 2 * initial_bound, &doubled);
  if (first != doubled)
    throw InternalError(
        "minus_one_classes: doubled-bound search found extra classes; "
        "initial bound too small");
  return first;
}

namespace detail {

// Mori generators, computed once per n. The (-1)-class search is not free,
// and ampleness tests sit on hot enumeration paths.
inline const std::vector<DivisorClass>& mori_cached(const SurfaceModel& s);

}  // namespace detail

/// Generators of the cone of curves: the (-1)-classes for n >= 2,
/// {E1, H-E1} for n = 1, {H} for n = 0.
inline std::set<DivisorClass> mori_generators(const SurfaceModel& s) {
  const auto& v = detail::mori_cached(s);
  return std::set<DivisorClass>(v.begin(), v.end());
}

/// True iff D.C > 0 for every Mori generator C (membership in the open
/// ample cone).
inline bool is_ample(const SurfaceModel& s, const DivisorClass& d) {
  s.check(d, "is_ample");
  for (const DivisorClass& c : detail::mori_cached(s))
    if (intersect(s, d, c) <= 0) return false;
  return true;
}

namespace detail {

inline const std::vector<DivisorClass>& mori_cached(const SurfaceModel& s) {
  static std::mutex mu;
  static std::map<int, std::vector<DivisorClass>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(s.n);
  if (it != cache.end()) return it->second;
  std::vector<DivisorClass> v;
  if (s.n == 0) {
    v = {s.hyperplane()};
  } else if (s.n == 1) {
    v = {s.exceptional(0), s.hyperplane() - s.exceptional(0)};
  } else {
    auto set = minus_one_classes(s);
    v.assign(set.begin(), set.end());
  }
  return cache[s.n] = std::move(v);
}

}  // namespace detail

/// Parses "b,a1,...,an". Used by the CLI and tests.
inline DivisorClass parse_class(const std::string& text) {
  std::vector<long long> coords;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw InvalidInput("parse_class: bad integer '" + tok + "' in '" +
                         text + "'");
    }
    if (pos != tok.size())
      throw InvalidInput("parse_class: bad integer '" + tok + "' in '" +
                         text + "'");
    coords.push_back(v);
  }
  if (coords.empty()) throw InvalidInput("parse_class: empty class '" + text + "'");
  return DivisorClass(coords[0],
                      std::vector<long long>(coords.begin() + 1, coords.end()));
}

}  // namespace wallchamber::lattice
