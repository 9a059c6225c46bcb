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

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wallchamber/errors.hpp"
#include "wallchamber/lattice.hpp"

namespace wallchamber::dioph {

/// The wall system on 8 integer unknowns a_1..a_8 and b:
///   a_1^2 + ... + a_8^2 = x + b^2
///   -a_1 - ... - a_8    = x - 2 + 3b
inline constexpr int kVars = 8;

struct DaggerInstance {
  long long x = 0;
};

inline bool is_solution(long long x, long long b,
                        const std::array<long long, kVars>& a) {
  long long sq = 0, lin = 0;
  for (long long v : a) {
    sq += v * v;
    lin += v;
  }
  return sq == x + b * b && -lin == x - 2 + 3 * b;
}

/// One solution of the system for a given x. `a` is kept sorted ascending;
/// a solution stands for its multiset class unless expanded to orderings.
struct DaggerSolution {
  long long b = 0;
  std::array<long long, kVars> a{};

  DaggerSolution(long long x, long long b_value,
                 std::array<long long, kVars> a_values)
      : b(b_value), a(a_values) {
    if (!is_solution(x, b, a))
      throw InvalidInput("DaggerSolution: values do not solve the system");
  }

  friend bool operator==(const DaggerSolution&, const DaggerSolution&) =
      default;
  friend auto operator<=>(const DaggerSolution& l, const DaggerSolution& r) {
    if (auto c = l.b <=> r.b; c != 0) return c;
    return l.a <=> r.a;
  }

  std::string str() const {
    std::string s = "b=" + std::to_string(b) + ", a=(";
    for (int i = 0; i < kVars; ++i)
      s += (i ? "," : "") + std::to_string(a[static_cast<std::size_t>(i)]);
    return s + ")";
  }
};

/// Whether brute_solutions reports multiset classes (sorted a) or all
/// distinct orderings.
enum class SolutionListing { kMultisets, kOrderings };

/// Complete solution set with b in [b_min, b_max], by exhaustive descent
/// over nondecreasing a with |a_i| <= ceil(sqrt(x + b^2)) (forced by the
/// first equation) and a Cauchy-Schwarz prune on the remaining linear sum.
/// This is the independent oracle the closed-form classification is
/// checked against.
inline std::set<DaggerSolution> brute_solutions(
    long long x, long long b_min, long long b_max,
    SolutionListing listing = SolutionListing::kMultisets) {
  if (b_min > b_max)
    throw InvalidInput("brute_solutions: b_min must be <= b_max");
  std::set<DaggerSolution> out;
  for (long long b = b_min; b <= b_max; ++b) {
    const long long target_sq = x + b * b;
    if (target_sq < 0) continue;
    const long long target_lin = -(x - 2 + 3 * b);
    long long m = lattice::detail::isqrt(target_sq);
    if (m * m < target_sq) ++m;
    std::array<long long, kVars> a{};
    auto rec = [&](auto&& self, int i, long long lo, long long sq,
                   long long lin) -> void {
      if (sq > target_sq) return;
      const long long rem = kVars - i;
      const long long need_lin = target_lin - lin;
      const long long need_sq = target_sq - sq;
      if (need_lin * need_lin > rem * need_sq) return;
      if (i == kVars) {
        if (sq == target_sq && lin == target_lin)
          out.emplace(x, b, a);
        return;
      }
      for (long long v = lo; v <= m; ++v) {
        a[static_cast<std::size_t>(i)] = v;
        self(self, i + 1, v, sq + v * v, lin + v);
      }
    };
    rec(rec, 0, -m, 0, 0);
  }
  if (listing == SolutionListing::kOrderings) {
    std::set<DaggerSolution> expanded;
    for (const DaggerSolution& s : out) {
      std::array<long long, kVars> p = s.a;
      do {
        expanded.emplace(x, s.b, p);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return expanded;
  }
  return out;
}

/// The closed-form classification of positive-b solutions for x >= 3:
/// b = 1 with x+1 entries equal to -1 (when x+1 <= 8) and b = 2 with x+4
/// entries equal to -1 (when x+4 <= 8); nothing else.
inline std::set<DaggerSolution> classify_positive_b(long long x) {
  if (x < 3)
    throw InvalidInput(
        "classify_positive_b: requires x >= 3; use brute_solutions for "
        "smaller x");
  std::set<DaggerSolution> out;
  auto cls = [&](long long b, long long ones) {
    std::array<long long, kVars> a{};
    for (long long i = 0; i < ones; ++i) a[static_cast<std::size_t>(i)] = -1;
    std::sort(a.begin(), a.end());
    out.emplace(x, b, a);
  };
  if (x + 1 <= kVars) cls(1, x + 1);
  if (x + 4 <= kVars) cls(2, x + 4);
  return out;
}

/// Exact value (p + q sqrt(d)) / r with integer p, q, d, r (r > 0, d >= 0).
struct QuadraticRadical {
  long long p = 0;
  long long q = 0;
  long long d = 0;
  long long r = 1;

  /// Exact floor: the largest c with c r <= p + q sqrt(d), decided by
  /// sign analysis and squaring. Never evaluates the radical numerically.
  long long floor() const {
    long long s = lattice::detail::isqrt(d);
    auto fdiv = [](long long num, long long den) {
      long long t = num / den;
      return (num % den != 0 && (num < 0) != (den < 0)) ? t - 1 : t;
    };
    if (s * s == d) return fdiv(p + q * s, r);
    // sqrt(d) strictly inside (s, s+1)
    long long lo = fdiv(p + (q >= 0 ? q * s : q * (s + 1)), r);
    long long hi = fdiv(p + (q >= 0 ? q * (s + 1) : q * s), r);
    for (long long c = hi; c > lo; --c) {
      // c <= value  <=>  q sqrt(d) >= c r - p
      long long rhs = c * r - p;
      bool ok = (q >= 0) ? (rhs <= 0 || d * q * q >= rhs * rhs)
                         : (rhs <= 0 && d * q * q <= rhs * rhs);
      if (ok) return c;
    }
    return lo;
  }

  /// Decimal evaluation with `digits` fractional digits, truncated.
  std::string decimal(int digits = 4) const {
    boost::multiprecision::cpp_int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    boost::multiprecision::cpp_int num =
        boost::multiprecision::cpp_int(p) * scale;
    boost::multiprecision::cpp_int rad =
        boost::multiprecision::cpp_int(d) * scale * scale * q * q;
    boost::multiprecision::cpp_int root = boost::multiprecision::sqrt(rad);
    num += (q >= 0) ? root : -root;
    boost::multiprecision::cpp_int denom = r;
    bool neg = (num < 0) != (denom < 0);
    num = abs(num);
    denom = abs(denom);
    boost::multiprecision::cpp_int whole = num / denom / scale;
    boost::multiprecision::cpp_int frac = (num / denom) % scale;
    std::string fs = frac.str();
    fs.insert(fs.begin(), static_cast<std::size_t>(digits) - fs.size(), '0');
    return (neg ? "-" : "") + whole.str() + "." + fs;
  }

  std::string str() const {
    return "(" + std::to_string(p) + (q >= 0 ? "+" : "-") +
           std::to_string(q >= 0 ? q : -q) + "*sqrt(" + std::to_string(d) +
           "))/" + std::to_string(r);
  }
};

struct RealBBounds {
  QuadraticRadical b_minus;
  QuadraticRadical b_plus;
  // coefficients of the eliminated quadratic b^2 + c1 b + c0 = 0
  long long quad_linear = 0;
  long long quad_const = 0;
};

/// Real roots b-+ = (-6(x-2) -+ sqrt(36(x-2)^2 - 4((x-2)^2 - 8x))) / 2 of
/// the quadratic obtained by eliminating t from 8t^2 = b^2 + x and
/// -8t - 3b = -2 + x. Every integer solution with b > 0 has b <= floor(b+).
inline RealBBounds real_b_bounds(long long x) {
  long long disc = 36 * (x - 2) * (x - 2) - 4 * ((x - 2) * (x - 2) - 8 * x);
  if (disc < 0)
    throw InvalidInput("real_b_bounds: negative discriminant, no real roots");
  RealBBounds r;
  r.b_minus = QuadraticRadical{-6 * (x - 2), -1, disc, 2};
  r.b_plus = QuadraticRadical{-6 * (x - 2), 1, disc, 2};
  r.quad_linear = 6 * (x - 2);
  r.quad_const = (x - 2) * (x - 2) - 8 * x;
  return r;
}

/// Default verification range for b when the caller does not specify one.
inline std::pair<long long, long long> default_b_range(long long x) {
  long long m = 10 * std::max<long long>(3, x);
  return {-m, m};
}

}  // namespace wallchamber::dioph
