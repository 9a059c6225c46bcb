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
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "wallchamber/lattice.hpp"
#include "wallchamber/simplex.hpp"

namespace wallchamber::walls {

using lattice::DivisorClass;
using lattice::SurfaceModel;
using lattice::intersect;
using simplex::BigInt;
using simplex::Rational;

/// Numeric type (c1, c2) of a wall system, with the twist-invariant
/// discriminant x = 4*c2 - c1^2.
struct WallSpec {
  SurfaceModel surface;
  DivisorClass c1;
  long long c2 = 0;
  long long x = 0;

  WallSpec(SurfaceModel s, DivisorClass c1_class, long long c2_value)
      : surface(s), c1(std::move(c1_class)), c2(c2_value) {
    surface.check(c1, "WallSpec");
    x = 4 * c2 - intersect(surface, c1, c1);
  }
};

/// A wall class, stored sign-normalized: the first nonzero coordinate of
/// zeta is positive.
struct Wall {
  DivisorClass zeta;
  long long zeta_sq = 0;

  friend bool operator==(const Wall&, const Wall&) = default;
  friend auto operator<=>(const Wall& a, const Wall& b) {
    return a.zeta <=> b.zeta;
  }
};

/// Flips zeta so its first nonzero coordinate is positive.
inline DivisorClass normalize_sign(const DivisorClass& zeta) {
  if (zeta.h != 0) return zeta.h > 0 ? zeta : -zeta;
  for (long long a : zeta.e) {
    if (a != 0) return a > 0 ? zeta : -zeta;
  }
  return zeta;  // zero class
}

namespace detail {

inline int parity(long long v) { return static_cast<int>(((v % 2) + 2) % 2); }

// Ample integer classes used as cheap sign witnesses before falling back to
// the LP. All entries are verified ample at construction.
inline const std::vector<DivisorClass>& sample_amples(const SurfaceModel& s) {
  static std::mutex mu;
  static std::map<int, std::vector<DivisorClass>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(s.n);
  if (it != cache.end()) return it->second;

  std::vector<DivisorClass> raw;
  DivisorClass mk = s.anticanonical();
  DivisorClass h = s.hyperplane();
  raw.push_back(mk);
  raw.push_back(mk + h);
  raw.push_back(mk + h + h);
  for (int i = 0; i < s.n; ++i) {
    DivisorClass ei = s.exceptional(i);
    raw.push_back(mk * 4 + ei);
    raw.push_back(mk * 4 - ei);
    raw.push_back(mk * 4 + (h - ei));
    raw.push_back(mk * 4 - (h - ei));
    raw.push_back(mk * 2 + h - ei);
  }
  std::vector<DivisorClass> ok;
  for (const auto& d : raw)
    if (lattice::is_ample(s, d)) ok.push_back(d);
  return cache[s.n] = std::move(ok);
}

// Exact decision by slack maximization: maximize t subject to
// A.C >= t for all Mori generators C, A.zeta = 0, A.(-K) = 1.
// The optimum is computed through the LP dual
//     min nu  s.t.  sum y_i = 1,  sum y_i C_i = mu zeta + nu (-K),
//                   y >= 0, mu and nu free,
// which has the same exact rational value; the answer is t > 0 achievable.
inline bool meets_by_lp(const SurfaceModel& s, const DivisorClass& zeta) {
  std::vector<DivisorClass> gens;
  for (const auto& c : lattice::mori_generators(s)) gens.push_back(c);
  const std::size_t m = gens.size();
  const std::size_t rank = static_cast<std::size_t>(s.rank());
  DivisorClass mk = s.anticanonical();

  auto coord = [&](const DivisorClass& d, std::size_t k) -> long long {
    return k == 0 ? d.h : d.e[k - 1];
  };

  // variables: y_0..y_{m-1}, mu+, mu-, nu+, nu-
  std::size_t nv = m + 4;
  std::vector<std::vector<Rational>> a(rank + 1, std::vector<Rational>(nv, 0));
  std::vector<Rational> b(rank + 1, 0), c(nv, 0);
  for (std::size_t i = 0; i < m; ++i) a[0][i] = 1;
  b[0] = 1;
  for (std::size_t k = 0; k < rank; ++k) {
    for (std::size_t i = 0; i < m; ++i) a[k + 1][i] = coord(gens[i], k);
    a[k + 1][m] = -coord(zeta, k);
    a[k + 1][m + 1] = coord(zeta, k);
    a[k + 1][m + 2] = -coord(mk, k);
    a[k + 1][m + 3] = coord(mk, k);
    b[k + 1] = 0;
  }
  c[m + 2] = 1;
  c[m + 3] = -1;

  simplex::Result r = simplex::StandardLp(a, b, c).solve();
  if (r.status == simplex::Status::kUnbounded)
    return false;  // primal infeasible: zeta forces A.(-K) = 0
  if (r.status == simplex::Status::kInfeasible)
    throw InternalError("meets_by_lp: dual infeasible (primal unbounded)");
  return r.objective > 0;
}

inline std::vector<long long> canonical_key(const DivisorClass& zeta) {
  DivisorClass z = normalize_sign(zeta);
  std::vector<long long> key;
  key.push_back(z.h);
  std::vector<long long> a = z.e;
  std::sort(a.begin(), a.end());
  key.insert(key.end(), a.begin(), a.end());
  return key;
}

}  // namespace detail

/// True iff the hyperplane zeta-perp meets the open ample cone, i.e. there
/// is a rational A with A.zeta = 0 and A.C > 0 for every Mori generator C.
/// Decided exactly: cheap certificates first (ample sign witnesses; the
/// H-degree-0 case reduces to mixed signs among the E-coefficients), then
/// the slack-maximization LP over exact rationals. No floating point.
inline bool hyperplane_meets_ample_cone(const SurfaceModel& s,
                                        const DivisorClass& zeta) {
  s.check(zeta, "hyperplane_meets_ample_cone");
  if (zeta.is_zero())
    throw InvalidInput("hyperplane_meets_ample_cone: zeta must be nonzero");

  // zeta proportional to K never vanishes on an ample class. For n = 0
  // every nonzero bH is proportional to K = -3H.
  {
    bool prop = true;
    for (int i = 0; i < s.n; ++i)
      if (3 * zeta.e[static_cast<std::size_t>(i)] != -zeta.h) {
        prop = false;
        break;
      }
    if (prop) return false;
  }

  // b = 0: zeta is in +-(Mori cone) exactly when the E-coefficients are
  // single-signed, so the hyperplane meets the open cone iff they are mixed.
  if (zeta.h == 0) {
    bool pos = false, neg = false;
    for (long long v : zeta.e) {
      pos |= v > 0;
      neg |= v < 0;
    }
    return pos && neg;
  }

  static std::mutex mu;
  static std::map<std::pair<int, std::vector<long long>>, bool> memo;
  auto key = std::make_pair(s.n, detail::canonical_key(zeta));
  {
    std::scoped_lock lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  bool decided = false, result = false;
  bool pos = false, neg = false;
  for (const DivisorClass& a : detail::sample_amples(s)) {
    long long v = intersect(s, a, zeta);
    if (v == 0) {  // ample witness on the hyperplane
      result = true;
      decided = true;
      break;
    }
    pos |= v > 0;
    neg |= v < 0;
    if (pos && neg) {
      result = true;
      decided = true;
      break;
    }
  }
  if (!decided) result = detail::meets_by_lp(s, zeta);

  std::scoped_lock lock(mu);
  memo[key] = result;
  return result;
}

/// The three wall conditions: zeta == c1 (mod 2) componentwise,
/// c1^2 - 4 c2 <= zeta^2 < 0, and zeta-perp meets the open ample cone.
inline bool is_wall_class(const WallSpec& spec, const DivisorClass& zeta) {
  spec.surface.check(zeta, "is_wall_class");
  if (zeta.is_zero()) return false;
  if (detail::parity(zeta.h) != detail::parity(spec.c1.h)) return false;
  for (int i = 0; i < spec.surface.n; ++i)
    if (detail::parity(zeta.e[static_cast<std::size_t>(i)]) !=
        detail::parity(spec.c1.e[static_cast<std::size_t>(i)]))
      return false;
  long long zsq = intersect(spec.surface, zeta, zeta);
  if (!(-spec.x <= zsq && zsq < 0)) return false;
  return hyperplane_meets_ample_cone(spec.surface, zeta);
}

inline Wall make_wall(const WallSpec& spec, const DivisorClass& zeta) {
  DivisorClass z = normalize_sign(zeta);
  return Wall{z, intersect(spec.surface, z, z)};
}

struct FullCone {};
struct Segment {
  DivisorClass l0;
  DivisorClass l1;
};
using Region = std::variant<FullCone, Segment>;

namespace detail {

// isqrt for BigInt (floor).
inline BigInt big_isqrt(const BigInt& v) {
  if (v < 0) throw InternalError("big_isqrt of negative value");
  if (v == 0) return 0;
  BigInt r = boost::multiprecision::sqrt(v);
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline BigInt big_inter(const SurfaceModel& s, const DivisorClass& d1,
                        const DivisorClass& d2) {
  BigInt v = BigInt(d1.h) * d2.h;
  for (int i = 0; i < s.n; ++i)
    v -= BigInt(d1.e[static_cast<std::size_t>(i)]) *
         d2.e[static_cast<std::size_t>(i)];
  return v;
}

// For a wall zeta orthogonal to some A on the segment
// {A_t = (1-t) P + t Q : t in [0,1]} (all with A_t^2 > 0), the form is
// negative definite on A_t-perp, so for every class D
//   (zeta.D)^2 <= x * f_D(t),   f_D(t) = (D.A_t)^2 / A_t^2 - D^2.
// f_D is maximized exactly: (D.A_t)^2 / A_t^2 has a single interior
// critical point (the derivative's numerator is linear in t), so it is
// enough to evaluate f_D at the endpoints and there.
struct Box {
  long long b_max = 0;
  std::vector<long long> e_max;
};

inline Box coefficient_box(const SurfaceModel& s, long long x,
                           const DivisorClass& p, const DivisorClass& q) {
  if (x < 0) return Box{-1, {}};
  BigInt p2 = big_inter(s, p, p), q2 = big_inter(s, q, q);
  BigInt pq = big_inter(s, p, q);
  if (p2 <= 0 || q2 <= 0)
    throw InternalError("coefficient_box: endpoint outside positive cone");
  // A_t^2 = hp + hq t + hr t^2, concave with positive endpoint values
  const BigInt hp = p2, hq = 2 * (pq - p2), hr = p2 + q2 - 2 * pq;

  Box box;
  auto bound_for = [&](const DivisorClass& d, long long dsq) -> long long {
    BigInt alpha = big_inter(s, d, p);       // D.A_0
    BigInt beta = big_inter(s, d, q) - alpha;  // slope of D.A_t
    Rational fmax = Rational(alpha * alpha, p2) - dsq;
    Rational f1 = Rational((alpha + beta) * (alpha + beta), q2) - dsq;
    if (f1 > fmax) fmax = f1;
    // interior critical point of (D.A_t)^2 / A_t^2
    BigInt denom = beta * hq - 2 * alpha * hr;
    if (denom != 0) {
      BigInt tnum = alpha * hq - 2 * beta * hp;
      if (denom < 0) {  // cpp_rational requires a positive denominator
        tnum = -tnum;
        denom = -denom;
      }
      Rational t(tnum, denom);
      if (t > 0 && t < 1) {
        Rational g = Rational(alpha) + Rational(beta) * t;
        Rational h = Rational(hp) + Rational(hq) * t + Rational(hr) * t * t;
        Rational f = g * g / h - dsq;
        if (f > fmax) fmax = f;
      }
    }
    Rational cap = Rational(x) * fmax;
    if (cap < 0) return -1;  // no wall can pair nonzero with d
    BigInt r = big_isqrt(boost::multiprecision::numerator(cap) /
                         boost::multiprecision::denominator(cap));
    if (r > 1000000)  // also keeps b^2 + x comfortably inside 64 bits
      throw InvalidInput(
          "enumerate_walls: region too wide for exhaustive enumeration");
    return r.convert_to<long long>();
  };
  box.b_max = bound_for(s.hyperplane(), 1);
  for (int i = 0; i < s.n; ++i)
    box.e_max.push_back(bound_for(s.exceptional(i), -1));
  return box;
}

// Enumerates sign-normalized candidates with the type's parity, with
// zeta^2 in [-x, 0), inside `box`, and calls `leaf` on each.
template <typename Leaf>
void enumerate_candidates(const WallSpec& spec, const Box& box, Leaf&& leaf) {
  const SurfaceModel& s = spec.surface;
  const long long x = spec.x;
  if (x <= 0 || box.b_max < 0) return;
  const int n = s.n;
  const int pb = parity(spec.c1.h);
  std::vector<int> pe(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pe[static_cast<std::size_t>(i)] =
        parity(spec.c1.e[static_cast<std::size_t>(i)]);

  // suffix capacity: max possible remaining sum of squares
  std::vector<long long> suffix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    long long be = box.e_max[static_cast<std::size_t>(i)];
    long long cap = be < 0 ? 0 : be * be;
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i) + 1] + cap;
  }

  std::vector<long long> a(static_cast<std::size_t>(n), 0);
  for (long long b = pb; b <= box.b_max; b += 2) {
    const long long cap = b * b + x;  // sum a^2 <= b^2 + x
    const long long need = b * b;     // sum a^2 > b^2
    auto rec = [&](auto&& self, int i, long long sumsq,
                   bool all_zero) -> void {
      if (sumsq > cap) return;
      if (sumsq + suffix[static_cast<std::size_t>(i)] <= need) return;
      if (i == n) {
        if (sumsq > need && !(b == 0 && all_zero)) {
          DivisorClass zeta(b, a);
          leaf(zeta, b * b - sumsq);
        }
        return;
      }
      long long be = box.e_max[static_cast<std::size_t>(i)];
      if (be < 0) be = 0;
      long long lo = -be;
      // sign normalization for b = 0: first nonzero coordinate positive
      if (b == 0 && all_zero) lo = 0;
      for (long long v = lo; v <= be; ++v) {
        if (parity(v) != pe[static_cast<std::size_t>(i)]) continue;
        a[static_cast<std::size_t>(i)] = v;
        self(self, i + 1, sumsq + v * v, all_zero && v == 0);
      }
      a[static_cast<std::size_t>(i)] = 0;
    };
    rec(rec, 0, 0, true);
  }
}

// Scale-invariant sign of zeta against an integer class, as __int128 to
// avoid overflow with large polarization coordinates.
inline __int128 wide_inter(const SurfaceModel& s, const DivisorClass& d1,
                           const DivisorClass& d2) {
  __int128 v = static_cast<__int128>(d1.h) * d2.h;
  for (int i = 0; i < s.n; ++i)
    v -= static_cast<__int128>(d1.e[static_cast<std::size_t>(i)]) *
         d2.e[static_cast<std::size_t>(i)];
  return v;
}

// Full-cone heuristic b-bound. Walls built from genus-one fibration classes
// of H-degree f can reach b ~ f (x+2) / 2, and the maximal fibration degree
// on n blowups is the largest k with (3k-2)^2 <= n k^2. The doubling check
// in enumerate_walls certifies the choice.
inline long long full_cone_initial_bound(int n, long long x) {
  static constexpr long long kFibDegree[9] = {1, 1, 1, 1, 2, 2, 3, 5, 11};
  long long base = x + 2;
  long long fib = (kFibDegree[n] * (x + 2) + 1) / 2;
  return std::max(base, fib);
}

inline std::vector<Wall> full_cone_pass(const WallSpec& spec,
                                        long long b_bound) {
  const SurfaceModel& s = spec.surface;
  if (b_bound > 1000000)
    throw InvalidInput(
        "enumerate_walls: discriminant too large for full-cone enumeration");
  Box box;
  box.b_max = b_bound;
  long long amax =
      lattice::detail::isqrt(b_bound * b_bound + std::max<long long>(spec.x, 0));
  box.e_max.assign(static_cast<std::size_t>(s.n), amax);
  std::vector<Wall> out;
  enumerate_candidates(spec, box, [&](const DivisorClass& zeta, long long) {
    if (hyperplane_meets_ample_cone(s, zeta))
      out.push_back(make_wall(spec, zeta));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Options controlling the enumeration bounds; `bound_scale` multiplies
/// every internal coefficient bound (the doubling-completeness tests run
/// with scale 1 and 2 and assert equal results).
struct EnumerateOptions {
  long long bound_scale = 1;
  std::optional<long long> full_cone_b_bound;  // override, pre-scale
};

/// The complete sorted set of sign-normalized walls of type (c1, c2) whose
/// hyperplanes meet the region's interior.
///
/// Full cone: bounded search on the H-degree with the mandatory doubling
/// certification (the run is repeated with doubled bounds and must return
/// the identical set). Segment: endpoints must be ample; the coefficient
/// box derived from the segment is exact, so no doubling is needed there.
inline std::vector<Wall> enumerate_walls(const WallSpec& spec,
                                         const Region& region,
                                         const EnumerateOptions& opts = {}) {
  const SurfaceModel& s = spec.surface;
  if (s.n == 0 || spec.x <= 0) {
    if (const auto* seg = std::get_if<Segment>(&region)) {
      if (!lattice::is_ample(s, seg->l0) || !lattice::is_ample(s, seg->l1))
        throw InvalidInput("enumerate_walls: segment endpoint is not ample");
    }
    return {};
  }

  if (std::holds_alternative<FullCone>(region)) {
    long long b0 = opts.full_cone_b_bound.value_or(
        detail::full_cone_initial_bound(s.n, spec.x));
    b0 *= opts.bound_scale;
    std::vector<Wall> first = detail::full_cone_pass(spec, b0);
    std::vector<Wall> doubled = detail::full_cone_pass(spec, 2 * b0);
    if (first != doubled)
      throw InternalError(
          "enumerate_walls: doubling check failed, initial bound too small");
    return first;
  }

  const Segment& seg = std::get<Segment>(region);
  s.check(seg.l0, "enumerate_walls");
  s.check(seg.l1, "enumerate_walls");
  if (!lattice::is_ample(s, seg.l0))
    throw InvalidInput("enumerate_walls: segment endpoint L0 is not ample");
  if (!lattice::is_ample(s, seg.l1))
    throw InvalidInput("enumerate_walls: segment endpoint L1 is not ample");

  detail::Box box = detail::coefficient_box(s, spec.x, seg.l0, seg.l1);
  for (auto& v : box.e_max) v *= opts.bound_scale;
  box.b_max *= opts.bound_scale;
  std::vector<Wall> out;
  detail::enumerate_candidates(
      spec, box, [&](const DivisorClass& zeta, long long) {
        __int128 s0 = detail::wide_inter(s, zeta, seg.l0);
        __int128 s1 = detail::wide_inter(s, zeta, seg.l1);
        // interior crossing: strict sign change, or the hyperplane contains
        // the whole segment
        if ((s0 < 0 && s1 > 0) || (s0 > 0 && s1 < 0) || (s0 == 0 && s1 == 0))
          out.push_back(make_wall(spec, zeta));
      });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The wall of the given type passing through L, if any (exact slice
/// enumeration around L; L must be ample). Any zeta with zeta.L = 0 meets
/// the open cone through L itself, so no LP is needed here.
inline std::optional<Wall> wall_through(const WallSpec& spec,
                                        const DivisorClass& l) {
  const SurfaceModel& s = spec.surface;
  s.check(l, "wall_through");
  if (!lattice::is_ample(s, l))
    throw InvalidInput("wall_through: polarization is not ample");
  if (s.n == 0 || spec.x <= 0) return std::nullopt;
  detail::Box box = detail::coefficient_box(s, spec.x, l, l);
  std::optional<Wall> found;
  detail::enumerate_candidates(spec, box,
                               [&](const DivisorClass& zeta, long long) {
                                 if (found) return;
                                 if (detail::wide_inter(s, zeta, l) == 0)
                                   found = make_wall(spec, zeta);
                               });
  return found;
}

/// True iff L (ample, checked) lies on no wall of the type.
inline bool is_generic(const WallSpec& spec, const DivisorClass& l) {
  return !wall_through(spec, l).has_value();
}

enum class Orientation { kL1Positive, kL1Negative };

inline const char* to_string(Orientation o) {
  return o == Orientation::kL1Positive ? "L1-positive" : "L1-negative";
}

/// All walls strictly between L0 and L1, i.e. with (L0.zeta)(L1.zeta) < 0,
/// with the sign of L1.zeta recorded for the normalized representative.
/// Both endpoints must be ample and generic for the type.
inline std::vector<std::pair<Wall, Orientation>> separating_walls(
    const WallSpec& spec, const DivisorClass& l0, const DivisorClass& l1) {
  const SurfaceModel& s = spec.surface;
  for (const auto* l : {&l0, &l1}) {
    if (!lattice::is_ample(s, *l))
      throw InvalidInput("separating_walls: endpoint " + l->str() +
                         " is not ample");
    if (auto w = wall_through(spec, *l))
      throw InvalidInput("separating_walls: endpoint " + l->str() +
                         " lies on the wall " + w->zeta.str());
  }
  std::vector<std::pair<Wall, Orientation>> out;
  if (s.n == 0 || spec.x <= 0) return out;
  detail::Box box = detail::coefficient_box(s, spec.x, l0, l1);
  detail::enumerate_candidates(
      spec, box, [&](const DivisorClass& zeta, long long) {
        __int128 s0 = detail::wide_inter(s, zeta, l0);
        __int128 s1 = detail::wide_inter(s, zeta, l1);
        if ((s0 < 0 && s1 > 0) || (s0 > 0 && s1 < 0)) {
          Wall w = make_wall(spec, zeta);
          __int128 v1 = detail::wide_inter(s, w.zeta, l1);
          out.emplace_back(w, v1 > 0 ? Orientation::kL1Positive
                                     : Orientation::kL1Negative);
        }
      });
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True iff no wall of the type separates the two generic polarizations.
inline bool same_chamber(const WallSpec& spec, const DivisorClass& l0,
                         const DivisorClass& l1) {
  return separating_walls(spec, l0, l1).empty();
}

}  // namespace wallchamber::walls
