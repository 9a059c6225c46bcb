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

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wallchamber/lattice.hpp"
#include "wallchamber/walls.hpp"

namespace wallchamber::moduli {

using lattice::DivisorClass;
using lattice::SurfaceModel;
using lattice::intersect;
using walls::Wall;
using walls::WallSpec;

/// Expected dimension 4*c2 - c1^2 - 3 of the rank-2 moduli space on a
/// del Pezzo surface (r = 2, chi(O) = 1, h1(O) = 0).
inline long long moduli_dim_delpezzo(const SurfaceModel& s,
                                     const DivisorClass& c1, long long c2) {
  return 4 * c2 - intersect(s, c1, c1) - 3;
}

/// The record attached to a destabilizing wall:
///   l_zeta     = (4c2 - c1^2 + zeta^2) / 4   (exact by parity)
///   N_zeta     = h1(zeta) + l_zeta - 1
///   N_-zeta    = h1(-zeta) + l_zeta - 1
/// A wall creates a potential new component exactly when N_-zeta = -1, and
/// always satisfies N_zeta + N_-zeta + 2 l_zeta = 4c2 - c1^2 - 4.
struct WallNumerics {
  long long l_zeta = 0;
  long long n_zeta = 0;
  long long n_minus_zeta = 0;
  long long dim_moduli = 0;
  bool creates_component = false;
};

namespace detail {

// Computes the record without re-certifying that zeta meets the ample
// cone. Used on walls produced by our own enumerations, which carry a
// crossing certificate by construction.
inline WallNumerics wall_numerics_certified(const SurfaceModel& s,
                                            const DivisorClass& zeta,
                                            long long x) {
  long long zsq = intersect(s, zeta, zeta);
  if ((x + zsq) % 4 != 0)
    throw InternalError("wall_numerics: l_zeta not integral");
  WallNumerics w;
  w.l_zeta = (x + zsq) / 4;
  w.n_zeta = lattice::h1_wall(s, zeta) + w.l_zeta - 1;
  w.n_minus_zeta = lattice::h1_wall(s, -zeta) + w.l_zeta - 1;
  w.dim_moduli = x - 3;
  w.creates_component = (w.n_minus_zeta == -1);
  if (w.n_zeta + w.n_minus_zeta + 2 * w.l_zeta != x - 4)
    throw InternalError("wall_numerics: identity violated");
  return w;
}

}  // namespace detail

inline WallNumerics wall_numerics(const SurfaceModel& s,
                                  const DivisorClass& zeta,
                                  const DivisorClass& c1, long long c2) {
  WallSpec spec(s, c1, c2);
  if (!walls::is_wall_class(spec, zeta))
    throw InvalidInput("wall_numerics: " + zeta.str() +
                       " is not a wall of type (" + c1.str() + ", " +
                       std::to_string(c2) + ")");
  return detail::wall_numerics_certified(s, zeta, spec.x);
}

/// Twists c1 by 2M so that every coordinate lands in {0, 1}:
///   c1n = c1 + 2M,  c2n = c2 + M.c1 + M^2.
/// The discriminant x = 4c2 - c1^2 and the wall set are unchanged.
struct NormalizedC1 {
  DivisorClass c1n;
  DivisorClass twist;
  long long c2n = 0;
};

inline NormalizedC1 normalize_c1(const SurfaceModel& s, const DivisorClass& c1,
                                 long long c2) {
  s.check(c1, "normalize_c1");
  auto reduce = [](long long v) { return ((v % 2) + 2) % 2; };
  DivisorClass c1n(reduce(c1.h), {});
  c1n.e.reserve(c1.e.size());
  for (long long v : c1.e) c1n.e.push_back(reduce(v));
  DivisorClass m(0, std::vector<long long>(c1.e.size(), 0));
  m.h = (c1n.h - c1.h) / 2;
  for (std::size_t i = 0; i < c1.e.size(); ++i)
    m.e[i] = (c1n.e[i] - c1.e[i]) / 2;
  long long c2n = c2 + intersect(s, m, c1) + intersect(s, m, m);
  if (4 * c2n - intersect(s, c1n, c1n) != 4 * c2 - intersect(s, c1, c1))
    throw InternalError("normalize_c1: discriminant changed");
  return NormalizedC1{c1n, m, c2n};
}

namespace detail {

inline long long ceil_sqrt(long long v) {
  long long r = lattice::detail::isqrt(v);
  return r * r == v ? r : r + 1;
}

}  // namespace detail

/// An integral ample class L0 in a chamber whose closure contains H:
/// sign(L0.zeta) = sign(H.zeta) for every wall of type (c1, c2) with
/// H.zeta != 0, and L0.zeta > 0 for the walls through H taken with their
/// sign-normalized (lexicographically positive) representative.
///
/// Construction: L0 = N H - sum_i M^(n-1-i) E_i with M = 2 ceil(sqrt(x)) + 1.
/// The E-part evaluates walls through H by their base-M digit expansion
/// (all |a_i| <= sqrt(x) < M/2), so it vanishes on none of them and takes
/// the sign of the first nonzero coordinate. N is large enough that the
/// H-part dominates |sum_i M^(n-1-i) a_i| for every wall with |H.zeta| >= 1
/// and that L0 stays ample. No wall enumeration is needed.
inline DivisorClass near_H_polarization(const SurfaceModel& s,
                                        const DivisorClass& c1, long long c2) {
  WallSpec spec(s, c1, c2);
  if (s.n == 0) return s.hyperplane();
  const long long x = std::max<long long>(spec.x, 0);
  const long long m_base = 2 * detail::ceil_sqrt(x) + 1;

  std::vector<long long> u(static_cast<std::size_t>(s.n), 1);
  long long u_sum = 0, u_max = 0;
  for (int i = s.n - 1; i >= 0; --i) {
    long long p = 1;
    for (int k = 0; k < s.n - 1 - i; ++k) {
      if (p > (1LL << 62) / m_base)
        throw InvalidInput("near_H_polarization: discriminant too large");
      p *= m_base;
    }
    u[static_cast<std::size_t>(i)] = p;
    u_sum += p;
    u_max = std::max(u_max, p);
  }

  long long root = detail::ceil_sqrt(s.n * (1 + x));
  if (u_max > (1LL << 62) / std::max<long long>(root, 1))
    throw InvalidInput("near_H_polarization: discriminant too large");
  long long n_big = std::max(1 + u_max * root, 1 + 3 * u_sum);

  DivisorClass l0(n_big, {});
  l0.e.reserve(u.size());
  for (long long v : u) l0.e.push_back(-v);
  if (!lattice::is_ample(s, l0))
    throw InternalError("near_H_polarization: constructed class not ample");
  return l0;
}

enum class Verdict { kIrreducibleOrEmpty, kPaperAssertsEmpty, kNoCreatingWalls };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kIrreducibleOrEmpty: return "irreducible-or-empty";
    case Verdict::kPaperAssertsEmpty: return "paper-asserts-empty";
    case Verdict::kNoCreatingWalls: return "no-creating-walls";
  }
  return "?";
}

struct SeparatingEntry {
  Wall wall;
  WallNumerics numerics;
};

/// Result of the component-creation analysis between the near-H chamber
/// and L. Walls are stored sign-normalized; the crossing is always taken
/// for the ordered pair (L0, L), with L0.zeta > 0 > L.zeta for every entry.
struct AnalysisReport {
  DivisorClass normalized_c1;
  DivisorClass twist;
  long long adjusted_c2 = 0;
  long long x = 0;
  long long dim_moduli = 0;
  DivisorClass l0;
  DivisorClass l;
  std::vector<SeparatingEntry> separating;
  std::vector<Wall> creating;  // creates_component and H.zeta > 0
  Verdict verdict = Verdict::kNoCreatingWalls;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

namespace detail {

// Normalized walls of the type pairing strictly negatively with L. With L0
// from near_H_polarization these are exactly the walls separating L0 from
// L: normalized representatives pair positively with L0. Every such wall
// crosses the segment [H, L] inside the positive cone, which bounds the
// coefficient box; mixed signs in the b = 0 case certify wall-ness without
// an LP, and b > 0 candidates carry an ample point of their hyperplane on
// the open part of the segment.
inline std::vector<Wall> separating_from_near_h(const WallSpec& spec,
                                                const DivisorClass& l) {
  const SurfaceModel& s = spec.surface;
  std::vector<Wall> out;
  if (s.n == 0 || spec.x <= 0) return out;
  walls::detail::Box box =
      walls::detail::coefficient_box(s, spec.x, s.hyperplane(), l);
  walls::detail::enumerate_candidates(
      spec, box, [&](const DivisorClass& zeta, long long) {
        if (walls::detail::wide_inter(s, zeta, l) < 0)
          out.push_back(walls::make_wall(spec, zeta));
      });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Runs the full creation analysis for (c1, c2) between the near-H chamber
/// and the generic ample polarization L.
inline AnalysisReport analyze(const SurfaceModel& s, const DivisorClass& c1,
                              long long c2, const DivisorClass& l) {
  WallSpec spec(s, c1, c2);
  if (!lattice::is_ample(s, l))
    throw InvalidInput("analyze: polarization " + l.str() + " is not ample");
  if (auto w = walls::wall_through(spec, l))
    throw InvalidInput("analyze: polarization " + l.str() +
                       " lies on the wall " + w->zeta.str());

  AnalysisReport rep;
  NormalizedC1 norm = normalize_c1(s, c1, c2);
  rep.normalized_c1 = norm.c1n;
  rep.twist = norm.twist;
  rep.adjusted_c2 = norm.c2n;
  rep.x = spec.x;
  rep.dim_moduli = spec.x - 3;
  rep.l0 = near_H_polarization(s, c1, c2);
  rep.l = l;

  for (const Wall& w : detail::separating_from_near_h(spec, l)) {
    SeparatingEntry entry{w, detail::wall_numerics_certified(s, w.zeta, spec.x)};
    if (entry.numerics.creates_component && w.zeta.h > 0)
      rep.creating.push_back(w);
    rep.separating.push_back(std::move(entry));
  }

  if (spec.x >= 3 && rep.creating.size() > 1)
    throw InternalError("analyze: more than one creating wall at x = " +
                        std::to_string(spec.x));

  if (rep.creating.empty()) {
    rep.verdict = spec.x >= 3 ? Verdict::kIrreducibleOrEmpty
                              : Verdict::kNoCreatingWalls;
    return rep;
  }

  rep.verdict = Verdict::kPaperAssertsEmpty;
  for (const Wall& w : rep.creating) {
    if (norm.c1n.h == 1 && rep.adjusted_c2 == 0) {
      rep.warnings.push_back(
          "creating wall " + w.zeta.str() +
          ": the near-H moduli space is empty (adjusted c2 = 0 gives an "
          "empty rank-2 space on the plane), so the space is empty for "
          "every generic polarization");
      rep.notes.push_back(
          "near-H space is birational to a (P^1)^m bundle over the "
          "corresponding moduli space on the plane (recorded, not computed)");
    } else if (norm.c1n.h == 0 && rep.adjusted_c2 == -1) {
      if (rep.dim_moduli >= 0)
        rep.warnings.push_back(
            "creating wall " + w.zeta.str() +
            ": emptiness of the near-H moduli space is asserted through a "
            "negative expected dimension, but 4*c2 - c1^2 - 3 = " +
            std::to_string(rep.dim_moduli) +
            " is nonnegative here; reporting both, deciding neither");
      else
        rep.warnings.push_back(
            "creating wall " + w.zeta.str() +
            ": the near-H moduli space is empty, its expected dimension " +
            std::to_string(rep.dim_moduli) + " being negative");
    } else {
      rep.warnings.push_back("creating wall " + w.zeta.str() +
                             ": outside the two classified families");
    }
  }
  return rep;
}

}  // namespace wallchamber::moduli
