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

#include <string>
#include <vector>

#include "wallchamber/errors.hpp"

namespace wallchamber::k3 {

/// Rank-2 numerology on a K3 surface with Pic = Z.L, c1 = L. L^2 is even
/// and positive; all halved coefficients below are exact integers because
/// of that.
struct K3Config {
  long long l_squared = 0;
  long long c2 = 0;

  K3Config(long long l2, long long c2_value) : l_squared(l2), c2(c2_value) {
    if (l2 < 2 || l2 % 2 != 0)
      throw InvalidInput("K3Config: L^2 must be a positive even integer, got " +
                         std::to_string(l2));
  }

  long long half_l2() const { return l_squared / 2; }
};

/// Brill-Noether number rho = g - (r+1)(g-d+r). Negative r is admitted:
/// r = -1 collapses the second term and the locus is the whole
/// compactified Jacobian.
inline long long rho(long long g, long long r, long long d) {
  return g - (r + 1) * (g - d + r);
}

struct BrillNoetherData {
  long long g = 0;
  long long r = 0;
  long long d = 0;
  long long rho = 0;
};

inline BrillNoetherData make_bn(long long g, long long r, long long d) {
  return BrillNoetherData{g, r, d, rho(g, r, d)};
}

/// Expected dimension 4*c2 - L^2 - 6 of the rank-2 moduli space
/// (r = 2, chi(O) = 2 on a K3).
inline long long moduli_dim_k3(const K3Config& cfg) {
  return 4 * cfg.c2 - cfg.l_squared - 6;
}

/// c2 <= L^2/2 + 3: every stable sheaf is an extension of L (x) I_Z by O.
inline bool is_small_c2(const K3Config& cfg) {
  return cfg.c2 <= cfg.half_l2() + 3;
}

namespace detail {

// Upper end of the regime-n interval: (n^2 + n + 1/2) L^2 + 3.
inline long long regime_upper(const K3Config& cfg, long long n) {
  return (n * n + n) * cfg.l_squared + cfg.half_l2() + 3;
}

}  // namespace detail

/// The unique n >= 1 with
///   ((n-1)^2 + (n-1) + 1/2) L^2 + 3 < c2 <= (n^2 + n + 1/2) L^2 + 3.
inline long long regime(const K3Config& cfg) {
  if (is_small_c2(cfg))
    throw InvalidInput(
        "regime: c2 is in the small range (is_small_c2 holds); the regime "
        "ladder starts above L^2/2 + 3");
  long long n = 1;
  while (cfg.c2 > detail::regime_upper(cfg, n)) ++n;
  return n;
}

/// Small-c2 Brill-Noether instance: g = L^2/2 + 1, r = L^2/2 + 1 - c2,
/// d = L^2 - c2. The genus is pinned by requiring rho to reproduce
/// 2 c2 - L^2/2 - 3 (asserted).
inline BrillNoetherData bn_instance_small(const K3Config& cfg) {
  BrillNoetherData bn = make_bn(cfg.half_l2() + 1, cfg.half_l2() + 1 - cfg.c2,
                                cfg.l_squared - cfg.c2);
  if (bn.rho != 2 * cfg.c2 - cfg.half_l2() - 3)
    throw InternalError("bn_instance_small: rho identity violated");
  return bn;
}

/// Large-c2 Brill-Noether instance in regime n:
/// g = (2n+1)^2 L^2/2 + 1, r = (n^2+n+1/2) L^2 + 1 - c2,
/// d = (3n^2+3n+1) L^2 - c2. Same rho pinning as the small instance;
/// g - d + r = 2 identically.
inline BrillNoetherData bn_instance_large(const K3Config& cfg, long long n) {
  if (n != regime(cfg))
    throw InvalidInput("bn_instance_large: n = " + std::to_string(n) +
                       " is not the regime of (L^2, c2)");
  long long g = (2 * n + 1) * (2 * n + 1) * cfg.half_l2() + 1;
  long long r = (n * n + n) * cfg.l_squared + cfg.half_l2() + 1 - cfg.c2;
  long long d = (3 * n * n + 3 * n + 1) * cfg.l_squared - cfg.c2;
  BrillNoetherData bn = make_bn(g, r, d);
  if (g - d + r != 2)
    throw InternalError("bn_instance_large: g - d + r != 2");
  if (bn.rho != 2 * cfg.c2 - cfg.half_l2() - 3)
    throw InternalError("bn_instance_large: rho identity violated");
  return bn;
}

/// Bookkeeping for extensions of type m in regime n: the subscheme length,
/// the section-count lower bound, and the codimension bounds for the
/// non-generic strata. The case-2 count rests on the fact that the
/// length-d Hilbert scheme of a curve on a smooth surface has dimension
/// exactly d; that identity is recorded here, not computed.
/// reducible_bounds lists (2n-a)(a-1) L^2 for 0 < a < n+1 exactly as
/// stated; the decomposition of reducible curves ranges over
/// 0 < a < 2n+1, and the range mismatch is flagged, not repaired.
struct TypeMReport {
  long long m = 0;
  long long zm_length = 0;
  long long dim_moduli = 0;
  long long h0_lower = 0;
  long long case1_codim = 0;
  long long case2_codim = 0;
  std::vector<long long> reducible_bounds;
  bool h0_lower_positive = false;
  bool codim_bounds_positive = false;
  std::string range_note;
};

inline TypeMReport type_m_report(const K3Config& cfg, long long n,
                                 long long m) {
  if (n != regime(cfg))
    throw InvalidInput("type_m_report: n = " + std::to_string(n) +
                       " is not the regime of (L^2, c2)");
  if (m < 0 || m > n)
    throw InvalidInput("type_m_report: m must satisfy 0 <= m <= n");
  TypeMReport rep;
  rep.m = m;
  rep.zm_length = cfg.c2 + (m + 1) * m * cfg.l_squared;
  rep.dim_moduli = moduli_dim_k3(cfg);
  rep.h0_lower = cfg.half_l2() - cfg.c2 + 4 + (n + n * n) * cfg.l_squared;
  rep.case1_codim = 2 * n * cfg.l_squared;
  rep.case2_codim = (2 * m + 1) * cfg.l_squared + 1;
  for (long long a = 1; a < n + 1; ++a)
    rep.reducible_bounds.push_back((2 * n - a) * (a - 1) * cfg.l_squared);
  rep.h0_lower_positive = rep.h0_lower >= 1;
  rep.codim_bounds_positive = rep.case1_codim > 0 && rep.case2_codim > 0;
  rep.range_note =
      "reducible_bounds ranges over 0 < a < n+1 as stated; the reducible "
      "decomposition itself ranges over 0 < a < 2n+1";
  return rep;
}

/// Parameter count 4(c2 - l) - L^2 - 6 + 3l for sheaves whose double dual
/// gains l in c2; moduli_dim_k3 minus this is exactly l, so l = 1 is the
/// codimension-one stratum.
inline long long nonlocallyfree_param_count(const K3Config& cfg, long long l) {
  if (l < 1) throw InvalidInput("nonlocallyfree_param_count: l must be >= 1");
  return 4 * (cfg.c2 - l) - cfg.l_squared - 6 + 3 * l;
}

}  // namespace wallchamber::k3
