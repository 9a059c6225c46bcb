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

// End-to-end acceptance suite. Each test covers one shipping criterion and
// prints a single PASS/FAIL line with its timing.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wallchamber/cli.hpp"
#include "wallchamber/dioph.hpp"
#include "wallchamber/k3.hpp"
#include "wallchamber/lattice.hpp"
#include "wallchamber/moduli.hpp"
#include "wallchamber/walls.hpp"

namespace wallchamber {
namespace {

using lattice::DivisorClass;
using lattice::SurfaceModel;
using lattice::intersect;

class Criterion {
 public:
  Criterion(int num, std::string what) : num_(num), what_(std::move(what)) {
    start_ = std::chrono::steady_clock::now();
  }
  ~Criterion() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    std::cout << "[criterion " << num_ << "] "
              << (::testing::Test::HasFailure() ? "FAIL" : "PASS") << " ("
              << ms << " ms) " << what_ << std::endl;
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  int num_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
};

DivisorClass cls(long long h, std::vector<long long> e) {
  return DivisorClass(h, std::move(e));
}

TEST(Acceptance, Criterion01_PositiveBClassification) {
  Criterion c(1, "closed-form positive-b classification equals the "
                 "exhaustive oracle for x in [3, 40]");
  {
    std::ostringstream out, err;
    int code = cli::run({"dioph", "classify", "--x", "3", "--format", "json"},
                        out, err);
    ASSERT_EQ(code, 0);
    auto j = cli::json::parse(out.str());
    ASSERT_EQ(j["results"]["count"], 2);
    EXPECT_EQ(j["results"]["solutions"][0]["b"], 1);
    EXPECT_EQ(j["results"]["solutions"][0]["a"],
              (std::vector<long long>{-1, -1, -1, -1, 0, 0, 0, 0}));
    EXPECT_EQ(j["results"]["solutions"][1]["b"], 2);
    EXPECT_EQ(j["results"]["solutions"][1]["a"],
              (std::vector<long long>{-1, -1, -1, -1, -1, -1, -1, 0}));
  }
  for (long long x = 3; x <= 40; ++x)
    EXPECT_EQ(dioph::classify_positive_b(x), dioph::brute_solutions(x, 1, 10))
        << "x=" << x;
  EXPECT_LT(c.seconds(), 10.0);
}

TEST(Acceptance, Criterion02_NoSolutionsAboveTwo) {
  Criterion c(2, "no positive solution has b >= 3; floor(b+) <= 2 for "
                 "3 <= x <= 11 and b+ < 0 for x >= 12, exactly");
  for (long long x = 3; x <= 40; ++x) {
    EXPECT_TRUE(dioph::brute_solutions(x, 3, 10).empty()) << "x=" << x;
    auto bounds = dioph::real_b_bounds(x);
    if (x <= 11) EXPECT_LE(bounds.b_plus.floor(), 2) << "x=" << x;
    if (x >= 12) EXPECT_LT(bounds.b_plus.floor(), 0) << "x=" << x;
  }
}

// splitmix64; fixed constants, deterministic across platforms
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Ample generic polarization for a sweep point: beyond the family's
// candidate wall when m is large enough for it to be a wall, otherwise an
// H-heavy ample class. Small perturbation boxes cannot dodge the O(10^4)
// wall hyperplanes of a large-x type, so the perturbation is drawn
// deterministically from a ~10^6 range with the scale raised to keep the
// class ample, and retried until the genericity check passes.
DivisorClass family_polarization(const walls::WallSpec& spec, int m,
                                 bool type_h) {
  const SurfaceModel& s = spec.surface;
  const int n = s.n;
  if (n == 0) return DivisorClass(1, {});
  std::vector<long long> we(static_cast<std::size_t>(n), -1);
  long long wh = n + 2;
  if (type_h && m >= 3) {
    for (int i = 0; i < m; ++i) we[static_cast<std::size_t>(i)] = -3;
    wh = 2 * m + 2;
  } else if (!type_h && m >= 6) {
    for (int i = 0; i < m; ++i) we[static_cast<std::size_t>(i)] = -3;
    wh = (3 * m - 1) / 2;
  }
  const DivisorClass w(wh, we);
  for (std::uint64_t j = 0; j < 64; ++j) {
    std::vector<long long> v(static_cast<std::size_t>(n));
    long long vsum = 0;
    for (int i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = 1 + static_cast<long long>(
          mix(j * 131 + static_cast<std::uint64_t>(i)) % 1000003);
      vsum += v[static_cast<std::size_t>(i)];
    }
    DivisorClass l = w * (1 + 3 * vsum);
    for (int i = 0; i < n; ++i)
      l.e[static_cast<std::size_t>(i)] -= v[static_cast<std::size_t>(i)];
    if (lattice::is_ample(s, l) && walls::is_generic(spec, l)) return l;
  }
  throw InternalError("family_polarization: no generic perturbation found");
}

TEST(Acceptance, Criterion03_ExceptionalWallSweep) {
  Criterion c(3, "creating walls over n <= 8, m <= n, |c2| <= 10: "
                 "H-E1-..-Em only at c2 = 0 and 2H-E1-..-Em only at "
                 "c2 = -1, dimension-sign flag on the m in {7,8} family");
  for (int n = 0; n <= 8; ++n) {
    SurfaceModel s(n);
    for (int m = 0; m <= n; ++m) {
      for (long long c2 = -10; c2 <= 10; ++c2) {
        for (bool type_h : {true, false}) {
          std::vector<long long> c1e(static_cast<std::size_t>(n), 0);
          for (int i = 0; i < m; ++i) c1e[static_cast<std::size_t>(i)] = 1;
          DivisorClass c1(type_h ? 1 : 0, c1e);
          walls::WallSpec spec(s, c1, c2);

          std::vector<long long> ze(static_cast<std::size_t>(n), 0);
          for (int i = 0; i < m; ++i) ze[static_cast<std::size_t>(i)] = -1;
          DivisorClass zeta(type_h ? 1 : 2, ze);
          bool expect_creating =
              type_h ? (m >= 3 && c2 == 0) : (m >= 6 && c2 == -1);

          DivisorClass l = family_polarization(spec, m, type_h);
          moduli::AnalysisReport rep = moduli::analyze(s, c1, c2, l);
          if (expect_creating) {
            ASSERT_EQ(rep.creating.size(), 1u)
                << "n=" << n << " m=" << m << " c2=" << c2
                << " type_h=" << type_h;
            EXPECT_EQ(rep.creating[0].zeta, zeta);
            EXPECT_EQ(rep.verdict, moduli::Verdict::kPaperAssertsEmpty);
            if (!type_h && spec.x >= 3) {
              ASSERT_FALSE(rep.warnings.empty());
              EXPECT_NE(rep.warnings[0].find("nonnegative"),
                        std::string::npos);
            }
          } else {
            EXPECT_TRUE(rep.creating.empty())
                << "n=" << n << " m=" << m << " c2=" << c2
                << " type_h=" << type_h;
          }
        }
      }
    }
  }
  EXPECT_LT(c.seconds(), 60.0);
}

TEST(Acceptance, Criterion04_WallNumericsIdentity) {
  Criterion c(4, "N_zeta + N_-zeta + 2 l_zeta = 4c2 - c1^2 - 4 on 1000 "
                 "randomized walls, l_zeta integral throughout");
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> nd(1, 8);
  std::uniform_int_distribution<long long> zd(-4, 4), kd(0, 4);
  int found = 0;
  while (found < 1000) {
    int n = nd(rng);
    SurfaceModel s(n);
    std::vector<long long> e(static_cast<std::size_t>(n));
    for (auto& v : e) v = zd(rng);
    DivisorClass zeta(zd(rng), e);
    if (zeta.is_zero()) continue;
    long long zsq = intersect(s, zeta, zeta);
    if (zsq >= 0) continue;
    if (!walls::hyperplane_meets_ample_cone(s, zeta)) continue;
    // a type with zeta on a wall: c1 = zeta itself, c2 = k puts zeta in
    // range since x = 4k - zeta^2 >= -zeta^2
    long long c2 = kd(rng);
    walls::WallSpec spec(s, zeta, c2);
    long long x = spec.x;
    ASSERT_EQ(x, 4 * c2 - zsq);
    moduli::WallNumerics w = moduli::wall_numerics(s, zeta, zeta, c2);
    EXPECT_EQ(w.n_zeta + w.n_minus_zeta + 2 * w.l_zeta, x - 4);
    EXPECT_EQ(4 * w.l_zeta, x + zsq);
    ++found;
  }
}

TEST(Acceptance, Criterion05_MinusOneCounts) {
  Criterion c(5, "(-1)-class counts 1,3,6,10,16,27,56,240 for n = 1..8, "
                 "stable under doubled bounds");
  const std::size_t expected[9] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int n = 1; n <= 8; ++n) {
    SurfaceModel s(n);
    auto classes = lattice::minus_one_classes(s);        // doubles to 16
    auto redoubled = lattice::minus_one_classes(s, 16);  // doubles to 32
    EXPECT_EQ(classes.size(), expected[n]) << "n=" << n;
    EXPECT_EQ(classes, redoubled) << "n=" << n;
  }
  EXPECT_LT(c.seconds(), 30.0);
}

TEST(Acceptance, Criterion06_SmallWallSet) {
  Criterion c(6, "walls of type (H, 1) on one blowup are exactly {H-2E1}; "
                 "3H-E1 is generic, 2H-E1 is not");
  SurfaceModel s(1);
  walls::WallSpec spec(s, cls(1, {0}), 1);
  auto ws = walls::enumerate_walls(spec, walls::FullCone{});
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].zeta, cls(1, {-2}));
  EXPECT_TRUE(walls::is_generic(spec, cls(3, {-1})));
  EXPECT_FALSE(walls::is_generic(spec, cls(2, {-1})));
}

TEST(Acceptance, Criterion07_K3RhoConsistency) {
  Criterion c(7, "rho = 2c2 - L^2/2 - 3 = dim/2 on 500 randomized K3 "
                 "instances; section bound positive iff regime inequality");
  std::mt19937 rng(97);
  std::uniform_int_distribution<long long> l2d(1, 10), c2d(-5, 80);
  for (int it = 0; it < 500; ++it) {
    long long l2 = 2 * l2d(rng);
    k3::K3Config cfg(l2, c2d(rng));
    k3::BrillNoetherData bn;
    if (k3::is_small_c2(cfg)) {
      bn = k3::bn_instance_small(cfg);
    } else {
      long long n = k3::regime(cfg);
      bn = k3::bn_instance_large(cfg, n);
      long long h0_lower = l2 / 2 - cfg.c2 + 4 + (n + n * n) * l2;
      EXPECT_EQ(h0_lower >= 1, cfg.c2 <= (n * n + n) * l2 + l2 / 2 + 3);
    }
    EXPECT_EQ(bn.rho, 2 * cfg.c2 - l2 / 2 - 3);
    EXPECT_EQ(2 * bn.rho, k3::moduli_dim_k3(cfg));
  }
}

TEST(Acceptance, Criterion08_TwistInvariance) {
  Criterion c(8, "wall sets invariant under twisting c1 by 2M with c2 "
                 "adjusted, 200 randomized cases on n <= 3");
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> nd(1, 3);
  std::uniform_int_distribution<long long> cd(0, 1), md(-2, 2), c2d(0, 3);
  for (int it = 0; it < 200; ++it) {
    int n = nd(rng);
    SurfaceModel s(n);
    std::vector<long long> c1e(static_cast<std::size_t>(n));
    std::vector<long long> me(static_cast<std::size_t>(n));
    for (auto& v : c1e) v = cd(rng);
    for (auto& v : me) v = md(rng);
    DivisorClass c1(cd(rng), c1e), m(md(rng), me);
    long long c2 = c2d(rng);
    walls::WallSpec spec(s, c1, c2);
    DivisorClass c1t = c1 + m * 2;
    long long c2t = c2 + intersect(s, m, c1) + intersect(s, m, m);
    walls::WallSpec twisted(s, c1t, c2t);
    EXPECT_EQ(spec.x, twisted.x);
    EXPECT_EQ(walls::enumerate_walls(spec, walls::FullCone{}),
              walls::enumerate_walls(twisted, walls::FullCone{}));
  }
}

TEST(Acceptance, Criterion09_ScopeStatement) {
  Criterion c(9, "irreducibility itself is out of computational reach; the "
                 "suite verifies the numeric identities and classifications "
                 "the arguments rest on, and the analysis defers rather "
                 "than asserting emptiness itself");
  SurfaceModel s4(4);
  moduli::AnalysisReport rep =
      moduli::analyze(s4, cls(1, {1, 1, 1, 1}), 0, cls(10, {-3, -3, -3, -3}));
  ASSERT_EQ(rep.creating.size(), 1u);
  EXPECT_EQ(rep.verdict, moduli::Verdict::kPaperAssertsEmpty);
  EXPECT_FALSE(rep.warnings.empty());
}

struct GoldenCase {
  std::vector<std::string> args;
  std::string file;
};

TEST(Acceptance, Criterion10_GoldenFiles) {
  Criterion c(10, "documented CLI invocations reproduce stored outputs "
                  "byte-for-byte");
  const std::vector<GoldenCase> cases = {
      {{"walls", "--n", "1", "--c1", "1,0", "--c2", "1", "--format", "json"},
       "walls_n1.json"},
      {{"walls", "--n", "1", "--c1", "1,0", "--c2", "0", "--format", "json"},
       "walls_n1_empty.json"},
      {{"dioph", "classify", "--x", "3"}, "dioph_classify_x3.txt"},
      {{"dioph", "classify", "--x", "3", "--format", "json"},
       "dioph_classify_x3.json"},
      {{"dioph", "bounds", "--x", "3", "--format", "json"},
       "dioph_bounds_x3.json"},
      {{"k3", "report", "--l2", "2", "--c2", "6", "--format", "json"},
       "k3_report_l2_2_c2_6.json"},
      {{"k3", "report", "--l2", "2", "--c2", "6"}, "k3_report_l2_2_c2_6.txt"},
      {{"minus-one", "--n", "2", "--format", "json"}, "minus_one_n2.json"},
      {{"crossings", "--n", "1", "--c1", "1,0", "--c2", "1", "--L0", "3,-1",
        "--L", "3,-2", "--format", "json"},
       "crossings_n1.json"},
      {{"analyze", "--n", "1", "--c1", "1,0", "--c2", "1", "--L", "3,-2",
        "--format", "json"},
       "analyze_n1.json"},
      {{"analyze", "--n", "7", "--c1", "0,1,1,1,1,1,1,1", "--c2", "-1",
        "--L", "10,-3,-3,-3,-3,-3,-3,-3", "--format", "json"},
       "analyze_n7_dimension_flag.json"},
  };
  for (const auto& gc : cases) {
    std::ostringstream out, err;
    int code = cli::run(gc.args, out, err);
    EXPECT_EQ(code, 0) << gc.file << ": " << err.str();
    std::ifstream in(std::string(WALLCHAMBER_GOLDEN_DIR) + "/" + gc.file,
                     std::ios::binary);
    ASSERT_TRUE(in.is_open()) << gc.file;
    std::ostringstream want;
    want << in.rdbuf();
    EXPECT_EQ(out.str(), want.str()) << gc.file;
  }
}

}  // namespace
}  // namespace wallchamber
