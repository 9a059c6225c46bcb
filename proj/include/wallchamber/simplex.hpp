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

#include <optional>
#include <vector>

#include "wallchamber/errors.hpp"

namespace wallchamber::simplex {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  Rational objective = 0;      // valid when kOptimal
  std::vector<Rational> x;     // primal values, valid when kOptimal
};

/// Minimizes c.y subject to A y = b, y >= 0, over exact rationals.
/// Two-phase tableau simplex with Bland's rule, so the pivot sequence is
/// deterministic and cycling is impossible. Sized for small problems
/// (tens of rows); everything here is dense.
class StandardLp {
 public:
  // rows m, cols nvars
  StandardLp(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
             std::vector<Rational> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    m_ = a_.size();
    n_ = m_ ? a_[0].size() : c_.size();
    if (b_.size() != m_ || c_.size() != n_)
      throw InternalError("StandardLp: inconsistent dimensions");
  }

  Result solve() const {
    // Tableau layout: columns [0, n_) original vars, [n_, n_+m_) artificials,
    // last column RHS. Row m_ is the phase objective.
    std::size_t cols = n_ + m_ + 1;
    std::vector<std::vector<Rational>> t(m_ + 1,
                                         std::vector<Rational>(cols, 0));
    std::vector<std::size_t> basis(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Rational sign = (b_[i] >= 0) ? 1 : -1;
      for (std::size_t j = 0; j < n_; ++j) t[i][j] = sign * a_[i][j];
      t[i][n_ + i] = 1;
      t[i][cols - 1] = sign * b_[i];
      basis[i] = n_ + i;
    }
    // Phase 1: minimize sum of artificials.
    for (std::size_t j = 0; j < cols; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < m_; ++i) s += t[i][j];
      t[m_][j] = (j >= n_ && j < n_ + m_) ? s - 1 : s;
    }
    run(t, basis, n_ + m_);
    if (t[m_][cols - 1] != 0) return {Status::kInfeasible, 0, {}};

    // Drive remaining artificials out of the basis (degenerate rows).
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis[i] < n_) continue;
      std::size_t piv = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (t[i][j] != 0) { piv = j; break; }
      if (piv == n_) continue;  // redundant row, all zero
      pivot(t, basis, i, piv, n_ + m_);
    }

    // Phase 2 objective.
    for (std::size_t j = 0; j < cols; ++j) t[m_][j] = 0;
    for (std::size_t j = 0; j < n_; ++j) t[m_][j] = -c_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis[i] < n_ && t[m_][basis[i]] != 0) {
        Rational f = t[m_][basis[i]];
        for (std::size_t j = 0; j < cols; ++j) t[m_][j] -= f * t[i][j];
      }
    }
    if (!run(t, basis, n_)) return {Status::kUnbounded, 0, {}};

    Result r;
    r.status = Status::kOptimal;
    r.x.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis[i] < n_) r.x[basis[i]] = t[i][cols - 1];
    Rational obj = 0;
    for (std::size_t j = 0; j < n_; ++j) obj += c_[j] * r.x[j];
    r.objective = obj;
    return r;
  }

 private:
  // Simplex iterations over the first `active` columns. Returns false on
  // unboundedness.
  bool run(std::vector<std::vector<Rational>>& t,
           std::vector<std::size_t>& basis, std::size_t active) const {
    const std::size_t rhs = n_ + m_;
    for (;;) {
      // Bland: entering column = lowest index with positive reduced value
      // in the (maximization-form) objective row.
      std::size_t enter = active;
      for (std::size_t j = 0; j < active; ++j)
        if (t[m_][j] > 0) { enter = j; break; }
      if (enter == active) return true;  // optimal
      // Ratio test, ties by lowest basis index (Bland).
      std::size_t leave = m_;
      Rational best = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][rhs] / t[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;  // unbounded
      pivot(t, basis, leave, enter, active);
    }
  }

  void pivot(std::vector<std::vector<Rational>>& t,
             std::vector<std::size_t>& basis, std::size_t row,
             std::size_t col, std::size_t /*active*/) const {
    const std::size_t cols = n_ + m_ + 1;
    Rational p = t[row][col];
    for (std::size_t j = 0; j < cols; ++j) t[row][j] /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rational f = t[i][col];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
  std::size_t m_ = 0, n_ = 0;
};

}  // namespace wallchamber::simplex
