#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "sparsesos/error.hpp"
#include "sparsesos/exponent.hpp"

namespace sparsesos {

using Rational = mpq_class;
using RationalPoint = std::vector<Rational>;

namespace detail {

// Phase-1 simplex on  sum_j lambda_j s_j = p,  sum_j lambda_j = 1,  lambda >= 0
// with a dense rational tableau and Bland's rule.  Returns feasibility.
class HullFeasibility {
 public:
  HullFeasibility(const RationalPoint& p, std::span<const RationalPoint> pts)
      : m_(p.size() + 1), n_(pts.size()), width_(n_ + m_ + 1), tab_(m_ * width_), z_(width_), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      Rational rhs = i + 1 < m_ ? p[i] : Rational(1);
      const bool flip = rhs < 0;
      for (std::size_t j = 0; j < n_; ++j) {
        Rational a = i + 1 < m_ ? pts[j][i] : Rational(1);
        at(i, j) = flip ? Rational(-a) : a;
      }
      at(i, n_ + i) = 1;
      at(i, width_ - 1) = flip ? Rational(-rhs) : rhs;
      basis_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < width_; ++j) {
      if (j >= n_ && j < n_ + m_) continue;
      Rational s = 0;
      for (std::size_t i = 0; i < m_; ++i) s += at(i, j);
      z_[j] = s;
    }
  }

  bool feasible() {
    for (;;) {
      // Bland: lowest-index improving column; artificials never re-enter.
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(z_[j]) > 0) {
          enter = j;
          break;
        }
      if (enter == n_) break;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        Rational ratio = at(i, width_ - 1) / at(i, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // z_enter > 0 implies some positive column entry in an artificial row,
      // so the phase-1 objective is bounded and a leaving row always exists.
      pivot(leave, enter);
    }
    return sgn(z_[width_ - 1]) == 0;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational piv = at(r, c);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(at(i, c)) == 0) continue;
      const Rational f = at(i, c);
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(at(r, j)) != 0) at(i, j) -= f * at(r, j);
    }
    if (sgn(z_[c]) != 0) {
      const Rational f = z_[c];
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(at(r, j)) != 0) z_[j] -= f * at(r, j);
    }
    basis_[r] = c;
  }

  std::size_t m_, n_, width_;
  std::vector<Rational> tab_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact test p in conv(pts).
inline bool conv_membership(const RationalPoint& p, std::span<const RationalPoint> pts) {
  for (const auto& s : pts)
    if (s.size() != p.size()) throw DimensionMismatch("hull point dimension mismatch");
  if (pts.empty()) return false;
  if (std::find(pts.begin(), pts.end(), p) != pts.end()) return true;
  return detail::HullFeasibility(p, pts).feasible();
}

inline RationalPoint to_rational(const Exponent& e, long denominator = 1) {
  RationalPoint r;
  r.reserve(e.size());
  for (int a : e) {
    Rational q(a, denominator);
    q.canonicalize();
    r.push_back(q);
  }
  return r;
}

/// Integer-point convenience overload.
inline bool conv_membership(const Exponent& p, std::span<const Exponent> pts) {
  std::vector<RationalPoint> rp;
  rp.reserve(pts.size());
  for (const auto& s : pts) rp.push_back(to_rational(s));
  return conv_membership(to_rational(p), rp);
}

}  // namespace sparsesos
