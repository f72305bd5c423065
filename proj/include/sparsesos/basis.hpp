#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sparsesos/error.hpp"
#include "sparsesos/exponent.hpp"
#include "sparsesos/hull.hpp"

namespace sparsesos {

/// Ordered monomial basis omega_1..omega_r with reverse lookup.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  explicit MonomialBasis(std::vector<Exponent> exps) : exps_(std::move(exps)) {
    std::sort(exps_.begin(), exps_.end(), Grlex{});
    exps_.erase(std::unique(exps_.begin(), exps_.end()), exps_.end());
    for (std::size_t i = 0; i < exps_.size(); ++i) index_.emplace(exps_[i], i);
  }

  std::size_t size() const { return exps_.size(); }
  bool empty() const { return exps_.empty(); }
  const Exponent& operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  auto begin() const { return exps_.begin(); }
  auto end() const { return exps_.end(); }

  std::optional<std::size_t> index_of(const Exponent& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Exponent& e) const { return index_.count(e) != 0; }

 private:
  std::vector<Exponent> exps_;
  std::unordered_map<Exponent, std::size_t, ExponentHash> index_;
};

using VertexSet = SupportSet;

/// Exponents of total degree <= d, in `Grlex` order.
inline std::vector<Exponent> monomials_up_to(std::size_t n, int d) {
  std::vector<Exponent> out;
  Exponent cur(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[i] = a;
      rec(i + 1, left - a);
    }
    cur[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), Grlex{});
  return out;
}

/// The unreduced basis of all monomials of degree <= d.
inline MonomialBasis full_basis(std::size_t n, int d) { return MonomialBasis(monomials_up_to(n, d)); }

/// Points past this count in the lattice bounding box are refused.
inline constexpr std::uint64_t kMaxLatticeBox = 100'000'000;

/// Vertices of conv(A).
///
/// A point that is the midpoint of two others is dropped without an LP.  Every
/// point found to be interior is removed from the candidate hull for the
/// remaining tests; this leaves conv unchanged and keeps every vertex.
inline VertexSet newton_vertices(const SupportSet& A) {
  std::vector<Exponent> pts(A.begin(), A.end());
  std::unordered_set<Exponent, ExponentHash> in_a(pts.begin(), pts.end());
  std::vector<char> alive(pts.size(), 1);

  auto is_midpoint = [&](std::size_t k) {
    const Exponent twice = pts[k].doubled();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == k) continue;
      Exponent other(twice.size());
      bool ok = true;
      for (std::size_t c = 0; c < twice.size(); ++c) {
        other[c] = twice[c] - pts[i][c];
        if (other[c] < 0) {
          ok = false;
          break;
        }
      }
      if (ok && !(other == pts[i]) && !(other == pts[k]) && in_a.count(other)) return true;
    }
    return false;
  };

  for (std::size_t k = 0; k < pts.size(); ++k)
    if (is_midpoint(k)) alive[k] = 0;

  std::vector<RationalPoint> rat;
  rat.reserve(pts.size());
  for (const auto& p : pts) rat.push_back(to_rational(p));

  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!alive[k]) continue;
    std::vector<RationalPoint> others;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != k && alive[i]) others.push_back(rat[i]);
    if (!others.empty() && conv_membership(rat[k], others)) alive[k] = 0;
  }

  VertexSet v;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (alive[k]) v.insert(pts[k]);
  return v;
}

inline bool even_vertex_check(const VertexSet& V) {
  return std::all_of(V.begin(), V.end(), [](const Exponent& e) { return e.is_even(); });
}

/// All integer points of conv({alpha/2 : alpha in V}).
///
/// Candidates come from the integer bounding box of the halved vertices and
/// are pruned by exact integer functionals (coordinates, total degree and a
/// few fixed pseudo-random directions) before the exact hull test.
inline MonomialBasis initial_basis(const VertexSet& V) {
  if (!even_vertex_check(V)) throw OddVertex("Newton polytope has a vertex with an odd coordinate");
  if (V.empty()) return MonomialBasis{};
  const std::size_t n = V.begin()->size();
  std::vector<Exponent> half;
  for (const auto& v : V) {
    Exponent h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = v[i] / 2;
    half.push_back(h);
  }

  std::vector<int> lo(n, INT32_MAX), hi(n, 0);
  for (const auto& h : half)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], h[i]);
      hi[i] = std::max(hi[i], h[i]);
    }
  double volume = 1.0;
  for (std::size_t i = 0; i < n; ++i) volume *= static_cast<double>(hi[i] - lo[i] + 1);
  if (volume > static_cast<double>(kMaxLatticeBox))
    throw LatticeTooLarge("lattice bounding box exceeds " + std::to_string(kMaxLatticeBox) + " points");

  // Directions: all-ones plus a handful of deterministic pseudo-random ones.
  std::vector<std::vector<long>> dirs;
  dirs.emplace_back(n, 1);
  std::mt19937_64 gen(0x5eed);
  for (int k = 0; k < 8; ++k) {
    std::vector<long> d(n);
    for (auto& x : d) x = static_cast<long>(gen() % 21) - 10;
    dirs.push_back(std::move(d));
  }
  std::vector<long> dmin(dirs.size(), LONG_MAX), dmax(dirs.size(), LONG_MIN);
  for (const auto& h : half)
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      long s = 0;
      for (std::size_t i = 0; i < n; ++i) s += dirs[k][i] * h[i];
      dmin[k] = std::min(dmin[k], s);
      dmax[k] = std::max(dmax[k], s);
    }

  // Degree bounds prune the recursion early; the remaining directions are
  // checked at the leaves.
  std::vector<int> suffix_lo(n + 1, 0), suffix_hi(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_lo[i] = suffix_lo[i + 1] + lo[i];
    suffix_hi[i] = suffix_hi[i + 1] + hi[i];
  }

  std::vector<RationalPoint> rhalf;
  for (const auto& v : V) rhalf.push_back(to_rational(v, 2));

  std::vector<Exponent> out;
  Exponent cur(n);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long deg) {
    if (i == n) {
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        long s = 0;
        for (std::size_t c = 0; c < n; ++c) s += dirs[k][c] * cur[c];
        if (s < dmin[k] || s > dmax[k]) return;
      }
      if (conv_membership(to_rational(cur), rhalf)) out.push_back(cur);
      return;
    }
    for (int a = lo[i]; a <= hi[i]; ++a) {
      const long d = deg + a;
      if (d + suffix_lo[i + 1] > dmax[0]) break;
      if (d + suffix_hi[i + 1] < dmin[0]) continue;
      cur[i] = a;
      rec(i + 1, d);
    }
    cur[i] = 0;
  };
  rec(0, 0);
  return MonomialBasis(std::move(out));
}

enum class SweepOrder { Forward, Reverse };

/// Diagonal-inconsistency elimination.  omega is dropped when 2*omega is not
/// in A and is not omega_i + omega_j for distinct remaining omega_i, omega_j;
/// such a Gram diagonal entry is forced to zero, and with it the whole row.
/// Repeats until nothing changes.
inline MonomialBasis reduce_basis(const MonomialBasis& B, const SupportSet& A,
                                  SweepOrder order = SweepOrder::Forward) {
  std::vector<Exponent> cur = B.exponents();
  if (order == SweepOrder::Reverse) std::reverse(cur.begin(), cur.end());
  std::unordered_set<Exponent, ExponentHash> in_a(A.begin(), A.end());
  std::unordered_set<Exponent, ExponentHash> live(cur.begin(), cur.end());

  auto supported = [&](const Exponent& w) {
    const Exponent twice = w.doubled();
    if (in_a.count(twice)) return true;
    for (const auto& wi : cur) {
      if (!live.count(wi) || wi == w) continue;
      Exponent wj(twice.size());
      bool ok = true;
      for (std::size_t c = 0; c < twice.size(); ++c) {
        wj[c] = twice[c] - wi[c];
        if (wj[c] < 0) {
          ok = false;
          break;
        }
      }
      if (ok && !(wj == wi) && live.count(wj)) return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& w : cur) {
      if (!live.count(w)) continue;
      if (!supported(w)) {
        live.erase(w);
        changed = true;
      }
    }
  }
  std::vector<Exponent> kept;
  for (const auto& w : cur)
    if (live.count(w)) kept.push_back(w);
  return MonomialBasis(std::move(kept));
}

}  // namespace sparsesos
