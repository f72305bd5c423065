#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "sparsesos/error.hpp"

namespace sparsesos {

// Exponent vector alpha in N^n of a monomial x^alpha.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t n) : e_(n, 0) {}
  Exponent(std::initializer_list<int> il) : e_(il) {}
  explicit Exponent(std::vector<int> v) : e_(std::move(v)) {}

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  std::span<const int> entries() const { return e_; }

  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  bool is_even() const {
    return std::all_of(e_.begin(), e_.end(), [](int a) { return a % 2 == 0; });
  }

  Exponent& operator+=(const Exponent& o) {
    check_same(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }

  Exponent doubled() const {
    Exponent r = *this;
    for (auto& a : r.e_) a *= 2;
    return r;
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  void check_same(const Exponent& o) const {
    if (o.size() != size()) throw DimensionMismatch("exponent length mismatch");
  }
  std::vector<int> e_;
};

/// Graded order used everywhere for iteration and output: ascending total
/// degree, ties broken so that x0 > x1 > ... (so the degree-1 block reads
/// x0, x1, ..., and x0^2 precedes x0*x1).
struct Grlex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int a : e) {
      h ^= static_cast<std::uint64_t>(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using SupportSet = std::set<Exponent, Grlex>;

}  // namespace sparsesos
