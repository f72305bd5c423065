#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sparsesos/basis.hpp"
#include "sparsesos/error.hpp"
#include "sparsesos/exponent.hpp"
#include "sparsesos/polynomial.hpp"

namespace sparsesos {

inline std::vector<std::string> numbered_variables(std::size_t n, std::size_t first = 1) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(first + i));
  return v;
}

/// B_m = S (S^2 - 2 sum_i x_i^2 sum_{j=1..m} x_{i+3j+1}^2),  S = sum_i x_i^2,
/// in 3m+2 variables with indices taken cyclically.
inline Polynomial gen_bm(int m) {
  if (m < 1) throw Error("B_m needs m >= 1");
  const std::size_t n = 3 * static_cast<std::size_t>(m) + 2;
  const auto vars = numbered_variables(n);
  auto sq = [&](std::size_t i) {
    Exponent e(n);
    e[i % n] = 2;
    return Polynomial::monomial(vars, e);
  };
  Polynomial S(vars);
  for (std::size_t i = 0; i < n; ++i) S += sq(i);
  Polynomial cross(vars);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial inner(vars);
    for (std::size_t j = 1; j <= static_cast<std::size_t>(m); ++j) inner += sq(i + 3 * j + 1);
    cross += sq(i) * inner;
  }
  return S * (S * S - 2.0 * cross);
}

/// Seeded source for the random family; mt19937_64 output is fixed by the
/// standard, and the draws below avoid implementation-defined distributions.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t k) { return static_cast<std::size_t>(uniform() * static_cast<double>(k)); }
  // Uniform over the nonzero integers in [-10, 10].
  int coefficient() {
    const int c = static_cast<int>(uniform() * 20.0);
    return c < 10 ? c - 10 : c - 9;
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

struct RandPoly {
  Polynomial f;
  std::vector<Polynomial> squares;  // f = sum of squares[i]^2
  std::vector<Exponent> monomials;  // the drawn set M
};

/// f = sum_{i=1..k} f_i^2.  Each monomial of degree <= d joins M with
/// probability p and goes to one f_i chosen uniformly, with a random nonzero
/// integer coefficient in [-10, 10].
inline RandPoly gen_randpoly_detail(std::size_t n, int d, std::size_t k, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw Error("randpoly needs 0 < p <= 1");
  if (k == 0 || n == 0 || d < 0) throw Error("randpoly needs n >= 1, k >= 1, d >= 0");
  RandomSource rng(seed);
  const auto vars = numbered_variables(n);
  RandPoly out;
  out.squares.assign(k, Polynomial(vars));
  for (const auto& e : monomials_up_to(n, d)) {
    if (rng.uniform() >= p) continue;
    const std::size_t i = rng.index(k);
    const int c = rng.coefficient();
    out.monomials.push_back(e);
    out.squares[i].add_term(e, c);
  }
  if (out.monomials.empty()) throw DegenerateDraw("randpoly drew no monomials (seed " + std::to_string(seed) + ")");
  out.f = Polynomial(vars);
  for (const auto& g : out.squares) out.f += g * g;
  return out;
}

inline Polynomial gen_randpoly(std::size_t n, int d, std::size_t k, double p, std::uint64_t seed) {
  return gen_randpoly_detail(n, d, k, p, seed).f;
}

}  // namespace sparsesos
