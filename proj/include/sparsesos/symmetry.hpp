#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "sparsesos/basis.hpp"
#include "sparsesos/exponent.hpp"

namespace sparsesos {

using BitVector = std::vector<std::uint8_t>;

/// Sign-symmetries: binary r with r.alpha even for all alpha in the support.
struct SignSymmetryBasis {
  std::size_t nvars = 0;
  std::vector<BitVector> generators;  // linearly independent over GF(2)
};

/// Null space over GF(2) of the matrix whose rows are the supports mod 2.
inline SignSymmetryBasis sign_symmetries(const SupportSet& A, std::size_t nvars) {
  std::vector<BitVector> rows;
  for (const auto& a : A) {
    BitVector r(nvars);
    for (std::size_t i = 0; i < nvars; ++i) r[i] = static_cast<std::uint8_t>(a[i] & 1);
    rows.push_back(std::move(r));
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nvars && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && rows[i][c])
        for (std::size_t k = 0; k < nvars; ++k) rows[i][k] ^= rows[rank][k];
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<char> is_pivot(nvars, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;

  SignSymmetryBasis out{nvars, {}};
  for (std::size_t f = 0; f < nvars; ++f) {
    if (is_pivot[f]) continue;
    BitVector r(nvars, 0);
    r[f] = 1;
    for (std::size_t i = 0; i < rank; ++i)
      if (rows[i][f]) r[pivot_col[i]] = 1;
    out.generators.push_back(std::move(r));
  }
  return out;
}

inline SignSymmetryBasis sign_symmetries(const SupportSet& A) {
  return sign_symmetries(A, A.empty() ? 0 : A.begin()->size());
}

/// Basis indices grouped by the parity signature (r.omega mod 2)_r; classes
/// ordered by smallest member.
inline std::vector<std::vector<std::size_t>> sign_blocks(const MonomialBasis& B, const SignSymmetryBasis& S) {
  std::map<BitVector, std::size_t> slot;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < B.size(); ++i) {
    BitVector sig(S.generators.size());
    for (std::size_t g = 0; g < S.generators.size(); ++g) {
      int s = 0;
      for (std::size_t k = 0; k < S.nvars; ++k) s += S.generators[g][k] * B[i][k];
      sig[g] = static_cast<std::uint8_t>(s & 1);
    }
    auto [it, inserted] = slot.try_emplace(sig, classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

/// True when every part of `fine` lies inside exactly one part of `coarse`.
inline bool refines(const std::vector<std::vector<std::size_t>>& fine,
                    const std::vector<std::vector<std::size_t>>& coarse, std::size_t n) {
  std::vector<std::size_t> owner(n, SIZE_MAX);
  for (std::size_t k = 0; k < coarse.size(); ++k)
    for (auto v : coarse[k]) owner[v] = k;
  for (const auto& part : fine) {
    if (part.empty()) continue;
    const std::size_t k = owner[part.front()];
    if (k == SIZE_MAX) return false;
    for (auto v : part)
      if (owner[v] != k) return false;
  }
  return true;
}

}  // namespace sparsesos
