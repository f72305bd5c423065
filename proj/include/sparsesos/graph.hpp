#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <queue>
#include <set>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sparsesos/basis.hpp"
#include "sparsesos/error.hpp"
#include "sparsesos/exponent.hpp"

namespace sparsesos {

/// Undirected simple graph on 0..n-1 with sorted adjacency lists.
class SparsityGraph {
 public:
  SparsityGraph() = default;
  explicit SparsityGraph(std::size_t n) : adj_(n) {}

  std::size_t size() const { return adj_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }

  bool has_edge(std::size_t u, std::size_t v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  // Returns false if the edge was already present.
  bool add_edge(std::size_t u, std::size_t v) {
    if (u == v || has_edge(u, v)) return false;
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    return true;
  }

  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj_) s += a.size();
    return s / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (auto v : adj_[u])
        if (u < v) e.emplace_back(u, v);
    return e;
  }

  // Connected components, each sorted, ordered by smallest member.
  std::vector<std::vector<std::size_t>> components() const {
    std::vector<int> seen(size(), 0);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < size(); ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> comp;
      std::queue<std::size_t> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty()) {
        auto u = q.front();
        q.pop();
        comp.push_back(u);
        for (auto v : adj_[u])
          if (!seen[v]) {
            seen[v] = 1;
            q.push(v);
          }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  friend bool operator==(const SparsityGraph&, const SparsityGraph&) = default;

 private:
  std::vector<std::vector<std::size_t>> adj_;
};

enum class CoverOrigin { Components, ChordalCliques, Dense };

inline std::string_view to_string(CoverOrigin o) {
  switch (o) {
    case CoverOrigin::Components: return "components";
    case CoverOrigin::ChordalCliques: return "chordal";
    case CoverOrigin::Dense: return "dense";
  }
  return "?";
}

/// Index sets C_1..C_t over the basis; each clique indexes one Gram block.
struct CliqueCover {
  std::vector<std::vector<std::size_t>> cliques;
  CoverOrigin origin = CoverOrigin::Components;
};

/// Edge {i,j} iff omega_i + omega_j lies in A or in {2*omega_k}.
inline SparsityGraph build_graph(const SupportSet& A, const MonomialBasis& B) {
  std::unordered_set<Exponent, ExponentHash> targets(A.begin(), A.end());
  for (const auto& w : B) targets.insert(w.doubled());
  SparsityGraph g(B.size());
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j)
      if (targets.count(B[i] + B[j])) g.add_edge(i, j);
  return g;
}

/// Completes every connected component to a clique.
inline std::pair<SparsityGraph, CliqueCover> components_extension(const SparsityGraph& g) {
  CliqueCover cover{g.components(), CoverOrigin::Components};
  SparsityGraph ext(g.size());
  for (const auto& c : cover.cliques)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) ext.add_edge(c[a], c[b]);
  return {std::move(ext), std::move(cover)};
}

struct ChordalExtension {
  SparsityGraph graph;
  std::vector<std::size_t> order;  // elimination order; perfect for `graph`
  std::size_t fill = 0;
};

/// Symbolic elimination under minimum degree, ties to the lowest index.
inline ChordalExtension md_chordal_extension(const SparsityGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::set<std::size_t>> work(n);
  for (std::size_t v = 0; v < n; ++v) work[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<char> gone(n, 0);
  ChordalExtension out{g, {}, 0};
  out.order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!gone[v] && (best == n || work[v].size() < work[best].size())) best = v;
    const std::vector<std::size_t> nb(work[best].begin(), work[best].end());
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (work[nb[a]].insert(nb[b]).second) {
          work[nb[b]].insert(nb[a]);
          if (out.graph.add_edge(nb[a], nb[b])) ++out.fill;
        }
      }
    for (auto u : nb) work[u].erase(best);
    work[best].clear();
    gone[best] = 1;
    out.order.push_back(best);
  }
  return out;
}

/// True when every vertex's later neighbours (w.r.t. `order`) form a clique.
inline bool is_perfect_elimination(const SparsityGraph& g, const std::vector<std::size_t>& order) {
  const std::size_t n = g.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != n) return false;
    pos[order[i]] = i;
  }
  for (auto v : order) {
    std::vector<std::size_t> later;
    for (auto u : g.neighbors(v))
      if (pos[u] > pos[v]) later.push_back(u);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b)
        if (!g.has_edge(later[a], later[b])) return false;
  }
  return true;
}

/// Maximal cliques of a chordal graph from a perfect elimination ordering:
/// each {v} + later-neighbours(v) is a clique, keep the ones not contained
/// in another.
inline CliqueCover maximal_cliques(const SparsityGraph& g, const std::vector<std::size_t>& order) {
  if (!is_perfect_elimination(g, order)) throw NotPerfectElimination("ordering is not a perfect elimination ordering");
  const std::size_t n = g.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<std::size_t>> cand;
  for (auto v : order) {
    std::vector<std::size_t> c{v};
    for (auto u : g.neighbors(v))
      if (pos[u] > pos[v]) c.push_back(u);
    std::sort(c.begin(), c.end());
    cand.push_back(std::move(c));
  }
  std::vector<std::vector<std::size_t>> keep;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < cand.size() && !contained; ++j) {
      if (i == j || cand[j].size() < cand[i].size()) continue;
      if (cand[j].size() == cand[i].size() && j > i) continue;  // equal sets: keep the first
      contained = std::includes(cand[j].begin(), cand[j].end(), cand[i].begin(), cand[i].end());
    }
    if (!contained) keep.push_back(cand[i]);
  }
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) { return a.front() < b.front() || (a.front() == b.front() && a < b); });
  return CliqueCover{std::move(keep), CoverOrigin::ChordalCliques};
}

/// Single block holding the whole basis.
inline CliqueCover dense_cover(std::size_t r) {
  CliqueCover c{{}, CoverOrigin::Dense};
  if (r == 0) return c;
  c.cliques.emplace_back(r);
  std::iota(c.cliques.back().begin(), c.cliques.back().end(), std::size_t{0});
  return c;
}

}  // namespace sparsesos
