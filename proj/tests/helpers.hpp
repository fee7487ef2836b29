#pragma once

// Shared test utilities.  The isomorphism and automorphism routines here are
// deliberately brute force (all n! permutations) so they can serve as
// independent oracles for the canonical-labelling module.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ern/graph.hpp"

namespace test_util {

inline bool permutation_maps(const ern::Graph& a, const ern::Graph& b,
                             const std::vector<int>& perm) {
  for (const ern::Edge& e : a.edges())
    if (!b.has_edge(perm[static_cast<size_t>(e.u)], perm[static_cast<size_t>(e.v)])) return false;
  return true;
}

// All-permutations isomorphism check; fine up to n = 8.
inline bool brute_force_isomorphic(const ern::Graph& a, const ern::Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> perm(static_cast<size_t>(a.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permutation_maps(a, b, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a.vertex_count() == 0;
}

// Every automorphism of g, as vertex -> vertex maps.
inline std::vector<std::vector<int>> automorphisms(const ern::Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permutation_maps(g, g, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Sequence over {0..n-1} of length n-2 -> labeled tree on n vertices.
inline ern::Graph prufer_decode(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> deg(static_cast<size_t>(n), 1);
  for (int x : seq) ++deg[static_cast<size_t>(x)];
  std::vector<ern::Edge> edges;
  int ptr = 0;
  while (deg[static_cast<size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    edges.emplace_back(leaf, x);
    if (--deg[static_cast<size_t>(x)] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[static_cast<size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return ern::Graph::from_edges(n, edges);
}

inline ern::Graph random_tree(int n, std::mt19937& rng) {
  if (n == 1) return ern::Graph(1);
  if (n == 2) return ern::Graph::from_edges(2, {ern::Edge(0, 1)});
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(static_cast<size_t>(n - 2));
  for (int& x : seq) x = pick(rng);
  return prufer_decode(seq);
}

inline ern::Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution flip(p);
  std::vector<ern::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (flip(rng)) edges.emplace_back(u, v);
  return ern::Graph::from_edges(n, edges);
}

inline std::vector<int> random_permutation(int n, std::mt19937& rng) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

namespace detail {

inline std::string rooted_cert(const ern::Graph& t, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : t.neighbors(v))
    if (w != parent) kids.push_back(rooted_cert(t, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

// Complete isomorphism invariant for trees: strip leaves down to the one or
// two central vertices, then take the lexicographically least of the rooted
// certificates from them.
inline std::string tree_cert(const ern::Graph& t) {
  int n = t.vertex_count();
  std::vector<int> deg(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<size_t>(v)] = t.degree(v);
  std::vector<int> layer;
  std::vector<bool> gone(static_cast<size_t>(n), false);
  for (int v = 0; v < n; ++v)
    if (deg[static_cast<size_t>(v)] <= 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      gone[static_cast<size_t>(v)] = true;
      --remaining;
      for (int w : t.neighbors(v))
        if (!gone[static_cast<size_t>(w)] && --deg[static_cast<size_t>(w)] == 1)
          next.push_back(w);
    }
    layer = std::move(next);
  }
  std::string best;
  for (int c = 0; c < n; ++c)
    if (!gone[static_cast<size_t>(c)]) {
      std::string cert = rooted_cert(t, c, -1);
      if (best.empty() || cert < best) best = std::move(cert);
    }
  return best;
}

}  // namespace detail

// Exhaustive list of free trees on n vertices via all Prufer sequences,
// deduplicated by a leaf-stripping certificate computed right here, so the
// list is independent of both the canonical-labelling module and the
// generator under test.
inline std::vector<ern::Graph> trees_by_prufer(int n) {
  std::vector<ern::Graph> reps;
  if (n == 1) {
    reps.emplace_back(1);
    return reps;
  }
  if (n == 2) {
    reps.push_back(ern::Graph::from_edges(2, {ern::Edge(0, 1)}));
    return reps;
  }
  std::set<std::string> seen;
  std::vector<int> seq(static_cast<size_t>(n - 2), 0);
  for (;;) {
    ern::Graph t = prufer_decode(seq);
    if (seen.insert(detail::tree_cert(t)).second) reps.push_back(std::move(t));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[static_cast<size_t>(i)] == n - 1) seq[static_cast<size_t>(i--)] = 0;
    if (i < 0) break;
    ++seq[static_cast<size_t>(i)];
  }
  return reps;
}

}  // namespace test_util
