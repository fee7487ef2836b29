#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>

#include "ern/graph.hpp"

// Canonical labelling for small graphs, optionally with vertex marks.
//
// Two routes produce codes:
//   - unmarked forests go through a centroid-rooted subtree-ordering pass
//     (linear-ish, and by far the hottest path: edge-cards of trees are
//     forests);
//   - everything else goes through iterated neighborhood refinement plus
//     backtracking over the coarsest stable partition, taking the
//     lexicographically least adjacency encoding among the candidate
//     labelings.
//
// A code is always the graph6 string of the relabeled graph, so equal codes
// decode to equal graphs.  The two routes can never disagree about
// isomorphism: a forest's code decodes to a forest and a non-forest's to a
// non-forest, so codes from different routes are never equal, and within one
// route equality holds exactly for isomorphic inputs.

namespace ern {

struct CanonicalCode {
  std::string bytes;  // graph6 of the canonically relabeled graph
  auto operator<=>(const CanonicalCode&) const = default;
};

// Marks are (vertex, color) pairs with color >= 1; unmarked vertices have
// color 0.  Only automorphisms preserving colors are considered.
struct MarkedGraph {
  Graph graph;
  std::vector<std::pair<int, int>> marks;
};

namespace canon_detail {

// --- centroid of a tree (1 or 2 vertices) ---------------------------------

inline std::vector<int> centroid_vertices(const Graph& t) {
  int n = t.vertex_count();
  if (n == 1) return {0};
  // subtree sizes from an arbitrary root; weight = largest piece of t - v
  std::vector<int> parent(static_cast<size_t>(n), -1), order, sz(static_cast<size_t>(n), 1);
  order.reserve(static_cast<size_t>(n));
  order.push_back(0);
  parent[0] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (int w : t.neighbors(order[i]))
      if (parent[static_cast<size_t>(w)] == -1) {
        parent[static_cast<size_t>(w)] = order[i];
        order.push_back(w);
      }
  std::vector<int> weight(static_cast<size_t>(n), 0);
  for (size_t i = order.size(); i-- > 1;) {
    int v = order[i];
    sz[static_cast<size_t>(parent[static_cast<size_t>(v)])] += sz[static_cast<size_t>(v)];
    weight[static_cast<size_t>(parent[static_cast<size_t>(v)])] =
        std::max(weight[static_cast<size_t>(parent[static_cast<size_t>(v)])], sz[static_cast<size_t>(v)]);
  }
  for (int v = 0; v < n; ++v)
    if (v != order[0]) weight[static_cast<size_t>(v)] = std::max(weight[static_cast<size_t>(v)], n - sz[static_cast<size_t>(v)]);
  int best = *std::min_element(weight.begin(), weight.end());
  std::vector<int> cents;
  for (int v = 0; v < n; ++v)
    if (weight[static_cast<size_t>(v)] == best) cents.push_back(v);
  return cents;
}

// --- subtree-code route for unmarked trees --------------------------------

// Nested-parentheses code of the subtree at v, children sorted.
inline std::string rooted_subtree_code(const Graph& t, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : t.neighbors(v))
    if (w != parent) kids.push_back(rooted_subtree_code(t, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

// Canonical labeling of a connected unmarked tree: root at the centroid
// (ties broken by rooted code), then preorder with children in code order.
// Equal-coded siblings are interchangeable by an automorphism, so the
// resulting adjacency encoding does not depend on how their tie is broken.
inline std::vector<int> tree_labeling(const Graph& t) {
  int n = t.vertex_count();
  if (n == 1) return {0};
  auto cents = centroid_vertices(t);
  int root = cents[0];
  if (cents.size() == 2 &&
      rooted_subtree_code(t, cents[1], -1) < rooted_subtree_code(t, cents[0], -1))
    root = cents[1];

  std::vector<int> pos(static_cast<size_t>(n), -1);
  int next = 0;
  // recursive preorder; children visited in subtree-code order
  auto visit = [&](auto&& self, int v, int parent) -> void {
    pos[static_cast<size_t>(v)] = next++;
    std::vector<std::pair<std::string, int>> kids;
    for (int w : t.neighbors(v))
      if (w != parent) kids.emplace_back(rooted_subtree_code(t, w, v), w);
    std::sort(kids.begin(), kids.end());
    for (const auto& [code, w] : kids) self(self, w, v);
  };
  visit(visit, root, -1);
  return pos;
}

// --- refinement + backtracking route --------------------------------------

// Packs the adjacency bits of g under pos (vertex -> position) in graph6
// body order.  Used both for candidate comparison and the final code.
inline std::string pack_body(const std::vector<std::uint64_t>& rows, const std::vector<int>& pos) {
  int n = static_cast<int>(pos.size());
  std::vector<int> vert(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) vert[static_cast<size_t>(pos[static_cast<size_t>(v)])] = v;
  std::string out;
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      int b = static_cast<int>((rows[static_cast<size_t>(vert[static_cast<size_t>(i)])] >>
                                vert[static_cast<size_t>(j)]) & 1u);
      acc = (acc << 1) | b;
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return out;
}

// One-dimensional refinement to the coarsest stable partition.  Classes are
// renumbered by (old class, sorted neighbor classes), so class order depends
// only on isomorphism-invariant data.
inline void refine(const std::vector<std::uint64_t>& rows, std::vector<int>& color) {
  int n = static_cast<int>(color.size());
  std::vector<std::vector<int>> key(static_cast<size_t>(n));
  std::vector<int> idx(static_cast<size_t>(n));
  int classes = 0;
  for (int v = 0; v < n; ++v) classes = std::max(classes, color[static_cast<size_t>(v)] + 1);
  for (;;) {
    for (int v = 0; v < n; ++v) {
      auto& k = key[static_cast<size_t>(v)];
      k.clear();
      k.push_back(color[static_cast<size_t>(v)]);
      std::uint64_t nb = rows[static_cast<size_t>(v)];
      while (nb) {
        int w = std::countr_zero(nb);
        nb &= nb - 1;
        k.push_back(color[static_cast<size_t>(w)]);
      }
      std::sort(k.begin() + 1, k.end());
    }
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return key[static_cast<size_t>(a)] < key[static_cast<size_t>(b)]; });
    int next = 0;
    std::vector<int> fresh(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (i > 0 && key[static_cast<size_t>(idx[static_cast<size_t>(i)])] !=
                       key[static_cast<size_t>(idx[static_cast<size_t>(i - 1)])])
        ++next;
      fresh[static_cast<size_t>(idx[static_cast<size_t>(i)])] = next;
    }
    int fresh_classes = next + 1;
    color.swap(fresh);
    if (fresh_classes == classes) return;  // refinement only ever splits; same count = stable
    classes = fresh_classes;
  }
}

struct RefineSearch {
  const std::vector<std::uint64_t>& rows;
  int n;
  std::string best;
  std::vector<int> best_pos;
  std::vector<int> best_inv;             // position -> vertex for best
  std::vector<std::vector<int>> auts;    // discovered automorphisms, vertex -> vertex
  std::vector<int> prefix;               // individualized vertices on the current path

  explicit RefineSearch(const std::vector<std::uint64_t>& r) : rows(r), n(static_cast<int>(r.size())) {}

  bool twins(int u, int v) const {
    std::uint64_t m = ~((1ull << u) | (1ull << v));
    return ((rows[static_cast<size_t>(u)] ^ rows[static_cast<size_t>(v)]) & m) == 0;
  }

  void leaf(const std::vector<int>& pos) {
    std::string body = pack_body(rows, pos);
    if (best_pos.empty() || body < best) {
      best = std::move(body);
      best_pos = pos;
      best_inv.assign(static_cast<size_t>(n), 0);
      for (int v = 0; v < n; ++v) best_inv[static_cast<size_t>(pos[static_cast<size_t>(v)])] = v;
    } else if (body == best) {
      // equal codes expose an automorphism; keep a bounded stash for pruning
      if (auts.size() >= 64) return;
      std::vector<int> a(static_cast<size_t>(n));
      bool identity = true;
      for (int v = 0; v < n; ++v) {
        a[static_cast<size_t>(v)] = best_inv[static_cast<size_t>(pos[static_cast<size_t>(v)])];
        if (a[static_cast<size_t>(v)] != v) identity = false;
      }
      if (!identity) auts.push_back(std::move(a));
    }
  }

  void run(std::vector<int> color) {
    refine(rows, color);
    descend(color);
  }

  void descend(const std::vector<int>& color) {
    // find the first class of size >= 2
    std::vector<int> count(static_cast<size_t>(n), 0);
    for (int c : color) ++count[static_cast<size_t>(c)];
    int cell = -1;
    for (int c = 0; c < n; ++c)
      if (count[static_cast<size_t>(c)] >= 2) {
        cell = c;
        break;
      }
    if (cell == -1) {  // discrete: color is the position map
      leaf(color);
      return;
    }
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (color[static_cast<size_t>(v)] == cell) members.push_back(v);

    std::vector<int> tried;
    for (int v : members) {
      bool skip = false;
      for (int u : tried)
        if (twins(u, v)) {
          skip = true;
          break;
        }
      if (!skip) {
        // an automorphism fixing the current prefix that maps an already
        // explored candidate to v makes v's branch redundant
        for (const auto& a : auts) {
          bool fixes = true;
          for (int w : prefix)
            if (a[static_cast<size_t>(w)] != w) {
              fixes = false;
              break;
            }
          if (!fixes) continue;
          for (int u : tried)
            if (a[static_cast<size_t>(u)] == v) {
              skip = true;
              break;
            }
          if (skip) break;
        }
      }
      if (skip) continue;
      tried.push_back(v);
      std::vector<int> next(static_cast<size_t>(n));
      for (int w = 0; w < n; ++w)
        next[static_cast<size_t>(w)] =
            color[static_cast<size_t>(w)] * 2 + ((w == v) ? 0 : 1);
      refine(rows, next);
      prefix.push_back(v);
      descend(next);
      prefix.pop_back();
    }
  }
};

inline std::vector<std::uint64_t> adjacency_rows(const Graph& g) {
  if (g.vertex_count() > 62)
    throw std::invalid_argument("canonical_code: more than 62 vertices");
  std::vector<std::uint64_t> rows(static_cast<size_t>(g.vertex_count()), 0);
  for (const Edge& e : g.edges()) {
    rows[static_cast<size_t>(e.u)] |= 1ull << e.v;
    rows[static_cast<size_t>(e.v)] |= 1ull << e.u;
  }
  return rows;
}

// Refinement-backtracking labeling; init gives the starting classes (marks).
inline std::vector<int> search_labeling(const Graph& g, std::vector<int> init) {
  auto rows = adjacency_rows(g);
  RefineSearch s(rows);
  s.run(std::move(init));
  return s.best_pos;
}

struct Canonized {
  Graph graph;
  std::string code;
};

inline Canonized canonize_connected(const Graph& g) {
  std::vector<int> pos;
  if (g.edge_count() == g.vertex_count() - 1)
    pos = tree_labeling(g);
  else
    pos = search_labeling(g, std::vector<int>(static_cast<size_t>(g.vertex_count()), 0));
  Graph cg = relabeled(g, pos);
  return {cg, to_graph6(cg)};
}

inline Canonized canonize(const Graph& g) {
  if (g.vertex_count() == 0) return {g, to_graph6(g)};
  auto comps = components(g);
  if (comps.parts.size() == 1) return canonize_connected(g);
  // disconnected: canonicalize per component, then order components by
  // (order desc, code asc) and reassemble
  std::vector<Canonized> parts;
  parts.reserve(comps.parts.size());
  for (const auto& part : comps.parts)
    parts.push_back(canonize_connected(induced_subgraph(g, part)));
  std::sort(parts.begin(), parts.end(), [](const Canonized& a, const Canonized& b) {
    if (a.graph.vertex_count() != b.graph.vertex_count())
      return a.graph.vertex_count() > b.graph.vertex_count();
    return a.code < b.code;
  });
  Graph out(0);
  for (const auto& p : parts) out = disjoint_union(out, p.graph);
  return {out, to_graph6(out)};
}

}  // namespace canon_detail

inline CanonicalCode canonical_code(const Graph& g) {
  return {canon_detail::canonize(g).code};
}

// Relabeled copy of g whose graph6 string is canonical_code(g).
inline Graph canonical_form(const Graph& g) {
  return canon_detail::canonize(g).graph;
}

inline CanonicalCode canonical_code(const MarkedGraph& mg) {
  if (mg.marks.empty()) return canonical_code(mg.graph);
  int n = mg.graph.vertex_count();
  std::vector<int> init(static_cast<size_t>(n), 0);
  for (auto [v, c] : mg.marks) {
    if (v < 0 || v >= n) throw std::invalid_argument("canonical_code: marked vertex out of range");
    if (c < 1) throw std::invalid_argument("canonical_code: mark classes start at 1");
    init[static_cast<size_t>(v)] = c;
  }
  // rank the classes so only their relative order matters
  std::vector<int> vals = init;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  for (int& c : init)
    c = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), c) - vals.begin());
  auto pos = canon_detail::search_labeling(mg.graph, std::move(init));
  return {to_graph6(relabeled(mg.graph, pos))};
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto degs = [](const Graph& g) {
    std::vector<int> d;
    d.reserve(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degs(a) != degs(b)) return false;
  return canonical_code(a) == canonical_code(b);
}

// True iff some automorphism of g maps u to v.
inline bool similar(const Graph& g, int u, int v) {
  if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count())
    throw std::invalid_argument("similar: vertex id out of range");
  if (u == v) return true;
  return canonical_code(MarkedGraph{g, {{u, 1}}}) == canonical_code(MarkedGraph{g, {{v, 1}}});
}

// True iff some automorphism of g maps edge e onto edge f.  Marking both
// endpoints with one shared color asks exactly for a color-preserving map
// carrying {e.u, e.v} onto {f.u, f.v}.
inline bool edge_similar(const Graph& g, Edge e, Edge f) {
  if (!g.has_edge(e.u, e.v) || !g.has_edge(f.u, f.v))
    throw std::invalid_argument("edge_similar: no such edge");
  if (e == f) return true;
  return canonical_code(MarkedGraph{g, {{e.u, 1}, {e.v, 1}}}) ==
         canonical_code(MarkedGraph{g, {{f.u, 1}, {f.v, 1}}});
}

// Rooted-tree certificate: nested-parentheses code of t rooted at root.
// Equal strings <=> rooted-isomorphic.
inline std::string rooted_code(const Graph& t, int root) {
  if (!is_tree(t)) throw std::invalid_argument("rooted_code: not a tree");
  if (root < 0 || root >= t.vertex_count())
    throw std::invalid_argument("rooted_code: root out of range");
  return canon_detail::rooted_subtree_code(t, root, -1);
}

}  // namespace ern
