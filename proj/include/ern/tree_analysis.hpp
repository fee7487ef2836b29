#pragma once

// Structural tree notions used throughout: centroid and vertex weights,
// pseudopath classification, end-edge replaceability, bicentroidal
// profiles, conjugate-pair detection, and the two-card tree recognizer.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ern/canon.hpp"
#include "ern/graph.hpp"

namespace ern {

// wt(v): order of the largest component of t - v, for every vertex.
inline std::vector<int> vertex_weights(const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("vertex_weights: not a tree");
  int n = t.vertex_count();
  std::vector<int> sz(static_cast<size_t>(n), 1), wt(static_cast<size_t>(n), 0);
  std::vector<int> order, parent(static_cast<size_t>(n), -1);
  order.reserve(static_cast<size_t>(n));
  order.push_back(0);
  for (size_t i = 0; i < order.size(); ++i)
    for (int w : t.neighbors(order[i]))
      if (w != parent[static_cast<size_t>(order[i])]) {
        parent[static_cast<size_t>(w)] = order[i];
        order.push_back(w);
      }
  for (size_t i = order.size(); i-- > 1;) {
    int v = order[i];
    sz[static_cast<size_t>(parent[static_cast<size_t>(v)])] += sz[static_cast<size_t>(v)];
    wt[static_cast<size_t>(parent[static_cast<size_t>(v)])] =
        std::max(wt[static_cast<size_t>(parent[static_cast<size_t>(v)])], sz[static_cast<size_t>(v)]);
  }
  for (int v : order)
    wt[static_cast<size_t>(v)] = std::max(wt[static_cast<size_t>(v)], n - sz[static_cast<size_t>(v)]);
  return wt;
}

enum class CentroidKind { unicentroidal, bicentroidal };

struct CentroidInfo {
  CentroidKind kind = CentroidKind::unicentroidal;
  std::vector<int> vertices;  // the minimum-weight vertices, ascending; 1 or 2
  int weight = 0;             // wt(T), the minimum vertex weight
  std::optional<Edge> centroidal_edge;               // joins the two, iff bicentroidal
  std::optional<std::array<int, 2>> component_orders;  // halves of T minus that edge

  bool bicentroidal() const { return kind == CentroidKind::bicentroidal; }
};

inline CentroidInfo centroid(const Graph& t) {
  auto wt = vertex_weights(t);
  CentroidInfo info;
  info.weight = *std::min_element(wt.begin(), wt.end());
  for (int v = 0; v < t.vertex_count(); ++v)
    if (wt[static_cast<size_t>(v)] == info.weight) info.vertices.push_back(v);
  if (info.vertices.size() == 2) {
    info.kind = CentroidKind::bicentroidal;
    Edge ab(info.vertices[0], info.vertices[1]);
    // the theory behind everything downstream: two centroidal vertices are
    // adjacent and split the tree into equal halves
    if (!t.has_edge(ab.u, ab.v))
      throw std::logic_error("centroid: two minimum-weight vertices not adjacent");
    if (t.vertex_count() % 2 != 0 || info.weight * 2 != t.vertex_count())
      throw std::logic_error("centroid: bicentroidal halves not n/2");
    info.centroidal_edge = ab;
    info.component_orders = std::array<int, 2>{t.vertex_count() / 2, t.vertex_count() / 2};
  } else if (info.vertices.size() != 1) {
    throw std::logic_error("centroid: expected one or two minimum-weight vertices");
  }
  return info;
}

// ---------------------------------------------------------------------------
// Pseudopaths: paths plus the two sporadic spiders S_{1,1,2} and S_{1,2,3}.

enum class PseudopathKind { path, spider_112, spider_123, not_pseudopath };

struct PseudopathClass {
  PseudopathKind kind = PseudopathKind::not_pseudopath;
  int parameter = 0;  // k for P_k, otherwise 0

  bool is_pseudopath() const { return kind != PseudopathKind::not_pseudopath; }
};

namespace analysis_detail {

inline const Graph& spider_112() {
  static const Graph g = Graph::from_edges(
      5, {Edge(0, 1), Edge(0, 2), Edge(0, 3), Edge(3, 4)});
  return g;
}

inline const Graph& spider_123() {
  static const Graph g = Graph::from_edges(
      7, {Edge(0, 1), Edge(0, 2), Edge(2, 3), Edge(0, 4), Edge(4, 5), Edge(5, 6)});
  return g;
}

}  // namespace analysis_detail

inline PseudopathClass classify_pseudopath(const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("classify_pseudopath: not a tree");
  int maxdeg = 0;
  for (int v = 0; v < t.vertex_count(); ++v) maxdeg = std::max(maxdeg, t.degree(v));
  if (maxdeg <= 2) return {PseudopathKind::path, t.vertex_count()};
  if (t.vertex_count() == 5 && are_isomorphic(t, analysis_detail::spider_112()))
    return {PseudopathKind::spider_112, 0};
  if (t.vertex_count() == 7 && are_isomorphic(t, analysis_detail::spider_123()))
    return {PseudopathKind::spider_123, 0};
  return {PseudopathKind::not_pseudopath, 0};
}

// ---------------------------------------------------------------------------
// End-edge replaceability: can the endvertex of an end-edge be reattached
// elsewhere without changing the isomorphism type?

enum class EndEdgeStatus { replaceable, irreplaceable };

// One entry per end-edge of t.  End-edge xv with deg(v)=1 is replaceable
// iff some y outside {x, v} gives t - xv + yv isomorphic to t.
inline std::map<Edge, EndEdgeStatus> end_edge_replaceability(const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("end_edge_replaceability: not a tree");
  auto t_code = canonical_code(t);
  std::map<Edge, EndEdgeStatus> out;
  for (const Edge& e : t.edges()) {
    int v = t.degree(e.u) == 1 ? e.u : (t.degree(e.v) == 1 ? e.v : -1);
    if (v == -1) continue;
    int x = v == e.u ? e.v : e.u;
    Graph base = t.without_edge(e.u, e.v);
    EndEdgeStatus status = EndEdgeStatus::irreplaceable;
    for (int y = 0; y < t.vertex_count(); ++y) {
      if (y == x || y == v) continue;
      if (canonical_code(base.with_edge(y, v)) == t_code) {
        status = EndEdgeStatus::replaceable;
        break;
      }
    }
    out.emplace(e, status);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bicentroidal profiles: the two centroidal components and how the
// centroidal vertices sit inside them.

struct BicentroidalProfile {
  CanonicalCode componentG, componentH;  // sides ordered by (code, degree, arms)
  int degA = 0, degB = 0;                // degrees in T of the centroidal vertices
  // present iff both components are paths: (p,q) arm lengths on the G side,
  // (r,s) on the H side, each pair sorted ascending
  std::optional<std::array<int, 4>> path_type;
};

namespace analysis_detail {

// distances from v to the two ends of its path component, sorted; requires
// every vertex of the component to have degree <= 2
inline std::array<int, 2> path_arms(const Graph& component, int v) {
  std::array<int, 2> arms{0, 0};
  int found = 0;
  std::vector<int> dist(static_cast<size_t>(component.vertex_count()), -1);
  std::vector<int> queue{v};
  dist[static_cast<size_t>(v)] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    int u = queue[i];
    if (component.degree(u) <= 1) arms[static_cast<size_t>(found++)] = dist[static_cast<size_t>(u)];
    for (int w : component.neighbors(u))
      if (dist[static_cast<size_t>(w)] == -1) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
        queue.push_back(w);
      }
  }
  if (found == 1) arms[1] = arms[0] = 0;  // single-vertex component
  std::sort(arms.begin(), arms.end());
  return arms;
}

}  // namespace analysis_detail

inline BicentroidalProfile bicentroidal_profile(const Graph& t) {
  CentroidInfo info = centroid(t);
  if (!info.bicentroidal())
    throw std::invalid_argument("bicentroidal_profile: tree is unicentroidal");
  Edge ab = *info.centroidal_edge;
  Graph split = t.without_edge(ab.u, ab.v);
  auto parts = components(split).parts;

  struct Side {
    CanonicalCode code;
    int deg = 0;
    bool is_path = false;
    std::array<int, 2> arms{0, 0};
  };
  std::array<Side, 2> sides;
  for (int s = 0; s < 2; ++s) {
    int center = s == 0 ? ab.u : ab.v;
    const std::vector<int>& part =
        std::binary_search(parts[0].begin(), parts[0].end(), center) ? parts[0] : parts[1];
    Graph comp = induced_subgraph(split, part);
    int local = static_cast<int>(std::lower_bound(part.begin(), part.end(), center) - part.begin());
    sides[static_cast<size_t>(s)].code = canonical_code(comp);
    sides[static_cast<size_t>(s)].deg = t.degree(center);
    int maxdeg = 0;
    for (int v = 0; v < comp.vertex_count(); ++v) maxdeg = std::max(maxdeg, comp.degree(v));
    if (maxdeg <= 2) {
      sides[static_cast<size_t>(s)].is_path = true;
      sides[static_cast<size_t>(s)].arms = analysis_detail::path_arms(comp, local);
    }
  }
  auto key = [](const Side& s) { return std::tie(s.code.bytes, s.deg, s.arms); };
  if (key(sides[1]) < key(sides[0])) std::swap(sides[0], sides[1]);

  BicentroidalProfile profile;
  profile.componentG = sides[0].code;
  profile.componentH = sides[1].code;
  profile.degA = sides[0].deg;
  profile.degB = sides[1].deg;
  if (sides[0].is_path && sides[1].is_path)
    profile.path_type = std::array<int, 4>{sides[0].arms[0], sides[0].arms[1],
                                           sides[1].arms[0], sides[1].arms[1]};
  return profile;
}

// ---------------------------------------------------------------------------
// Conjugate pairs: two non-isomorphic trees each reachable from the other
// by an endvertex swap (delete one endvertex, graft a new leaf elsewhere),
// in both directions and in both orders of the two steps.

struct ConjugateWitness {
  int a = 0;       // endvertex of g
  int b = 0;       // endvertex of h
  int e1_attach = 0;  // vertex of g (never a): leaf grafted here in g - a
  Edge e2{0, 1};      // end-edge of g pruned (with its leaf) from g + leaf-at-a
  int e3_attach = 0;  // vertex of h (never b): leaf grafted here in h - b
  Edge e4{0, 1};      // end-edge of h pruned (with its leaf) from h + leaf-at-b
};

namespace analysis_detail {

// All leaves of t, ascending.
inline std::vector<int> leaves(const Graph& t) {
  std::vector<int> out;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (t.degree(v) == 1) out.push_back(v);
  return out;
}

// Checks both same-endvertex equations for endvertex a of g against target
// code(h); on success fills attach/prune fields of w.
inline bool endvertex_swap_reaches(const Graph& g, int a, const CanonicalCode& target,
                                   int& attach_out, Edge& prune_out) {
  // graft after delete: (g - a) + leaf at some surviving vertex
  Graph reduced = g.without_vertex(a);
  bool graft_ok = false;
  for (int w = 0; w < g.vertex_count() && !graft_ok; ++w) {
    if (w == a) continue;
    int image = w > a ? w - 1 : w;
    if (canonical_code(with_pendant(reduced, image)) == target) {
      attach_out = w;
      graft_ok = true;
    }
  }
  if (!graft_ok) return false;
  // delete after graft: (g + leaf at a) minus some other leaf of g
  Graph grown = with_pendant(g, a);
  for (int v : leaves(g)) {
    if (v == a) continue;
    if (canonical_code(grown.without_vertex(v)) == target) {
      prune_out = Edge(v, g.neighbors(v)[0]);
      return true;
    }
  }
  return false;
}

}  // namespace analysis_detail

// First witness (if any) that g and h form a conjugate pair, scanning
// endvertices in ascending id order.
inline std::optional<ConjugateWitness> conjugate_pair_witness(const Graph& g, const Graph& h) {
  if (!is_tree(g) || !is_tree(h))
    throw std::invalid_argument("conjugate_pair_witness: not a tree");
  if (g.vertex_count() != h.vertex_count()) return std::nullopt;
  auto gc = canonical_code(g), hc = canonical_code(h);
  if (gc == hc) return std::nullopt;

  ConjugateWitness w;
  bool fwd = false;
  for (int a : analysis_detail::leaves(g))
    if (analysis_detail::endvertex_swap_reaches(g, a, hc, w.e1_attach, w.e2)) {
      w.a = a;
      fwd = true;
      break;
    }
  if (!fwd) return std::nullopt;
  for (int b : analysis_detail::leaves(h))
    if (analysis_detail::endvertex_swap_reaches(h, b, gc, w.e3_attach, w.e4)) {
      w.b = b;
      return w;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Two-card tree recognition: if both cards split into exactly two tree
// components whose order pairs differ as multisets, the source is a tree.

enum class MolinaVerdict { tree_forced, inconclusive };

inline MolinaVerdict molina_recognizer(const Graph& c1, const Graph& c2) {
  if (c1.vertex_count() != c2.vertex_count() || c1.edge_count() != c2.edge_count())
    throw std::invalid_argument("molina_recognizer: cards disagree on order or size");
  auto two_tree_orders = [](const Graph& c) -> std::optional<std::vector<int>> {
    auto comp = components(c);
    if (comp.parts.size() != 2 || !is_forest(c)) return std::nullopt;
    return comp.orders();
  };
  auto o1 = two_tree_orders(c1), o2 = two_tree_orders(c2);
  if (o1 && o2 && *o1 != *o2) return MolinaVerdict::tree_forced;
  return MolinaVerdict::inconclusive;
}

// ---------------------------------------------------------------------------

// Cutvertex of a tree adjacent to exactly one vertex of degree above 1.
inline bool is_end_cutvertex(const Graph& t, int v) {
  if (!is_tree(t)) throw std::invalid_argument("is_end_cutvertex: not a tree");
  if (v < 0 || v >= t.vertex_count())
    throw std::invalid_argument("is_end_cutvertex: vertex id out of range");
  if (t.degree(v) < 2) return false;  // leaves are not cutvertices
  int heavy = 0;
  for (int u : t.neighbors(v))
    if (t.degree(u) > 1) ++heavy;
  return heavy == 1;
}

}  // namespace ern
