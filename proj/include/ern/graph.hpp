#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ern {

// Undirected edge with endpoints normalized so that u < v.
struct Edge {
  int u = 0;
  int v = 1;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("Edge: endpoints must differ");
    if (a < 0 || b < 0) throw std::invalid_argument("Edge: negative vertex id");
  }
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on dense vertex ids 0..n-1.  Instances are
// immutable: the edit operations below return a fresh graph and never touch
// the receiver.  Sized for small graphs (the graph6 codec caps n at 62), so
// quadratic passes are acceptable throughout.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    adj_.resize(static_cast<size_t>(n));
  }

  static Graph from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
      g.check_vertex(e.u);
      g.check_vertex(e.v);
      g.insert_edge(e.u, e.v);
    }
    g.normalize();
    return g;
  }

  static Graph from_edges(int n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<size_t>(v)];
  }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    const auto& a = adj_[static_cast<size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  Graph with_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("with_edge: self-loop");
    if (has_edge(u, v)) throw std::invalid_argument("with_edge: edge already present");
    Graph g = *this;
    g.insert_edge(u, v);
    g.normalize();
    return g;
  }

  Graph without_edge(int u, int v) const {
    if (!has_edge(u, v)) throw std::invalid_argument("without_edge: no such edge");
    Graph g(n_);
    for (const Edge& e : edges_)
      if (e != Edge(u, v)) g.insert_edge(e.u, e.v);
    g.normalize();
    return g;
  }

  // Deletes v and its incident edges; vertices above v shift down by one,
  // preserving the relative order of the survivors.
  Graph without_vertex(int v) const {
    check_vertex(v);
    Graph g(n_ - 1);
    for (const Edge& e : edges_) {
      if (e.u == v || e.v == v) continue;
      g.insert_edge(e.u - (e.u > v ? 1 : 0), e.v - (e.v > v ? 1 : 0));
    }
    g.normalize();
    return g;
  }

  bool operator==(const Graph&) const = default;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex id out of range");
  }

  void insert_edge(int u, int v) {
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }

  void normalize() {
    edges_.clear();
    for (int v = 0; v < n_; ++v) {
      auto& a = adj_[static_cast<size_t>(v)];
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw std::invalid_argument("Graph: duplicate edge");
      for (int w : a)
        if (v < w) edges_.emplace_back(v, w);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

// Attaches a brand-new leaf (id n) to vertex `at`.
inline Graph with_pendant(const Graph& g, int at) {
  if (at < 0 || at >= g.vertex_count())
    throw std::invalid_argument("with_pendant: vertex id out of range");
  std::vector<Edge> es = g.edges();
  es.emplace_back(at, g.vertex_count());
  return Graph::from_edges(g.vertex_count() + 1, es);
}

// Disjoint union; vertices of b are shifted up by a.vertex_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> es = a.edges();
  int off = a.vertex_count();
  for (const Edge& e : b.edges()) es.emplace_back(e.u + off, e.v + off);
  return Graph::from_edges(off + b.vertex_count(), es);
}

// Relabels g by pos (vertex -> new id); pos must be a permutation of 0..n-1.
inline Graph relabeled(const Graph& g, std::span<const int> pos) {
  int n = g.vertex_count();
  if (static_cast<int>(pos.size()) != n)
    throw std::invalid_argument("relabeled: permutation size mismatch");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int p : pos) {
    if (p < 0 || p >= n || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("relabeled: not a permutation");
    seen[static_cast<size_t>(p)] = true;
  }
  std::vector<Edge> es;
  es.reserve(g.edges().size());
  for (const Edge& e : g.edges()) es.emplace_back(pos[static_cast<size_t>(e.u)], pos[static_cast<size_t>(e.v)]);
  return Graph::from_edges(n, es);
}

// Induced subgraph on the given vertices (which become 0..k-1 in the order
// passed).  The vertex list doubles as the new-id -> old-id map.
inline Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> local(static_cast<size_t>(g.vertex_count()), -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    int v = vertices[i];
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("induced_subgraph: vertex id out of range");
    if (local[static_cast<size_t>(v)] != -1)
      throw std::invalid_argument("induced_subgraph: repeated vertex");
    local[static_cast<size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) {
    int a = local[static_cast<size_t>(e.u)], b = local[static_cast<size_t>(e.v)];
    if (a != -1 && b != -1) es.emplace_back(a, b);
  }
  return Graph::from_edges(static_cast<int>(vertices.size()), es);
}

struct ComponentPartition {
  std::vector<std::vector<int>> parts;  // each sorted ascending; ordered by smallest member

  // Multiset of part sizes, sorted ascending.
  std::vector<int> orders() const {
    std::vector<int> o;
    o.reserve(parts.size());
    for (const auto& p : parts) o.push_back(static_cast<int>(p.size()));
    std::sort(o.begin(), o.end());
    return o;
  }
};

inline ComponentPartition components(const Graph& g) {
  int n = g.vertex_count();
  ComponentPartition cp;
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<size_t>(s)]) continue;
    std::vector<int> part;
    stack.push_back(s);
    seen[static_cast<size_t>(s)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (int w : g.neighbors(v))
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = true;
          stack.push_back(w);
        }
    }
    std::sort(part.begin(), part.end());
    cp.parts.push_back(std::move(part));
  }
  return cp;
}

enum class GraphClass { tree, forest, has_cycle };

// A graph is a forest iff m = n - #components; a tree is a connected forest
// with at least one vertex.  The empty graph counts as a forest.
inline GraphClass classify(const Graph& g) {
  int n = g.vertex_count();
  int m = g.edge_count();
  int c = static_cast<int>(components(g).parts.size());
  if (m != n - c) return GraphClass::has_cycle;
  return (c == 1 && n >= 1) ? GraphClass::tree : GraphClass::forest;
}

inline bool is_tree(const Graph& g) { return classify(g) == GraphClass::tree; }
inline bool is_forest(const Graph& g) { return classify(g) != GraphClass::has_cycle; }

// ---------------------------------------------------------------------------
// graph6: one byte n+63 (n <= 62 only), then the upper triangle read column
// by column ((0,1), (0,2), (1,2), (0,3), ...), packed six bits per byte, high
// bit first, each byte offset by 63.

inline std::string to_graph6(const Graph& g) {
  int n = g.vertex_count();
  if (n > 62) throw std::invalid_argument("to_graph6: more than 62 vertices");
  std::string out;
  out.push_back(static_cast<char>(63 + n));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return out;
}

inline Graph from_graph6(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("from_graph6: empty string");
  int n = static_cast<int>(static_cast<unsigned char>(s[0])) - 63;
  if (n < 0 || n > 62)
    throw std::invalid_argument("from_graph6: unsupported vertex count byte");
  int nbits = n * (n - 1) / 2;
  size_t want = 1 + static_cast<size_t>((nbits + 5) / 6);
  if (s.size() != want) throw std::invalid_argument("from_graph6: bad length");
  std::vector<Edge> es;
  int bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit) {
      int c = static_cast<int>(static_cast<unsigned char>(s[1 + static_cast<size_t>(bit / 6)])) - 63;
      if (c < 0 || c > 63) throw std::invalid_argument("from_graph6: byte out of range");
      if ((c >> (5 - bit % 6)) & 1) es.emplace_back(i, j);
    }
  return Graph::from_edges(n, es);
}

// ---------------------------------------------------------------------------
// Plain-text edge list: first line "n m", then one "u v" line per edge.

inline std::string to_edge_list_text(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

inline Graph from_edge_list_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing header");
  if (n < 0 || m < 0) throw std::invalid_argument("edge list: negative header");
  std::vector<Edge> es;
  es.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge list: vertex id out of range");
    es.emplace_back(u, v);
  }
  return Graph::from_edges(n, es);
}

}  // namespace ern
