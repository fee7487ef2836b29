#pragma once

// Constructible tree families, the catalog of small trees needing three
// cards, and the explicit per-pair blocker certificates for the three
// infinite families.

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ern/canon.hpp"
#include "ern/graph.hpp"

namespace ern {

struct FamilySpec {
  struct Path {
    int n = 1;
  };
  struct Spider {  // three legs of p, q, r edges from one center
    int p = 1, q = 1, r = 1;
  };
  struct Caterpillar {  // spine P_s with leaves[i] pendants at spine vertex i
    std::vector<int> leaves;
  };
  struct Tk {  // center joined to k vertices, each carrying two pendant leaves
    int k = 2;
  };
  struct BicentroidalJoin {  // two paths tied by an edge between interior
    int p = 1, q = 1;        // vertices; p,q arm vertex counts on one side,
    int r = 1, s = 1;        // r,s on the other; p+q = r+s keeps it bicentroidal
  };
  struct Cycle {
    int n = 3;
  };
  struct Union {
    std::shared_ptr<const FamilySpec> left, right;
  };
  struct RootedAttach {  // identify `root` of `attached` with vertex `at` of base
    std::shared_ptr<const FamilySpec> base;
    int at = 0;
    Graph attached;
    int root = 0;
  };

  std::variant<Path, Spider, Caterpillar, Tk, BicentroidalJoin, Cycle, Union, RootedAttach> v;
};

namespace family_detail {

inline Graph path_graph(int n) {
  std::vector<Edge> es;
  for (int i = 1; i < n; ++i) es.emplace_back(i - 1, i);
  return Graph::from_edges(n, es);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, es);
}

inline Graph spider_graph(int p, int q, int r) {
  std::vector<Edge> es;
  int next = 1;
  for (int len : {p, q, r}) {
    es.emplace_back(0, next);
    for (int i = 1; i < len; ++i, ++next) es.emplace_back(next, next + 1);
    ++next;
  }
  return Graph::from_edges(1 + p + q + r, es);
}

inline Graph caterpillar_graph(const std::vector<int>& leaves) {
  int s = static_cast<int>(leaves.size());
  std::vector<Edge> es;
  for (int i = 1; i < s; ++i) es.emplace_back(i - 1, i);
  int next = s;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < leaves[static_cast<size_t>(i)]; ++j) es.emplace_back(i, next++);
  return Graph::from_edges(next, es);
}

// valid from k=1 (needed for the triangle blocker of the k=2 member even
// though the public family starts at k=2)
inline Graph tk_graph(int k) {
  std::vector<Edge> es;
  for (int b = 1; b <= k; ++b) {
    es.emplace_back(0, b);
    es.emplace_back(b, k + 2 * b - 1);
    es.emplace_back(b, k + 2 * b);
  }
  return Graph::from_edges(3 * k + 1, es);
}

inline Graph bij_graph(int p, int q, int r, int s) {
  std::vector<Edge> es;
  int na = p + q + 1;
  for (int i = 1; i < na; ++i) es.emplace_back(i - 1, i);
  int nb = r + s + 1;
  for (int i = 1; i < nb; ++i) es.emplace_back(na + i - 1, na + i);
  es.emplace_back(p, na + r);  // the centroidal edge
  return Graph::from_edges(na + nb, es);
}

}  // namespace family_detail

inline Graph build(const FamilySpec& spec) {
  return std::visit(
      [](const auto& f) -> Graph {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FamilySpec::Path>) {
          if (f.n < 1) throw std::invalid_argument("build: path needs n >= 1");
          return family_detail::path_graph(f.n);
        } else if constexpr (std::is_same_v<F, FamilySpec::Spider>) {
          if (f.p < 1 || f.q < 1 || f.r < 1)
            throw std::invalid_argument("build: spider legs must be >= 1");
          return family_detail::spider_graph(f.p, f.q, f.r);
        } else if constexpr (std::is_same_v<F, FamilySpec::Caterpillar>) {
          if (f.leaves.empty()) throw std::invalid_argument("build: caterpillar needs a spine");
          for (int a : f.leaves)
            if (a < 0) throw std::invalid_argument("build: negative leaf count");
          return family_detail::caterpillar_graph(f.leaves);
        } else if constexpr (std::is_same_v<F, FamilySpec::Tk>) {
          if (f.k < 2) throw std::invalid_argument("build: tk needs k >= 2");
          return family_detail::tk_graph(f.k);
        } else if constexpr (std::is_same_v<F, FamilySpec::BicentroidalJoin>) {
          if (f.p < 1 || f.q < 1 || f.r < 1 || f.s < 1)
            throw std::invalid_argument("build: join arms must be >= 1");
          if (f.p + f.q != f.r + f.s)
            throw std::invalid_argument("build: join sides must have equal order");
          return family_detail::bij_graph(f.p, f.q, f.r, f.s);
        } else if constexpr (std::is_same_v<F, FamilySpec::Cycle>) {
          if (f.n < 3) throw std::invalid_argument("build: cycle needs n >= 3");
          return family_detail::cycle_graph(f.n);
        } else if constexpr (std::is_same_v<F, FamilySpec::Union>) {
          if (!f.left || !f.right) throw std::invalid_argument("build: union missing operand");
          return disjoint_union(build(*f.left), build(*f.right));
        } else {
          static_assert(std::is_same_v<F, FamilySpec::RootedAttach>);
          if (!f.base) throw std::invalid_argument("build: attach missing base");
          Graph base = build(*f.base);
          if (f.at < 0 || f.at >= base.vertex_count())
            throw std::invalid_argument("build: attach vertex out of range");
          if (!is_tree(f.attached) || f.root < 0 || f.root >= f.attached.vertex_count())
            throw std::invalid_argument("build: attached part must be a tree with a valid root");
          std::vector<Edge> es = base.edges();
          auto mapped = [&](int w) {
            if (w == f.root) return f.at;
            return base.vertex_count() + w - (w > f.root ? 1 : 0);
          };
          for (const Edge& e : f.attached.edges()) es.emplace_back(mapped(e.u), mapped(e.v));
          return Graph::from_edges(base.vertex_count() + f.attached.vertex_count() - 1, es);
        }
      },
      spec.v);
}

// ---------------------------------------------------------------------------
// Text syntax: path:9, spider:2,2,2, cat:2,0,0,0,2, tk:4, bij:2,2,2,2,
// cycle:5, union(<spec>,<spec>).

namespace family_detail {

inline std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("family spec: bad integer '" + piece + "'");
    }
    if (used != piece.size())
      throw std::invalid_argument("family spec: bad integer '" + piece + "'");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace family_detail

inline FamilySpec parse_family_spec(const std::string& text) {
  using namespace family_detail;
  if (text.rfind("union(", 0) == 0) {
    if (text.back() != ')') throw std::invalid_argument("family spec: unterminated union");
    std::string inner = text.substr(6, text.size() - 7);
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos)
      throw std::invalid_argument("family spec: union needs two operands");
    FamilySpec::Union u;
    u.left = std::make_shared<FamilySpec>(parse_family_spec(inner.substr(0, split)));
    u.right = std::make_shared<FamilySpec>(parse_family_spec(inner.substr(split + 1)));
    return FamilySpec{u};
  }
  size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("family spec: expected name:args in '" + text + "'");
  std::string name = text.substr(0, colon);
  std::vector<int> args = parse_ints(text.substr(colon + 1));
  auto want = [&](size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("family spec: " + name + " takes " + std::to_string(k) +
                                  " argument(s)");
  };
  if (name == "path") {
    want(1);
    return FamilySpec{FamilySpec::Path{args[0]}};
  }
  if (name == "spider") {
    want(3);
    return FamilySpec{FamilySpec::Spider{args[0], args[1], args[2]}};
  }
  if (name == "cat") return FamilySpec{FamilySpec::Caterpillar{args}};
  if (name == "tk") {
    want(1);
    return FamilySpec{FamilySpec::Tk{args[0]}};
  }
  if (name == "bij") {
    want(4);
    return FamilySpec{FamilySpec::BicentroidalJoin{args[0], args[1], args[2], args[3]}};
  }
  if (name == "cycle") {
    want(1);
    return FamilySpec{FamilySpec::Cycle{args[0]}};
  }
  throw std::invalid_argument("family spec: unknown family '" + name + "'");
}

inline std::string to_string(const FamilySpec& spec) {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        auto join = [](auto first, auto last) {
          std::string out;
          for (auto it = first; it != last; ++it)
            out += (it == first ? "" : ",") + std::to_string(*it);
          return out;
        };
        if constexpr (std::is_same_v<F, FamilySpec::Path>)
          return "path:" + std::to_string(f.n);
        else if constexpr (std::is_same_v<F, FamilySpec::Spider>)
          return "spider:" + std::to_string(f.p) + "," + std::to_string(f.q) + "," +
                 std::to_string(f.r);
        else if constexpr (std::is_same_v<F, FamilySpec::Caterpillar>)
          return "cat:" + join(f.leaves.begin(), f.leaves.end());
        else if constexpr (std::is_same_v<F, FamilySpec::Tk>)
          return "tk:" + std::to_string(f.k);
        else if constexpr (std::is_same_v<F, FamilySpec::BicentroidalJoin>)
          return "bij:" + std::to_string(f.p) + "," + std::to_string(f.q) + "," +
                 std::to_string(f.r) + "," + std::to_string(f.s);
        else if constexpr (std::is_same_v<F, FamilySpec::Cycle>)
          return "cycle:" + std::to_string(f.n);
        else if constexpr (std::is_same_v<F, FamilySpec::Union>)
          return "union(" + to_string(*f.left) + "," + to_string(*f.right) + ")";
        else
          throw std::invalid_argument("family spec: rooted attachments have no text form");
      },
      spec.v);
}

// ---------------------------------------------------------------------------
// The seventeen trees on 4..11 vertices that need three cards.

inline std::vector<Graph> known_ern3_catalog(int n) {
  if (n < 4 || n > 11) throw std::invalid_argument("known_ern3_catalog: order out of range");
  auto cat = [](std::vector<int> leaves) {
    return family_detail::caterpillar_graph(leaves);
  };
  std::vector<Graph> out;
  switch (n) {
    case 5: out = {family_detail::path_graph(5)}; break;
    case 6: out = {cat({2, 2})}; break;
    case 7:
      out = {family_detail::path_graph(7), family_detail::spider_graph(2, 2, 2), cat({2, 0, 2})};
      break;
    case 8: out = {cat({1, 0, 1, 0, 1}), cat({2, 1, 2})}; break;
    case 9: out = {family_detail::path_graph(9), cat({2, 0, 0, 0, 2})}; break;
    case 10:
      out = {family_detail::spider_graph(3, 3, 3), cat({2, 3, 2}), cat({2, 1, 1, 2}),
             family_detail::tk_graph(3), family_detail::bij_graph(2, 2, 2, 2)};
      break;
    case 11:
      out = {family_detail::path_graph(11), cat({1, 0, 1, 0, 1, 0, 1}),
             cat({2, 0, 0, 0, 0, 0, 2})};
      break;
    default: break;  // n = 4: none
  }
  return out;
}

// ---------------------------------------------------------------------------
// Blocker certificates: a graph distinct from the target whose deck covers
// a chosen pair of the target's cards, with the covering edges named.

struct BlockerCertificate {
  Graph blocker;
  CanonicalCode target;        // code of the tree the cards came from
  CanonicalCode card1, card2;  // codes of target minus the requested edges
  Edge edge1{0, 1}, edge2{0, 1};  // blocker edges reproducing card1, card2

  bool validate() const {
    return canonical_code(blocker.without_edge(edge1.u, edge1.v)) == card1 &&
           canonical_code(blocker.without_edge(edge2.u, edge2.v)) == card2 &&
           canonical_code(blocker) != target;
  }
};

namespace family_detail {

// Longest-path labeling for the two-tufted caterpillars: diameter path
// 0..d, plus leaf d+1 at vertex 1 and leaf d+2 at vertex d-1.
inline Graph tufted_path(int d) {
  std::vector<Edge> es;
  for (int i = 1; i <= d; ++i) es.emplace_back(i - 1, i);
  es.emplace_back(1, d + 1);
  es.emplace_back(d - 1, d + 2);
  return Graph::from_edges(d + 3, es);
}

// Card class of an edge of caterpillar_graph({2,0,...,0,2}) with spine s:
// similar edges share a class; classes run 1..(s+1)/2 from the ends in.
inline int tufted_edge_class(int s, const Edge& e) {
  int d = s + 1;
  if (e.v >= s) return 1;  // pendant edge at either end
  int i = e.v + 1;         // spine edge (e.u, e.v) is diameter edge i
  return std::min(i, d + 1 - i);
}

inline int path_edge_class(int n, const Edge& e) { return std::min(e.v, n - e.v); }

}  // namespace family_detail

// The proof-shaped blocker for deleting {e1, e2} from build(spec), covering
// odd paths, the even-diameter two-tufted caterpillars, and the center-edge
// pair of the Tk family.
inline BlockerCertificate blocker_for(const FamilySpec& spec, const Edge& e1, const Edge& e2) {
  using namespace family_detail;
  Graph target = build(spec);
  if (!target.has_edge(e1.u, e1.v) || !target.has_edge(e2.u, e2.v))
    throw std::invalid_argument("blocker_for: edge not in target");
  if (e1 == e2) throw std::invalid_argument("blocker_for: edges must differ");

  BlockerCertificate cert;
  cert.target = canonical_code(target);
  cert.card1 = canonical_code(target.without_edge(e1.u, e1.v));
  cert.card2 = canonical_code(target.without_edge(e2.u, e2.v));

  // fills blocker/edges from a construction whose edgeA covers class a and
  // edgeB covers class b; flip to match the caller's edge order
  auto emit = [&](Graph blocker, Edge edgeA, Edge edgeB, bool flipped) {
    cert.blocker = std::move(blocker);
    cert.edge1 = flipped ? edgeB : edgeA;
    cert.edge2 = flipped ? edgeA : edgeB;
    return cert;
  };

  if (const auto* path = std::get_if<FamilySpec::Path>(&spec.v)) {
    int n = path->n;
    if (n < 5 || n % 2 == 0)
      throw std::invalid_argument("blocker_for: path blockers exist for odd n >= 5");
    int s = n / 2;
    int a = path_edge_class(n, e1), b = path_edge_class(n, e2);
    bool flipped = a > b;
    if (flipped) std::swap(a, b);
    if (a == s && b == s) {
      // both central edges: cycle on s vertices plus a path on the rest
      Graph blocker = s >= 3 ? disjoint_union(cycle_graph(s), path_graph(s + 1))
                             : disjoint_union(cycle_graph(3), path_graph(2));
      return emit(std::move(blocker), Edge(0, 1), Edge(1, 2), flipped);
    }
    // spider with leg lengths a, b and the remainder
    Graph blocker = spider_graph(a, b, 2 * s - a - b);
    return emit(std::move(blocker), Edge(0, 1), Edge(0, a + 1), flipped);
  }

  if (const auto* tk = std::get_if<FamilySpec::Tk>(&spec.v)) {
    if (e1.u != 0 || e2.u != 0 || e1.v > tk->k || e2.v > tk->k)
      throw std::invalid_argument("blocker_for: only the center-edge pair is covered");
    Graph blocker = disjoint_union(tk_graph(tk->k - 1), cycle_graph(3));
    int base = 3 * (tk->k - 1) + 1;
    return emit(std::move(blocker), Edge(base, base + 1), Edge(base + 1, base + 2), false);
  }

  const auto* cat = std::get_if<FamilySpec::Caterpillar>(&spec.v);
  if (!cat) throw std::invalid_argument("blocker_for: unsupported family");
  int s = static_cast<int>(cat->leaves.size());
  std::vector<int> expect(static_cast<size_t>(s), 0);
  expect.front() = 2;
  expect.back() = 2;
  if (s < 3 || s % 2 == 0 || cat->leaves != expect)
    throw std::invalid_argument(
        "blocker_for: caterpillar blockers exist for 2,0,...,0,2 with even diameter");
  int d = s + 1;
  int a = tufted_edge_class(s, e1), b = tufted_edge_class(s, e2);
  bool flipped = a > b;
  if (flipped) std::swap(a, b);

  Graph base = tufted_path(d);
  auto rewired = [&](Edge drop, Edge add) {
    return base.without_edge(drop.u, drop.v).with_edge(add.u, add.v);
  };
  if (a == 1 && b == 1)
    return emit(rewired(Edge(0, 1), Edge(0, d - 1)), Edge(0, d - 1), Edge(d - 1, d), flipped);
  if (d == 4) {
    if (a == 1)  // (1,2): reattach one tip at the far heavy vertex
      return emit(rewired(Edge(0, 1), Edge(0, 3)), Edge(0, 3), Edge(2, 3), flipped);
    // (2,2): close a triangle through the spare leaf; not a forest
    return emit(rewired(Edge(1, 2), Edge(0, d + 1)), Edge(0, d + 1), Edge(1, d + 1), flipped);
  }
  if (a == 1)
    return emit(rewired(Edge(0, 1), Edge(0, d - b - 1)), Edge(0, d - b - 1),
                Edge(d - b, d - b + 1), flipped);
  if (a == d / 2 && b == d / 2)
    // both central edges: close a cycle at the far end; not a forest
    return emit(rewired(Edge(d / 2 - 1, d / 2), Edge(d / 2 + 1, d)), Edge(d / 2 + 1, d),
                Edge(d - 1, d), flipped);
  return emit(rewired(Edge(a - 1, a), Edge(a - 1, d - b)), Edge(a - 1, d - b),
              Edge(d - b, d - b + 1), flipped);
}

}  // namespace ern
