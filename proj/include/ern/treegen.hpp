#pragma once

// Exhaustive generation of free trees, one representative per isomorphism
// class.  Rooted trees are built bottom-up as multisets of smaller rooted
// subtrees, so no isomorphism filtering is ever needed; free trees then come
// out of the centroid split: a tree either has a unique centroid (root there,
// every root subtree holds at most floor((n-1)/2) vertices) or a centroidal
// edge joining two rooted halves of order n/2.

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ern/graph.hpp"

namespace ern {

namespace gen_detail {

// A subtree choice: `size` vertices, entry `index` of the rooted catalog at
// that size.  Candidate order is size descending, then index ascending; a
// multiset is stored as a sequence that never increases in that order.
struct Token {
  int size = 0;
  int index = 0;
};

using RootedCatalog = std::vector<std::vector<Graph>>;

// Shared snapshot of every rooted tree up to max_size vertices.  Growing the
// catalog builds a fresh copy, so streams holding older snapshots never see
// a mutation under them.
inline std::shared_ptr<const RootedCatalog> rooted_catalog(int max_size) {
  static std::mutex mu;
  static std::shared_ptr<const RootedCatalog> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache && static_cast<int>(cache->size()) > max_size) return cache;
  auto grown = cache ? std::make_shared<RootedCatalog>(*cache)
                     : std::make_shared<RootedCatalog>();
  RootedCatalog& cat = *grown;
  if (cat.empty()) {
    cat.emplace_back();               // size 0 unused
    cat.emplace_back(1, Graph(1));    // the single vertex, root 0
  }
  for (int m = static_cast<int>(cat.size()); m <= max_size; ++m) {
    std::vector<Graph> trees;
    std::vector<Token> seq;
    // depth-first enumeration of non-increasing token sequences summing m-1
    auto emit = [&] {
      std::vector<Edge> edges;
      int off = 1;
      for (const Token& t : seq) {
        edges.emplace_back(0, off);
        for (const Edge& e : cat[static_cast<size_t>(t.size)][static_cast<size_t>(t.index)]
                                 .edges())
          edges.emplace_back(e.u + off, e.v + off);
        off += t.size;
      }
      trees.push_back(Graph::from_edges(m, edges));
    };
    auto rec = [&](auto&& self, int rem, Token bound) -> void {
      if (rem == 0) {
        emit();
        return;
      }
      for (int s = std::min(bound.size, rem); s >= 1; --s) {
        int from = s == bound.size ? bound.index : 0;
        for (int i = from; i < static_cast<int>(cat[static_cast<size_t>(s)].size()); ++i) {
          seq.push_back({s, i});
          self(self, rem - s, {s, i});
          seq.pop_back();
        }
      }
    };
    rec(rec, m - 1, {m - 1, 0});
    cat.push_back(std::move(trees));
  }
  cache = grown;
  return cache;
}

}  // namespace gen_detail

// Streams every free tree on n vertices exactly once, in a fixed order:
// first the unicentroidal trees, then (for even n) the bicentroidal ones.
// The stream is lazy, so even the largest supported orders cost no memory
// beyond the rooted catalog of half-sized subtrees.
class TreeStream {
 public:
  explicit TreeStream(int n) : n_(n) {
    if (n < 1 || n > 26) throw std::invalid_argument("TreeStream: order must be in [1, 26]");
    cap_ = (n - 1) / 2;
    int need = std::max({1, cap_, n % 2 == 0 ? n / 2 : 1});
    cat_ = gen_detail::rooted_catalog(need);
    fill_first();
  }

  int order() const { return n_; }

  // Next tree, or nothing once the stream is exhausted.
  std::optional<Graph> next() {
    if (phase_ == Phase::uni) {
      if (uni_live_) {
        Graph out = compose_uni();
        uni_advance();
        return out;
      }
      phase_ = Phase::bi;
    }
    if (phase_ == Phase::bi) {
      int half = n_ / 2;
      if (n_ % 2 == 0 &&
          bi_i_ < static_cast<int>((*cat_)[static_cast<size_t>(half)].size())) {
        Graph out = compose_bi();
        if (++bi_j_ == static_cast<int>((*cat_)[static_cast<size_t>(half)].size())) {
          ++bi_i_;
          bi_j_ = bi_i_;
        }
        return out;
      }
      phase_ = Phase::done;
    }
    return std::nullopt;
  }

 private:
  enum class Phase { uni, bi, done };
  using Token = gen_detail::Token;

  const std::vector<Graph>& shelf(int s) const { return (*cat_)[static_cast<size_t>(s)]; }

  // greedy refill: repeatedly append the largest token not above the last one
  void refill(int rem) {
    while (rem > 0) {
      Token last = seq_.back();
      int s = std::min(last.size, rem);
      seq_.push_back({s, s == last.size ? last.index : 0});
      rem -= s;
    }
  }

  void fill_first() {
    int rem = n_ - 1;
    if (rem == 0) {
      uni_live_ = true;  // the single vertex is the empty multiset
      return;
    }
    if (cap_ == 0) return;  // no unicentroidal trees (n = 2)
    seq_.push_back({std::min(cap_, rem), 0});
    refill(rem - seq_.back().size);
    uni_live_ = true;
  }

  void uni_advance() {
    int rem = 0;
    while (!seq_.empty()) {
      Token t = seq_.back();
      seq_.pop_back();
      rem += t.size;
      // successor of t in candidate order, within the same shelf or below
      Token succ{t.size, t.index + 1};
      if (succ.index == static_cast<int>(shelf(succ.size).size())) succ = {t.size - 1, 0};
      if (succ.size >= 1) {
        seq_.push_back(succ);
        refill(rem - succ.size);
        return;
      }
    }
    uni_live_ = false;
  }

  Graph compose_uni() const {
    std::vector<Edge> edges;
    int off = 1;
    for (const Token& t : seq_) {
      edges.emplace_back(0, off);
      for (const Edge& e : shelf(t.size)[static_cast<size_t>(t.index)].edges())
        edges.emplace_back(e.u + off, e.v + off);
      off += t.size;
    }
    return Graph::from_edges(n_, edges);
  }

  Graph compose_bi() const {
    int half = n_ / 2;
    std::vector<Edge> edges{Edge(0, half)};
    for (const Edge& e : shelf(half)[static_cast<size_t>(bi_i_)].edges())
      edges.emplace_back(e.u, e.v);
    for (const Edge& e : shelf(half)[static_cast<size_t>(bi_j_)].edges())
      edges.emplace_back(e.u + half, e.v + half);
    return Graph::from_edges(n_, edges);
  }

  int n_;
  int cap_;
  std::shared_ptr<const gen_detail::RootedCatalog> cat_;
  Phase phase_ = Phase::uni;
  bool uni_live_ = false;
  std::vector<Token> seq_;
  int bi_i_ = 0;
  int bi_j_ = 0;
};

inline TreeStream generate_trees(int n) { return TreeStream(n); }

// Convenience for callers that want the whole order at once.
inline std::vector<Graph> all_trees(int n) {
  TreeStream stream(n);
  std::vector<Graph> out;
  while (auto t = stream.next()) out.push_back(std::move(*t));
  return out;
}

}  // namespace ern
