#pragma once

// Pairwise card search: decide whether two edge-cards of a tree pin it
// down among all graphs, by intersecting one-edge extension sets of the
// two cards.  Includes a brute-force small-order oracle that enumerates
// the full graph universe instead of extending cards.

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ern/canon.hpp"
#include "ern/deck.hpp"
#include "ern/graph.hpp"

namespace ern {

struct ExtensionSet {
  CanonicalCode card_code;
  std::set<CanonicalCode> members;  // codes of card + uv over all non-edges uv
  int raw_count = 0;                // extensions counted before dedup
};

inline ExtensionSet extensions(const Graph& card) {
  int n = card.vertex_count();
  if (card.edge_count() == n * (n - 1) / 2)
    throw std::invalid_argument("extensions: complete graph has no non-edge");
  ExtensionSet out;
  out.card_code = canonical_code(card);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (card.has_edge(u, v)) continue;
      ++out.raw_count;
      out.members.insert(canonical_code(card.with_edge(u, v)));
    }
  return out;
}

namespace search_detail {

inline std::set<CanonicalCode> intersect(const std::set<CanonicalCode>& a,
                                         const std::set<CanonicalCode>& b) {
  std::set<CanonicalCode> out;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& code : small)
    if (large.count(code)) out.insert(code);
  return out;
}

// Drops candidates that hold the shared card only once; applies when the
// two deleted cards are isomorphic, since the source then shows that card
// at least twice.
inline void require_double_card(std::set<CanonicalCode>& candidates,
                                const CanonicalCode& card) {
  for (auto it = candidates.begin(); it != candidates.end();) {
    if (edge_deck(from_graph6(it->bytes)).multiplicity(card) < 2)
      it = candidates.erase(it);
    else
      ++it;
  }
}

inline void check_tree_pair(const Graph& t, const Edge& e1, const Edge& e2) {
  if (!is_tree(t)) throw std::invalid_argument("pair_blockers: not a tree");
  if (e1 == e2) throw std::invalid_argument("pair_blockers: edges must differ");
  if (!t.has_edge(e1.u, e1.v) || !t.has_edge(e2.u, e2.v))
    throw std::invalid_argument("pair_blockers: edge not in tree");
}

}  // namespace search_detail

// All graphs other than t whose edge-deck covers both cards t-e1, t-e2
// (with multiplicity two when the cards coincide).  Empty means this pair
// of cards determines t.
inline std::set<CanonicalCode> pair_blockers(const Graph& t, const Edge& e1, const Edge& e2) {
  search_detail::check_tree_pair(t, e1, e2);
  ExtensionSet s1 = extensions(t.without_edge(e1.u, e1.v));
  ExtensionSet s2 = extensions(t.without_edge(e2.u, e2.v));
  auto blockers = search_detail::intersect(s1.members, s2.members);
  if (s1.card_code == s2.card_code)
    search_detail::require_double_card(blockers, s1.card_code);
  blockers.erase(canonical_code(t));
  return blockers;
}

struct ErnResult {
  int value = 2;
  bool bound_from_theory = false;  // 3 rests on the two-or-three theorem
  std::optional<std::pair<Edge, Edge>> witness;        // first determining pair
  std::vector<std::pair<Edge, Edge>> determining_pairs;  // exhaustive mode only
  std::map<std::pair<Edge, Edge>, std::set<CanonicalCode>> blockers;
};

// Pairs run in lexicographic order over the sorted edge list; the first
// determining pair ends the scan unless exhaustive is set, in which case
// every pair is classified.
inline ErnResult ern(const Graph& t, bool exhaustive = false) {
  if (!is_tree(t)) throw std::invalid_argument("ern: not a tree");
  if (t.edge_count() < 4) throw std::invalid_argument("ern: tree needs at least four edges");
  const auto& es = t.edges();
  size_t m = es.size();
  CanonicalCode t_code = canonical_code(t);
  std::vector<CanonicalCode> card(m);
  std::vector<std::set<CanonicalCode>> ext(m);
  for (size_t i = 0; i < m; ++i) {
    ExtensionSet s = extensions(t.without_edge(es[i].u, es[i].v));
    card[i] = s.card_code;
    ext[i] = std::move(s.members);
  }

  ErnResult r;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      auto blockers = search_detail::intersect(ext[i], ext[j]);
      if (card[i] == card[j]) search_detail::require_double_card(blockers, card[i]);
      blockers.erase(t_code);
      if (blockers.empty()) {
        if (!r.witness) r.witness = {es[i], es[j]};
        if (!exhaustive) {
          r.value = 2;
          r.blockers.clear();
          return r;
        }
        r.determining_pairs.emplace_back(es[i], es[j]);
      } else {
        r.blockers.emplace(std::make_pair(es[i], es[j]), std::move(blockers));
      }
    }
  if (r.witness) {
    r.value = 2;
  } else {
    r.value = 3;
    r.bound_from_theory = true;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small-order oracle: the same questions answered from the full universe
// of graphs with the tree's order and size.

namespace search_detail {

struct Universe {
  std::vector<Graph> graphs;  // canonical forms, one per isomorphism class
  std::vector<std::string> codes;  // graph6 of each, parallel to graphs
  std::vector<std::unordered_map<std::string, int>> decks;  // card g6 -> multiplicity
  std::unordered_map<std::string, std::vector<int>> by_card;  // card g6 -> graph indices
};

// Enumerates every graph with n vertices and n-1 edges up to isomorphism,
// with per-graph decks.  Built once per order, in parallel, and cached.
inline const Universe& universe(int n) {
  static std::mutex guard;
  static std::map<int, Universe> cache;
  std::lock_guard<std::mutex> lock(guard);
  auto hit = cache.find(n);
  if (hit != cache.end()) return hit->second;

  std::vector<Edge> all_pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
  int pick = n - 1;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::unordered_set<std::string>> found(workers);

  // every worker steps the same combination odometer but canonicalizes
  // only its stride, so no unranking is needed
  auto scan = [&](unsigned w) {
    std::vector<int> combo(static_cast<size_t>(pick));
    for (int i = 0; i < pick; ++i) combo[static_cast<size_t>(i)] = i;
    std::vector<Edge> chosen;
    unsigned long long serial = 0;
    int total = static_cast<int>(all_pairs.size());
    while (true) {
      if (serial++ % workers == w) {
        chosen.clear();
        for (int i : combo) chosen.push_back(all_pairs[static_cast<size_t>(i)]);
        found[w].insert(canonical_code(Graph::from_edges(n, chosen)).bytes);
      }
      int slot = pick - 1;
      while (slot >= 0 && combo[static_cast<size_t>(slot)] == total - pick + slot) --slot;
      if (slot < 0) break;
      ++combo[static_cast<size_t>(slot)];
      for (int i = slot + 1; i < pick; ++i)
        combo[static_cast<size_t>(i)] = combo[static_cast<size_t>(i - 1)] + 1;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(scan, w);
  scan(0);
  for (auto& th : pool) th.join();

  std::set<std::string> merged;  // ordered, so universe order is stable
  for (auto& part : found) merged.insert(part.begin(), part.end());

  Universe u;
  for (const auto& code : merged) {
    int idx = static_cast<int>(u.graphs.size());
    u.codes.push_back(code);
    u.graphs.push_back(from_graph6(code));
    std::unordered_map<std::string, int> deck;
    for (const Edge& e : u.graphs.back().edges())
      ++deck[canonical_code(u.graphs.back().without_edge(e.u, e.v)).bytes];
    for (const auto& [card_code, mult] : deck) u.by_card[card_code].push_back(idx);
    u.decks.push_back(std::move(deck));
  }
  return cache.emplace(n, std::move(u)).first->second;
}

}  // namespace search_detail

// Blocker set for the pair, recomputed by scanning the whole universe of
// graphs holding the first card.  Guarded to small orders.
inline std::set<CanonicalCode> oracle_pair_blockers(const Graph& t, const Edge& e1,
                                                    const Edge& e2) {
  search_detail::check_tree_pair(t, e1, e2);
  if (t.vertex_count() > 9)
    throw std::invalid_argument("oracle_pair_blockers: order too large for the universe scan");
  const auto& u = search_detail::universe(t.vertex_count());
  std::string c1 = canonical_code(t.without_edge(e1.u, e1.v)).bytes;
  std::string c2 = canonical_code(t.without_edge(e2.u, e2.v)).bytes;
  std::string t_code = canonical_code(t).bytes;
  std::set<CanonicalCode> out;
  auto listed = u.by_card.find(c1);
  if (listed == u.by_card.end()) return out;
  for (int idx : listed->second) {
    const auto& deck = u.decks[static_cast<size_t>(idx)];
    if (c1 == c2 && deck.at(c1) < 2) continue;
    if (c1 != c2 && !deck.count(c2)) continue;
    const std::string& code = u.codes[static_cast<size_t>(idx)];
    if (code != t_code) out.insert(CanonicalCode{code});
  }
  return out;
}

// ern recomputed against the universe; same pair order and early exit as
// the extension-based search so results are comparable field by field.
inline ErnResult ern_oracle(const Graph& t, bool exhaustive = false) {
  if (!is_tree(t)) throw std::invalid_argument("ern_oracle: not a tree");
  if (t.edge_count() < 4)
    throw std::invalid_argument("ern_oracle: tree needs at least four edges");
  if (t.vertex_count() > 9)
    throw std::invalid_argument("ern_oracle: order too large for the universe scan");
  const auto& es = t.edges();
  ErnResult r;
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      auto blockers = oracle_pair_blockers(t, es[i], es[j]);
      if (blockers.empty()) {
        if (!r.witness) r.witness = {es[i], es[j]};
        if (!exhaustive) {
          r.value = 2;
          r.blockers.clear();
          return r;
        }
        r.determining_pairs.emplace_back(es[i], es[j]);
      } else {
        r.blockers.emplace(std::make_pair(es[i], es[j]), std::move(blockers));
      }
    }
  if (r.witness) {
    r.value = 2;
  } else {
    r.value = 3;
    r.bound_from_theory = true;
  }
  return r;
}

}  // namespace ern
