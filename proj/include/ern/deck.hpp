#pragma once

// Edge decks: the multiset of one-edge-deleted subgraphs of a graph, with
// each card kept on the full vertex set and identified by canonical code.
// Keying by code makes deck intersection in the search plain map algebra.

#include <map>
#include <stdexcept>

#include "ern/canon.hpp"
#include "ern/graph.hpp"

namespace ern {

struct EdgeDeck {
  std::map<CanonicalCode, int> entries;  // card code -> multiplicity
  int source_n = 0;
  int source_m = 0;

  int multiplicity(const CanonicalCode& code) const {
    auto it = entries.find(code);
    return it == entries.end() ? 0 : it->second;
  }

  int total() const {
    int t = 0;
    for (const auto& [code, mult] : entries) t += mult;
    return t;
  }

  bool operator==(const EdgeDeck&) const = default;
};

inline EdgeDeck edge_deck(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("edge_deck: graph has no edges");
  EdgeDeck deck;
  deck.source_n = g.vertex_count();
  deck.source_m = g.edge_count();
  for (const Edge& e : g.edges()) ++deck.entries[canonical_code(g.without_edge(e.u, e.v))];
  return deck;
}

// How many edges of g leave a card with the given code.  The code must
// describe a graph of the right shape (same order, one edge fewer).
inline int card_multiplicity(const Graph& g, const CanonicalCode& card) {
  Graph decoded = from_graph6(card.bytes);
  if (decoded.vertex_count() != g.vertex_count() ||
      decoded.edge_count() != g.edge_count() - 1)
    throw std::invalid_argument("card_multiplicity: card shape does not match source");
  return edge_deck(g).multiplicity(card);
}

}  // namespace ern
