#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ern/canon.hpp"
#include "ern/ern_search.hpp"
#include "ern/families.hpp"
#include "ern/graph.hpp"
#include "ern/tree_analysis.hpp"
#include "ern/treegen.hpp"
#include "json.hpp"

namespace ern {

// Each checker sweeps every instance of a structural claim up to max_n and
// records one failure string per violation, with enough of a reproducer to
// replay it by hand.  An empty failure list means the claim held everywhere
// in range; `details` carries suite-specific observations worth reporting
// even on a clean run.
struct CheckReport {
  std::string suite;
  int max_n = 0;
  long instances = 0;
  std::vector<std::string> failures;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool passed() const { return failures.empty(); }
};

inline nlohmann::ordered_json report_to_json(const CheckReport& rep) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["max_n"] = rep.max_n;
  j["instances"] = rep.instances;
  j["pass"] = rep.passed();
  j["failures"] = rep.failures;
  j["details"] = rep.details;
  return j;
}

namespace verify_detail {

// Identifies the root (vertex 0) of `rooted` with vertex `at` of `base`;
// the remaining vertices of `rooted` are appended after base's, in order.
inline Graph graft_at(const Graph& base, int at, const Graph& rooted) {
  std::vector<Edge> es = base.edges();
  int off = base.vertex_count();
  for (const Edge& e : rooted.edges()) {
    int u = e.u == 0 ? at : off + e.u - 1;
    int v = e.v == 0 ? at : off + e.v - 1;
    es.emplace_back(u, v);
  }
  return Graph::from_edges(off + rooted.vertex_count() - 1, es);
}

inline std::string code_str(const Graph& g) { return canonical_code(g).bytes; }

// A tree is a caterpillar when its non-leaf vertices induce a path, i.e.
// every such vertex has at most two non-leaf neighbours.
inline bool is_caterpillar(const Graph& t) {
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (t.degree(v) < 2) continue;
    int spine = 0;
    for (int w : t.neighbors(v))
      if (t.degree(w) >= 2) ++spine;
    if (spine > 2) return false;
  }
  return true;
}

// Codes reachable from t by a single endvertex swap that commutes: for some
// leaf a, both grafting a new leaf after deleting a and deleting another
// leaf after grafting at a land on the same graph.  Two trees form a
// conjugate pair exactly when each one's code lies in the other's set.
inline std::set<std::string> swap_reachable_codes(const Graph& t) {
  std::set<std::string> out;
  for (int a = 0; a < t.vertex_count(); ++a) {
    if (t.degree(a) != 1) continue;
    std::set<std::string> grafted;
    Graph reduced = t.without_vertex(a);
    for (int w = 0; w < reduced.vertex_count(); ++w)
      grafted.insert(code_str(with_pendant(reduced, w)));
    Graph grown = with_pendant(t, a);
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (v == a || t.degree(v) != 1) continue;
      std::string pruned = code_str(grown.without_vertex(v));
      if (grafted.count(pruned)) out.insert(pruned);
    }
  }
  return out;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Similarity: three exhaustive sources of similar vertex pairs in trees.
// Endvertices (and end-cutvertices) whose one-vertex-deleted subtrees match
// must be genuinely similar, and two non-isomorphic rooted trees grafted at
// a pair of vertices can only produce swap-invariant composites when the
// attachment vertices were similar already.

inline CheckReport check_similarity(int max_n) {
  if (max_n < 4 || max_n > 12)
    throw std::invalid_argument("check_similarity: max_n must lie in [4, 12]");
  CheckReport rep;
  rep.suite = "similarity";
  rep.max_n = max_n;
  long removal_pairs = 0, graft_pairs = 0, graft_hits = 0;

  for (int n = 2; n <= max_n; ++n) {
    for (const Graph& t : all_trees(n)) {
      std::vector<int> ends, endcuts;
      for (int v = 0; v < n; ++v) {
        if (t.degree(v) == 1) ends.push_back(v);
        if (is_end_cutvertex(t, v)) endcuts.push_back(v);
      }
      std::map<int, std::string> removed;
      auto removed_code = [&](int v) -> const std::string& {
        auto it = removed.find(v);
        if (it == removed.end())
          it = removed.emplace(v, verify_detail::code_str(t.without_vertex(v))).first;
        return it->second;
      };
      auto sweep = [&](const std::vector<int>& vs, const char* what) {
        for (size_t i = 0; i < vs.size(); ++i)
          for (size_t j = i + 1; j < vs.size(); ++j) {
            ++rep.instances;
            ++removal_pairs;
            if (removed_code(vs[i]) != removed_code(vs[j])) continue;
            if (!similar(t, vs[i], vs[j]))
              rep.failures.push_back(std::string("removal-similar ") + what +
                                     " pair not similar in " + verify_detail::code_str(t) +
                                     " at vertices " + std::to_string(vs[i]) + "," +
                                     std::to_string(vs[j]));
          }
      };
      sweep(ends, "endvertex");
      sweep(endcuts, "end-cutvertex");
    }
  }

  // Grafting a pair of non-isomorphic rooted trees at vertices a, b of a
  // host tree, in both assignments: equal composites force a ~ b.
  auto catalog = gen_detail::rooted_catalog(std::max(1, max_n - 3));
  for (int tn = 2; tn + 2 <= max_n; ++tn) {
    for (const Graph& t : all_trees(tn)) {
      for (int a = 0; a < tn; ++a) {
        for (int b = a + 1; b < tn; ++b) {
          std::optional<bool> sim;
          for (int sa = 1; tn + sa + 1 <= max_n; ++sa) {
            for (size_t ia = 0; ia < (*catalog)[static_cast<size_t>(sa)].size(); ++ia) {
              for (int sb = sa; tn + sa + sb <= max_n; ++sb) {
                const auto& shelf = (*catalog)[static_cast<size_t>(sb)];
                for (size_t ib = (sb == sa ? ia + 1 : 0); ib < shelf.size(); ++ib) {
                  const Graph& ta = (*catalog)[static_cast<size_t>(sa)][ia];
                  const Graph& tb = shelf[ib];
                  ++rep.instances;
                  ++graft_pairs;
                  using verify_detail::graft_at;
                  Graph ab = graft_at(graft_at(t, a, ta), b, tb);
                  Graph ba = graft_at(graft_at(t, a, tb), b, ta);
                  if (canonical_code(ab) != canonical_code(ba)) continue;
                  ++graft_hits;
                  if (!sim) sim = similar(t, a, b);
                  if (!*sim)
                    rep.failures.push_back(
                        "swap-invariant graft on dissimilar vertices " + std::to_string(a) +
                        "," + std::to_string(b) + " of " + verify_detail::code_str(t) +
                        " with parts " + verify_detail::code_str(ta) + " / " +
                        verify_detail::code_str(tb));
                }
              }
            }
          }
        }
      }
    }
  }

  rep.details["removal_pairs"] = removal_pairs;
  rep.details["graft_pairs"] = graft_pairs;
  rep.details["graft_coincidences"] = graft_hits;
  return rep;
}

// ---------------------------------------------------------------------------
// Pseudopaths: the classifier must agree with the end-edge criterion (a tree
// is a pseudopath exactly when every end-edge is replaceable), and the
// conjugate-pair scan must find at most one pair class per order, with both
// members caterpillars.

inline CheckReport check_pseudopath(int max_n) {
  if (max_n < 3 || max_n > 13)
    throw std::invalid_argument("check_pseudopath: max_n must lie in [3, 13]");
  CheckReport rep;
  rep.suite = "pseudopath";
  rep.max_n = max_n;
  long pseudopaths = 0;

  for (int n = 3; n <= max_n; ++n) {
    for (const Graph& t : all_trees(n)) {
      ++rep.instances;
      bool pseudo = classify_pseudopath(t).is_pseudopath();
      if (pseudo) ++pseudopaths;
      bool irreplaceable = false;
      for (const auto& [edge, status] : end_edge_replaceability(t))
        if (status == EndEdgeStatus::irreplaceable) irreplaceable = true;
      if (pseudo == irreplaceable)
        rep.failures.push_back(std::string(pseudo ? "pseudopath" : "non-pseudopath") +
                               " with " + (irreplaceable ? "an" : "no") +
                               " irreplaceable end-edge: " + verify_detail::code_str(t));
    }
  }

  auto classes = nlohmann::ordered_json::object();
  for (int n = 4; n <= max_n; ++n) {
    std::vector<Graph> trees = all_trees(n);
    std::vector<std::string> codes(trees.size());
    std::vector<std::set<std::string>> reach(trees.size());
    for (size_t i = 0; i < trees.size(); ++i) {
      codes[i] = verify_detail::code_str(trees[i]);
      reach[i] = verify_detail::swap_reachable_codes(trees[i]);
    }
    std::vector<std::pair<std::string, std::string>> found;
    for (size_t i = 0; i < trees.size(); ++i) {
      for (size_t j = i + 1; j < trees.size(); ++j) {
        ++rep.instances;
        if (!reach[i].count(codes[j]) || !reach[j].count(codes[i])) continue;
        if (!conjugate_pair_witness(trees[i], trees[j])) {
          rep.failures.push_back("swap sets meet in both directions but no witness for " +
                                 codes[i] + " / " + codes[j]);
          continue;
        }
        found.emplace_back(codes[i], codes[j]);
        if (!verify_detail::is_caterpillar(trees[i]) ||
            !verify_detail::is_caterpillar(trees[j]))
          rep.failures.push_back("conjugate pair member is not a caterpillar: " +
                                 codes[i] + " / " + codes[j]);
      }
    }
    if (found.size() > 1)
      rep.failures.push_back("order " + std::to_string(n) + " has " +
                             std::to_string(found.size()) + " conjugate pair classes");
    if (!found.empty()) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& [c1, c2] : found) arr.push_back({c1, c2});
      classes[std::to_string(n)] = arr;
    }
  }

  rep.details["pseudopaths"] = pseudopaths;
  rep.details["conjugate_classes"] = classes;
  return rep;
}

// ---------------------------------------------------------------------------
// Bicentroidal trees: the three known exceptions are the only ones needing a
// third card, and the constructive two-card arguments really do determine
// the tree wherever their hypotheses hold.

inline CheckReport check_bicentroidal(int max_n) {
  if (max_n < 6 || max_n > 13)
    throw std::invalid_argument("check_bicentroidal: max_n must lie in [6, 13]");
  CheckReport rep;
  rep.suite = "bicentroidal";
  rep.max_n = max_n;

  std::set<std::string> exceptional = {
      verify_detail::code_str(build(parse_family_spec("cat:2,2"))),
      verify_detail::code_str(build(parse_family_spec("cat:2,1,1,2"))),
      verify_detail::code_str(build(parse_family_spec("bij:2,2,2,2")))};
  std::vector<std::string> exceptional_found;
  long main1_pairs = 0, main2_pairs = 0, conjugate_joins = 0;

  for (int n = 6; n <= max_n; n += 2) {
    for (const Graph& t : all_trees(n)) {
      CentroidInfo info = centroid(t);
      if (!info.bicentroidal()) continue;
      ++rep.instances;
      std::string tcode = verify_detail::code_str(t);

      int value = ern(t).value;
      bool listed = exceptional.count(tcode) > 0;
      if (listed && value == 3) exceptional_found.push_back(tcode);
      if ((value == 3) != listed)
        rep.failures.push_back("bicentroidal tree with ern " + std::to_string(value) +
                               (listed ? " despite" : " outside") +
                               " the known exception list: " + tcode);

      Edge ce = *info.centroidal_edge;
      Graph cut = t.without_edge(ce.u, ce.v);
      auto parts = components(cut).parts;

      // both orientations: side holds a, the opposite centroid vertex is b
      for (int flip = 0; flip < 2; ++flip) {
        int a = flip ? ce.v : ce.u;
        int b = flip ? ce.u : ce.v;
        const auto& part =
            std::binary_search(parts[0].begin(), parts[0].end(), a) ? parts[0] : parts[1];
        Graph side = induced_subgraph(cut, part);
        if (classify_pseudopath(side).is_pseudopath()) continue;

        if (t.degree(b) >= 3) {
          // any irreplaceable end-edge of the side, paired with the
          // centroidal edge, must pin the tree down; the end-edge at the
          // centroid vertex itself does not count (its endvertex is no leaf
          // of the whole tree, and blockers exist for that choice)
          for (const auto& [edge, status] : end_edge_replaceability(side)) {
            if (status != EndEdgeStatus::irreplaceable) continue;
            int endvertex = side.degree(edge.u) == 1 ? edge.u : edge.v;
            if (part[static_cast<size_t>(endvertex)] == a) continue;
            ++rep.instances;
            ++main1_pairs;
            Edge in_t(part[static_cast<size_t>(edge.u)], part[static_cast<size_t>(edge.v)]);
            if (!pair_blockers(t, ce, in_t).empty())
              rep.failures.push_back("centroidal edge plus irreplaceable end-edge " +
                                     std::to_string(in_t.u) + "-" + std::to_string(in_t.v) +
                                     " fails to determine " + tcode);
          }
        }
      }

      // both centroid degrees 2 and neither side a pseudopath: the
      // centroidal edge plus one of the two flanking spine edges works
      if (t.degree(ce.u) == 2 && t.degree(ce.v) == 2) {
        bool any_pseudo = false;
        for (const auto& part : parts)
          if (classify_pseudopath(induced_subgraph(cut, part)).is_pseudopath())
            any_pseudo = true;
        if (!any_pseudo) {
          ++rep.instances;
          ++main2_pairs;
          auto flank = [&](int center, int other) {
            for (int w : t.neighbors(center))
              if (w != other) return Edge(center, w);
            throw std::logic_error("degree-2 centroid vertex lost its second neighbour");
          };
          Edge bd = flank(ce.v, ce.u), ac = flank(ce.u, ce.v);
          if (!pair_blockers(t, ce, bd).empty() && !pair_blockers(t, ce, ac).empty()) {
            // both flanking cards are ambiguous, which forces the two sides
            // to be a conjugate pair; the tree is then still determined by
            // the centroidal edge next to some third card
            ++conjugate_joins;
            if (!conjugate_pair_witness(induced_subgraph(cut, parts[0]),
                                        induced_subgraph(cut, parts[1]))) {
              rep.failures.push_back("flanking ambiguity without conjugate sides in " + tcode);
            } else {
              bool determined = false;
              for (const Edge& e : t.edges())
                if (!(e == ce) && pair_blockers(t, ce, e).empty()) {
                  determined = true;
                  break;
                }
              if (!determined)
                rep.failures.push_back(
                    "no card next to the centroidal one determines " + tcode);
            }
          }
        }
      }
    }
  }

  // Odd path with one extra end-edge off centre: dropping the pendant edge
  // and the matched far spine edge always determines the tree.
  long attached_pairs = 0;
  for (int k = 3; 2 * k <= max_n; ++k) {
    for (int i = 2; i <= k - 1; ++i) {
      std::vector<Edge> es;
      for (int v = 1; v <= 2 * k - 2; ++v) es.emplace_back(v - 1, v);
      es.emplace_back(i - 1, 2 * k - 1);
      Graph t = Graph::from_edges(2 * k, es);
      ++rep.instances;
      ++attached_pairs;
      if (!pair_blockers(t, Edge(i - 1, 2 * k - 1), Edge(2 * i - 2, 2 * i - 1)).empty())
        rep.failures.push_back("pendant-plus-spine pair fails on the attached path k=" +
                               std::to_string(k) + " i=" + std::to_string(i));
    }
  }

  rep.details["exceptional_found"] = exceptional_found;
  rep.details["main_pairs_deg3"] = main1_pairs;
  rep.details["main_pairs_deg2"] = main2_pairs;
  rep.details["conjugate_joins"] = conjugate_joins;
  rep.details["attached_path_pairs"] = attached_pairs;
  return rep;
}

// ---------------------------------------------------------------------------
// Family blockers: every stored certificate self-validates over the full
// parameter sweep, small cases are cross-checked against the search, and the
// odd-diameter tufted caterpillars are determined by their central cards.

inline CheckReport check_family_blockers(int max_n) {
  if (max_n < 5 || max_n > 17)
    throw std::invalid_argument("check_family_blockers: max_n must lie in [5, 17]");
  CheckReport rep;
  rep.suite = "blockers";
  rep.max_n = max_n;
  long validated = 0, contained = 0, odd_pairs = 0;

  auto sweep = [&](const FamilySpec& spec, const std::vector<Edge>& edges, bool cross) {
    Graph target = build(spec);
    for (size_t i = 0; i < edges.size(); ++i) {
      for (size_t j = i + 1; j < edges.size(); ++j) {
        ++rep.instances;
        ++validated;
        BlockerCertificate cert = blocker_for(spec, edges[i], edges[j]);
        if (!cert.validate())
          rep.failures.push_back("certificate fails to validate for " + to_string(spec) +
                                 " edges " + std::to_string(edges[i].u) + "-" +
                                 std::to_string(edges[i].v) + ", " +
                                 std::to_string(edges[j].u) + "-" +
                                 std::to_string(edges[j].v));
        else if (cross) {
          ++contained;
          auto blockers = pair_blockers(target, edges[i], edges[j]);
          if (!blockers.count(canonical_code(cert.blocker)))
            rep.failures.push_back("certificate blocker missing from the search for " +
                                   to_string(spec));
        }
      }
    }
  };

  for (int s = 2; 2 * s + 1 <= std::min(max_n, 17); ++s) {
    FamilySpec spec = parse_family_spec("path:" + std::to_string(2 * s + 1));
    sweep(spec, build(spec).edges(), s <= 4);
  }

  for (int d = 4; d <= std::min(max_n - 3, 12); d += 2) {
    std::string leaves = "2";
    for (int i = 0; i < d - 3; ++i) leaves += ",0";
    leaves += ",2";
    FamilySpec spec = parse_family_spec("cat:" + leaves);
    sweep(spec, build(spec).edges(), d <= 6);
  }

  for (int k = 2; 3 * k + 1 <= std::min(max_n, 16) && k <= 5; ++k) {
    FamilySpec spec = parse_family_spec("tk:" + std::to_string(k));
    std::vector<Edge> centers;
    for (int b = 1; b <= k; ++b) centers.emplace_back(0, b);
    sweep(spec, centers, k == 2);
  }

  // Odd diameter: the single central spine edge and either spine edge of
  // the next class out form a determining pair, so no blocker exists.
  for (int d = 5; d <= std::min(max_n - 3, 11); d += 2) {
    Graph t = family_detail::tufted_path(d);
    Edge central((d - 1) / 2, (d + 1) / 2);
    Edge outer((d - 3) / 2, (d - 1) / 2);
    ++rep.instances;
    ++odd_pairs;
    if (!pair_blockers(t, central, outer).empty())
      rep.failures.push_back("central card pair fails to determine the tufted path d=" +
                             std::to_string(d));
  }

  rep.details["validated"] = validated;
  rep.details["search_cross_checks"] = contained;
  rep.details["odd_diameter_pairs"] = odd_pairs;
  return rep;
}

// ---------------------------------------------------------------------------
// Two-card tree recognition: over every connected graph up to max_n and
// every pair of its edge-cards, a forced-tree verdict is only ever returned
// for actual trees.

namespace verify_detail {

// One representative per isomorphism class of connected graphs on n
// labeled vertices, found by sweeping all edge subsets.
inline std::vector<Graph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  unsigned workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::set<std::string>> seen(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::vector<Edge> es;
      for (unsigned long long mask = w; mask < (1ull << slots.size()); mask += workers) {
        es.clear();
        for (size_t i = 0; i < slots.size(); ++i)
          if (mask >> i & 1) es.emplace_back(slots[i].first, slots[i].second);
        if (static_cast<int>(es.size()) < n - 1) continue;
        Graph g = Graph::from_edges(n, es);
        if (components(g).parts.size() != 1) continue;
        seen[w].insert(canonical_code(g).bytes);
      }
    });
  }
  for (auto& th : pool) th.join();
  std::set<std::string> codes;
  for (const auto& s : seen) codes.insert(s.begin(), s.end());
  std::vector<Graph> out;
  out.reserve(codes.size());
  for (const std::string& c : codes) out.push_back(from_graph6(c));
  return out;
}

}  // namespace verify_detail

inline CheckReport check_molina(int max_n) {
  if (max_n < 2 || max_n > 7)
    throw std::invalid_argument("check_molina: max_n must lie in [2, 7]");
  CheckReport rep;
  rep.suite = "molina";
  rep.max_n = max_n;
  auto counts = nlohmann::ordered_json::object();
  long forced = 0;

  for (int n = 2; n <= max_n; ++n) {
    std::vector<Graph> graphs = verify_detail::connected_graphs(n);
    counts[std::to_string(n)] = graphs.size();
    for (const Graph& g : graphs) {
      bool tree = is_tree(g);
      const auto& es = g.edges();
      for (size_t i = 0; i < es.size(); ++i) {
        for (size_t j = i + 1; j < es.size(); ++j) {
          ++rep.instances;
          Graph c1 = g.without_edge(es[i].u, es[i].v);
          Graph c2 = g.without_edge(es[j].u, es[j].v);
          if (molina_recognizer(c1, c2) != MolinaVerdict::tree_forced) continue;
          ++forced;
          if (!tree)
            rep.failures.push_back("tree verdict from cards of the non-tree " +
                                   verify_detail::code_str(g) + " at edges " +
                                   std::to_string(es[i].u) + "-" + std::to_string(es[i].v) +
                                   ", " + std::to_string(es[j].u) + "-" +
                                   std::to_string(es[j].v));
        }
      }
    }
  }

  rep.details["connected_graphs"] = counts;
  rep.details["forced_verdicts"] = forced;
  return rep;
}

}  // namespace ern
