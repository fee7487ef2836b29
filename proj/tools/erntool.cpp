// Command line front end: stream trees, compute reconstruction numbers,
// drive the census over an order range, diff stored results against the
// known lists, and run the structural check suites.

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "ern/census.hpp"
#include "ern/verifier.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json edge_pair_json(const std::pair<ern::Edge, ern::Edge>& p) {
  return ordered_json::array(
      {{p.first.u, p.first.v}, {p.second.u, p.second.v}});
}

// Family text always carries ':' or '(' somewhere; graph6 never does.
ern::Graph parse_tree_argument(const std::string& text) {
  if (text.find(':') != std::string::npos || text.find('(') != std::string::npos)
    return ern::build(ern::parse_family_spec(text));
  return ern::from_graph6(text);
}

void print_json(const ordered_json& j) { std::printf("%s\n", j.dump(2).c_str()); }

// Orders that have at least one shard stored in the census directory.
std::set<int> stored_orders(const fs::path& dir) {
  std::set<int> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    int n = 0, w = 0, k = 0;
    if (std::sscanf(name.c_str(), "census_n%d_w%dof%d.jsonl", &n, &w, &k) == 3)
      out.insert(n);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge reconstruction numbers of trees"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "stream every tree of one order as graph6");
  int gen_n = 0;
  bool gen_canonical = false;
  gen->add_option("--n", gen_n, "number of vertices")->required()->check(CLI::Range(1, 26));
  gen->add_flag("--canonical", gen_canonical, "print canonical codes instead");

  auto* value = app.add_subcommand("ern", "reconstruction number of one tree");
  std::string spec_text;
  bool exhaustive = false;
  value->add_option("--spec", spec_text, "family spec like path:9 or a graph6 string")
      ->required();
  value->add_flag("--exhaustive", exhaustive,
                  "keep going past the first determining pair and report blockers");

  auto* census = app.add_subcommand("census", "compute and persist records per order");
  int from = 0, to = 0, workers = 1;
  bool extended = false;
  std::string out_dir = "census_out", sporadics_file;
  census->add_option("--from", from, "first order")->required();
  census->add_option("--to", to, "last order")->required();
  census->add_option("--workers", workers, "shards per order")->check(CLI::Range(1, 64));
  census->add_option("--out", out_dir, "shard directory (default census_out)");
  census->add_flag("--extended", extended, "allow orders 14 and 15");
  census->add_option("--sporadics", sporadics_file,
                     "file of known sporadic codes, one per line");

  auto* report = app.add_subcommand("report", "diff stored records against the known lists");
  std::string against;
  int rep_from = 0, rep_to = 0;
  std::string rep_dir = "census_out";
  report->add_option("--against", against, "catalog or conjecture")->required();
  report->add_option("--out", rep_dir, "shard directory (default census_out)");
  report->add_option("--from", rep_from, "first order (default: whatever is stored)");
  report->add_option("--to", rep_to, "last order (default: whatever is stored)");

  auto* verify = app.add_subcommand("verify", "run one structural check suite");
  std::string suite;
  int max_n = 0;
  verify->add_option("--suite", suite, "similarity, pseudopath, bicentroidal, blockers or molina")
      ->required();
  verify->add_option("--max-n", max_n, "sweep bound (default: the suite's widest bound)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ern::TreeStream stream(gen_n);
      while (auto t = stream.next())
        std::printf("%s\n", gen_canonical ? ern::canonical_code(*t).bytes.c_str()
                                          : ern::to_graph6(*t).c_str());
      return 0;
    }

    if (value->parsed()) {
      ern::Graph t = parse_tree_argument(spec_text);
      ern::ErnResult res = ern::ern(t, exhaustive);
      ordered_json j;
      j["input"] = spec_text;
      j["g6"] = ern::canonical_code(t).bytes;
      j["n"] = t.vertex_count();
      j["ern"] = res.value;
      j["bound_from_theory"] = res.bound_from_theory;
      j["witness"] = res.witness ? edge_pair_json(*res.witness) : ordered_json(nullptr);
      if (exhaustive) {
        auto pairs = ordered_json::array();
        for (const auto& p : res.determining_pairs) pairs.push_back(edge_pair_json(p));
        j["determining_pairs"] = pairs;
        auto blocked = ordered_json::array();
        for (const auto& [pair, codes] : res.blockers) {
          ordered_json entry;
          entry["pair"] = edge_pair_json(pair);
          auto arr = ordered_json::array();
          for (const auto& code : codes) arr.push_back(code.bytes);
          entry["blockers"] = arr;
          blocked.push_back(entry);
        }
        j["blocked_pairs"] = blocked;
      }
      print_json(j);
      return 0;
    }

    if (census->parsed()) {
      int cap = extended ? 15 : 13;
      if (to > cap)
        throw std::invalid_argument("census: orders above 13 need --extended");
      std::set<std::string> sporadics;
      if (!sporadics_file.empty()) sporadics = ern::load_sporadics(sporadics_file);
      ern::CensusSummary summary = ern::run_census(from, to, workers, out_dir, sporadics);
      ordered_json j;
      j["out"] = out_dir;
      auto orders = ordered_json::object();
      for (const auto& [n, counts] : summary.per_order) {
        ordered_json entry;
        entry["ern2"] = counts.first;
        entry["ern3"] = counts.second;
        orders[std::to_string(n)] = entry;
      }
      j["orders"] = orders;
      j["shards_reused"] = summary.shards_reused;
      j["shards_computed"] = summary.shards_computed;
      print_json(j);
      return 0;
    }

    if (report->parsed()) {
      if ((rep_from == 0) != (rep_to == 0))
        throw std::invalid_argument("report: give both --from and --to or neither");
      if (rep_from == 0) {
        std::set<int> stored = stored_orders(rep_dir);
        int lo = against == "catalog" ? 4 : 12;
        int hi = against == "catalog" ? 11 : 15;
        for (int n : stored) {
          if (n < lo || n > hi) continue;
          if (rep_from == 0) rep_from = n;
          rep_to = n;
        }
        if (rep_from == 0)
          throw std::runtime_error("report: no stored orders match " + against);
      }
      ern::CensusReport rep = ern::report_census(rep_dir, rep_from, rep_to, against);
      print_json(rep.body);
      return rep.pass ? 0 : 1;
    }

    if (verify->parsed()) {
      const std::map<std::string, int> widest = {{"similarity", 12},
                                                 {"pseudopath", 13},
                                                 {"bicentroidal", 13},
                                                 {"blockers", 17},
                                                 {"molina", 7}};
      auto it = widest.find(suite);
      if (it == widest.end())
        throw std::invalid_argument("verify: unknown suite " + suite);
      if (max_n == 0) max_n = it->second;
      ern::CheckReport rep;
      if (suite == "similarity") rep = ern::check_similarity(max_n);
      else if (suite == "pseudopath") rep = ern::check_pseudopath(max_n);
      else if (suite == "bicentroidal") rep = ern::check_bicentroidal(max_n);
      else if (suite == "blockers") rep = ern::check_family_blockers(max_n);
      else rep = ern::check_molina(max_n);
      print_json(ern::report_to_json(rep));
      return rep.passed() ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "erntool: %s\n", err.what());
    return 2;
  }
  return 0;
}
