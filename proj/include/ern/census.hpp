#pragma once

// Census plumbing: run the reconstruction-number computation over every tree
// in an order range, persist one shard file per (order, worker), classify the
// ern=3 records against the constructible families, and diff the stored
// results against the built-in catalog or the conjectured family lists.
//
// Shard files are JSON lines: a header object, one record per line sorted by
// canonical code, and a footer with a count and checksum so interrupted runs
// can be detected and redone. Records depend only on the tree, never on the
// worker layout, which makes the record set independent of the worker count
// and lets a rerun reproduce shards byte for byte.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ern/ern_search.hpp"
#include "ern/families.hpp"
#include "ern/tree_analysis.hpp"
#include "ern/treegen.hpp"
#include "json.hpp"

namespace ern {

inline constexpr const char* kCensusVersion = "1";

struct CensusRecord {
  std::string g6;
  int n = 0;
  int value = 0;
  std::optional<std::pair<Edge, Edge>> witness;
  std::vector<std::string> tags;
  bool bicentroidal = false;

  bool operator==(const CensusRecord&) const = default;
};

namespace census_detail {

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace census_detail

// Family tags for one record, in a fixed order. The sporadic set holds
// previously discovered codes; passing an empty set leaves fresh discoveries
// tagged unclassified.
inline std::vector<std::string> classify_tags(const std::string& g6, int n, int value,
                                              const std::set<std::string>& sporadics) {
  std::vector<std::string> tags;
  if (value != 3) return tags;
  if (n >= 5 && n % 2 == 1 &&
      g6 == canonical_code(build(parse_family_spec("path:" + std::to_string(n)))).bytes)
    tags.push_back("odd-path");
  int s = n - 4;
  if (s >= 3 && s % 2 == 1) {
    FamilySpec::Caterpillar cat;
    cat.leaves.assign(static_cast<size_t>(s), 0);
    cat.leaves.front() = cat.leaves.back() = 2;
    if (g6 == canonical_code(build(FamilySpec{cat})).bytes) tags.push_back("even-diam-cat");
  }
  if (n % 3 == 1 && (n - 1) / 3 >= 2) {
    FamilySpec::Tk tk{(n - 1) / 3};
    if (g6 == canonical_code(build(FamilySpec{tk})).bytes) tags.push_back("tk");
  }
  bool known = sporadics.count(g6) > 0;
  if (!known && n >= 4 && n <= 11)
    for (const Graph& t : known_ern3_catalog(n))
      if (canonical_code(t).bytes == g6) {
        known = true;
        break;
      }
  if (known) tags.push_back("known-sporadic");
  if (tags.empty()) tags.push_back("unclassified");
  return tags;
}

// Full record for one tree. The tree is renamed into its canonical labeling
// first so the stored witness edges can be replayed straight from the code.
inline CensusRecord census_record(const Graph& tree, const std::set<std::string>& sporadics) {
  Graph cf = canonical_form(tree);
  CensusRecord r;
  r.g6 = to_graph6(cf);
  r.n = cf.vertex_count();
  r.bicentroidal = centroid(cf).bicentroidal();
  ErnResult res = ern(cf);
  r.value = res.value;
  r.witness = res.witness;
  r.tags = classify_tags(r.g6, r.n, r.value, sporadics);
  return r;
}

inline nlohmann::ordered_json record_to_json(const CensusRecord& r) {
  nlohmann::ordered_json j;
  j["g6"] = r.g6;
  j["n"] = r.n;
  j["ern"] = r.value;
  if (r.witness) {
    j["witness"] = nlohmann::ordered_json::array(
        {{r.witness->first.u, r.witness->first.v}, {r.witness->second.u, r.witness->second.v}});
  } else {
    j["witness"] = nullptr;
  }
  j["tags"] = r.tags;
  j["centroid"] = r.bicentroidal ? "bi" : "uni";
  return j;
}

inline CensusRecord record_from_json(const nlohmann::ordered_json& j) {
  CensusRecord r;
  r.g6 = j.at("g6").get<std::string>();
  r.n = j.at("n").get<int>();
  r.value = j.at("ern").get<int>();
  if (!j.at("witness").is_null()) {
    const auto& w = j.at("witness");
    r.witness = std::make_pair(Edge(w.at(0).at(0).get<int>(), w.at(0).at(1).get<int>()),
                               Edge(w.at(1).at(0).get<int>(), w.at(1).at(1).get<int>()));
  }
  r.tags = j.at("tags").get<std::vector<std::string>>();
  r.bicentroidal = j.at("centroid").get<std::string>() == "bi";
  return r;
}

namespace census_detail {

inline std::string shard_name(int n, int worker, int workers) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "census_n%02d_w%dof%d.jsonl", n, worker, workers);
  return buf;
}

inline std::string shard_body(const std::vector<CensusRecord>& records) {
  std::string body;
  for (const CensusRecord& r : records) {
    body += record_to_json(r).dump();
    body += '\n';
  }
  return body;
}

// Parse and check one shard file. Returns the records only when the header
// matches the expected layout and the footer count and checksum hold.
inline std::optional<std::vector<CensusRecord>> read_shard(const std::filesystem::path& path,
                                                           int n, int worker, int workers) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  nlohmann::ordered_json header = nlohmann::ordered_json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object()) return std::nullopt;
  if (header.value("n", -1) != n || header.value("worker", -1) != worker ||
      header.value("workers", -1) != workers ||
      header.value("version", std::string()) != kCensusVersion)
    return std::nullopt;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.empty()) return std::nullopt;
  nlohmann::ordered_json footer = nlohmann::ordered_json::parse(lines.back(), nullptr, false);
  lines.pop_back();
  if (footer.is_discarded() || !footer.is_object() || !footer.contains("count")) return std::nullopt;
  if (footer.value("count", -1) != static_cast<int>(lines.size())) return std::nullopt;
  std::string body;
  for (const std::string& l : lines) {
    body += l;
    body += '\n';
  }
  if (footer.value("checksum", std::string()) != hex64(fnv1a(body))) return std::nullopt;
  std::vector<CensusRecord> records;
  for (const std::string& l : lines) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(l, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    records.push_back(record_from_json(j));
  }
  return records;
}

inline void write_shard(const std::filesystem::path& path, int n, int worker, int workers,
                        const std::vector<CensusRecord>& records) {
  nlohmann::ordered_json header;
  header["n"] = n;
  header["worker"] = worker;
  header["workers"] = workers;
  header["version"] = kCensusVersion;
  std::string body = shard_body(records);
  nlohmann::ordered_json footer;
  footer["count"] = records.size();
  footer["checksum"] = hex64(fnv1a(body));
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("census: cannot write " + tmp.string());
    out << header.dump() << '\n' << body << footer.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace census_detail

struct CensusSummary {
  // per order: number of ern=2 and ern=3 records
  std::map<int, std::pair<int, int>> per_order;
  int shards_reused = 0;
  int shards_computed = 0;
};

inline std::set<std::string> load_sporadics(const std::filesystem::path& file) {
  std::set<std::string> out;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.insert(line);
  return out;
}

// Run the census over [n_min, n_max], one shard per (order, worker). Shards
// that already read back clean are kept as they are; everything else is
// recomputed and atomically replaced. Unclassified discoveries are appended
// to sporadics.g6 next to the shards.
inline CensusSummary run_census(int n_min, int n_max, int workers,
                                const std::filesystem::path& out_dir,
                                const std::set<std::string>& sporadics = {}) {
  if (n_min < 4 || n_max > 15 || n_min > n_max)
    throw std::invalid_argument("run_census: order range must lie in [4, 15]");
  if (workers < 1 || workers > 64)
    throw std::invalid_argument("run_census: workers must lie in [1, 64]");
  std::filesystem::create_directories(out_dir);
  CensusSummary summary;
  std::set<std::string> discovered;
  for (int n = n_min; n <= n_max; ++n) {
    std::vector<std::vector<CensusRecord>> per_worker(static_cast<size_t>(workers));
    std::vector<int> todo;
    for (int w = 0; w < workers; ++w) {
      auto path = out_dir / census_detail::shard_name(n, w, workers);
      if (auto records = census_detail::read_shard(path, n, w, workers)) {
        per_worker[static_cast<size_t>(w)] = std::move(*records);
        ++summary.shards_reused;
      } else {
        todo.push_back(w);
      }
    }
    std::vector<std::thread> threads;
    for (int w : todo)
      threads.emplace_back([n, w, workers, &per_worker, &sporadics] {
        std::vector<CensusRecord> records;
        TreeStream stream(n);
        int idx = 0;
        while (auto t = stream.next()) {
          if (idx++ % workers != w) continue;
          if (t->edge_count() < 4) continue;  // no defined value below five vertices
          records.push_back(census_record(*t, sporadics));
        }
        std::sort(records.begin(), records.end(),
                  [](const CensusRecord& a, const CensusRecord& b) { return a.g6 < b.g6; });
        per_worker[static_cast<size_t>(w)] = std::move(records);
      });
    for (auto& th : threads) th.join();
    for (int w : todo) {
      auto path = out_dir / census_detail::shard_name(n, w, workers);
      census_detail::write_shard(path, n, w, workers, per_worker[static_cast<size_t>(w)]);
      ++summary.shards_computed;
    }
    auto& counts = summary.per_order[n];
    for (const auto& records : per_worker)
      for (const CensusRecord& r : records) {
        (r.value == 2 ? counts.first : counts.second)++;
        for (const std::string& tag : r.tags)
          if (tag == "unclassified") discovered.insert(r.g6);
      }
  }
  if (!discovered.empty()) {
    auto file = out_dir / "sporadics.g6";
    std::set<std::string> existing = load_sporadics(file);
    std::ofstream out(file, std::ios::app);
    for (const std::string& code : discovered)
      if (!existing.count(code)) out << code << '\n';
  }
  return summary;
}

// All records stored for one order, across however many workers wrote them.
// Fails when the shard group is incomplete or inconsistent.
inline std::vector<CensusRecord> load_order(const std::filesystem::path& out_dir, int n) {
  namespace fs = std::filesystem;
  char prefix[32];
  std::snprintf(prefix, sizeof prefix, "census_n%02d_w", n);
  int workers = -1;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || name.find(".jsonl") == std::string::npos) continue;
    size_t of = name.find("of");
    if (of == std::string::npos) continue;
    int k = std::atoi(name.c_str() + of + 2);
    if (workers == -1) workers = k;
    if (workers != k)
      throw std::runtime_error("census: mixed worker layouts for order " + std::to_string(n));
  }
  if (workers <= 0)
    throw std::runtime_error("census: no shards for order " + std::to_string(n));
  std::vector<CensusRecord> all;
  for (int w = 0; w < workers; ++w) {
    auto path = out_dir / census_detail::shard_name(n, w, workers);
    auto records = census_detail::read_shard(path, n, w, workers);
    if (!records)
      throw std::runtime_error("census: shard missing or corrupt: " + path.string());
    all.insert(all.end(), records->begin(), records->end());
  }
  std::sort(all.begin(), all.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.g6 < b.g6; });
  return all;
}

struct CensusReport {
  bool pass = false;
  nlohmann::ordered_json body;
};

// Diff stored ern=3 records against the built-in catalog (orders up to 11) or
// against the conjectured families (orders from 12 up).
inline CensusReport report_census(const std::filesystem::path& out_dir, int n_min, int n_max,
                                  const std::string& against) {
  if (against != "catalog" && against != "conjecture")
    throw std::invalid_argument("report: against must be catalog or conjecture");
  CensusReport rep;
  rep.pass = true;
  rep.body["against"] = against;
  auto orders = nlohmann::ordered_json::array();
  for (int n = n_min; n <= n_max; ++n) {
    if (against == "catalog" && (n < 4 || n > 11)) continue;
    if (against == "conjecture" && n < 12) continue;
    auto records = load_order(out_dir, n);
    std::set<std::string> found;
    for (const CensusRecord& r : records)
      if (r.value == 3) found.insert(r.g6);
    nlohmann::ordered_json entry;
    entry["n"] = n;
    entry["records"] = records.size();
    entry["ern3"] = found.size();
    if (against == "catalog") {
      std::set<std::string> expected;
      for (const Graph& t : known_ern3_catalog(n)) expected.insert(canonical_code(t).bytes);
      auto missing = nlohmann::ordered_json::array();
      auto extra = nlohmann::ordered_json::array();
      for (const std::string& code : expected)
        if (!found.count(code)) missing.push_back(code);
      for (const std::string& code : found)
        if (!expected.count(code)) extra.push_back(code);
      if (!missing.empty() || !extra.empty()) rep.pass = false;
      entry["missing"] = missing;
      entry["extra"] = extra;
    } else {
      auto family = nlohmann::ordered_json::array();
      auto unclassified = nlohmann::ordered_json::array();
      for (const CensusRecord& r : records) {
        if (r.value != 3) continue;
        bool tagged = false;
        for (const std::string& tag : r.tags)
          if (tag == "odd-path" || tag == "even-diam-cat" || tag == "tk" ||
              tag == "known-sporadic")
            tagged = true;
        (tagged ? family : unclassified).push_back(r.g6);
      }
      entry["family"] = family;
      entry["unclassified"] = unclassified;
      if (!unclassified.empty()) rep.pass = false;
    }
    orders.push_back(entry);
  }
  rep.body["orders"] = orders;
  rep.body["pass"] = rep.pass;
  return rep;
}

}  // namespace ern
