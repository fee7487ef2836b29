// Acceptance gate: one line per criterion, PASS/FAIL/SKIP, exit 0 iff no
// criterion failed.  Criteria 1 and 6 drive the command line tool when its
// path is given as argv[1]; otherwise they call the library directly.
// Criterion 6 reruns the extended census (minutes to hours when cold) and
// only runs when ERN_ACCEPT_EXTENDED=1; its output directory is kept
// between runs so resume makes warm reruns cheap.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ern/census.hpp"
#include "ern/verifier.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_tool;   // command line binary, empty = use the library
fs::path g_out;       // scratch directory for census output
int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
             .count() /
         1000.0;
}

void emit(int id, const std::string& status, const std::string& detail, double secs) {
  std::printf("criterion %d: %s (%.1fs) %s\n", id, status.c_str(), secs, detail.c_str());
  std::fflush(stdout);
  if (status == "FAIL") ++g_failures;
}

// Runs one criterion body; the body returns a detail string on success and
// throws std::runtime_error with the reproducer on failure.
template <typename Body>
void criterion(int id, Body body) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string detail = body();
    emit(id, "PASS", detail, seconds_since(t0));
  } catch (const std::exception& e) {
    emit(id, "FAIL", e.what(), seconds_since(t0));
  }
}

[[noreturn]] void fail(const std::string& why) { throw std::runtime_error(why); }

int run_tool(const std::string& args, const fs::path& stdout_file) {
  std::string cmd = g_tool + " " + args + " > " + stdout_file.string();
  int rc = std::system(cmd.c_str());
  return rc;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = g_out / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string code_of(const std::string& family_text) {
  return ern::canonical_code(ern::build(ern::parse_family_spec(family_text))).bytes;
}

std::string join(const std::set<std::string>& codes) {
  std::string out;
  for (const std::string& c : codes) out += (out.empty() ? "" : " ") + c;
  return out;
}

// --- criterion 1: census 4..11 reproduces the built-in ern=3 list exactly ---

std::string census_reproduction() {
  fs::path dir = fresh_dir("core_census");
  if (!g_tool.empty()) {
    if (run_tool("census --from 4 --to 11 --workers 1 --out " + dir.string(),
                 dir / "census_stdout.json") != 0)
      fail("census command exited nonzero");
    if (run_tool("report --against catalog --from 4 --to 11 --out " + dir.string(),
                 dir / "report_stdout.json") != 0)
      fail("report command exited nonzero: stored ern=3 set differs from the known list");
  } else {
    ern::run_census(4, 11, 1, dir);
  }
  ern::CensusReport rep = ern::report_census(dir, 4, 11, "catalog");
  if (!rep.pass) fail("ern=3 records differ from the known list: " + rep.body.dump());
  int ern3 = 0;
  long records = 0;
  for (const auto& entry : rep.body["orders"]) {
    ern3 += entry["ern3"].get<int>();
    records += entry["records"].get<long>();
  }
  if (ern3 != 17) fail("expected 17 ern=3 trees over orders 4..11, found " + std::to_string(ern3));
  std::ostringstream os;
  os << "orders 4..11, " << records << " trees, ern=3 set matches the known 17 exactly"
     << (g_tool.empty() ? "" : " (via command line tool)");
  return os.str();
}

// --- criterion 2: path parity ---

std::string path_parity() {
  for (int n = 5; n <= 14; ++n) {
    int want = n % 2 == 0 ? 2 : 3;
    int got = ern::ern(ern::build(ern::parse_family_spec("path:" + std::to_string(n)))).value;
    if (got != want)
      fail("path on " + std::to_string(n) + " vertices: expected ern=" + std::to_string(want) +
           ", got " + std::to_string(got));
  }
  return "paths on 5..14 vertices: ern=2 at even, ern=3 at odd order";
}

// --- criterion 3: bicentroidal trees with ern=3 up to order 13 ---

std::string bicentroidal_exceptions() {
  std::set<std::string> expected = {code_of("cat:2,2"), code_of("cat:2,1,1,2"),
                                    code_of("bij:2,2,2,2")};
  std::set<std::string> found;
  long scanned = 0;
  for (int n = 6; n <= 13; ++n)
    for (const ern::Graph& t : ern::all_trees(n)) {
      if (!ern::centroid(t).bicentroidal()) continue;
      ++scanned;
      if (ern::ern(t).value == 3) found.insert(ern::canonical_code(t).bytes);
    }
  if (found != expected)
    fail("bicentroidal ern=3 set mismatch: expected {" + join(expected) + "}, found {" +
         join(found) + "}");
  std::ostringstream os;
  os << scanned << " bicentroidal trees on 6..13 vertices, ern=3 exactly at the 3 known trees";
  return os.str();
}

// --- criterion 4: blocker certificates self-validate ---

std::string blocker_certificates() {
  long validated = 0;
  auto sweep_all_pairs = [&](const std::string& text) {
    ern::FamilySpec spec = ern::parse_family_spec(text);
    ern::Graph g = ern::build(spec);
    const auto& es = g.edges();
    for (size_t i = 0; i < es.size(); ++i)
      for (size_t j = i + 1; j < es.size(); ++j) {
        if (!ern::blocker_for(spec, es[i], es[j]).validate())
          fail(text + ": certificate for edges (" + std::to_string(es[i].u) + "," +
               std::to_string(es[i].v) + "),(" + std::to_string(es[j].u) + "," +
               std::to_string(es[j].v) + ") failed to validate");
        ++validated;
      }
  };
  for (int s = 2; s <= 8; ++s) sweep_all_pairs("path:" + std::to_string(2 * s + 1));
  for (int d = 4; d <= 12; d += 2) {
    std::string text = "cat:2";
    for (int i = 0; i < d - 3; ++i) text += ",0";
    text += ",2";
    sweep_all_pairs(text);
  }
  for (int k = 2; k <= 5; ++k) {
    ern::FamilySpec spec = ern::parse_family_spec("tk:" + std::to_string(k));
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        if (!ern::blocker_for(spec, ern::Edge(0, i), ern::Edge(0, j)).validate())
          fail("tk:" + std::to_string(k) + ": center-edge certificate (0," + std::to_string(i) +
               "),(0," + std::to_string(j) + ") failed to validate");
        ++validated;
      }
  }
  std::ostringstream os;
  os << validated << " certificates (odd paths s<=8, even-diameter caterpillars d<=12, "
     << "tk k<=5), every one carries both cards and differs from its target";
  return os.str();
}

// --- criterion 5: extension search agrees with the whole-universe oracle ---

std::string oracle_equivalence() {
  long compared = 0, skipped = 0;
  for (int n = 4; n <= 9; ++n)
    for (const ern::Graph& t : ern::all_trees(n)) {
      if (t.edge_count() < 4) {  // value undefined below five vertices
        ++skipped;
        continue;
      }
      bool exhaustive = n <= 8;  // per-pair blocker sets only at n <= 8
      ern::ErnResult a = ern::ern(t, exhaustive);
      ern::ErnResult b = ern::ern_oracle(t, exhaustive);
      std::string g6 = ern::canonical_code(t).bytes;
      if (a.value != b.value)
        fail(g6 + ": search says ern=" + std::to_string(a.value) + ", oracle says " +
             std::to_string(b.value));
      if (a.witness != b.witness) fail(g6 + ": first determining pair differs");
      if (a.bound_from_theory != b.bound_from_theory)
        fail(g6 + ": bound provenance differs");
      if (exhaustive) {
        if (a.determining_pairs != b.determining_pairs)
          fail(g6 + ": determining pair lists differ");
        if (a.blockers != b.blockers) fail(g6 + ": per-pair blocker sets differ");
      }
      ++compared;
    }
  std::ostringstream os;
  os << compared << " trees on 4..9 vertices agree with the universe oracle "
     << "(full per-pair blocker sets at n<=8; " << skipped
     << " trees below five vertices have no defined value)";
  return os.str();
}

// --- criterion 6: extended census 12..15 matches the conjectured families ---

std::string extended_census() {
  fs::path dir = g_out / "extended_census";  // kept across runs: resume
  fs::create_directories(dir);
  if (!g_tool.empty()) {
    if (run_tool("census --from 12 --to 15 --workers 1 --extended --out " + dir.string(),
                 dir / "census_stdout.json") != 0)
      fail("extended census command exited nonzero");
  } else {
    ern::run_census(12, 15, 1, dir);
  }
  auto ern3_of = [&](int n) {
    std::set<std::string> out;
    for (const ern::CensusRecord& r : ern::load_order(dir, n))
      if (r.value == 3) out.insert(r.g6);
    return out;
  };
  for (int n : {12, 14}) {
    auto found = ern3_of(n);
    if (!found.empty())
      fail("order " + std::to_string(n) + ": expected zero ern=3 trees, found {" + join(found) +
           "}");
  }
  std::set<std::string> expect13 = {code_of("path:13"), code_of("cat:2,0,0,0,0,0,0,0,2"),
                                    code_of("tk:4")};
  auto found13 = ern3_of(13);
  if (found13 != expect13)
    fail("order 13: expected {" + join(expect13) + "}, found {" + join(found13) + "}");
  std::set<std::string> known15 = {code_of("path:15"), code_of("cat:2,0,0,0,0,0,0,0,0,0,2")};
  auto found15 = ern3_of(15);
  std::set<std::string> extra15;
  for (const std::string& g6 : found15)
    if (!known15.count(g6)) extra15.insert(g6);
  for (const std::string& g6 : known15)
    if (!found15.count(g6)) fail("order 15: family tree missing from ern=3 records: " + g6);
  if (extra15.size() != 1)
    fail("order 15: expected exactly one tree outside the families, found {" + join(extra15) +
         "}");
  for (const ern::CensusRecord& r : ern::load_order(dir, 15))
    if (extra15.count(r.g6) &&
        std::find(r.tags.begin(), r.tags.end(), "unclassified") == r.tags.end())
      fail("order 15: extra tree " + r.g6 + " is not tagged unclassified");
  return "orders 12/14 clean, order 13 = {path, caterpillar, tk} exactly, order 15 = "
         "{path, caterpillar} plus exactly one unclassified tree (" +
         join(extra15) + ")";
}

// --- criterion 7: structural suites report zero failures ---

std::string structural_suites() {
  ern::CheckReport sim = ern::check_similarity(10);
  ern::CheckReport pseudo = ern::check_pseudopath(12);
  ern::CheckReport molina = ern::check_molina(7);
  for (const ern::CheckReport* rep : {&sim, &pseudo, &molina})
    if (!rep->passed())
      fail(rep->suite + " suite reported " + std::to_string(rep->failures.size()) +
           " failures, first: " + rep->failures.front());
  const auto& classes = pseudo.details["conjugate_classes"];
  std::set<std::string> orders;
  for (auto it = classes.begin(); it != classes.end(); ++it) {
    if (it.value().size() != 1)
      fail("order " + it.key() + ": expected one conjugate pair class, found " +
           std::to_string(it.value().size()));
    orders.insert(it.key());
  }
  if (orders != std::set<std::string>{"6", "8", "10", "12"})
    fail("conjugate pair classes found at orders {" + join(orders) +
         "}, expected exactly the even orders 6..12");
  std::ostringstream os;
  os << "similarity (n<=10), pseudopath (n<=12), molina (n<=7) all clean; "
     << "one conjugate pair class at each even order 6..12 and none elsewhere";
  return os.str();
}

// --- criterion 8: worker-count independence and byte-identical resume ---

std::string census_determinism() {
  fs::path w1 = fresh_dir("det_w1"), w8 = fresh_dir("det_w8");
  ern::run_census(4, 9, 1, w1);
  ern::run_census(4, 9, 8, w8);
  for (int n = 4; n <= 9; ++n) {
    auto a = ern::load_order(w1, n), b = ern::load_order(w8, n);
    std::string ja, jb;
    for (const auto& r : a) ja += ern::record_to_json(r).dump() + "\n";
    for (const auto& r : b) jb += ern::record_to_json(r).dump() + "\n";
    if (ja != jb) fail("order " + std::to_string(n) + ": 1-worker and 8-worker records differ");
  }

  fs::path control = fresh_dir("resume_control"), resumed = fresh_dir("resume_run");
  ern::run_census(4, 9, 2, control);
  for (const auto& entry : fs::directory_iterator(control))
    fs::copy_file(entry.path(), resumed / entry.path().filename());
  // simulate a kill: later shards never written, one mid-write temp left over
  int dropped = 0;
  for (int n = 7; n <= 9; ++n)
    for (int w = 0; w < 2; ++w) {
      fs::path shard = resumed / ern::census_detail::shard_name(n, w, 2);
      if (fs::remove(shard)) ++dropped;
    }
  std::ofstream(resumed / (ern::census_detail::shard_name(7, 0, 2) + ".tmp")) << "partial";
  ern::CensusSummary after = ern::run_census(4, 9, 2, resumed);
  if (after.shards_computed != dropped)
    fail("resume recomputed " + std::to_string(after.shards_computed) + " shards, expected " +
         std::to_string(dropped));
  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(control))
    names.insert(entry.path().filename().string());
  for (const auto& name : names) {
    std::ifstream fa(control / name, std::ios::binary), fb(resumed / name, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str()) fail("shard " + name + " differs after kill and resume");
    if (sa.str().empty()) fail("shard " + name + " read back empty");
  }
  std::ostringstream os;
  os << "identical records for 1 and 8 workers (orders 4..9); " << dropped
     << " shards dropped by a simulated kill were rebuilt byte-identically";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  g_tool = argc > 1 ? argv[1] : "";
  if (const char* env = std::getenv("ERN_ACCEPT_OUT"))
    g_out = env;
  else
    g_out = fs::temp_directory_path() / "ern_acceptance";
  fs::create_directories(g_out);

  criterion(1, census_reproduction);
  criterion(2, path_parity);
  criterion(3, bicentroidal_exceptions);
  criterion(4, blocker_certificates);
  criterion(5, oracle_equivalence);

  const char* extended = std::getenv("ERN_ACCEPT_EXTENDED");
  if (extended && std::string(extended) == "1") {
    criterion(6, extended_census);
  } else {
    emit(6, "SKIP", "set ERN_ACCEPT_EXTENDED=1 to rerun the extended census over orders "
                    "12..15 (minutes to hours when cold, resumes from " +
                        (g_out / "extended_census").string() + ")",
         0.0);
  }

  criterion(7, structural_suites);
  criterion(8, census_determinism);

  std::printf("acceptance: %s (%d criteria failed)\n", g_failures == 0 ? "PASS" : "FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
