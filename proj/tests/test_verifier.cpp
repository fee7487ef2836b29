#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "ern/verifier.hpp"
#include "helpers.hpp"

using ern::CheckReport;
using ern::Graph;

namespace {

Graph fam(const std::string& text) { return ern::build(ern::parse_family_spec(text)); }

std::string code(const Graph& g) { return ern::canonical_code(g).bytes; }

}  // namespace

TEST_CASE("similar vertices survive every similarity probe") {
  CheckReport rep = ern::check_similarity(8);
  CHECK(rep.passed());
  CHECK(rep.suite == "similarity");
  CHECK(rep.instances > 0);
  // the graft sweep must actually hit coinciding composites to test anything
  CHECK(rep.details.at("graft_coincidences").get<long>() > 0);
}

TEST_CASE("pseudopaths are exactly the trees with no irreplaceable end-edge") {
  CheckReport rep = ern::check_pseudopath(10);
  CHECK(rep.passed());
  // paths plus the two exceptional spiders in range
  CHECK(rep.details.at("pseudopaths").get<int>() == 10);

  // one conjugate pair class per even order from six up, none elsewhere
  const auto& classes = rep.details.at("conjugate_classes");
  REQUIRE(classes.size() == 3);
  using pair_list = std::vector<std::vector<std::string>>;
  CHECK(classes.at("6") == pair_list{{"EkE?", "Eha?"}});
  CHECK(classes.at("8") == pair_list{{"Gh_GS?", "GhQ?K?"}});
  CHECK(classes.at("10") == pair_list{{"IhQ?GCC_?", "IhDC?CA_?"}});
}

TEST_CASE("the bicentroidal arguments hold below eleven vertices") {
  CheckReport rep = ern::check_bicentroidal(10);
  CHECK(rep.passed());
  // all three trees needing a third card show up, smallest order first
  CHECK(rep.details.at("exceptional_found") ==
        std::vector<std::string>{code(fam("cat:2,2")), code(fam("cat:2,1,1,2")),
                                 code(fam("bij:2,2,2,2"))});
  CHECK(rep.details.at("main_pairs_deg3").get<long>() > 0);
  CHECK(rep.details.at("attached_path_pairs").get<long>() == 6);
}

TEST_CASE("every stored blocker certificate validates") {
  CheckReport rep = ern::check_family_blockers(9);
  CHECK(rep.passed());
  // full card-pair sweeps over the three families in range
  CHECK(rep.details.at("validated").get<long>() == 93);
  CHECK(rep.details.at("search_cross_checks").get<long>() == 93);
  CHECK(rep.details.at("odd_diameter_pairs").get<long>() == 1);
}

TEST_CASE("the two-card tree verdict never fires on a cyclic graph") {
  CheckReport rep = ern::check_molina(6);
  CHECK(rep.passed());
  const auto& counts = rep.details.at("connected_graphs");
  CHECK(counts.at("2").get<int>() == 1);
  CHECK(counts.at("3").get<int>() == 2);
  CHECK(counts.at("4").get<int>() == 6);
  CHECK(counts.at("5").get<int>() == 21);
  CHECK(counts.at("6").get<int>() == 112);
  CHECK(rep.details.at("forced_verdicts").get<long>() > 0);
}

TEST_CASE("check ranges are validated") {
  CHECK_THROWS_AS(ern::check_similarity(3), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_similarity(13), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_pseudopath(2), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_pseudopath(14), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_bicentroidal(5), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_bicentroidal(14), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_family_blockers(4), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_family_blockers(18), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_molina(1), std::invalid_argument);
  CHECK_THROWS_AS(ern::check_molina(8), std::invalid_argument);
}

TEST_CASE("check reports serialize with a stable shape") {
  auto j = ern::report_to_json(ern::check_family_blockers(7));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"suite", "max_n", "instances", "pass", "failures",
                                         "details"});
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("failures").empty());
}
