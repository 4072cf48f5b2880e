#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "stallings/completion.hpp"
#include "stallings/experiment.hpp"
#include "stallings/io.hpp"
#include "support.hpp"

using namespace stallings;
using namespace stallings::testing;
using io::Json;

TEST_CASE("graph documents round-trip exactly") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    int rank = 1 + static_cast<int>(rng.below(3));
    LabeledGraph g = random_graph(rng, rank, 1 + rng.below(8), rng.below(12));
    std::optional<VertexId> base;
    if (rng.below(2)) base = g.vertices()[rng.below(g.num_vertices())];
    Json j = io::to_json(g, base);
    io::GraphDocument back = io::graph_from_json(Json::parse(j.dump()));
    CHECK(back.graph == g);
    CHECK(back.basepoint == base);
    CHECK(io::to_json(back.graph, back.basepoint).dump() == j.dump());
  }
}

TEST_CASE("graph document format") {
  LabeledGraph g = cycle_graph(parse_word("ab", 2));
  Json j = io::to_json(BasedGraph{g, 0});
  CHECK(j.dump() ==
        R"({"rank":2,"vertices":[0,1],"edges":[{"label":1,"from":0,"to":1},{"label":2,"from":1,"to":0}],"basepoint":0})");
  CHECK(io::to_json(g)["basepoint"].is_null());
}

TEST_CASE("malformed graph documents are rejected") {
  const char* bad[] = {
      R"({"vertices":[0],"edges":[]})",
      R"({"rank":2,"vertices":[0],"edges":[{"label":3,"from":0,"to":0}]})",
      R"({"rank":1,"vertices":[0],"edges":[{"label":1,"from":0,"to":5}]})",
      R"({"rank":1,"vertices":[0,0],"edges":[]})",
      R"({"rank":1,"vertices":[0],"edges":[],"basepoint":4})",
      R"({"rank":0,"vertices":[],"edges":[]})",
  };
  for (const char* text : bad) {
    CHECK_THROWS_AS(io::graph_from_json(Json::parse(text)), Error);
  }
}

TEST_CASE("tuples round-trip with 1-based points") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    PermTuple t = random_tuple(rng, 1 + rng.below(9), 1 + static_cast<int>(rng.below(3)));
    CHECK(io::tuple_from_json(Json::parse(io::to_json(t).dump())) == t);
  }
  PermTuple t({Permutation::from_cycles("(1 2 3)", 3)});
  CHECK(io::to_json(t)["images"].dump() == "[[2,3,1]]");
  CHECK(io::to_json(t)["cycles"][0] == "(1 2 3)");
  CHECK_THROWS_AS(io::tuple_from_json(Json::parse(R"({"degree":2,"images":[[1,1]]})")), Error);
  CHECK_THROWS_AS(io::tuple_from_json(Json::parse(R"({"degree":2,"images":[[1,3]]})")), Error);
}

TEST_CASE("certificates survive serialization and still verify") {
  SearchOptions opt;
  opt.seed = 4;
  std::vector<Word> elements{parse_word("a", 2)};
  SubgroupSpec h = SubgroupSpec::from_words({parse_word("aa", 2), parse_word("b", 2)}, 2);
  SeparationCertificate c = separate_membership(h, elements, opt);
  Json j = io::to_json(c);
  SeparationCertificate back = io::certificate_from_json(Json::parse(j.dump()));
  CHECK(verify_certificate(back));
  CHECK(io::to_json(back).dump() == j.dump());

  std::vector<SubgroupSpec> hs{SubgroupSpec::from_words({parse_word("ab", 2)}, 2),
                               SubgroupSpec::from_words({parse_word("a", 2)}, 2)};
  SeparationCertificate cc = separate_conjugacy(hs, {}, opt);
  Json jc = io::to_json(cc);
  SeparationCertificate backc = io::certificate_from_json(Json::parse(jc.dump()));
  CHECK(verify_certificate(backc));
  CHECK(io::to_json(backc).dump() == jc.dump());

  // A forged count no longer verifies after the round trip.
  jc["pairs"][0]["fix_j"] = jc["pairs"][0]["fix_j"].get<std::size_t>() + 1;
  CHECK_FALSE(verify_certificate(io::certificate_from_json(jc)));
}

TEST_CASE("error documents") {
  Json j = io::error_json(Error(ErrorCode::BudgetExhausted, "out of trials"));
  CHECK(j.dump() == R"({"error":"BudgetExhausted","message":"out of trials","exit_code":2})");
  CHECK(io::error_json(Error(ErrorCode::PullbackTooLarge, ""))["exit_code"] == 4);
  CHECK(io::error_json(Error(ErrorCode::InvalidGenerator, ""))["exit_code"] == 3);
}

TEST_CASE("graph sources") {
  CHECK(io::graph_from_source("empty", 3).graph.rank() == 3);
  CHECK(io::graph_from_source("empty").graph.empty());
  io::GraphDocument a2 = io::graph_from_source("a2loop");
  CHECK(a2.graph.num_vertices() == 2);
  CHECK(a2.graph.rank() == 1);
  CHECK(io::graph_from_source("a2loop", 2).graph.rank() == 2);
  io::GraphDocument loop = io::graph_from_source("loop:aBAb");
  CHECK(loop.graph.rank() == 2);
  CHECK(loop.graph.num_edges() == 4);
  CHECK(io::graph_from_source("loop:aBBa").graph.num_edges() == 4);
  CHECK(io::graph_from_source("loop:baaB").graph.num_edges() == 2);  // cyclically reduces to aa
  CHECK(isomorphic(io::graph_from_source("commutator").graph,
                   core(stallings_graph(std::vector<Word>{parse_word("abAB", 2)}, 2).graph)));
  CHECK_THROWS_AS(io::graph_from_source("loop:aA"), Error);
  CHECK_THROWS_AS(io::graph_from_source("/nonexistent/graph.json"), Error);
}

TEST_CASE("Wilson intervals match an independent implementation") {
  struct Case {
    std::uint64_t k, n;
    double lo, hi;
  } cases[] = {{5, 100, 0.021543679154368, 0.111750469231919},
               {0, 50, 0.0, 0.071347599133359},
               {524, 2000, 0.243197992409116, 0.281714522096760},
               {50, 50, 0.928652400866641, 1.0}};
  for (const Case& c : cases) {
    Interval ci = wilson_interval(c.k, c.n);
    CHECK(ci.lo == doctest::Approx(c.lo).epsilon(1e-12));
    CHECK(ci.hi == doctest::Approx(c.hi).epsilon(1e-12));
  }
}

TEST_CASE("Dixon reports replay and ignore the thread count") {
  LabeledGraph cond = cycle_graph(parse_word("abAB", 2));
  DixonReport one = run_dixon(cond, 40, 200, 99, 1);
  DixonReport four = run_dixon(cond, 40, 200, 99, 4);
  CHECK(one.counts == four.counts);
  std::uint64_t total = 0;
  for (auto c : one.counts) total += c;
  CHECK(total == 200);

  Json a = to_json(one, "dixon"), b = to_json(four, "dixon");
  a.erase("wall_time_seconds");
  b.erase("wall_time_seconds");
  CHECK(a.dump() == b.dump());
  for (auto& [name, f] : a["frequencies"].items()) {
    double p = f["frequency"].get<double>();
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(f["wilson95"][0].get<double>() <= p);
    CHECK(f["wilson95"][1].get<double>() >= p);
  }
}

TEST_CASE("CSV rows and JSON carry the same lift statistics") {
  LiftStats s = monte_carlo_lift_stats(LabeledGraph(1), {cycle_graph(parse_word("aa", 1)), std::nullopt},
                                       50, 300, 12, 2);
  Json j = Json::parse(io::to_json(s).dump());
  std::stringstream row(csv_row(s));
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(row, field, ',')) fields.push_back(field);
  REQUIRE(fields.size() == 6);
  CHECK(csv_header() == "n,trials,mean,variance,std_error,seed");
  CHECK(std::stoull(fields[0]) == j["n"].get<std::size_t>());
  CHECK(std::stoull(fields[1]) == j["trials"].get<std::uint64_t>());
  CHECK(std::strtod(fields[2].c_str(), nullptr) == j["mean"].get<double>());
  CHECK(std::strtod(fields[3].c_str(), nullptr) == j["variance"].get<double>());
  CHECK(std::strtod(fields[4].c_str(), nullptr) == j["std_error"].get<double>());
  CHECK(std::stoull(fields[5]) == j["seed"].get<std::uint64_t>());
}
