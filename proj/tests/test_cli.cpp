#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "stallings/io.hpp"

using namespace stallings;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + STALLINGS_BIN + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, got);
  int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("stallings_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fold emits the Stallings graph") {
  Run r = run("fold --rank 2 --words aa,b");
  REQUIRE(r.status == 0);
  io::GraphDocument doc = io::graph_from_json(Json::parse(r.out));
  CHECK(doc.graph.num_vertices() == 2);
  CHECK(doc.graph.num_edges() == 3);
  REQUIRE(doc.basepoint);
}

TEST_CASE("exit codes and error documents") {
  Run inside = run("sep-member --rank 2 --subgroup a --elements a");
  CHECK(inside.status == 3);
  CHECK(Json::parse(inside.out)["error"] == "NotSeparable");

  Run budget = run("sep-member --rank 2 --subgroup aa,b --elements a --trials 0");
  CHECK(budget.status == 2);
  CHECK(Json::parse(budget.out)["error"] == "BudgetExhausted");

  Run guard = run("sep-conj --rank 2 --subgroups 'ab;a' --primes 7,11");
  CHECK(guard.status == 4);
  CHECK(Json::parse(guard.out)["error"] == "PrimeTooLarge");

  Run parse = run("dixon --rank 2");
  CHECK(parse.status == 3);
  CHECK(Json::parse(parse.out)["exit_code"] == 3);

  Run letter = run("fold --rank 1 --words ab");
  CHECK(letter.status == 3);
  CHECK(Json::parse(letter.out)["error"] == "InvalidGenerator");
}

TEST_CASE("dixon replays identically up to wall time") {
  const std::string args = "dixon --rank 2 --condition commutator --n 30 --trials 100 --seed 5";
  Run a = run(args + " --threads 1"), b = run(args + " --threads 3");
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  ja.erase("wall_time_seconds");
  jb.erase("wall_time_seconds");
  ja.erase("command");
  jb.erase("command");
  CHECK(ja.dump() == jb.dump());

  Run env = run("dixon --rank 2 --condition commutator --n 30 --trials 100", "STALLINGS_SEED=5");
  Json je = Json::parse(env.out);
  je.erase("wall_time_seconds");
  je.erase("command");
  CHECK(je.dump() == ja.dump());
}

TEST_CASE("complete on a cover returns that cover") {
  fs::path dir = scratch();
  fs::path cover = dir / "cover.json";
  {
    std::ofstream f(cover);
    f << R"({"rank":1,"vertices":[1,2,3,4],"edges":[{"label":1,"from":1,"to":2},{"label":1,"from":2,"to":1},{"label":1,"from":3,"to":4},{"label":1,"from":4,"to":3}],"basepoint":null})";
  }
  Run r = run("complete --graph " + cover.string() + " --n 4 --seed 1");
  REQUIRE(r.status == 0);
  Json j = Json::parse(r.out);
  io::GraphDocument in = io::graph_from_json(io::read_json_file(cover.string()));
  io::GraphDocument out = io::graph_from_json(j["cover"]);
  std::vector<Edge> ein(in.graph.edges().begin(), in.graph.edges().end());
  std::vector<Edge> eout(out.graph.edges().begin(), out.graph.edges().end());
  std::sort(ein.begin(), ein.end());
  std::sort(eout.begin(), eout.end());
  CHECK(ein == eout);
  CHECK(j["classification"]["verdict"] == "Intransitive");
  fs::remove_all(dir);
}

TEST_CASE("lifts: CSV and JSON agree") {
  fs::path dir = scratch();
  Run r = run("lifts --condition empty --target a2loop --n 20,40 --trials 200 --seed 3 --out " +
              (dir / "l.json").string() + " --csv " + (dir / "l.csv").string());
  REQUIRE(r.status == 0);
  Json j = io::read_json_file((dir / "l.json").string());
  std::stringstream csv(slurp(dir / "l.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,trials,mean,variance,std_error,seed");
  for (const Json& row : j["runs"]) {
    REQUIRE(std::getline(csv, line));
    std::stringstream ls(line);
    std::vector<std::string> f;
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 6);
    CHECK(std::stoull(f[0]) == row["n"].get<std::size_t>());
    CHECK(std::strtod(f[2].c_str(), nullptr) == row["mean"].get<double>());
    CHECK(std::strtod(f[3].c_str(), nullptr) == row["variance"].get<double>());
    CHECK(std::strtod(f[4].c_str(), nullptr) == row["std_error"].get<double>());
  }
  CHECK(j["prediction"]["mean_leading"]["coefficient"] == 2);
  CHECK(j["prediction"]["variance_leading"]["coefficient"] == 3);
  fs::remove_all(dir);
}

TEST_CASE("quotients table marks the critical graphs") {
  Run r = run("quotients --g empty --h loop:aaa");
  REQUIRE(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["count"] == 2);
  int critical = 0;
  for (const Json& q : j["quotients"]) critical += q["critical"].get<bool>();
  CHECK(critical == 2);
}

TEST_CASE("certificates written by sep-conj re-verify through verify") {
  fs::path dir = scratch();
  fs::path cert = dir / "cert.json";
  Run r = run("sep-conj --rank 2 --subgroups 'ab;a' --seed 1 --out " + cert.string());
  REQUIRE(r.status == 0);
  Json j = io::read_json_file(cert.string());
  CHECK(j["verified"] == true);
  CHECK(j["pairs"].size() == 2);
  CHECK(run("verify --certificate " + cert.string()).status == 0);

  j["pairs"][0]["fix_i"] = j["pairs"][0]["fix_j"];
  std::ofstream(cert) << j.dump();
  Run bad = run("verify --certificate " + cert.string());
  CHECK(bad.status == 1);
  CHECK(Json::parse(bad.out)["verified"] == false);
  fs::remove_all(dir);
}
