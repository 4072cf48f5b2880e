#include "stallings/io.hpp"

#include <algorithm>
#include <fstream>

namespace stallings::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("field \"") + name + "\": " + e.what());
  }
}

Json words_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const Word& w : ws) out.push_back(w.str());
  return out;
}

std::vector<Word> words_from(const Json& j, int rank) {
  std::vector<Word> out;
  for (const auto& s : j) out.push_back(parse_word(s.get<std::string>(), rank));
  return out;
}

}  // namespace

Json to_json(const LabeledGraph& g, std::optional<VertexId> basepoint) {
  Json j;
  j["rank"] = g.rank();
  j["vertices"] = Json(std::vector<VertexId>(g.vertices().begin(), g.vertices().end()));
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    Json je;
    je["label"] = e.label;
    je["from"] = e.from;
    je["to"] = e.to;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  j["basepoint"] = basepoint ? Json(*basepoint) : Json(nullptr);
  return j;
}

Json to_json(const BasedGraph& g) { return to_json(g.graph, g.basepoint); }

GraphDocument graph_from_json(const Json& j) {
  int rank = get<int>(j, "rank");
  if (rank < 1 || rank > kMaxRank) bad("rank out of range");
  GraphDocument doc{LabeledGraph(rank), std::nullopt};
  for (VertexId v : get<std::vector<VertexId>>(j, "vertices")) {
    if (doc.graph.contains(v)) bad("duplicate vertex " + std::to_string(v));
    doc.graph.add_vertex(v);
  }
  for (const Json& e : field(j, "edges")) {
    int label = get<int>(e, "label");
    VertexId from = get<VertexId>(e, "from"), to = get<VertexId>(e, "to");
    if (label < 1 || label > rank) bad("edge label out of range");
    if (!doc.graph.contains(from) || !doc.graph.contains(to)) bad("edge endpoint is not a vertex");
    doc.graph.add_edge(label, from, to);
  }
  if (j.contains("basepoint") && !j.at("basepoint").is_null()) {
    auto b = j.at("basepoint").get<VertexId>();
    if (!doc.graph.contains(b)) bad("basepoint is not a vertex");
    doc.basepoint = b;
  }
  return doc;
}

Json to_json(const PermTuple& t) {
  Json j;
  j["degree"] = t.degree();
  j["rank"] = t.perms().size();
  Json images = Json::array(), cycles = Json::array();
  for (const Permutation& p : t.perms()) {
    std::vector<std::size_t> row;
    for (Point x = 0; x < t.degree(); ++x) row.push_back(static_cast<std::size_t>(p(x)) + 1);
    images.push_back(row);
    cycles.push_back(p.cycles_str());
  }
  j["images"] = std::move(images);
  j["cycles"] = std::move(cycles);
  return j;
}

PermTuple tuple_from_json(const Json& j) {
  auto n = get<std::size_t>(j, "degree");
  std::vector<Permutation> perms;
  for (const Json& row : field(j, "images")) {
    auto one_based = row.get<std::vector<std::size_t>>();
    if (one_based.size() != n) bad("permutation of wrong degree");
    std::vector<Point> images;
    for (std::size_t y : one_based) {
      if (y < 1 || y > n) bad("point out of range");
      images.push_back(static_cast<Point>(y - 1));
    }
    std::vector<Point> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) bad("not a permutation");
    perms.emplace_back(std::move(images));
  }
  if (perms.empty()) bad("tuple without permutations");
  return PermTuple(std::move(perms));
}

Json to_json(const Classification& c) {
  Json j;
  j["verdict"] = std::string(to_string(c.verdict));
  Json parts = Json::array();
  for (const auto& part : c.partition) {
    std::vector<std::size_t> one_based;
    for (Point x : part) one_based.push_back(static_cast<std::size_t>(x) + 1);
    parts.push_back(one_based);
  }
  j["partition"] = std::move(parts);
  if (c.witness) {
    Json w;
    w["word"] = c.witness->word.str();
    w["q"] = c.witness->q;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["evaluations"] = c.evaluations;
  j["closure_order"] = c.closure_order;
  return j;
}

Classification classification_from_json(const Json& j, int rank) {
  Classification c;
  c.verdict = verdict_from_string(get<std::string>(j, "verdict"));
  for (const Json& part : field(j, "partition")) {
    std::vector<Point> points;
    for (std::size_t x : part.get<std::vector<std::size_t>>()) {
      if (x < 1) bad("point out of range");
      points.push_back(static_cast<Point>(x - 1));
    }
    c.partition.push_back(std::move(points));
  }
  if (j.contains("witness") && !j.at("witness").is_null())
    c.witness = TnWitness{parse_word(get<std::string>(j.at("witness"), "word"), rank),
                          get<std::size_t>(j.at("witness"), "q")};
  c.evaluations = j.value("evaluations", std::size_t{0});
  c.closure_order = j.value("closure_order", std::size_t{0});
  return c;
}

Json to_json(const LiftStats& s) {
  Json j;
  j["n"] = s.n;
  j["trials"] = s.trials;
  j["mean"] = s.mean;
  j["variance"] = s.variance;
  j["std_error"] = s.std_error;
  j["seed"] = s.seed;
  return j;
}

Json to_json(const QuotientDescriptor& q, bool critical) {
  Json j;
  j["quotient"] = to_json(q.quotient);
  j["vertex_map"] = q.vertex_map;
  j["chi_rel"] = q.chi_rel;
  j["g_injective"] = q.g_injective;
  j["critical"] = critical;
  return j;
}

Json to_json(const LeadingTerm& t) {
  Json j;
  j["coefficient"] = t.coefficient;
  j["exponent"] = t.exponent;
  return j;
}

Json to_json(const SeparationCertificate& c) {
  Json j;
  j["kind"] = c.kind == SeparationKind::Membership ? "membership" : "conjugacy_into";
  j["rank"] = c.rank;
  j["n"] = c.n;
  j["alternating"] = c.alternating;
  j["seed"] = c.seed;
  j["trials_used"] = c.trials_used;
  if (c.kind == SeparationKind::Membership) {
    j["basepoint"] = static_cast<std::size_t>(c.basepoint) + 1;
    j["subgroup_generators"] = words_json(c.subgroup_generators);
    j["elements"] = words_json(c.elements);
  } else {
    j["order"] = c.order;
    Json subgroups = Json::array();
    for (const auto& gens : c.subgroups) subgroups.push_back(words_json(gens));
    j["subgroups"] = std::move(subgroups);
    j["primes"] = c.primes;
    j["multiplicities"] = c.multiplicities;
    Json characteristic = Json::array();
    for (const auto& row : c.characteristic) {
      Json r = Json::array();
      for (const auto& gens : row) r.push_back(words_json(gens));
      characteristic.push_back(std::move(r));
    }
    j["characteristic"] = std::move(characteristic);
    Json pairs = Json::array();
    for (const PairEvidence& e : c.pairs) {
      Json p;
      p["i"] = e.i;
      p["j"] = e.j;
      p["via"] = e.via_subgroups ? "subgroups" : "characteristic";
      p["m"] = e.m;
      p["fix_i"] = e.fix_i;
      p["fix_j"] = e.fix_j;
      pairs.push_back(std::move(p));
    }
    j["pairs"] = std::move(pairs);
  }
  j["tuple"] = c.n ? to_json(c.tuple) : Json(nullptr);
  j["classification"] = to_json(c.classification);
  return j;
}

SeparationCertificate certificate_from_json(const Json& j) {
  SeparationCertificate c;
  auto kind = get<std::string>(j, "kind");
  if (kind == "membership") c.kind = SeparationKind::Membership;
  else if (kind == "conjugacy_into") c.kind = SeparationKind::ConjugacyInto;
  else bad("unknown certificate kind " + kind);
  c.rank = get<int>(j, "rank");
  c.n = get<std::size_t>(j, "n");
  c.alternating = get<bool>(j, "alternating");
  c.seed = j.value("seed", std::uint64_t{0});
  c.trials_used = j.value("trials_used", std::uint64_t{0});
  if (!field(j, "tuple").is_null()) c.tuple = tuple_from_json(j.at("tuple"));
  c.classification = classification_from_json(field(j, "classification"), c.rank);
  if (c.kind == SeparationKind::Membership) {
    auto b = get<std::size_t>(j, "basepoint");
    if (b < 1) bad("point out of range");
    c.basepoint = static_cast<Point>(b - 1);
    c.subgroup_generators = words_from(field(j, "subgroup_generators"), c.rank);
    c.elements = words_from(field(j, "elements"), c.rank);
    return c;
  }
  c.order = get<std::vector<std::size_t>>(j, "order");
  for (const Json& gens : field(j, "subgroups")) c.subgroups.push_back(words_from(gens, c.rank));
  c.primes = get<std::vector<std::size_t>>(j, "primes");
  c.multiplicities = get<std::vector<std::size_t>>(j, "multiplicities");
  for (const Json& row : field(j, "characteristic")) {
    std::vector<std::vector<Word>> r;
    for (const Json& gens : row) r.push_back(words_from(gens, c.rank));
    c.characteristic.push_back(std::move(r));
  }
  for (const Json& p : field(j, "pairs")) {
    PairEvidence e;
    e.i = get<std::size_t>(p, "i");
    e.j = get<std::size_t>(p, "j");
    e.via_subgroups = get<std::string>(p, "via") == "subgroups";
    e.m = get<std::size_t>(p, "m");
    e.fix_i = get<std::size_t>(p, "fix_i");
    e.fix_j = get<std::size_t>(p, "fix_j");
    c.pairs.push_back(e);
  }
  return c;
}

Json error_json(const Error& e) {
  Json j;
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  j["exit_code"] = exit_status(e.code());
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

LabeledGraph with_rank(const LabeledGraph& g, int rank) {
  if (rank < g.rank()) bad("cannot lower the rank of a graph");
  return LabeledGraph(rank, {g.vertices().begin(), g.vertices().end()},
                      {g.edges().begin(), g.edges().end()});
}

int rank_needed(std::string_view word_text) {
  int rank = 1;
  for (char c : word_text) {
    if (c >= 'a' && c <= 'z') rank = std::max(rank, c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z') rank = std::max(rank, c - 'A' + 1);
  }
  return rank;
}

GraphDocument graph_from_source(std::string_view source, int rank) {
  auto at_rank = [&](LabeledGraph g) {
    return GraphDocument{rank > g.rank() ? with_rank(g, rank) : std::move(g), std::nullopt};
  };
  if (source == "empty") return at_rank(LabeledGraph(std::max(rank, 1)));
  if (source == "a2loop") return at_rank(cycle_graph(parse_word("aa", 1)));
  if (source == "commutator") return at_rank(cycle_graph(parse_word("abAB", 2)));
  if (source.starts_with("loop:")) {
    std::string_view text = source.substr(5);
    Word w = free_reduce(parse_word(text, rank_needed(text)));
    if (w.empty()) bad("loop word reduces to the identity");
    return at_rank(cycle_graph(w));
  }
  GraphDocument doc = graph_from_json(read_json_file(std::string(source)));
  if (rank > doc.graph.rank()) doc.graph = with_rank(doc.graph, rank);
  return doc;
}

}  // namespace stallings::io
