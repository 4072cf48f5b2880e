#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "stallings/lifts.hpp"
#include "stallings/perm.hpp"
#include "stallings/recognition.hpp"
#include "stallings/separability.hpp"

namespace stallings::io {

using Json = nlohmann::ordered_json;

// {"rank", "vertices", "edges": [{"label", "from", "to"}], "basepoint": int|null}
struct GraphDocument {
  LabeledGraph graph;
  std::optional<VertexId> basepoint;
};

Json to_json(const LabeledGraph& g, std::optional<VertexId> basepoint = std::nullopt);
Json to_json(const BasedGraph& g);
// Throws InvalidInput on malformed documents.
GraphDocument graph_from_json(const Json& j);

// Points are 1-based in every document: images[i][x-1] is the image of x
// under generator i+1.
Json to_json(const PermTuple& t);
PermTuple tuple_from_json(const Json& j);

Json to_json(const Classification& c);
Classification classification_from_json(const Json& j, int rank);

Json to_json(const LiftStats& s);
Json to_json(const QuotientDescriptor& q, bool critical);
Json to_json(const LeadingTerm& t);

Json to_json(const SeparationCertificate& c);
SeparationCertificate certificate_from_json(const Json& j);

// {"error": code, "message": text, "exit_code": status}
Json error_json(const Error& e);

Json read_json_file(const std::string& path);

// Copy of g over a larger alphabet.
LabeledGraph with_rank(const LabeledGraph& g, int rank);

// Graph sources accepted on the command line: "empty", "loop:WORD",
// "a2loop", "commutator" (the core of ⟨[a,b]⟩) or a path to a graph document.
// rank 0 takes the smallest rank the source needs (1 for "empty").
GraphDocument graph_from_source(std::string_view source, int rank = 0);

// Largest generator index in the text of a word, at least 1.
int rank_needed(std::string_view word_text);

}  // namespace stallings::io
