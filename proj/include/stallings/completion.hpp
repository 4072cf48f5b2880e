#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/perm.hpp"
#include "stallings/rng.hpp"

namespace stallings {

struct CompletionSpec {
  LabeledGraph condition;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// A cover containing the condition. Point i of the tuple is vertex_order[i];
// the condition's vertices come first, in increasing id order, followed by
// the padding vertices max_vertex_id()+1, ..., in order.
struct Completion {
  LabeledGraph cover;
  PermTuple tuple;
  std::vector<VertexId> vertex_order;
};

inline constexpr double kMaxCompletions = 1e7;

// Throws NotAPrecover or ConditionTooLarge.
void check_completion_input(const LabeledGraph& condition, std::size_t n);

std::vector<VertexId> completion_vertex_order(const LabeledGraph& condition,
                                              std::size_t n);

// The cover with vertex ids taken from vertex_order.
LabeledGraph cover_from_tuple(const PermTuple& t, std::span<const VertexId> vertex_order);

// For every label, a uniform bijection from the vertices lacking an outgoing
// edge to those lacking an incoming one. Same (seed, trial) gives the same
// completion.
Completion random_completion(const CompletionSpec& spec, std::uint64_t trial);

// Tuple-only variant drawing from rng; the condition must have been
// validated, and `cond` must describe the condition.
PermTuple random_completion_tuple(const Precover& cond, std::size_t n, Rng& rng);

// Product over labels of (number of missing edges)!.
double completion_count(const LabeledGraph& condition, std::size_t n);

// Visits every completion once with its probability. Stops when visit
// returns false. Throws TooManyCompletions past max_count.
using CompletionVisitor = std::function<bool(const PermTuple&, double weight)>;
void for_each_completion(const LabeledGraph& condition, std::size_t n,
                         const CompletionVisitor& visit,
                         double max_count = kMaxCompletions);

// Per component, hangs fresh j-edges to new leaves until every label has the
// same number of edges. The inclusion of g is a homotopy equivalence.
LabeledGraph equalize_labels(const LabeledGraph& g);

}  // namespace stallings
