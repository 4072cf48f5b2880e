#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stallings/perm.hpp"
#include "stallings/words.hpp"

namespace stallings {

using VertexId = int;

struct Edge {
  int label = 1;  // 1-based generator index
  VertexId from = 0;
  VertexId to = 0;
  auto operator<=>(const Edge&) const = default;
};

// Finite directed graph with edges labelled by generators of F_k. Vertex ids
// are arbitrary non-negative integers kept in sorted order.
class LabeledGraph {
 public:
  explicit LabeledGraph(int rank = 1);
  LabeledGraph(int rank, std::vector<VertexId> vertices, std::vector<Edge> edges);

  int rank() const { return rank_; }
  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }
  bool contains(VertexId v) const;
  // Position of v in vertices().
  std::size_t index_of(VertexId v) const;
  VertexId max_vertex_id() const { return vertices_.empty() ? -1 : vertices_.back(); }

  // Adds a vertex with id max_vertex_id() + 1 and returns it.
  VertexId add_vertex();
  void add_vertex(VertexId v);
  void add_edge(int label, VertexId from, VertexId to);

  std::size_t edge_count(int label) const;
  long euler_characteristic() const {
    return static_cast<long>(vertices_.size()) - static_cast<long>(edges_.size());
  }
  // At most one in- and one out-edge per label at every vertex.
  bool is_precover() const;
  // Exactly one in- and one out-edge per label at every vertex.
  bool is_cover() const;

  // Vertex sets of the connected components, each sorted, ordered by their
  // smallest vertex.
  std::vector<std::vector<VertexId>> components() const;
  LabeledGraph induced(std::span<const VertexId> vertices) const;

  bool operator==(const LabeledGraph&) const = default;

 private:
  int rank_;
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
};

struct BasedGraph {
  LabeledGraph graph;
  VertexId basepoint = 0;

  bool operator==(const BasedGraph&) const = default;
};

// Dense adjacency of a precover: out(v, label) and in(v, label) give vertex
// positions or -1.
class Precover {
 public:
  explicit Precover(const LabeledGraph& g);

  std::size_t size() const { return ids_.size(); }
  int rank() const { return rank_; }
  VertexId id(std::size_t v) const { return ids_[v]; }
  std::size_t index_of(VertexId id) const;
  int out(std::size_t v, int label) const {
    return out_[v * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(label - 1)];
  }
  int in(std::size_t v, int label) const {
    return in_[v * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(label - 1)];
  }
  int step(std::size_t v, const Letter& l) const {
    return l.sign > 0 ? out(v, l.generator) : in(v, l.generator);
  }

 private:
  int rank_;
  std::vector<VertexId> ids_;
  std::vector<int> out_;
  std::vector<int> in_;
};

// Stallings folding: identify equal-label edges sharing an endpoint in the
// same direction until the graph is a precover. Each class of identified
// vertices keeps its smallest id.
LabeledGraph fold(const LabeledGraph& g);
BasedGraph fold(const BasedGraph& g);

// Subdivided loop at a fresh basepoint reading w (not folded).
BasedGraph word_loop(const Word& w);
// Cycle graph reading the cyclic reduction of w; vertices 0..|w|-1.
LabeledGraph cycle_graph(const Word& w);

// Folded wedge of loops, one per generator, at basepoint 0.
BasedGraph stallings_graph(std::span<const Word> generators, int rank);

// Subgraph of vertices and edges lying on a cycle.
LabeledGraph core(const LabeledGraph& g);
// core(g) plus the reduced path from the basepoint to it.
BasedGraph based_core(const BasedGraph& g);

LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b);
// Copies of g with vertex ids shifted so they do not collide.
LabeledGraph copies(const LabeledGraph& g, std::size_t count);
LabeledGraph rose(int rank);

// Vertices 1..n, one j-edge i -> perms[j](i).
LabeledGraph schreier_from_perms(const PermTuple& t);
// Point i (0-based) is vertex_order[i].
PermTuple perms_from_cover(const LabeledGraph& g, std::span<const VertexId> vertex_order);

// Component of (a.basepoint, b.basepoint) in the fibre product over the rose.
// Vertices are numbered 0, 1, ... in breadth-first order from the basepoint.
BasedGraph pullback(const BasedGraph& a, const BasedGraph& b,
                    std::size_t max_vertices = SIZE_MAX);

// |V(a)| / |V(b)| once a covering map a -> b has been found.
std::size_t index_ratio(const LabeledGraph& a_core, const LabeledGraph& b_core);

// Isomorphism invariant of a precover (complete for precovers).
std::vector<int> canonical_code(const LabeledGraph& g);
// Same, with isomorphisms required to preserve the basepoint.
std::vector<int> canonical_code(const BasedGraph& g);
bool isomorphic(const LabeledGraph& a, const LabeledGraph& b);

// Label-preserving maps h -> x between precovers, vertex-wise. A map is given
// as the images of h.vertices() (positions in x.vertices()).
using MorphismVisitor = std::function<bool(std::span<const std::size_t>)>;
std::uint64_t count_morphisms(const LabeledGraph& h, const LabeledGraph& x);
// Calls visit on each morphism until it returns false.
void for_each_morphism(const LabeledGraph& h, const LabeledGraph& x,
                       const MorphismVisitor& visit);
bool has_morphism(const LabeledGraph& h, const LabeledGraph& x);
// Maps of the basepoint component of h sending basepoint to x's basepoint.
bool has_based_morphism(const BasedGraph& h, const BasedGraph& x);

}  // namespace stallings
