#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/perm.hpp"

namespace stallings {

// A quotient of the precover g ⊔ h. vertex_map[i] is the image of the i-th
// vertex of disjoint_union(g, h) and is a vertex id of `quotient`.
struct QuotientDescriptor {
  LabeledGraph quotient;
  std::vector<VertexId> vertex_map;
  long chi_rel = 0;  // χ(quotient) - χ(g)
  bool g_injective = true;
};

struct LeadingTerm {
  long long coefficient = 0;
  long exponent = 0;
};

struct LiftStats {
  double mean = 0;
  double variance = 0;
  std::uint64_t trials = 0;
  std::size_t n = 0;
  double std_error = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMaxQuotientVertices = 14;

inline std::uint64_t graph_morphisms(const LabeledGraph& h, const LabeledGraph& x) {
  return count_morphisms(h, x);
}

// Morphisms h -> Schreier graph of t.
std::uint64_t lifts_into(const LabeledGraph& h, const PermTuple& t);

// Points to which the basepoint component of h lifts, i.e. the points fixed
// by the image of π₁(h, basepoint).
std::size_t fixed_points(const PermTuple& t, const BasedGraph& h);

// Every quotient of g ⊔ h, one per vertex partition closed under folding,
// the trivial one first. Throws TooManyQuotients past max_vertices.
std::vector<QuotientDescriptor> enumerate_quotients(const LabeledGraph& g, const LabeledGraph& h,
                                                    std::size_t max_vertices = kMaxQuotientVertices);

struct RelativeRank {
  long r = 0;
  std::vector<QuotientDescriptor> critical;
};

// r is the largest χ_G over quotients on which g embeds.
RelativeRank relative_rank(const LabeledGraph& g, const LabeledGraph& h,
                           std::size_t max_vertices = kMaxQuotientVertices);

// E(τ_{h -> completion of g}) = coefficient · n^exponent + O(n^(exponent-1)).
LeadingTerm expected_lifts_leading(const LabeledGraph& g, const LabeledGraph& h,
                                   std::size_t max_vertices = kMaxQuotientVertices);

// Var = E(τ_{h⊔h}) - E(τ_h)². When the two leading orders agree the
// coefficients are subtracted, and a zero coefficient means the variance is
// of lower order.
LeadingTerm variance_leading(const LabeledGraph& g, const LabeledGraph& h,
                             std::size_t max_vertices = kMaxQuotientVertices);

// Injective maps of q.quotient into the Schreier graph of t whose
// restriction to g is the inclusion, g's vertices being points
// 0..|V(g)|-1 in increasing id order.
std::uint64_t injective_extensions(const LabeledGraph& g, const QuotientDescriptor& q,
                                   const PermTuple& t);

// The statistic per completion: τ_{h -> completion}, or fixed_points when
// h_basepoint is given.
struct LiftTarget {
  LabeledGraph h;
  std::optional<VertexId> basepoint;
};

LiftStats monte_carlo_lift_stats(const LabeledGraph& g, const LiftTarget& target, std::size_t n,
                                 std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads = 0);

// Mean and variance over all completions, weighted by probability.
LiftStats exact_lift_stats(const LabeledGraph& g, const LiftTarget& target, std::size_t n);

std::string csv_header();
std::string csv_row(const LiftStats& s);

}  // namespace stallings
