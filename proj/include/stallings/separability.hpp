#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/perm.hpp"
#include "stallings/recognition.hpp"
#include "stallings/words.hpp"

namespace stallings {

// A finitely generated subgroup of F_k with its Stallings graph.
struct SubgroupSpec {
  int rank = 1;  // of the ambient free group
  std::vector<Word> generators;
  BasedGraph based_core;
  LabeledGraph core;
  long rank_of_subgroup = 0;

  static SubgroupSpec from_words(std::vector<Word> generators, int rank);
  // Generators are read off a breadth-first spanning tree.
  static SubgroupSpec from_based_graph(const BasedGraph& g);

  bool finite_index() const { return !core.empty() && core.is_cover(); }
  bool trivial() const { return core.empty(); }
};

// Free basis of π₁(g, basepoint): one word per edge outside a breadth-first
// spanning tree, in edge order.
std::vector<Word> basis_from_graph(const BasedGraph& g);

// w ∈ H, by reading w from the basepoint of the based core.
bool contains(const SubgroupSpec& h, const Word& w);

bool is_conjugate_into(const SubgroupSpec& h1, const SubgroupSpec& h2);

inline constexpr std::size_t kMaxSubgroupIndex = 5;
inline constexpr std::size_t kPullbackGuard = 5000;

// All subgroups of index exactly d in H (d <= 5), as based cores. One
// subgroup per transitive action of H's basis on {1..d} whose breadth-first
// numbering from point 1 is the identity.
std::vector<SubgroupSpec> finite_index_subgroups(const SubgroupSpec& h, std::size_t d);
// Same, for prime p. Throws PrimeTooLarge when p > 5.
std::vector<SubgroupSpec> index_p_subgroups(const SubgroupSpec& h, std::size_t p);

enum class IntersectionMode {
  ExactIndex,   // subgroups of index exactly p
  IndexAtMost,  // subgroups of index 2..p; monotone under inclusion
};

SubgroupSpec characteristic_intersection(const SubgroupSpec& h, std::size_t p,
                                         IntersectionMode mode = IntersectionMode::ExactIndex,
                                         std::size_t max_vertices = kPullbackGuard);

// Points fixed by every generator.
std::size_t fixed_point_count(const PermTuple& t, std::span<const Word> generators);

enum class SeparationKind { Membership, ConjugacyInto };

struct PairEvidence {
  std::size_t i = 0;  // H_i is not conjugate into H_j
  std::size_t j = 0;
  bool via_subgroups = true;  // compares fix(H_i), fix(H_j); else G_{i,m}, G_{j,m}
  std::size_t m = 0;
  std::size_t fix_i = 0;
  std::size_t fix_j = 0;
};

struct SeparationCertificate {
  SeparationKind kind = SeparationKind::Membership;
  int rank = 1;
  std::size_t n = 0;
  PermTuple tuple;
  Classification classification;
  bool alternating = false;
  std::uint64_t seed = 0;
  std::uint64_t trials_used = 0;

  // Membership: every subgroup generator fixes basepoint, every element moves it.
  Point basepoint = 0;
  std::vector<Word> subgroup_generators;
  std::vector<Word> elements;

  // ConjugacyInto, subgroups in the order used by the search.
  std::vector<std::size_t> order;  // input position of each subgroup
  std::vector<std::vector<Word>> subgroups;
  std::vector<std::size_t> primes;
  std::vector<std::size_t> multiplicities;
  std::vector<std::vector<std::vector<Word>>> characteristic;  // [i][m]
  std::vector<PairEvidence> pairs;
};

struct SearchOptions {
  std::vector<std::size_t> n_schedule;  // empty: n0·2^t, t = 0..6
  std::uint64_t trials = 32;            // completions per degree and round
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
  bool symmetric_ok = false;
  std::size_t max_multiplicity = 64;
  std::size_t max_vertices = kPullbackGuard;
};

std::vector<std::size_t> default_schedule(std::size_t condition_vertices);

// Throws NotSeparable when some element lies in H (or H has finite index)
// and BudgetExhausted when the schedule runs out.
SeparationCertificate separate_membership(const SubgroupSpec& h, std::span<const Word> elements,
                                          const SearchOptions& options);

// primes[j] is the prime for the j-th subgroup after ordering; empty picks
// the smallest primes above the largest core. Throws PrimeTooLarge,
// PullbackTooLarge or BudgetExhausted.
SeparationCertificate separate_conjugacy(const std::vector<SubgroupSpec>& subgroups,
                                         const std::vector<std::size_t>& primes,
                                         const SearchOptions& options);

// Re-evaluates every claim of c from the tuple alone.
bool verify_certificate(const SeparationCertificate& c);

// Whether some σ ∈ S_m conjugates ⟨a⟩ into ⟨b⟩. Throws DegreeTooLarge for m > 8.
bool brute_force_conjugate_into(std::span<const Permutation> a, std::span<const Permutation> b,
                                std::size_t m);

// Every divisor d > 1 of [H₁ : G] exceeds |V(Core(H₂))|. Throws NotFiniteIndex
// when G does not have finite index in H₁.
bool lemma_subgroup_lifting_check(const SubgroupSpec& h1, const SubgroupSpec& h2,
                                  const SubgroupSpec& g);

}  // namespace stallings
