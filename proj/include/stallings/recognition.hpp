#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stallings/perm.hpp"
#include "stallings/rng.hpp"
#include "stallings/words.hpp"

namespace stallings {

enum class Verdict { Intransitive, Imprimitive, Alternating, Symmetric, Undetermined };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

using Partition = std::vector<std::vector<Point>>;

struct OrbitResult {
  bool transitive = false;
  Partition orbits;  // each sorted, ordered by smallest point
};

struct PrimitivityResult {
  bool primitive = false;
  Partition blocks;  // empty when primitive
};

// A word whose image has exactly one cycle of length q, q prime, q <= n-3,
// and no other cycle of length divisible by q. Raising the image to the
// other cycle lengths leaves a single q-cycle.
struct TnWitness {
  Word word;
  std::size_t q = 0;
};

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  Partition partition;  // orbits or blocks
  std::optional<TnWitness> witness;
  std::size_t evaluations = 0;   // words evaluated by the q-cycle search
  std::size_t closure_order = 0; // nonzero when decided by full closure
};

inline constexpr std::size_t kDefaultBudget = 200;
// Below this degree the q-cycle search cannot be decisive on its own.
inline constexpr std::size_t kClosureDegree = 7;

OrbitResult is_transitive(const PermTuple& t);
// Throws NotTransitive.
PrimitivityResult is_primitive(const PermTuple& t);

// The smallest admissible q for which p qualifies, if any.
std::optional<std::size_t> tn_prime(const Permutation& p);

// Generators first, then random reduced words of length at most 4*log2(n).
std::optional<TnWitness> find_tn_element(const PermTuple& t, std::size_t budget, Rng& rng,
                                         std::size_t* evaluations = nullptr);

Classification classify(const PermTuple& t, std::size_t budget, Rng& rng);

// Checks the witness of c against t from scratch. Verdicts reached by full
// closure are recomputed.
bool verify_classification(const PermTuple& t, const Classification& c);

bool is_prime(std::size_t q);

}  // namespace stallings
