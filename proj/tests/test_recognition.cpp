#include "doctest.h"

#include <cmath>
#include <set>

#include "stallings/error.hpp"
#include "stallings/recognition.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace stallings;
using namespace stallings::testing;

namespace {

PermTuple tuple(std::initializer_list<const char*> cycles, std::size_t n) {
  std::vector<Permutation> perms;
  for (const char* c : cycles) perms.push_back(Permutation::from_cycles(c, n));
  return PermTuple(std::move(perms));
}

}  // namespace

TEST_CASE("is_transitive") {
  CHECK(is_transitive(tuple({"(1 2 3)"}, 3)).transitive);
  OrbitResult fixed = is_transitive(tuple({"()"}, 2));
  CHECK_FALSE(fixed.transitive);
  CHECK(fixed.orbits == Partition{{0}, {1}});
  OrbitResult two = is_transitive(tuple({"(1 2)", "(3 4)"}, 4));
  CHECK_FALSE(two.transitive);
  CHECK(two.orbits == Partition{{0, 1}, {2, 3}});
}

TEST_CASE("is_primitive") {
  PrimitivityResult d4 = is_primitive(tuple({"(1 2 3 4)", "(1 3)"}, 4));
  CHECK_FALSE(d4.primitive);
  CHECK(d4.blocks == Partition{{0, 2}, {1, 3}});
  CHECK(is_primitive(tuple({"(1 2)", "(1 2 3)"}, 3)).primitive);
  CHECK(is_primitive(tuple({"(1 2)"}, 2)).primitive);
  CHECK_THROWS_AS(is_primitive(tuple({"(1 2)", "(3 4)"}, 4)), Error);
}

TEST_CASE("is_primitive agrees with a search over all partitions") {
  Rng rng(41);
  std::size_t imprimitive = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 2 + rng.below(5);
    PermTuple t = random_tuple(rng, n, 1 + static_cast<int>(rng.below(2)));
    if (!is_transitive(t).transitive) continue;
    PrimitivityResult r = is_primitive(t);
    CHECK(r.primitive == brute_force_primitive(t));
    if (!r.primitive) {
      ++imprimitive;
      CHECK(preserved(t, r.blocks));
      CHECK(r.blocks.size() > 1);
      CHECK(r.blocks.size() < n);
    }
  }
  CHECK(imprimitive > 10);
}

TEST_CASE("tn_prime") {
  CHECK(tn_prime(Permutation::from_cycles("(1 2 3 4 5)(6 7 8)", 8)) == std::optional<std::size_t>(3));
  CHECK(tn_prime(Permutation::from_cycles("(1 2 3 4 5)(6 7)", 8)) == std::optional<std::size_t>(2));
  CHECK(tn_prime(Permutation::from_cycles("(1 2 3 4 5)(6 7)(8 9)", 9)) == std::optional<std::size_t>(5));
  // 7 > 9 - 3.
  CHECK_FALSE(tn_prime(Permutation::from_cycles("(1 2 3 4 5 6 7)", 9)));
  CHECK_FALSE(tn_prime(Permutation::from_cycles("(1 2 3 4 5 6 7 8)", 8)));
  CHECK_FALSE(tn_prime(Permutation(10)));
}

TEST_CASE("find_tn_element") {
  Rng rng(42);
  PermTuple t = tuple({"(1 2 3 4 5)(6 7 8)"}, 8);
  auto w = find_tn_element(t, kDefaultBudget, rng);
  REQUIRE(w);
  CHECK(w->word.str() == "a");
  CHECK(w->q == 3);
  // The 5-cycle is also admissible: a^3 is a lone 5-cycle.
  CHECK(t.perm(1).pow(3).cycle_lengths().size() == 4);

  std::size_t used = 0;
  CHECK_FALSE(find_tn_element(PermTuple::identity(9, 2), kDefaultBudget, rng, &used));
  CHECK(used == kDefaultBudget);

  PermTuple eight = tuple({"(1 2 3 4 5 6 7 8)"}, 8);
  CHECK_FALSE(find_tn_element(eight, kDefaultBudget, rng));
  for (long long m = 1; m < 8; ++m) {
    std::vector<std::size_t> lengths = eight.perm(1).pow(m).cycle_lengths();
    CHECK(std::count(lengths.begin(), lengths.end(), std::size_t{2}) != 1);
  }
}

TEST_CASE("classify examples") {
  Rng rng(43);
  PermTuple td4 = tuple({"(1 2 3 4)", "(1 3)"}, 4);
  PermTuple ts4 = tuple({"(1 2)", "(2 3 4)"}, 4);
  PermTuple ta5 = tuple({"(1 2 3)", "(1 2 3 4 5)"}, 5);
  PermTuple tf20 = tuple({"(1 2 3 4 5)", "(2 3 5 4)"}, 5);
  Classification d4 = classify(td4, kDefaultBudget, rng);
  CHECK(d4.verdict == Verdict::Imprimitive);
  Classification s4 = classify(ts4, kDefaultBudget, rng);
  CHECK(s4.verdict == Verdict::Symmetric);
  CHECK(s4.closure_order == 24);
  Classification a5 = classify(ta5, kDefaultBudget, rng);
  CHECK(a5.verdict == Verdict::Alternating);
  // The Frobenius group of order 20 is primitive but neither A5 nor S5.
  Classification f20 = classify(tf20, kDefaultBudget, rng);
  CHECK(f20.verdict == Verdict::Undetermined);
  CHECK(f20.closure_order == 20);
  CHECK(verify_classification(td4, d4));
  CHECK(verify_classification(ts4, s4));
  CHECK(verify_classification(ta5, a5));
  CHECK(verify_classification(tf20, f20));
}

TEST_CASE("classify agrees with subgroup closure for n <= 7") {
  Rng rng(44);
  std::set<Verdict> seen;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng.below(7);
    PermTuple t = random_tuple(rng, n, 1 + static_cast<int>(rng.below(3)));
    Classification c = classify(t, kDefaultBudget, rng);
    CHECK(c.verdict == closure_verdict(t));
    CHECK(verify_classification(t, c));
    seen.insert(c.verdict);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("witnesses re-verify and tampering is caught") {
  Rng rng(45);
  std::size_t certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 8 + rng.below(40);
    PermTuple t = random_tuple(rng, n, 2);
    Classification c = classify(t, kDefaultBudget, rng);
    REQUIRE(verify_classification(t, c));
    if (c.witness) {
      ++certified;
      Classification wrong = c;
      wrong.verdict = c.verdict == Verdict::Alternating ? Verdict::Symmetric : Verdict::Alternating;
      CHECK_FALSE(verify_classification(t, wrong));
      Classification no_word = c;
      no_word.witness->word = Word(2, {});
      CHECK_FALSE(verify_classification(t, no_word));
      Classification composite = c;
      composite.witness->q = 4;
      CHECK_FALSE(verify_classification(t, composite));
    }
    if (c.verdict == Verdict::Alternating)
      for (const Permutation& g : t.perms()) CHECK(g.is_even());
    if (c.verdict == Verdict::Symmetric)
      CHECK(std::any_of(t.perms().begin(), t.perms().end(),
                        [](const Permutation& g) { return !g.is_even(); }));
  }
  CHECK(certified > 150);
}

TEST_CASE("sign of an evaluated word is the product of letter signs") {
  Rng rng(46);
  for (int trial = 0; trial < 300; ++trial) {
    PermTuple t = random_tuple(rng, 2 + rng.below(9), 3);
    Word w = random_reduced_word(rng, 3, 0, 12);
    int sign = 1;
    for (const Letter& l : w.letters()) sign *= t.perm(l.generator).sign();
    // Parity from the cycle type of the evaluated permutation.
    std::size_t even_cycles = 0;
    for (std::size_t len : evaluate(t, w).cycle_lengths()) even_cycles += len % 2 == 0;
    CHECK((even_cycles % 2 == 0 ? 1 : -1) == sign);
  }
}

TEST_CASE("random pairs at n = 100 split roughly one to three") {
  Rng rng(47);
  std::size_t alternating = 0, symmetric = 0, undetermined = 0;
  const std::size_t trials = 400;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Classification c = classify(random_tuple(rng, 100, 2), kDefaultBudget, rng);
    alternating += c.verdict == Verdict::Alternating;
    symmetric += c.verdict == Verdict::Symmetric;
    undetermined += c.verdict == Verdict::Undetermined;
  }
  double freq = static_cast<double>(alternating) / trials;
  CHECK(std::abs(freq - 0.25) < 4 * std::sqrt(0.25 * 0.75 / trials));
  // Intransitivity alone has probability about 1/n.
  CHECK(alternating + symmetric >= trials - 12);
  CHECK(undetermined == 0);
}
