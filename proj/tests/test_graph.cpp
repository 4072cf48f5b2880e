#include "doctest.h"

#include "stallings/error.hpp"
#include "stallings/graph.hpp"
#include "support.hpp"

using namespace stallings;
using namespace stallings::testing;

namespace {

BasedGraph subgroup_graph(std::initializer_list<const char*> words, int rank) {
  std::vector<Word> gens;
  for (const char* w : words) gens.push_back(parse_word(w, rank));
  return stallings_graph(gens, rank);
}

std::size_t count_label(const LabeledGraph& g, int label) { return g.edge_count(label); }


// Searches for a non-backtracking closed walk that traverses edge `start`
// forward and returns to traverse it forward again.
bool on_reduced_cycle(const LabeledGraph& g, std::size_t start) {
  const auto& edges = g.edges();
  std::size_t m = edges.size();
  // Directed half-edge 2i is edge i forward, 2i+1 is edge i backward.
  auto head = [&](std::size_t h) { return h % 2 == 0 ? edges[h / 2].to : edges[h / 2].from; };
  auto tail = [&](std::size_t h) { return h % 2 == 0 ? edges[h / 2].from : edges[h / 2].to; };
  std::vector<char> seen(2 * m, 0);
  std::vector<std::size_t> queue{2 * start};
  seen[2 * start] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t h = queue[qi];
    for (std::size_t next = 0; next < 2 * m; ++next) {
      if (tail(next) != head(h) || next == (h ^ 1)) continue;
      if (next == 2 * start) return true;
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("fold merges two equal out-edges") {
  LabeledGraph g(1, {0, 1, 2}, {{1, 0, 1}, {1, 0, 2}});
  LabeledGraph f = fold(g);
  CHECK(f.num_vertices() == 2);
  CHECK(f.num_edges() == 1);
  CHECK(f.is_precover());
}

TEST_CASE("fold fixes precovers") {
  BasedGraph commutator = subgroup_graph({"abAB"}, 2);
  LabeledGraph f = fold(commutator.graph);
  CHECK(f == commutator.graph);
}

TEST_CASE("fold of the wedge of aa and ab") {
  // Paths spelling aa and ab from a base vertex 0.
  LabeledGraph g(2, {0, 1, 2, 3, 4}, {{1, 0, 1}, {1, 1, 2}, {1, 0, 3}, {2, 3, 4}});
  LabeledGraph f = fold(g);
  CHECK(f.num_vertices() == 4);
  CHECK(f.num_edges() == 3);
  CHECK(f == naive_fold(g));
}

TEST_CASE("fold agrees with pairwise merging and is order independent") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng.below(8);
    LabeledGraph g = random_graph(rng, 2, n, rng.below(12));
    LabeledGraph f = fold(g);
    CHECK(f.is_precover());
    CHECK(f == naive_fold(g));
    LabeledGraph shuffled = fold(scramble(g, rng));
    CHECK(canonical_code(shuffled) == canonical_code(f));
    CHECK(f.components().size() == g.components().size());
  }
}

TEST_CASE("stallings_graph of the commutator is a based 4-cycle") {
  BasedGraph g = subgroup_graph({"abAB"}, 2);
  CHECK(g.graph.num_vertices() == 4);
  CHECK(g.graph.num_edges() == 4);
  CHECK(count_label(g.graph, 1) == 2);
  CHECK(count_label(g.graph, 2) == 2);
  CHECK(g.basepoint == 0);
  CHECK(core(g.graph) == g.graph);
}

TEST_CASE("stallings_graph of <aa, b>") {
  BasedGraph g = subgroup_graph({"aa", "b"}, 2);
  REQUIRE(g.graph.num_vertices() == 2);
  Precover p(g.graph);
  std::size_t base = p.index_of(g.basepoint);
  CHECK(p.out(base, 2) == static_cast<int>(base));
  int v1 = p.out(base, 1);
  REQUIRE(v1 >= 0);
  CHECK(v1 != static_cast<int>(base));
  CHECK(p.out(static_cast<std::size_t>(v1), 1) == static_cast<int>(base));
  CHECK(p.out(static_cast<std::size_t>(v1), 2) == -1);
}

TEST_CASE("stallings_graph of the trivial subgroup") {
  BasedGraph g = stallings_graph({}, 2);
  CHECK(g.graph.num_vertices() == 1);
  CHECK(g.graph.num_edges() == 0);
}

TEST_CASE("core strips trees") {
  BasedGraph commutator = subgroup_graph({"abAB"}, 2);
  LabeledGraph tailed = commutator.graph;
  VertexId leaf = tailed.add_vertex();
  tailed.add_edge(1, leaf, 0);
  VertexId leaf2 = tailed.add_vertex();
  tailed.add_edge(2, leaf2, leaf);
  CHECK(core(tailed) == commutator.graph);
  CHECK(core(core(tailed)) == core(tailed));

  LabeledGraph tree(2, {0, 1, 2}, {{1, 0, 1}, {2, 1, 2}});
  CHECK(core(tree).empty());

  Rng rng(22);
  LabeledGraph cover = schreier_from_perms(random_tuple(rng, 6, 2));
  CHECK(core(cover) == cover);
}

TEST_CASE("core output has no leaves and every edge lies on a reduced cycle") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    LabeledGraph g = random_precover(rng, 2, 1 + rng.below(9), 0.6);
    LabeledGraph c = core(g);
    for (VertexId v : c.vertices()) {
      std::size_t valence = 0;
      for (const Edge& e : c.edges()) valence += (e.from == v) + (e.to == v);
      CHECK(valence >= 2);
    }
    CHECK(core(c) == c);
    for (std::size_t i = 0; i < c.num_edges(); ++i) CHECK(on_reduced_cycle(c, i));
  }
}

TEST_CASE("based_core keeps the tail to the basepoint") {
  BasedGraph conj = subgroup_graph({"baB"}, 2);
  CHECK(conj.graph.num_vertices() == 2);
  CHECK(conj.graph.num_edges() == 2);
  CHECK(core(conj.graph).num_vertices() == 1);
  CHECK(based_core(conj) == conj);

  BasedGraph a = subgroup_graph({"a"}, 2);
  CHECK(a.graph.num_vertices() == 1);
  CHECK(based_core(a) == a);

  BasedGraph trivial = subgroup_graph({}, 2);
  CHECK(based_core(trivial).graph.num_vertices() == 1);
}

TEST_CASE("schreier_from_perms") {
  PermTuple t({Permutation::from_cycles("(1 2)", 2), Permutation(2)});
  LabeledGraph g = schreier_from_perms(t);
  CHECK(g.num_vertices() == 2);
  CHECK(g.is_cover());
  std::vector<Edge> expected{{1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {2, 2, 2}};
  CHECK(std::vector<Edge>(g.edges().begin(), g.edges().end()) == expected);

  LabeledGraph one = schreier_from_perms(PermTuple::identity(1, 3));
  CHECK(one.num_vertices() == 1);
  CHECK(one.num_edges() == 3);

  PermTuple t3({Permutation::from_cycles("(1 2 3)", 3), Permutation::from_cycles("(1 2)", 3)});
  LabeledGraph g3 = schreier_from_perms(t3);
  Precover p(g3);
  CHECK(p.id(static_cast<std::size_t>(p.out(p.index_of(3), 2))) == 3);
  std::vector<VertexId> order{1, 2, 3};
  CHECK(perms_from_cover(g3, order) == t3);
}

TEST_CASE("perms_from_cover round trips and rejects precovers") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    PermTuple t = random_tuple(rng, 1 + rng.below(7), 2);
    LabeledGraph g = schreier_from_perms(t);
    std::vector<VertexId> order(g.vertices().begin(), g.vertices().end());
    CHECK(perms_from_cover(g, order) == t);
    CHECK(schreier_from_perms(perms_from_cover(g, order)) == g);
  }
  std::vector<VertexId> order{0};
  CHECK(perms_from_cover(rose(2), order) == PermTuple::identity(1, 2));
  LabeledGraph missing(1, {0, 1}, {{1, 0, 1}});
  std::vector<VertexId> order2{0, 1};
  try {
    perms_from_cover(missing, order2);
    FAIL("expected NotACover");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACover);
  }
}

TEST_CASE("pullback of <a^2> and <a^3> is <a^6>") {
  BasedGraph a2 = subgroup_graph({"aa"}, 1);
  BasedGraph a3 = subgroup_graph({"aaa"}, 1);
  BasedGraph p = pullback(a2, a3);
  CHECK(p.graph.num_vertices() == 6);
  CHECK(p.graph.num_edges() == 6);
  CHECK(canonical_code(p) == canonical_code(subgroup_graph({"aaaaaa"}, 1)));
}

TEST_CASE("pullback with the rose is the identity") {
  BasedGraph x = subgroup_graph({"abAB", "bba"}, 2);
  BasedGraph r{rose(2), 0};
  BasedGraph p = pullback(x, r);
  CHECK(canonical_code(p) == canonical_code(x));
}

TEST_CASE("pullback size and morphisms into both factors") {
  Rng rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Word> ga{random_reduced_word(rng, 2, 1, 4)};
    std::vector<Word> gb{random_reduced_word(rng, 2, 1, 4), random_reduced_word(rng, 2, 1, 3)};
    BasedGraph a = stallings_graph(ga, 2);
    BasedGraph b = stallings_graph(gb, 2);
    BasedGraph p = based_core(pullback(a, b));
    CHECK(p.graph.num_vertices() <= a.graph.num_vertices() * b.graph.num_vertices());
    CHECK(has_based_morphism(p, a));
    CHECK(has_based_morphism(p, b));
  }
}

TEST_CASE("index_ratio") {
  LabeledGraph a3 = core(subgroup_graph({"aaa"}, 1).graph);
  LabeledGraph a1 = core(subgroup_graph({"a"}, 1).graph);
  CHECK(index_ratio(a3, a1) == 3);
  CHECK(index_ratio(a1, a1) == 1);
  BasedGraph x = subgroup_graph({"abAB", "ab"}, 2);
  CHECK(index_ratio(x.graph, x.graph) == 1);
  CHECK_THROWS_AS(index_ratio(a1, a3), Error);
  // Kernel of F2 -> (Z/2)^2: Schreier graph of the regular action.
  PermTuple klein({Permutation::from_cycles("(1 2)(3 4)", 4),
                   Permutation::from_cycles("(1 3)(2 4)", 4)});
  LabeledGraph kernel = schreier_from_perms(klein);
  CHECK(kernel.num_edges() == 8);
  CHECK(index_ratio(kernel, rose(2)) == 4);
  // A 2-cycle of a's does not cover the commutator core.
  CHECK_THROWS_AS(index_ratio(core(subgroup_graph({"aa"}, 2).graph),
                              core(subgroup_graph({"ab"}, 2).graph)),
                  Error);
}

TEST_CASE("canonical codes identify isomorphic precovers only") {
  Rng rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    LabeledGraph g = random_precover(rng, 2, 1 + rng.below(7), 0.7);
    LabeledGraph h = scramble(g, rng);
    CHECK(isomorphic(g, h));
    // An extra vertex or edge changes the class.
    LabeledGraph bigger = g;
    bigger.add_vertex();
    CHECK_FALSE(isomorphic(g, bigger));
  }
  CHECK_FALSE(isomorphic(core(subgroup_graph({"ab"}, 2).graph),
                         core(subgroup_graph({"aB"}, 2).graph)));
}

TEST_CASE("count_morphisms") {
  LabeledGraph loop = core(subgroup_graph({"a"}, 1).graph);
  PermTuple three({Permutation::from_cycles("(1 2 3)", 3)});
  CHECK(count_morphisms(loop, schreier_from_perms(three)) == 0);
  LabeledGraph a2 = core(subgroup_graph({"aa"}, 1).graph);
  PermTuple two({Permutation::from_cycles("(1 2)", 2)});
  CHECK(count_morphisms(a2, schreier_from_perms(two)) == 2);
  CHECK(count_morphisms(LabeledGraph(1), loop) == 1);
  LabeledGraph points(1, {0, 1}, {});
  CHECK(count_morphisms(points, schreier_from_perms(three)) == 9);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(LabeledGraph(2, {0, 0}, {}), Error);
  CHECK_THROWS_AS(LabeledGraph(2, {0}, {{3, 0, 0}}), Error);
  CHECK_THROWS_AS(LabeledGraph(2, {0}, {{1, 0, 1}}), Error);
  LabeledGraph bad(1, {0, 1, 2}, {{1, 0, 1}, {1, 0, 2}});
  CHECK_FALSE(bad.is_precover());
  CHECK_THROWS_AS(Precover{bad}, Error);
  CHECK(LabeledGraph(2).is_precover());
}
