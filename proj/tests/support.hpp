#pragma once

// Shared helpers for the unit tests: random generators and slow reference
// implementations used as oracles.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/perm.hpp"
#include "stallings/rng.hpp"
#include "stallings/words.hpp"

namespace stallings::testing {

inline Permutation random_perm(Rng& rng, std::size_t n) {
  std::vector<Point> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Point>(i);
  rng.shuffle(std::span<Point>(images));
  return Permutation(std::move(images));
}

inline PermTuple random_tuple(Rng& rng, std::size_t n, int rank) {
  std::vector<Permutation> perms;
  for (int j = 0; j < rank; ++j) perms.push_back(random_perm(rng, n));
  return PermTuple(std::move(perms));
}

inline Word random_reduced_word(Rng& rng, int rank, std::size_t min_len,
                                std::size_t max_len) {
  std::size_t len = min_len + rng.below(max_len - min_len + 1);
  std::vector<Letter> letters;
  while (letters.size() < len) {
    Letter l{1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rank))),
             rng.below(2) ? 1 : -1};
    if (!letters.empty() && letters.back().cancels(l)) continue;
    letters.push_back(l);
  }
  return Word(rank, std::move(letters));
}

// Arbitrary labelled multigraph on ids 0..n-1.
inline LabeledGraph random_graph(Rng& rng, int rank, std::size_t n, std::size_t edges) {
  std::vector<VertexId> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<VertexId>(i);
  std::vector<Edge> es;
  for (std::size_t e = 0; e < edges; ++e)
    es.push_back({1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rank))),
                  static_cast<VertexId>(rng.below(n)), static_cast<VertexId>(rng.below(n))});
  return LabeledGraph(rank, std::move(vs), std::move(es));
}

// Random precover: partial injections per label.
inline LabeledGraph random_precover(Rng& rng, int rank, std::size_t n, double density) {
  LabeledGraph g(rank);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(static_cast<VertexId>(i));
  for (int l = 1; l <= rank; ++l) {
    Permutation p = random_perm(rng, n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng.uniform() < density)
        g.add_edge(l, static_cast<VertexId>(i), static_cast<VertexId>(p(static_cast<Point>(i))));
  }
  return g;
}

// Folding by repeatedly merging the first offending pair found.
inline LabeledGraph naive_fold(const LabeledGraph& g) {
  std::set<VertexId> vs(g.vertices().begin(), g.vertices().end());
  std::set<Edge> es(g.edges().begin(), g.edges().end());
  while (true) {
    std::optional<std::pair<VertexId, VertexId>> merge;
    for (const Edge& e : es) {
      for (const Edge& f : es) {
        if (e.label != f.label || e == f) continue;
        if (e.from == f.from && e.to != f.to) merge = std::pair{e.to, f.to};
        if (e.to == f.to && e.from != f.from) merge = std::pair{e.from, f.from};
        if (merge) break;
      }
      if (merge) break;
    }
    if (!merge) break;
    VertexId keep = std::min(merge->first, merge->second);
    VertexId gone = std::max(merge->first, merge->second);
    vs.erase(gone);
    std::set<Edge> next;
    for (Edge e : es) {
      if (e.from == gone) e.from = keep;
      if (e.to == gone) e.to = keep;
      next.insert(e);
    }
    es = std::move(next);
  }
  return LabeledGraph(g.rank(), {vs.begin(), vs.end()}, {es.begin(), es.end()});
}

// Renumbers vertices by a random permutation and shuffles the edge list.
inline LabeledGraph scramble(const LabeledGraph& g, Rng& rng) {
  std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
  std::vector<VertexId> fresh = ids;
  for (auto& v : fresh) v += 1000;
  rng.shuffle(std::span<VertexId>(fresh));
  std::map<VertexId, VertexId> rename;
  for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = fresh[i];
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) es.push_back({e.label, rename[e.from], rename[e.to]});
  rng.shuffle(std::span<Edge>(es));
  return LabeledGraph(g.rank(), fresh, es);
}

}  // namespace stallings::testing
