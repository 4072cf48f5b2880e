#include "stallings/separability.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "stallings/completion.hpp"
#include "stallings/error.hpp"
#include "stallings/lifts.hpp"

namespace stallings {

namespace {

struct SpanningTree {
  std::vector<std::vector<Letter>> path;  // basepoint to vertex, by position
  std::vector<char> reached;
  std::vector<std::size_t> basis_edges;  // indices into g.edges()
};

// Breadth-first from the basepoint; tree edges are found scanning labels in
// order, out-edge before in-edge.
SpanningTree spanning_tree(const BasedGraph& g) {
  const LabeledGraph& graph = g.graph;
  Precover p(graph);
  SpanningTree t;
  t.path.resize(p.size());
  t.reached.assign(p.size(), 0);
  // tree_edge[v * rank + label - 1] marks the out-edge (v, label) as a tree edge.
  std::vector<char> tree_edge(p.size() * static_cast<std::size_t>(graph.rank()), 0);
  auto mark = [&](std::size_t from, int label) {
    tree_edge[from * static_cast<std::size_t>(graph.rank()) + static_cast<std::size_t>(label - 1)] = 1;
  };
  std::size_t base = p.index_of(g.basepoint);
  std::deque<std::size_t> queue{base};
  t.reached[base] = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (int l = 1; l <= graph.rank(); ++l) {
      if (int w = p.out(v, l); w >= 0 && !t.reached[static_cast<std::size_t>(w)]) {
        auto u = static_cast<std::size_t>(w);
        t.reached[u] = 1;
        t.path[u] = t.path[v];
        t.path[u].push_back({l, 1});
        mark(v, l);
        queue.push_back(u);
      }
      if (int w = p.in(v, l); w >= 0 && !t.reached[static_cast<std::size_t>(w)]) {
        auto u = static_cast<std::size_t>(w);
        t.reached[u] = 1;
        t.path[u] = t.path[v];
        t.path[u].push_back({l, -1});
        mark(u, l);
        queue.push_back(u);
      }
    }
  }
  auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::size_t from = graph.index_of(edges[e].from);
    if (!t.reached[from]) continue;
    if (!tree_edge[from * static_cast<std::size_t>(graph.rank()) +
                   static_cast<std::size_t>(edges[e].label - 1)])
      t.basis_edges.push_back(e);
  }
  return t;
}

std::vector<std::vector<Point>> all_permutations(std::size_t d) {
  std::vector<Point> p(d);
  for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<Point>(i);
  std::vector<std::vector<Point>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Transitive, and breadth-first discovery from 0 numbers the points 0, 1, ...
bool canonical_action(const std::vector<const std::vector<Point>*>& perms,
                      const std::vector<std::vector<Point>>& inverses, std::size_t d) {
  std::vector<char> seen(d, 0);
  std::vector<Point> queue{0};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Point x = queue[qi];
    for (std::size_t j = 0; j < perms.size(); ++j) {
      for (Point y : {(*perms[j])[x], inverses[j][x]}) {
        if (seen[y]) continue;
        if (y != queue.size()) return false;
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return queue.size() == d;
}

double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

constexpr double kMaxActions = 2e7;

std::vector<std::size_t> default_primes(const std::vector<SubgroupSpec>& hs) {
  std::size_t largest = 0;
  for (const auto& h : hs) largest = std::max(largest, h.core.num_vertices());
  std::vector<std::size_t> primes;
  std::size_t q = largest + 1;
  while (primes.size() < hs.size()) {
    if (is_prime(q)) primes.push_back(q);
    ++q;
  }
  return primes;
}

LabeledGraph condition_graph(const std::vector<std::vector<SubgroupSpec>>& g,
                             const std::vector<std::size_t>& multiplicity, int rank) {
  LabeledGraph out(rank);
  for (std::size_t j = 0; j < multiplicity.size(); ++j)
    out = disjoint_union(out, copies(g[j][j].core, multiplicity[j]));
  return out;
}

bool accepted(const Classification& c, bool symmetric_ok) {
  return c.verdict == Verdict::Alternating || (symmetric_ok && c.verdict == Verdict::Symmetric);
}

std::vector<std::vector<Word>> generator_lists(const std::vector<SubgroupSpec>& hs) {
  std::vector<std::vector<Word>> out;
  for (const auto& h : hs) out.push_back(h.generators);
  return out;
}

}  // namespace

std::vector<Word> basis_from_graph(const BasedGraph& g) {
  SpanningTree t = spanning_tree(g);
  std::vector<Word> out;
  auto edges = g.graph.edges();
  for (std::size_t e : t.basis_edges) {
    std::vector<Letter> letters = t.path[g.graph.index_of(edges[e].from)];
    letters.push_back({edges[e].label, 1});
    for (auto it = t.path[g.graph.index_of(edges[e].to)].rbegin();
         it != t.path[g.graph.index_of(edges[e].to)].rend(); ++it)
      letters.push_back(it->inverse());
    out.push_back(free_reduce(Word(g.graph.rank(), std::move(letters))));
  }
  return out;
}

SubgroupSpec SubgroupSpec::from_words(std::vector<Word> generators, int rank) {
  SubgroupSpec s;
  s.rank = rank;
  for (Word& w : generators) {
    if (w.rank() != rank) throw Error(ErrorCode::InvalidInput, "generator of wrong rank");
    w = free_reduce(w);
  }
  s.based_core = stallings_graph(generators, rank);
  s.core = stallings::core(s.based_core.graph);
  s.rank_of_subgroup = 1 - s.based_core.graph.euler_characteristic();
  s.generators = std::move(generators);
  return s;
}

SubgroupSpec SubgroupSpec::from_based_graph(const BasedGraph& g) {
  SubgroupSpec s;
  s.rank = g.graph.rank();
  s.based_core = stallings::based_core(fold(g));
  s.core = stallings::core(s.based_core.graph);
  s.rank_of_subgroup = 1 - s.based_core.graph.euler_characteristic();
  s.generators = basis_from_graph(s.based_core);
  return s;
}

bool contains(const SubgroupSpec& h, const Word& w) {
  Precover p(h.based_core.graph);
  const std::size_t base = p.index_of(h.based_core.basepoint);
  std::size_t x = base;
  const Word reduced = free_reduce(w);
  for (const Letter& l : reduced.letters()) {
    int y = p.step(x, l);
    if (y < 0) return false;
    x = static_cast<std::size_t>(y);
  }
  return x == base;
}

bool is_conjugate_into(const SubgroupSpec& h1, const SubgroupSpec& h2) {
  if (h1.trivial()) return true;
  return has_morphism(h1.core, h2.core);
}

std::vector<SubgroupSpec> finite_index_subgroups(const SubgroupSpec& h, std::size_t d) {
  if (d > kMaxSubgroupIndex)
    throw Error(ErrorCode::PrimeTooLarge,
                "subgroup enumeration is limited to index " + std::to_string(kMaxSubgroupIndex));
  if (d == 0) throw Error(ErrorCode::InvalidInput, "index must be positive");
  if (d == 1) return {h};
  const BasedGraph& bc = h.based_core;
  SpanningTree tree = spanning_tree(bc);
  const std::size_t r = tree.basis_edges.size();
  if (std::pow(factorial(d), static_cast<double>(r)) > kMaxActions)
    throw Error(ErrorCode::PrimeTooLarge, "too many actions of a rank " + std::to_string(r) +
                                              " subgroup on " + std::to_string(d) + " points");
  if (r == 0) return {};

  const auto perms = all_permutations(d);
  std::vector<std::vector<Point>> inverse_of(perms.size(), std::vector<Point>(d));
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t x = 0; x < d; ++x) inverse_of[i][perms[i][x]] = static_cast<Point>(x);

  std::vector<std::ptrdiff_t> basis_index(bc.graph.num_edges(), -1);
  for (std::size_t b = 0; b < r; ++b) basis_index[tree.basis_edges[b]] = static_cast<std::ptrdiff_t>(b);

  std::vector<SubgroupSpec> out;
  std::vector<std::size_t> choice(r, 0);
  std::vector<const std::vector<Point>*> chosen(r);
  std::vector<std::vector<Point>> chosen_inv(r);
  const auto d_id = static_cast<VertexId>(d);
  while (true) {
    for (std::size_t b = 0; b < r; ++b) {
      chosen[b] = &perms[choice[b]];
      chosen_inv[b] = inverse_of[choice[b]];
    }
    if (canonical_action(chosen, chosen_inv, d)) {
      // Degree-d cover of the based core; vertex (v, i) has id pos(v)·d + i.
      LabeledGraph cover(bc.graph.rank());
      for (std::size_t v = 0; v < bc.graph.num_vertices(); ++v)
        for (std::size_t i = 0; i < d; ++i)
          cover.add_vertex(static_cast<VertexId>(v) * d_id + static_cast<VertexId>(i));
      auto edges = bc.graph.edges();
      for (std::size_t e = 0; e < edges.size(); ++e) {
        auto from = static_cast<VertexId>(bc.graph.index_of(edges[e].from));
        auto to = static_cast<VertexId>(bc.graph.index_of(edges[e].to));
        for (std::size_t i = 0; i < d; ++i) {
          Point j = basis_index[e] < 0 ? static_cast<Point>(i)
                                       : (*chosen[static_cast<std::size_t>(basis_index[e])])[i];
          cover.add_edge(edges[e].label, from * d_id + static_cast<VertexId>(i),
                         to * d_id + static_cast<VertexId>(j));
        }
      }
      VertexId base = static_cast<VertexId>(bc.graph.index_of(bc.basepoint)) * d_id;
      out.push_back(SubgroupSpec::from_based_graph({std::move(cover), base}));
    }
    std::size_t b = 0;
    while (b < r && ++choice[b] == perms.size()) choice[b++] = 0;
    if (b == r) break;
  }
  return out;
}

std::vector<SubgroupSpec> index_p_subgroups(const SubgroupSpec& h, std::size_t p) {
  if (p > kMaxSubgroupIndex)
    throw Error(ErrorCode::PrimeTooLarge, "p = " + std::to_string(p) + " exceeds the guard of " +
                                              std::to_string(kMaxSubgroupIndex));
  if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
  return finite_index_subgroups(h, p);
}

SubgroupSpec characteristic_intersection(const SubgroupSpec& h, std::size_t p,
                                         IntersectionMode mode, std::size_t max_vertices) {
  if (p > kMaxSubgroupIndex)
    throw Error(ErrorCode::PrimeTooLarge, "p = " + std::to_string(p) + " exceeds the guard of " +
                                              std::to_string(kMaxSubgroupIndex));
  std::vector<SubgroupSpec> parts;
  if (mode == IntersectionMode::ExactIndex) {
    parts = index_p_subgroups(h, p);
  } else {
    for (std::size_t d = 2; d <= p; ++d)
      for (auto& s : finite_index_subgroups(h, d)) parts.push_back(std::move(s));
  }
  BasedGraph result = h.based_core;
  for (const SubgroupSpec& k : parts)
    result = based_core(pullback(result, k.based_core, max_vertices));
  if (result.graph.num_vertices() > max_vertices)
    throw Error(ErrorCode::PullbackTooLarge, "intersection exceeds the vertex guard");
  return SubgroupSpec::from_based_graph(result);
}

std::size_t fixed_point_count(const PermTuple& t, std::span<const Word> generators) {
  std::size_t count = 0;
  for (Point x = 0; x < t.degree(); ++x) {
    bool fixed = true;
    for (const Word& w : generators)
      if (act(t, w, x) != x) {
        fixed = false;
        break;
      }
    count += fixed;
  }
  return count;
}

std::vector<std::size_t> default_schedule(std::size_t condition_vertices) {
  std::size_t n0 = std::max<std::size_t>(4 * condition_vertices, 32);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t <= 6; ++t) out.push_back(n0 << t);
  return out;
}

SeparationCertificate separate_membership(const SubgroupSpec& h, std::span<const Word> elements,
                                          const SearchOptions& options) {
  if (h.finite_index())
    throw Error(ErrorCode::NotSeparable, "subgroup has finite index");
  for (const Word& g : elements)
    if (contains(h, g))
      throw Error(ErrorCode::NotSeparable, g.str() + " lies in the subgroup");

  // Based core with a path reading each element hung at the basepoint.
  BasedGraph y = h.based_core;
  for (const Word& g : elements) {
    VertexId at = y.basepoint;
    const Word reduced = free_reduce(g);
    for (const Letter& l : reduced.letters()) {
      VertexId next = y.graph.add_vertex();
      if (l.sign > 0) y.graph.add_edge(l.generator, at, next);
      else y.graph.add_edge(l.generator, next, at);
      at = next;
    }
  }
  y = fold(y);
  const Precover cond(y.graph);
  const auto x = static_cast<Point>(cond.index_of(y.basepoint));

  std::vector<std::size_t> schedule =
      options.n_schedule.empty() ? default_schedule(y.graph.num_vertices()) : options.n_schedule;
  std::uint64_t trial = 0;
  for (std::size_t n : schedule) {
    if (n < y.graph.num_vertices()) continue;
    for (std::uint64_t s = 0; s < options.trials; ++s, ++trial) {
      Rng rng = Rng::for_trial(options.seed, trial);
      PermTuple t = random_completion_tuple(cond, n, rng);
      Classification c = classify(t, options.budget, rng);
      if (!accepted(c, options.symmetric_ok)) continue;
      SeparationCertificate cert;
      cert.kind = SeparationKind::Membership;
      cert.rank = h.rank;
      cert.n = n;
      cert.tuple = std::move(t);
      cert.alternating = c.verdict == Verdict::Alternating;
      cert.classification = std::move(c);
      cert.seed = options.seed;
      cert.trials_used = trial + 1;
      cert.basepoint = x;
      cert.subgroup_generators = h.generators;
      cert.elements.assign(elements.begin(), elements.end());
      if (!verify_certificate(cert))
        throw std::logic_error("membership certificate failed its own check");
      return cert;
    }
  }
  throw Error(ErrorCode::BudgetExhausted,
              "no accepted completion after " + std::to_string(trial) + " trials");
}

SeparationCertificate separate_conjugacy(const std::vector<SubgroupSpec>& input,
                                         const std::vector<std::size_t>& given_primes,
                                         const SearchOptions& options) {
  const std::size_t k = input.size();
  SeparationCertificate cert;
  cert.kind = SeparationKind::ConjugacyInto;
  cert.seed = options.seed;
  cert.rank = k ? input.front().rank : 1;
  for (const auto& h : input) {
    if (h.rank != cert.rank) throw Error(ErrorCode::InvalidInput, "subgroups of different ranks");
    if (h.finite_index()) throw Error(ErrorCode::InvalidInput, "subgroup has finite index");
  }

  std::vector<std::vector<char>> prec(k, std::vector<char>(k, 0));
  std::vector<std::size_t> reach(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      prec[i][j] = is_conjugate_into(input[i], input[j]);
      reach[i] += prec[i][j];
    }
  // H_i ≺ H_j strictly means H_i reaches everything H_j does, and H_j too.
  cert.order.resize(k);
  std::iota(cert.order.begin(), cert.order.end(), std::size_t{0});
  std::stable_sort(cert.order.begin(), cert.order.end(),
                   [&](std::size_t a, std::size_t b) { return reach[a] > reach[b]; });
  std::vector<SubgroupSpec> hs;
  for (std::size_t i : cert.order) hs.push_back(input[i]);
  cert.subgroups = generator_lists(hs);

  std::vector<std::pair<std::size_t, std::size_t>> targets;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && !prec[cert.order[i]][cert.order[j]]) targets.emplace_back(i, j);
  if (targets.empty()) return cert;

  cert.primes = given_primes.empty() ? default_primes(hs) : given_primes;
  if (cert.primes.size() != k)
    throw Error(ErrorCode::InvalidInput, "need one prime per subgroup");
  for (std::size_t p : cert.primes) {
    if (p > kMaxSubgroupIndex)
      throw Error(ErrorCode::PrimeTooLarge,
                  "prime " + std::to_string(p) + " exceeds the guard of " +
                      std::to_string(kMaxSubgroupIndex));
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
  }

  std::vector<std::vector<SubgroupSpec>> g(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = 0; m < k; ++m)
      g[i].push_back(characteristic_intersection(hs[i], cert.primes[m], IntersectionMode::IndexAtMost,
                                                 options.max_vertices));
  cert.characteristic.resize(k);
  for (std::size_t i = 0; i < k; ++i) cert.characteristic[i] = generator_lists(g[i]);

  std::vector<std::size_t> multiplicity(k, 1);
  const std::size_t steps = options.n_schedule.empty() ? 7 : options.n_schedule.size();
  std::uint64_t trial = 0;
  std::size_t step = 0;
  while (step < steps) {
    LabeledGraph condition = condition_graph(g, multiplicity, cert.rank);
    const std::size_t n = options.n_schedule.empty()
                              ? default_schedule(condition.num_vertices())[step]
                              : options.n_schedule[step];
    if (n < condition.num_vertices()) {
      ++step;
      continue;
    }
    const Precover cond(condition);
    // Gap fix(G_{j,j}) - fix(G_{i,j}) per target pair.
    std::vector<double> sum(targets.size(), 0), sumsq(targets.size(), 0);
    for (std::uint64_t s = 0; s < options.trials; ++s, ++trial) {
      Rng rng = Rng::for_trial(options.seed, trial);
      PermTuple t = random_completion_tuple(cond, n, rng);
      std::vector<std::size_t> fix_h(k);
      std::vector<std::vector<std::size_t>> fix_g(k, std::vector<std::size_t>(k));
      for (std::size_t i = 0; i < k; ++i) {
        fix_h[i] = fixed_points(t, hs[i].based_core);
        for (std::size_t m = 0; m < k; ++m) fix_g[i][m] = fixed_points(t, g[i][m].based_core);
      }
      std::vector<PairEvidence> evidence;
      for (std::size_t e = 0; e < targets.size(); ++e) {
        auto [i, j] = targets[e];
        double gap = static_cast<double>(fix_g[j][j]) - static_cast<double>(fix_g[i][j]);
        sum[e] += gap;
        sumsq[e] += gap * gap;
        if (fix_h[i] < fix_h[j]) {
          evidence.push_back({i, j, true, 0, fix_h[i], fix_h[j]});
          continue;
        }
        for (std::size_t m = 0; m < k; ++m)
          if (fix_g[i][m] < fix_g[j][m]) {
            evidence.push_back({i, j, false, m, fix_g[i][m], fix_g[j][m]});
            break;
          }
      }
      if (evidence.size() != targets.size()) continue;
      Classification c = classify(t, options.budget, rng);
      if (!accepted(c, options.symmetric_ok)) continue;
      cert.n = n;
      cert.tuple = std::move(t);
      cert.alternating = c.verdict == Verdict::Alternating;
      cert.classification = std::move(c);
      cert.trials_used = trial + 1;
      cert.multiplicities = multiplicity;
      cert.pairs = std::move(evidence);
      if (!verify_certificate(cert))
        throw std::logic_error("conjugacy certificate failed its own check");
      return cert;
    }
    bool grew = false;
    std::vector<char> bumped(k, 0);
    for (std::size_t e = 0; e < targets.size(); ++e) {
      std::size_t j = targets[e].second;
      auto trials = static_cast<double>(options.trials);
      double mean = sum[e] / trials;
      double var = trials > 1 ? std::max(0.0, (sumsq[e] - trials * mean * mean) / (trials - 1)) : 0;
      bool separated = mean > 4 * std::sqrt(var / trials);
      if (!separated && !bumped[j] && multiplicity[j] * 2 <= options.max_multiplicity) {
        multiplicity[j] *= 2;
        bumped[j] = 1;
        grew = true;
      }
    }
    if (!grew) ++step;
  }
  throw Error(ErrorCode::BudgetExhausted,
              "no separating completion after " + std::to_string(trial) + " trials");
}

bool verify_certificate(const SeparationCertificate& c) {
  const std::size_t n = c.tuple.degree();
  if (c.kind == SeparationKind::ConjugacyInto && c.pairs.empty()) return true;
  if (n != c.n || n == 0) return false;
  for (const Permutation& p : c.tuple.perms())
    if (p.degree() != n) return false;
  if (c.alternating != (c.classification.verdict == Verdict::Alternating)) return false;
  if (c.classification.verdict != Verdict::Alternating &&
      c.classification.verdict != Verdict::Symmetric)
    return false;
  if (!verify_classification(c.tuple, c.classification)) return false;

  if (c.kind == SeparationKind::Membership) {
    if (c.basepoint >= n) return false;
    for (const Word& w : c.subgroup_generators)
      if (act(c.tuple, w, c.basepoint) != c.basepoint) return false;
    for (const Word& w : c.elements)
      if (act(c.tuple, w, c.basepoint) == c.basepoint) return false;
    return true;
  }
  const std::size_t k = c.subgroups.size();
  for (const PairEvidence& e : c.pairs) {
    if (e.i >= k || e.j >= k || e.i == e.j) return false;
    std::span<const Word> a, b;
    if (e.via_subgroups) {
      a = c.subgroups[e.i];
      b = c.subgroups[e.j];
    } else {
      if (e.m >= k || c.characteristic.size() != k) return false;
      a = c.characteristic[e.i][e.m];
      b = c.characteristic[e.j][e.m];
    }
    std::size_t fa = fixed_point_count(c.tuple, a);
    std::size_t fb = fixed_point_count(c.tuple, b);
    if (fa != e.fix_i || fb != e.fix_j || fa >= fb) return false;
  }
  return true;
}

bool brute_force_conjugate_into(std::span<const Permutation> a, std::span<const Permutation> b,
                                std::size_t m) {
  if (m > 8)
    throw Error(ErrorCode::DegreeTooLarge, "brute force is limited to degree 8");
  for (const auto& p : a)
    if (p.degree() != m) throw Error(ErrorCode::InvalidInput, "permutation of wrong degree");
  for (const auto& p : b)
    if (p.degree() != m) throw Error(ErrorCode::InvalidInput, "permutation of wrong degree");
  std::set<std::vector<Point>> group;
  for (const Permutation& g : group_closure(b, m))
    group.insert({g.images().begin(), g.images().end()});
  std::vector<Point> sigma(m);
  std::iota(sigma.begin(), sigma.end(), Point{0});
  do {
    Permutation s(sigma);
    Permutation s_inv = s.inverse();
    bool inside = true;
    for (const Permutation& g : a) {
      Permutation conj = s_inv.then(g).then(s);
      if (!group.count({conj.images().begin(), conj.images().end()})) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

bool lemma_subgroup_lifting_check(const SubgroupSpec& h1, const SubgroupSpec& h2,
                                  const SubgroupSpec& g) {
  std::size_t index = 1;
  if (g.trivial() != h1.trivial())
    throw Error(ErrorCode::NotFiniteIndex, "G does not have finite index in H1");
  if (!h1.trivial()) {
    try {
      index = index_ratio(g.core, h1.core);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotACoveringPair) throw;
      throw Error(ErrorCode::NotFiniteIndex, "G does not have finite index in H1");
    }
  }
  const std::size_t bound = h2.core.num_vertices();
  for (std::size_t d = 2; d <= index; ++d)
    if (index % d == 0 && d <= bound) return false;
  return true;
}

}  // namespace stallings
