#include "stallings/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "stallings/detail/lift_plan.hpp"
#include "stallings/detail/union_find.hpp"
#include "stallings/error.hpp"

namespace stallings {

using detail::UnionFind;

namespace {

void check_label(int label, int rank) {
  if (label < 1 || label > rank)
    throw Error(ErrorCode::InvalidInput, "edge label " + std::to_string(label) +
                                             " outside 1.." + std::to_string(rank));
}

// Removes vertices of valence <= 1 repeatedly, never removing `keep`.
LabeledGraph prune_leaves(const LabeledGraph& g, std::optional<VertexId> keep) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> valence(n, 0);
  std::vector<std::vector<std::size_t>> incident(n);
  auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::size_t u = g.index_of(edges[e].from);
    std::size_t v = g.index_of(edges[e].to);
    ++valence[u];
    ++valence[v];
    incident[u].push_back(e);
    if (v != u) incident[v].push_back(e);
  }
  std::vector<bool> vertex_alive(n, true);
  std::vector<bool> edge_alive(edges.size(), true);
  std::deque<std::size_t> queue;
  std::optional<std::size_t> keep_pos;
  if (keep) keep_pos = g.index_of(*keep);
  for (std::size_t v = 0; v < n; ++v)
    if (valence[v] <= 1 && v != keep_pos) queue.push_back(v);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (!vertex_alive[v]) continue;
    vertex_alive[v] = false;
    for (std::size_t e : incident[v]) {
      if (!edge_alive[e]) continue;
      edge_alive[e] = false;
      std::size_t u = g.index_of(edges[e].from);
      std::size_t w = g.index_of(edges[e].to);
      std::size_t other = u == v ? w : u;
      if (other == v) continue;
      if (--valence[other] <= 1 && vertex_alive[other] && other != keep_pos)
        queue.push_back(other);
    }
  }
  std::vector<VertexId> vs;
  for (std::size_t v = 0; v < n; ++v)
    if (vertex_alive[v]) vs.push_back(g.vertices()[v]);
  std::vector<Edge> es;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edge_alive[e]) es.push_back(edges[e]);
  return LabeledGraph(g.rank(), std::move(vs), std::move(es));
}

std::vector<int> component_code(const Precover& p, std::size_t start,
                                 std::vector<int>& number) {
  std::vector<std::size_t> order{start};
  std::vector<std::size_t> touched{start};
  number[start] = 0;
  std::vector<int> code;
  auto visit = [&](int y) {
    if (y < 0) {
      code.push_back(-1);
      return;
    }
    auto v = static_cast<std::size_t>(y);
    if (number[v] < 0) {
      number[v] = static_cast<int>(order.size());
      order.push_back(v);
      touched.push_back(v);
    }
    code.push_back(number[v]);
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int l = 1; l <= p.rank(); ++l) {
      visit(p.out(order[i], l));
      visit(p.in(order[i], l));
    }
  }
  code.insert(code.begin(), static_cast<int>(order.size()));
  for (std::size_t v : touched) number[v] = -1;
  return code;
}

}  // namespace

// ---------------------------------------------------------------------------
// LabeledGraph

LabeledGraph::LabeledGraph(int rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorCode::InvalidInput, "rank must be positive");
}

LabeledGraph::LabeledGraph(int rank, std::vector<VertexId> vertices,
                           std::vector<Edge> edges)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (rank < 1) throw Error(ErrorCode::InvalidInput, "rank must be positive");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw Error(ErrorCode::InvalidInput, "duplicate vertex id");
  if (!vertices_.empty() && vertices_.front() < 0)
    throw Error(ErrorCode::InvalidInput, "vertex ids must be non-negative");
  for (const Edge& e : edges_) {
    check_label(e.label, rank_);
    if (!contains(e.from) || !contains(e.to))
      throw Error(ErrorCode::InvalidInput, "edge endpoint is not a vertex");
  }
}

bool LabeledGraph::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t LabeledGraph::index_of(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v)
    throw Error(ErrorCode::InvalidInput, "unknown vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - vertices_.begin());
}

VertexId LabeledGraph::add_vertex() {
  VertexId v = max_vertex_id() + 1;
  vertices_.push_back(v);
  return v;
}

void LabeledGraph::add_vertex(VertexId v) {
  if (v < 0) throw Error(ErrorCode::InvalidInput, "vertex ids must be non-negative");
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it != vertices_.end() && *it == v)
    throw Error(ErrorCode::InvalidInput, "duplicate vertex id");
  vertices_.insert(it, v);
}

void LabeledGraph::add_edge(int label, VertexId from, VertexId to) {
  check_label(label, rank_);
  if (!contains(from) || !contains(to))
    throw Error(ErrorCode::InvalidInput, "edge endpoint is not a vertex");
  edges_.push_back({label, from, to});
}

std::size_t LabeledGraph::edge_count(int label) const {
  return static_cast<std::size_t>(std::count_if(
      edges_.begin(), edges_.end(), [&](const Edge& e) { return e.label == label; }));
}

bool LabeledGraph::is_precover() const {
  const auto k = static_cast<std::size_t>(rank_);
  std::vector<unsigned char> out(vertices_.size() * k, 0);
  std::vector<unsigned char> in(vertices_.size() * k, 0);
  for (const Edge& e : edges_) {
    auto l = static_cast<std::size_t>(e.label - 1);
    if (out[index_of(e.from) * k + l]++ || in[index_of(e.to) * k + l]++) return false;
  }
  return true;
}

bool LabeledGraph::is_cover() const {
  return is_precover() &&
         edges_.size() == vertices_.size() * static_cast<std::size_t>(rank_);
}

std::vector<std::vector<VertexId>> LabeledGraph::components() const {
  UnionFind uf(vertices_.size());
  for (const Edge& e : edges_) uf.unite(index_of(e.from), index_of(e.to));
  std::map<std::size_t, std::vector<VertexId>> groups;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    groups[uf.find(v)].push_back(vertices_[v]);
  std::vector<std::vector<VertexId>> result;
  for (auto& [root, members] : groups) result.push_back(std::move(members));
  return result;
}

LabeledGraph LabeledGraph::induced(std::span<const VertexId> vs) const {
  std::vector<VertexId> keep(vs.begin(), vs.end());
  std::sort(keep.begin(), keep.end());
  std::vector<Edge> es;
  for (const Edge& e : edges_)
    if (std::binary_search(keep.begin(), keep.end(), e.from) &&
        std::binary_search(keep.begin(), keep.end(), e.to))
      es.push_back(e);
  return LabeledGraph(rank_, std::move(keep), std::move(es));
}

// ---------------------------------------------------------------------------
// Precover

Precover::Precover(const LabeledGraph& g)
    : rank_(g.rank()), ids_(g.vertices().begin(), g.vertices().end()) {
  const auto k = static_cast<std::size_t>(rank_);
  out_.assign(ids_.size() * k, -1);
  in_.assign(ids_.size() * k, -1);
  for (const Edge& e : g.edges()) {
    std::size_t u = g.index_of(e.from);
    std::size_t v = g.index_of(e.to);
    auto l = static_cast<std::size_t>(e.label - 1);
    if (out_[u * k + l] >= 0 || in_[v * k + l] >= 0)
      throw Error(ErrorCode::NotAPrecover,
                  "two edges labelled " + std::to_string(e.label) +
                      " share an endpoint in the same direction");
    out_[u * k + l] = static_cast<int>(v);
    in_[v * k + l] = static_cast<int>(u);
  }
}

std::size_t Precover::index_of(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id)
    throw Error(ErrorCode::InvalidInput, "unknown vertex " + std::to_string(id));
  return static_cast<std::size_t>(it - ids_.begin());
}

// ---------------------------------------------------------------------------
// Folding and cores

namespace {

// Class representative (smallest position) of every vertex after folding.
std::vector<std::size_t> fold_classes(const LabeledGraph& g) {
  const std::size_t n = g.num_vertices();
  const auto k = static_cast<std::size_t>(g.rank());
  UnionFind uf(n);
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  ends.reserve(g.num_edges());
  for (const Edge& e : g.edges()) ends.emplace_back(g.index_of(e.from), g.index_of(e.to));

  std::vector<std::ptrdiff_t> out(n * k), in(n * k);
  auto edges = g.edges();
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(out.begin(), out.end(), -1);
    std::fill(in.begin(), in.end(), -1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto l = static_cast<std::size_t>(edges[i].label - 1);
      std::size_t u = uf.find(ends[i].first);
      std::size_t v = uf.find(ends[i].second);
      auto& o = out[u * k + l];
      if (o < 0) {
        o = static_cast<std::ptrdiff_t>(v);
      } else if (uf.find(static_cast<std::size_t>(o)) != v) {
        uf.unite(static_cast<std::size_t>(o), v);
        changed = true;
        u = uf.find(u);
        v = uf.find(v);
      }
      auto& r = in[v * k + l];
      if (r < 0) {
        r = static_cast<std::ptrdiff_t>(u);
      } else if (uf.find(static_cast<std::size_t>(r)) != u) {
        uf.unite(static_cast<std::size_t>(r), u);
        changed = true;
      }
    }
  }
  std::vector<std::size_t> root(n);
  for (std::size_t v = 0; v < n; ++v) root[v] = uf.find(v);
  return root;
}

}  // namespace

LabeledGraph fold(const LabeledGraph& g) {
  std::vector<std::size_t> root = fold_classes(g);
  std::vector<VertexId> vs;
  for (std::size_t v = 0; v < root.size(); ++v)
    if (root[v] == v) vs.push_back(g.vertices()[v]);
  std::set<Edge> es;
  for (const Edge& e : g.edges())
    es.insert({e.label, g.vertices()[root[g.index_of(e.from)]],
               g.vertices()[root[g.index_of(e.to)]]});
  return LabeledGraph(g.rank(), std::move(vs), std::vector<Edge>(es.begin(), es.end()));
}

BasedGraph fold(const BasedGraph& g) {
  std::vector<std::size_t> root = fold_classes(g.graph);
  VertexId base = g.graph.vertices()[root[g.graph.index_of(g.basepoint)]];
  return {fold(g.graph), base};
}

BasedGraph word_loop(const Word& w) {
  LabeledGraph g(w.rank());
  g.add_vertex(0);
  const auto len = static_cast<VertexId>(w.size());
  for (VertexId i = 1; i < len; ++i) g.add_vertex(i);
  for (VertexId i = 0; i < len; ++i) {
    const Letter& l = w[static_cast<std::size_t>(i)];
    VertexId from = i;
    VertexId to = (i + 1) % len;
    if (l.sign > 0)
      g.add_edge(l.generator, from, to);
    else
      g.add_edge(l.generator, to, from);
  }
  return {std::move(g), 0};
}

LabeledGraph cycle_graph(const Word& w) {
  Word c = cyclic_reduce(w).core;
  if (c.empty()) return LabeledGraph(w.rank());
  return word_loop(c).graph;
}

BasedGraph stallings_graph(std::span<const Word> generators, int rank) {
  LabeledGraph g(rank);
  g.add_vertex(0);
  for (const Word& raw : generators) {
    Word w = free_reduce(raw);
    if (w.rank() > rank)
      throw Error(ErrorCode::InvalidGenerator, "word rank exceeds graph rank");
    if (w.empty()) continue;
    VertexId prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      VertexId next = i + 1 == w.size() ? 0 : g.add_vertex();
      const Letter& l = w[i];
      if (l.sign > 0)
        g.add_edge(l.generator, prev, next);
      else
        g.add_edge(l.generator, next, prev);
      prev = next;
    }
  }
  return based_core(fold(BasedGraph{std::move(g), 0}));
}

LabeledGraph core(const LabeledGraph& g) { return prune_leaves(g, std::nullopt); }

BasedGraph based_core(const BasedGraph& g) {
  return {prune_leaves(g.graph, g.basepoint), g.basepoint};
}

LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.rank() != b.rank())
    throw Error(ErrorCode::InvalidInput, "disjoint union of graphs of different rank");
  const VertexId offset = a.max_vertex_id() + 1;
  std::vector<VertexId> vs(a.vertices().begin(), a.vertices().end());
  for (VertexId v : b.vertices()) vs.push_back(v + offset);
  std::vector<Edge> es(a.edges().begin(), a.edges().end());
  for (const Edge& e : b.edges()) es.push_back({e.label, e.from + offset, e.to + offset});
  return LabeledGraph(a.rank(), std::move(vs), std::move(es));
}

LabeledGraph copies(const LabeledGraph& g, std::size_t count) {
  LabeledGraph result(g.rank());
  for (std::size_t i = 0; i < count; ++i) result = disjoint_union(result, g);
  return result;
}

LabeledGraph rose(int rank) {
  LabeledGraph g(rank);
  g.add_vertex(0);
  for (int l = 1; l <= rank; ++l) g.add_edge(l, 0, 0);
  return g;
}

LabeledGraph schreier_from_perms(const PermTuple& t) {
  std::vector<VertexId> vs(t.degree());
  std::iota(vs.begin(), vs.end(), VertexId{1});
  std::vector<Edge> es;
  es.reserve(t.degree() * static_cast<std::size_t>(t.rank()));
  for (int l = 1; l <= t.rank(); ++l)
    for (std::size_t i = 0; i < t.degree(); ++i)
      es.push_back({l, static_cast<VertexId>(i + 1),
                    static_cast<VertexId>(t.perm(l)(static_cast<Point>(i)) + 1)});
  return LabeledGraph(t.rank(), std::move(vs), std::move(es));
}

PermTuple perms_from_cover(const LabeledGraph& g, std::span<const VertexId> vertex_order) {
  if (!g.is_cover()) throw Error(ErrorCode::NotACover, "graph is not a cover of the rose");
  if (vertex_order.size() != g.num_vertices())
    throw Error(ErrorCode::InvalidInput, "vertex order does not list every vertex");
  std::vector<Point> point_of(g.num_vertices(), static_cast<Point>(-1));
  for (std::size_t i = 0; i < vertex_order.size(); ++i) {
    std::size_t pos = g.index_of(vertex_order[i]);
    if (point_of[pos] != static_cast<Point>(-1))
      throw Error(ErrorCode::InvalidInput, "vertex order repeats a vertex");
    point_of[pos] = static_cast<Point>(i);
  }
  Precover p(g);
  std::vector<Permutation> perms;
  for (int l = 1; l <= g.rank(); ++l) {
    std::vector<Point> images(g.num_vertices());
    for (std::size_t i = 0; i < vertex_order.size(); ++i) {
      std::size_t pos = p.index_of(vertex_order[i]);
      images[i] = point_of[static_cast<std::size_t>(p.out(pos, l))];
    }
    perms.emplace_back(std::move(images));
  }
  return PermTuple(std::move(perms));
}

BasedGraph pullback(const BasedGraph& a, const BasedGraph& b, std::size_t max_vertices) {
  if (a.graph.rank() != b.graph.rank())
    throw Error(ErrorCode::InvalidInput, "pullback of graphs of different rank");
  Precover pa(a.graph);
  Precover pb(b.graph);
  const int k = a.graph.rank();
  std::map<std::pair<std::size_t, std::size_t>, VertexId> id;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  auto visit = [&](std::size_t u, std::size_t v) {
    auto [it, inserted] = id.try_emplace({u, v}, static_cast<VertexId>(order.size()));
    if (inserted) {
      order.emplace_back(u, v);
      if (order.size() > max_vertices)
        throw Error(ErrorCode::PullbackTooLarge,
                    "pullback exceeds " + std::to_string(max_vertices) + " vertices");
    }
    return it->second;
  };
  visit(pa.index_of(a.basepoint), pb.index_of(b.basepoint));
  std::vector<Edge> es;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [u, v] = order[i];
    for (int l = 1; l <= k; ++l) {
      int uo = pa.out(u, l);
      int vo = pb.out(v, l);
      if (uo >= 0 && vo >= 0) {
        VertexId to = visit(static_cast<std::size_t>(uo), static_cast<std::size_t>(vo));
        es.push_back({l, static_cast<VertexId>(i), to});
      }
      int ui = pa.in(u, l);
      int vi = pb.in(v, l);
      if (ui >= 0 && vi >= 0) visit(static_cast<std::size_t>(ui), static_cast<std::size_t>(vi));
    }
  }
  std::vector<VertexId> vs(order.size());
  std::iota(vs.begin(), vs.end(), VertexId{0});
  return {LabeledGraph(k, std::move(vs), std::move(es)), 0};
}

std::size_t index_ratio(const LabeledGraph& a_core, const LabeledGraph& b_core) {
  if (a_core.empty() || b_core.empty())
    throw Error(ErrorCode::NotACoveringPair, "covering pair needs nonempty graphs");
  if (a_core.num_vertices() % b_core.num_vertices() != 0)
    throw Error(ErrorCode::NotACoveringPair, "vertex counts are not commensurate");
  Precover pa(a_core);
  Precover pb(b_core);
  bool found = false;
  for_each_morphism(a_core, b_core, [&](std::span<const std::size_t> image) {
    std::vector<bool> hit(pb.size(), false);
    for (std::size_t v = 0; v < pa.size(); ++v) {
      hit[image[v]] = true;
      for (int l = 1; l <= pa.rank(); ++l) {
        if ((pa.out(v, l) >= 0) != (pb.out(image[v], l) >= 0)) return true;
        if ((pa.in(v, l) >= 0) != (pb.in(image[v], l) >= 0)) return true;
      }
    }
    found = std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    return !found;
  });
  if (!found) throw Error(ErrorCode::NotACoveringPair, "no covering map exists");
  return a_core.num_vertices() / b_core.num_vertices();
}

// ---------------------------------------------------------------------------
// Canonical forms

std::vector<int> canonical_code(const LabeledGraph& g) {
  Precover p(g);
  std::vector<int> number(p.size(), -1);
  std::vector<std::vector<int>> parts;
  for (const auto& comp : g.components()) {
    std::vector<int> best;
    for (VertexId v : comp) {
      std::vector<int> code = component_code(p, p.index_of(v), number);
      if (best.empty() || code < best) best = std::move(code);
    }
    parts.push_back(std::move(best));
  }
  std::sort(parts.begin(), parts.end());
  std::vector<int> result{g.rank(), static_cast<int>(parts.size())};
  for (const auto& part : parts) result.insert(result.end(), part.begin(), part.end());
  return result;
}

std::vector<int> canonical_code(const BasedGraph& g) {
  Precover p(g.graph);
  std::vector<int> number(p.size(), -1);
  std::vector<int> result{g.graph.rank()};
  std::vector<std::vector<int>> others;
  for (const auto& comp : g.graph.components()) {
    if (std::binary_search(comp.begin(), comp.end(), g.basepoint)) {
      std::vector<int> code = component_code(p, p.index_of(g.basepoint), number);
      result.insert(result.end(), code.begin(), code.end());
      continue;
    }
    std::vector<int> best;
    for (VertexId v : comp) {
      std::vector<int> code = component_code(p, p.index_of(v), number);
      if (best.empty() || code < best) best = std::move(code);
    }
    others.push_back(std::move(best));
  }
  std::sort(others.begin(), others.end());
  result.push_back(static_cast<int>(others.size()));
  for (const auto& part : others) result.insert(result.end(), part.begin(), part.end());
  return result;
}

bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  return a.num_vertices() == b.num_vertices() && a.num_edges() == b.num_edges() &&
         canonical_code(a) == canonical_code(b);
}

// ---------------------------------------------------------------------------
// Morphisms

namespace detail {

std::vector<ComponentPlan> make_plans(const Precover& src, std::ptrdiff_t first) {
  const std::size_t n = src.size();
  const int k = src.rank();
  std::vector<bool> seen(n, false);
  // Out-edges (v, label) used as tree steps.
  std::vector<bool> tree_edge(n * static_cast<std::size_t>(k), false);
  std::vector<ComponentPlan> plans;
  auto build = [&](std::size_t root) {
    ComponentPlan plan;
    plan.root = root;
    plan.vertices.push_back(root);
    seen[root] = true;
    for (std::size_t i = 0; i < plan.vertices.size(); ++i) {
      std::size_t v = plan.vertices[i];
      for (int l = 1; l <= k; ++l) {
        int o = src.out(v, l);
        if (o >= 0 && !seen[static_cast<std::size_t>(o)]) {
          auto w = static_cast<std::size_t>(o);
          seen[w] = true;
          plan.vertices.push_back(w);
          plan.steps.push_back({v, l, true, w});
          tree_edge[v * static_cast<std::size_t>(k) + static_cast<std::size_t>(l - 1)] = true;
        }
        int in = src.in(v, l);
        if (in >= 0 && !seen[static_cast<std::size_t>(in)]) {
          auto w = static_cast<std::size_t>(in);
          seen[w] = true;
          plan.vertices.push_back(w);
          plan.steps.push_back({v, l, false, w});
          tree_edge[w * static_cast<std::size_t>(k) + static_cast<std::size_t>(l - 1)] = true;
        }
      }
    }
    for (std::size_t v : plan.vertices)
      for (int l = 1; l <= k; ++l) {
        int o = src.out(v, l);
        if (o >= 0 && !tree_edge[v * static_cast<std::size_t>(k) + static_cast<std::size_t>(l - 1)])
          plan.closing.push_back({v, l, static_cast<std::size_t>(o)});
      }
    plans.push_back(std::move(plan));
  };
  if (first >= 0) build(static_cast<std::size_t>(first));
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) build(v);
  return plans;
}

}  // namespace detail

std::uint64_t count_morphisms(const LabeledGraph& h, const LabeledGraph& x) {
  if (h.rank() != x.rank()) throw Error(ErrorCode::InvalidInput, "rank mismatch");
  Precover ph(h);
  Precover px(x);
  detail::PrecoverTarget target{px};
  std::vector<int> image(ph.size(), -1);
  std::uint64_t total = 1;
  for (const auto& plan : detail::make_plans(ph)) {
    total *= detail::count_lifts(plan, target, image);
    if (total == 0) break;
  }
  return total;
}

void for_each_morphism(const LabeledGraph& h, const LabeledGraph& x,
                       const MorphismVisitor& visit) {
  if (h.rank() != x.rank()) throw Error(ErrorCode::InvalidInput, "rank mismatch");
  Precover ph(h);
  Precover px(x);
  detail::PrecoverTarget target{px};
  auto plans = detail::make_plans(ph);
  std::vector<int> image(ph.size(), -1);
  std::vector<std::size_t> out(ph.size());
  bool stop = false;
  std::function<void(std::size_t)> recurse = [&](std::size_t c) {
    if (stop) return;
    if (c == plans.size()) {
      for (std::size_t v = 0; v < ph.size(); ++v) out[v] = static_cast<std::size_t>(image[v]);
      if (!visit(out)) stop = true;
      return;
    }
    for (std::size_t y = 0; y < px.size() && !stop; ++y)
      if (detail::lift(plans[c], target, y, image)) recurse(c + 1);
  };
  recurse(0);
}

bool has_morphism(const LabeledGraph& h, const LabeledGraph& x) {
  return count_morphisms(h, x) > 0;
}

bool has_based_morphism(const BasedGraph& h, const BasedGraph& x) {
  Precover ph(h.graph);
  Precover px(x.graph);
  auto root = static_cast<std::ptrdiff_t>(ph.index_of(h.basepoint));
  auto plans = detail::make_plans(ph, root);
  std::vector<int> image(ph.size(), -1);
  return detail::lift(plans.front(), detail::PrecoverTarget{px}, px.index_of(x.basepoint),
                      image);
}

}  // namespace stallings
