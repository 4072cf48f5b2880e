#include "stallings/completion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stallings/error.hpp"
#include "stallings/rng.hpp"

namespace stallings {

namespace {

struct Slots {
  std::vector<Point> no_out;
  std::vector<Point> no_in;
};

// Positions 0..|V|-1 are the condition's vertices, then the padding.
std::vector<Slots> missing_slots(const Precover& cond, std::size_t n) {
  std::vector<Slots> slots(static_cast<std::size_t>(cond.rank()));
  for (int l = 1; l <= cond.rank(); ++l) {
    Slots& s = slots[static_cast<std::size_t>(l - 1)];
    for (std::size_t v = 0; v < n; ++v) {
      if (v >= cond.size() || cond.out(v, l) < 0) s.no_out.push_back(static_cast<Point>(v));
      if (v >= cond.size() || cond.in(v, l) < 0) s.no_in.push_back(static_cast<Point>(v));
    }
  }
  return slots;
}

std::vector<Point> fixed_part(const Precover& cond, std::size_t n, int label) {
  std::vector<Point> images(n, 0);
  for (std::size_t v = 0; v < cond.size(); ++v)
    if (int w = cond.out(v, label); w >= 0) images[v] = static_cast<Point>(w);
  return images;
}

double factorial(std::size_t m) {
  double f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

void check_completion_input(const LabeledGraph& condition, std::size_t n) {
  if (!condition.is_precover())
    throw Error(ErrorCode::NotAPrecover, "condition graph is not a precover");
  if (condition.num_vertices() > n)
    throw Error(ErrorCode::ConditionTooLarge,
                "condition has " + std::to_string(condition.num_vertices()) +
                    " vertices, more than n = " + std::to_string(n));
}

std::vector<VertexId> completion_vertex_order(const LabeledGraph& condition,
                                              std::size_t n) {
  std::vector<VertexId> order(condition.vertices().begin(), condition.vertices().end());
  VertexId next = condition.max_vertex_id() + 1;
  while (order.size() < n) order.push_back(next++);
  return order;
}

LabeledGraph cover_from_tuple(const PermTuple& t, std::span<const VertexId> vertex_order) {
  std::vector<VertexId> vs(vertex_order.begin(), vertex_order.end());
  std::vector<Edge> edges;
  edges.reserve(t.degree() * static_cast<std::size_t>(t.rank()));
  for (int l = 1; l <= t.rank(); ++l)
    for (std::size_t i = 0; i < t.degree(); ++i)
      edges.push_back({l, vertex_order[i], vertex_order[t.perm(l)(static_cast<Point>(i))]});
  return LabeledGraph(t.rank(), std::move(vs), std::move(edges));
}

PermTuple random_completion_tuple(const Precover& cond, std::size_t n, Rng& rng) {
  std::vector<Slots> slots = missing_slots(cond, n);
  std::vector<Permutation> perms;
  perms.reserve(slots.size());
  for (int l = 1; l <= cond.rank(); ++l) {
    Slots& s = slots[static_cast<std::size_t>(l - 1)];
    std::vector<Point> images = fixed_part(cond, n, l);
    rng.shuffle(std::span<Point>(s.no_in));
    for (std::size_t i = 0; i < s.no_out.size(); ++i) images[s.no_out[i]] = s.no_in[i];
    perms.emplace_back(std::move(images));
  }
  return PermTuple(std::move(perms));
}

Completion random_completion(const CompletionSpec& spec, std::uint64_t trial) {
  check_completion_input(spec.condition, spec.n);
  Precover cond(spec.condition);
  Rng rng = Rng::for_trial(spec.seed, trial);
  Completion c;
  c.tuple = random_completion_tuple(cond, spec.n, rng);
  c.vertex_order = completion_vertex_order(spec.condition, spec.n);
  c.cover = cover_from_tuple(c.tuple, c.vertex_order);
  return c;
}

double completion_count(const LabeledGraph& condition, std::size_t n) {
  check_completion_input(condition, n);
  Precover cond(condition);
  double count = 1;
  for (const Slots& s : missing_slots(cond, n)) count *= factorial(s.no_out.size());
  return count;
}

void for_each_completion(const LabeledGraph& condition, std::size_t n,
                         const CompletionVisitor& visit, double max_count) {
  double count = completion_count(condition, n);
  if (count > max_count)
    throw Error(ErrorCode::TooManyCompletions,
                "condition has " + std::to_string(count) + " completions at n = " +
                    std::to_string(n));
  Precover cond(condition);
  std::vector<Slots> slots = missing_slots(cond, n);
  std::vector<std::vector<Point>> images;
  for (int l = 1; l <= cond.rank(); ++l) images.push_back(fixed_part(cond, n, l));
  const double weight = 1.0 / count;
  bool stop = false;

  // Odometer over labels: each label cycles through all orderings of no_in.
  auto recurse = [&](auto&& self, std::size_t label) -> void {
    if (stop) return;
    if (label == slots.size()) {
      std::vector<Permutation> perms;
      for (const auto& im : images) perms.emplace_back(im);
      if (!visit(PermTuple(std::move(perms)), weight)) stop = true;
      return;
    }
    Slots& s = slots[label];
    std::vector<Point> targets = s.no_in;  // sorted
    do {
      for (std::size_t i = 0; i < s.no_out.size(); ++i) images[label][s.no_out[i]] = targets[i];
      self(self, label + 1);
    } while (!stop && std::next_permutation(targets.begin(), targets.end()));
  };
  recurse(recurse, 0);
}

LabeledGraph equalize_labels(const LabeledGraph& g) {
  if (!g.is_precover()) throw Error(ErrorCode::NotAPrecover, "equalize_labels needs a precover");
  LabeledGraph out = g;
  for (const auto& comp : g.components()) {
    std::vector<VertexId> members = comp;
    std::vector<std::size_t> counts(static_cast<std::size_t>(g.rank()), 0);
    std::vector<std::vector<char>> has_out(static_cast<std::size_t>(g.rank()),
                                           std::vector<char>(members.size(), 0));
    for (const Edge& e : g.edges()) {
      auto it = std::lower_bound(members.begin(), members.end(), e.from);
      if (it == members.end() || *it != e.from) continue;
      ++counts[static_cast<std::size_t>(e.label - 1)];
      has_out[static_cast<std::size_t>(e.label - 1)][static_cast<std::size_t>(it - members.begin())] = 1;
    }
    std::size_t target = *std::max_element(counts.begin(), counts.end());
    for (int l = 1; l <= g.rank(); ++l) {
      auto j = static_cast<std::size_t>(l - 1);
      // New leaves lack every out-edge, so later labels can always find a
      // free vertex among the originals or the leaves.
      std::size_t next = 0;
      while (counts[j] < target) {
        while (has_out[j][next]) ++next;
        has_out[j][next] = 1;
        VertexId leaf = out.add_vertex();
        out.add_edge(l, members[next], leaf);
        ++counts[j];
        members.push_back(leaf);
        for (auto& flags : has_out) flags.push_back(0);
      }
    }
  }
  return out;
}

}  // namespace stallings
