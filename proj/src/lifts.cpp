#include "stallings/lifts.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "stallings/completion.hpp"
#include "stallings/detail/lift_plan.hpp"
#include "stallings/detail/union_find.hpp"
#include "stallings/error.hpp"
#include "stallings/rng.hpp"

namespace stallings {

using detail::UnionFind;

namespace {

// Merges classes until every class has at most one out- and one in-neighbour
// class per label.
void close_under_folding(const Precover& p, UnionFind& uf) {
  const std::size_t n = p.size();
  bool changed = true;
  std::vector<std::ptrdiff_t> seen(n);
  while (changed) {
    changed = false;
    for (int l = 1; l <= p.rank(); ++l) {
      for (int dir = 0; dir < 2; ++dir) {
        std::fill(seen.begin(), seen.end(), -1);
        for (std::size_t v = 0; v < n; ++v) {
          int w = dir == 0 ? p.out(v, l) : p.in(v, l);
          if (w < 0) continue;
          std::size_t rv = uf.find(v);
          std::size_t rw = uf.find(static_cast<std::size_t>(w));
          if (seen[rv] < 0) {
            seen[rv] = static_cast<std::ptrdiff_t>(rw);
          } else if (uf.find(static_cast<std::size_t>(seen[rv])) != rw) {
            uf.unite(static_cast<std::size_t>(seen[rv]), rw);
            changed = true;
          }
        }
      }
    }
  }
}

std::vector<std::size_t> roots(UnionFind& uf) {
  std::vector<std::size_t> r(uf.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = uf.find(i);
  return r;
}

QuotientDescriptor describe(const LabeledGraph& u, const std::vector<std::size_t>& root,
                            std::size_t g_vertices, long chi_g) {
  QuotientDescriptor d;
  std::set<VertexId> vs;
  d.vertex_map.resize(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    d.vertex_map[i] = u.vertices()[root[i]];
    vs.insert(d.vertex_map[i]);
  }
  std::set<Edge> es;
  for (const Edge& e : u.edges())
    es.insert({e.label, d.vertex_map[u.index_of(e.from)], d.vertex_map[u.index_of(e.to)]});
  d.quotient = LabeledGraph(u.rank(), {vs.begin(), vs.end()}, {es.begin(), es.end()});
  d.chi_rel = d.quotient.euler_characteristic() - chi_g;
  std::set<std::size_t> g_images(root.begin(), root.begin() + static_cast<std::ptrdiff_t>(g_vertices));
  d.g_injective = g_images.size() == g_vertices;
  return d;
}

template <class Target>
std::uint64_t product_of_lifts(const std::vector<detail::ComponentPlan>& plans,
                               const Target& target, std::size_t src_size) {
  std::vector<int> image(src_size, -1);
  std::uint64_t total = 1;
  for (const auto& plan : plans) {
    total *= detail::count_lifts(plan, target, image);
    if (total == 0) break;
  }
  return total;
}

void check_union_size(const LabeledGraph& g, const LabeledGraph& h, std::size_t max_vertices) {
  if (g.rank() != h.rank())
    throw Error(ErrorCode::InvalidInput, "graphs have different ranks");
  if (g.num_vertices() + h.num_vertices() > max_vertices)
    throw Error(ErrorCode::TooManyQuotients,
                "quotient enumeration is limited to " + std::to_string(max_vertices) +
                    " vertices; g ⊔ h has " +
                    std::to_string(g.num_vertices() + h.num_vertices()));
}

struct Statistic {
  explicit Statistic(const LiftTarget& t) : src(t.h) {
    if (t.basepoint) {
      based = true;
      plans = detail::make_plans(src, static_cast<std::ptrdiff_t>(src.index_of(*t.basepoint)));
      plans.resize(1);
    } else {
      plans = detail::make_plans(src);
    }
  }
  std::uint64_t operator()(const PermTuple& t) const {
    return product_of_lifts(plans, detail::TupleTarget{t}, src.size());
  }
  Precover src;
  bool based = false;
  std::vector<detail::ComponentPlan> plans;
};

}  // namespace

std::uint64_t lifts_into(const LabeledGraph& h, const PermTuple& t) {
  Precover p(h);
  return product_of_lifts(detail::make_plans(p), detail::TupleTarget{t}, p.size());
}

std::size_t fixed_points(const PermTuple& t, const BasedGraph& h) {
  return static_cast<std::size_t>(Statistic(LiftTarget{h.graph, h.basepoint})(t));
}

std::vector<QuotientDescriptor> enumerate_quotients(const LabeledGraph& g, const LabeledGraph& h,
                                                    std::size_t max_vertices) {
  check_union_size(g, h, max_vertices);
  LabeledGraph u = disjoint_union(g, h);
  Precover p(u);
  const std::size_t n = p.size();
  const long chi_g = g.euler_characteristic();

  UnionFind start(n);
  close_under_folding(p, start);
  std::vector<std::vector<std::size_t>> order{roots(start)};
  std::set<std::vector<std::size_t>> seen{order.front()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<std::size_t> current = order[i];
    std::vector<std::size_t> reps;
    for (std::size_t v = 0; v < n; ++v)
      if (current[v] == v) reps.push_back(v);
    for (std::size_t a = 0; a < reps.size(); ++a)
      for (std::size_t b = a + 1; b < reps.size(); ++b) {
        UnionFind uf(n);
        for (std::size_t v = 0; v < n; ++v) uf.unite(v, current[v]);
        uf.unite(reps[a], reps[b]);
        close_under_folding(p, uf);
        std::vector<std::size_t> next = roots(uf);
        if (seen.insert(next).second) order.push_back(std::move(next));
      }
  }
  std::vector<QuotientDescriptor> out;
  out.reserve(order.size());
  for (const auto& root : order) out.push_back(describe(u, root, g.num_vertices(), chi_g));
  return out;
}

RelativeRank relative_rank(const LabeledGraph& g, const LabeledGraph& h, std::size_t max_vertices) {
  std::vector<QuotientDescriptor> all = enumerate_quotients(g, h, max_vertices);
  RelativeRank rr;
  bool any = false;
  for (const auto& q : all)
    if (q.g_injective && (!any || q.chi_rel > rr.r)) {
      rr.r = q.chi_rel;
      any = true;
    }
  for (auto& q : all)
    if (q.g_injective && q.chi_rel == rr.r) rr.critical.push_back(std::move(q));
  return rr;
}

LeadingTerm expected_lifts_leading(const LabeledGraph& g, const LabeledGraph& h,
                                   std::size_t max_vertices) {
  RelativeRank rr = relative_rank(g, h, max_vertices);
  return {static_cast<long long>(rr.critical.size()), rr.r};
}

LeadingTerm variance_leading(const LabeledGraph& g, const LabeledGraph& h,
                             std::size_t max_vertices) {
  LeadingTerm first = expected_lifts_leading(g, h, max_vertices);
  LeadingTerm second = expected_lifts_leading(g, disjoint_union(h, h), max_vertices);
  if (second.exponent == 2 * first.exponent)
    return {second.coefficient - first.coefficient * first.coefficient, second.exponent};
  // Pairs of independent images give second.exponent >= 2 * first.exponent.
  return second;
}

std::uint64_t injective_extensions(const LabeledGraph& g, const QuotientDescriptor& q,
                                   const PermTuple& t) {
  if (!q.g_injective) return 0;
  Precover k(q.quotient);
  const std::size_t n = t.degree();
  std::vector<int> forced(k.size(), -1);
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    forced[k.index_of(q.vertex_map[i])] = static_cast<int>(i);
  for (const Edge& e : g.edges()) {
    // The inclusion must be a graph map into the completion.
    if (t.perm(e.label)(static_cast<Point>(g.index_of(e.from))) !=
        static_cast<Point>(g.index_of(e.to)))
      return 0;
  }
  auto plans = detail::make_plans(k);
  detail::TupleTarget target{t};
  std::vector<int> image(k.size(), -1);
  std::vector<char> used(n, 0);
  std::uint64_t count = 0;
  auto place = [&](auto&& self, std::size_t c) -> void {
    if (c == plans.size()) {
      ++count;
      return;
    }
    const auto& plan = plans[c];
    for (std::size_t x = 0; x < n; ++x) {
      if (!detail::lift(plan, target, x, image)) continue;
      bool ok = true;
      std::vector<std::size_t> mine;
      for (std::size_t v : plan.vertices) {
        auto y = static_cast<std::size_t>(image[v]);
        if ((forced[v] >= 0 && forced[v] != image[v]) || used[y]) {
          ok = false;
          break;
        }
        used[y] = 1;
        mine.push_back(y);
      }
      if (ok) self(self, c + 1);
      for (std::size_t y : mine) used[y] = 0;
    }
  };
  place(place, 0);
  return count;
}

LiftStats monte_carlo_lift_stats(const LabeledGraph& g, const LiftTarget& target, std::size_t n,
                                 std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  check_completion_input(g, n);
  if (target.h.rank() != g.rank())
    throw Error(ErrorCode::InvalidInput, "condition and target have different ranks");
  const Precover cond(g);
  const Statistic stat(target);
  std::vector<std::uint64_t> values(trials);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(trials, 1)));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i = next++; i < trials; i = next++) {
      Rng rng = Rng::for_trial(seed, i);
      values[i] = stat(random_completion_tuple(cond, n, rng));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  LiftStats s;
  s.trials = trials;
  s.n = n;
  s.seed = seed;
  if (trials == 0) return s;
  long double sum = 0;
  for (std::uint64_t v : values) sum += static_cast<long double>(v);
  long double mean = sum / static_cast<long double>(trials);
  long double sq = 0;
  for (std::uint64_t v : values) sq += (v - mean) * (v - mean);
  s.mean = static_cast<double>(mean);
  s.variance = trials > 1 ? static_cast<double>(sq / static_cast<long double>(trials - 1)) : 0.0;
  s.std_error = std::sqrt(s.variance / static_cast<double>(trials));
  return s;
}

LiftStats exact_lift_stats(const LabeledGraph& g, const LiftTarget& target, std::size_t n) {
  const Statistic stat(target);
  long double mean = 0, second = 0;
  std::uint64_t count = 0;
  for_each_completion(g, n, [&](const PermTuple& t, double w) {
    auto v = static_cast<long double>(stat(t));
    mean += w * v;
    second += w * v * v;
    ++count;
    return true;
  });
  LiftStats s;
  s.trials = count;
  s.n = n;
  s.mean = static_cast<double>(mean);
  s.variance = std::max(0.0, static_cast<double>(second - mean * mean));
  return s;
}

std::string csv_header() { return "n,trials,mean,variance,std_error,seed"; }

std::string csv_row(const LiftStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g,%.17g,%.17g,%llu", s.n,
                static_cast<unsigned long long>(s.trials), s.mean, s.variance, s.std_error,
                static_cast<unsigned long long>(s.seed));
  return buf;
}

}  // namespace stallings
