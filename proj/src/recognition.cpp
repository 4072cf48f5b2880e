#include "stallings/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stallings/detail/union_find.hpp"
#include "stallings/error.hpp"

namespace stallings {

using detail::UnionFind;

namespace {

Partition classes(UnionFind& uf, std::size_t n) {
  std::vector<std::vector<Point>> by_root(n);
  for (std::size_t x = 0; x < n; ++x) by_root[uf.find(x)].push_back(static_cast<Point>(x));
  Partition out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

// Finest block system in which 0 and beta share a block.
Partition minimal_blocks(const PermTuple& t, Point beta) {
  std::size_t n = t.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue{{0, beta}};
  uf.unite(0, beta);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    for (const Permutation& g : t.perms()) {
      Point gx = g(x), gy = g(y);
      if (uf.unite(gx, gy)) queue.emplace_back(gx, gy);
    }
  }
  return classes(uf, n);
}

double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

bool any_odd(const PermTuple& t) {
  return std::any_of(t.perms().begin(), t.perms().end(),
                     [](const Permutation& p) { return !p.is_even(); });
}

Word random_word(Rng& rng, int rank, std::size_t max_len) {
  std::size_t len = 1 + rng.below(max_len);
  std::vector<Letter> letters;
  letters.reserve(len);
  while (letters.size() < len) {
    Letter l{1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rank))),
             rng.below(2) == 0 ? 1 : -1};
    if (!letters.empty() && letters.back().cancels(l)) continue;
    letters.push_back(l);
  }
  return Word(rank, std::move(letters));
}

bool closed_partition(const PermTuple& t, const Partition& parts, bool blocks) {
  std::size_t n = t.degree();
  std::vector<std::size_t> part_of(n, SIZE_MAX);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Point x : parts[i]) {
      if (x >= n || part_of[x] != SIZE_MAX) return false;
      part_of[x] = i;
      ++covered;
    }
  if (covered != n || parts.size() < 2) return false;
  for (const Permutation& g : t.perms())
    for (const auto& part : parts) {
      std::size_t image = part_of[g(part.front())];
      for (Point x : part)
        if (part_of[g(x)] != image) return false;
      if (!blocks && image != part_of[part.front()]) return false;
    }
  if (blocks)
    for (const auto& part : parts)
      if (part.size() < 2 || part.size() != parts.front().size()) return false;
  return true;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Intransitive: return "Intransitive";
    case Verdict::Imprimitive: return "Imprimitive";
    case Verdict::Alternating: return "Alternating";
    case Verdict::Symmetric: return "Symmetric";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Intransitive, Verdict::Imprimitive, Verdict::Alternating,
                    Verdict::Symmetric, Verdict::Undetermined})
    if (to_string(v) == s) return v;
  throw Error(ErrorCode::InvalidInput, "unknown verdict: " + s);
}

bool is_prime(std::size_t q) {
  if (q < 2) return false;
  for (std::size_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

OrbitResult is_transitive(const PermTuple& t) {
  std::size_t n = t.degree();
  UnionFind uf(n);
  for (const Permutation& g : t.perms())
    for (std::size_t x = 0; x < n; ++x) uf.unite(x, g(static_cast<Point>(x)));
  OrbitResult r;
  r.orbits = classes(uf, n);
  r.transitive = r.orbits.size() <= 1;
  return r;
}

PrimitivityResult is_primitive(const PermTuple& t) {
  if (!is_transitive(t).transitive)
    throw Error(ErrorCode::NotTransitive, "primitivity is only defined for transitive actions");
  for (Point beta = 1; beta < t.degree(); ++beta) {
    Partition blocks = minimal_blocks(t, beta);
    if (blocks.size() > 1) return {false, std::move(blocks)};
  }
  return {true, {}};
}

std::optional<std::size_t> tn_prime(const Permutation& p) {
  std::size_t n = p.degree();
  if (n < 5) return std::nullopt;
  std::vector<std::size_t> lengths = p.cycle_lengths();
  std::vector<std::size_t> count(n + 1, 0);
  for (std::size_t l : lengths) ++count[l];
  for (std::size_t q = 2; q + 3 <= n; ++q) {
    if (count[q] != 1 || !is_prime(q)) continue;
    bool clean = true;
    for (std::size_t m = 2 * q; m <= n && clean; m += q) clean = count[m] == 0;
    if (clean) return q;
  }
  return std::nullopt;
}

std::optional<TnWitness> find_tn_element(const PermTuple& t, std::size_t budget, Rng& rng,
                                         std::size_t* evaluations) {
  std::size_t used = 0;
  auto done = [&](std::optional<TnWitness> w) {
    if (evaluations) *evaluations = used;
    return w;
  };
  std::size_t n = t.degree();
  if (n < 5) return done(std::nullopt);
  // A power of g has a lone q-cycle only if g itself does, so checking each
  // generator covers all of its powers.
  for (int j = 1; j <= t.rank() && used < budget; ++j) {
    ++used;
    if (auto q = tn_prime(t.perm(j))) return done(TnWitness{Word(t.rank(), {{j, 1}}), *q});
  }
  std::size_t max_len = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(4 * std::log2(static_cast<double>(n)))));
  while (used < budget) {
    ++used;
    Word w = random_word(rng, t.rank(), max_len);
    if (auto q = tn_prime(evaluate(t, w))) return done(TnWitness{std::move(w), *q});
  }
  return done(std::nullopt);
}

Classification classify(const PermTuple& t, std::size_t budget, Rng& rng) {
  Classification c;
  OrbitResult orbits = is_transitive(t);
  if (!orbits.transitive) {
    c.verdict = Verdict::Intransitive;
    c.partition = std::move(orbits.orbits);
    return c;
  }
  PrimitivityResult prim = is_primitive(t);
  if (!prim.primitive) {
    c.verdict = Verdict::Imprimitive;
    c.partition = std::move(prim.blocks);
    return c;
  }
  const Verdict full = any_odd(t) ? Verdict::Symmetric : Verdict::Alternating;
  if (auto w = find_tn_element(t, budget, rng, &c.evaluations)) {
    c.verdict = full;
    c.witness = std::move(w);
    return c;
  }
  if (t.degree() <= kClosureDegree) {
    c.closure_order = group_closure(t.perms(), t.degree()).size();
    double order = static_cast<double>(c.closure_order);
    double nf = factorial(t.degree());
    c.verdict = (order == nf || 2 * order == nf) ? full : Verdict::Undetermined;
  }
  return c;
}

bool verify_classification(const PermTuple& t, const Classification& c) {
  std::size_t n = t.degree();
  switch (c.verdict) {
    case Verdict::Intransitive:
      return closed_partition(t, c.partition, false);
    case Verdict::Imprimitive:
      return closed_partition(t, c.partition, true) && c.partition.size() < n;
    case Verdict::Undetermined:
      return true;
    case Verdict::Alternating:
    case Verdict::Symmetric:
      break;
  }
  if (any_odd(t) != (c.verdict == Verdict::Symmetric)) return false;
  if (!is_transitive(t).transitive || !is_primitive(t).primitive) return false;
  if (!c.witness) {
    if (n > kClosureDegree) return false;
    double order = static_cast<double>(group_closure(t.perms(), n).size());
    double nf = factorial(n);
    return order == nf || 2 * order == nf;
  }
  const std::size_t q = c.witness->q;
  if (!is_prime(q) || q + 3 > n) return false;
  Permutation x = evaluate(t, c.witness->word);
  std::vector<std::size_t> lengths = x.cycle_lengths();
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (std::size_t l : lengths)
    if (l != q) x = x.pow(static_cast<long long>(l));
  std::vector<std::size_t> left = x.cycle_lengths();
  std::size_t moved = 0, cycles = 0;
  for (std::size_t l : left)
    if (l > 1) {
      moved += l;
      ++cycles;
    }
  return cycles == 1 && moved == q;
}

}  // namespace stallings
