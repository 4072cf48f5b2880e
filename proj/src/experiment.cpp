#include "stallings/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "stallings/completion.hpp"

namespace stallings {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1 + z2 / t;
  const double center = (p + z2 / (2 * t)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / t + z2 / (4 * t * t));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

DixonReport run_dixon(const LabeledGraph& condition, std::size_t n, std::uint64_t trials,
                      std::uint64_t seed, unsigned threads, std::size_t budget) {
  auto start = std::chrono::steady_clock::now();
  check_completion_input(condition, n);
  const Precover cond(condition);
  std::vector<Verdict> verdicts(trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t k; (k = next.fetch_add(1)) < trials;) {
      Rng rng = Rng::for_trial(seed, k);
      PermTuple t = random_completion_tuple(cond, n, rng);
      verdicts[k] = classify(t, budget, rng).verdict;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  DixonReport r;
  r.rank = condition.rank();
  r.n = n;
  r.trials = trials;
  r.seed = seed;
  for (Verdict v : verdicts) ++r.counts[static_cast<std::size_t>(v)];
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

io::Json to_json(const DixonReport& r, const std::string& command) {
  io::Json j;
  j["command"] = command;
  j["seed"] = r.seed;
  j["rank"] = r.rank;
  j["n"] = r.n;
  j["trials"] = r.trials;
  io::Json counts, freqs;
  for (std::size_t i = 0; i < kVerdictCount; ++i) {
    auto v = static_cast<Verdict>(i);
    std::string name(to_string(v));
    counts[name] = r.counts[i];
    Interval ci = wilson_interval(r.counts[i], r.trials);
    io::Json f;
    f["frequency"] = r.frequency(v);
    f["wilson95"] = {ci.lo, ci.hi};
    freqs[name] = std::move(f);
  }
  j["counts"] = std::move(counts);
  j["frequencies"] = std::move(freqs);
  j["alternating_target"] = std::ldexp(1.0, -r.rank);
  j["wall_time_seconds"] = r.wall_seconds;
  return j;
}

}  // namespace stallings
