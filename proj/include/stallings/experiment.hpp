#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "stallings/graph.hpp"
#include "stallings/io.hpp"
#include "stallings/recognition.hpp"

namespace stallings {

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Wilson score interval at the given normal quantile (1.96 for 95%).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

inline constexpr std::size_t kVerdictCount = 5;

struct DixonReport {
  int rank = 2;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::array<std::uint64_t, kVerdictCount> counts{};  // indexed by Verdict
  double wall_seconds = 0;

  std::uint64_t count(Verdict v) const { return counts[static_cast<std::size_t>(v)]; }
  double frequency(Verdict v) const {
    return trials ? static_cast<double>(count(v)) / static_cast<double>(trials) : 0.0;
  }
};

// Classifies the image of `trials` random completions of the condition.
// Trial k draws its completion and its classification from
// Rng::for_trial(seed, k), so the counts do not depend on `threads`.
DixonReport run_dixon(const LabeledGraph& condition, std::size_t n, std::uint64_t trials,
                      std::uint64_t seed, unsigned threads = 0,
                      std::size_t budget = kDefaultBudget);

// Report document; the wall time is the only field that varies between replays.
io::Json to_json(const DixonReport& r, const std::string& command);

}  // namespace stallings
