#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stallings/words.hpp"

namespace stallings {

using Point = std::uint32_t;

// A permutation of {0, ..., n-1}. Text and JSON forms are 1-based.
class Permutation {
 public:
  explicit Permutation(std::size_t degree = 0);
  explicit Permutation(std::vector<Point> images);

  // Cycle notation, 1-based: "(1 2 3)(4 5)". "()" or "" is the identity.
  static Permutation from_cycles(std::string_view cycles, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  // x -> other(this(x)): apply this first, then other.
  Permutation then(const Permutation& other) const;
  Permutation pow(long long exponent) const;

  bool is_identity() const;
  int sign() const;
  bool is_even() const { return sign() == 1; }
  std::vector<std::size_t> cycle_lengths() const;
  std::size_t fixed_point_count() const;
  std::string cycles_str() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

// A homomorphism F_k -> S_n given by the images of the generators; the
// inverses are stored alongside.
class PermTuple {
 public:
  PermTuple() = default;
  explicit PermTuple(std::vector<Permutation> perms);
  static PermTuple identity(std::size_t degree, int rank);

  std::size_t degree() const { return degree_; }
  int rank() const { return static_cast<int>(perms_.size()); }
  const Permutation& perm(int generator) const { return perms_[generator - 1]; }
  const Permutation& inverse(int generator) const {
    return inverses_[generator - 1];
  }
  std::span<const Permutation> perms() const { return perms_; }

  Point apply(const Letter& l, Point x) const {
    return l.sign > 0 ? perms_[l.generator - 1](x)
                      : inverses_[l.generator - 1](x);
  }

  bool operator==(const PermTuple& other) const { return perms_ == other.perms_; }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> perms_;
  std::vector<Permutation> inverses_;
};

// Image of x under the path reading w from x in the Schreier graph.
Point act(const PermTuple& t, const Word& w, Point x);
// The permutation x -> act(t, w, x).
Permutation evaluate(const PermTuple& t, const Word& w);

// All elements of the group generated by gens (degree <= 8 intended).
std::vector<Permutation> group_closure(std::span<const Permutation> gens,
                                       std::size_t degree);

}  // namespace stallings
