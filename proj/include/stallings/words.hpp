#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stallings {

// One letter of a word in the free group F_k: a generator index in 1..k
// together with an exponent of +1 or -1.
struct Letter {
  int generator = 1;
  int sign = 1;

  Letter inverse() const { return {generator, -sign}; }
  bool cancels(const Letter& other) const {
    return generator == other.generator && sign == -other.sign;
  }
  auto operator<=>(const Letter&) const = default;
};

// A word over a_1..a_k and their inverses. Words are stored exactly as
// written; reduction is explicit (free_reduce / cyclic_reduce).
class Word {
 public:
  explicit Word(int rank = 1);
  Word(int rank, std::vector<Letter> letters);

  int rank() const { return rank_; }
  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  bool is_reduced() const;
  bool is_cyclically_reduced() const;

  Word inverse() const;
  // Concatenation without cancellation.
  Word operator*(const Word& other) const;
  Word power(int exponent) const;

  // Lowercase letters a, b, c, ... for generators, uppercase for inverses.
  std::string str() const;

  bool operator==(const Word&) const = default;

 private:
  int rank_;
  std::vector<Letter> letters_;
};

constexpr int kMaxRank = 26;

Word parse_word(std::string_view text, int rank);
std::vector<Word> parse_words(std::string_view comma_separated, int rank);

Word free_reduce(const Word& w);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

// w == conjugator * core * conjugator^-1 after free reduction.
CyclicReduction cyclic_reduce(const Word& w);

struct PowerDecomposition {
  Word root;
  int exponent = 1;
};

// Splits a nonempty word into root^exponent with the root not a proper power.
PowerDecomposition power_decompose(const Word& w);

}  // namespace stallings
