#include "stallings/words.hpp"

#include <algorithm>

#include "stallings/error.hpp"

namespace stallings {

namespace {

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank)
    throw Error(ErrorCode::InvalidInput,
                "rank must be in 1.." + std::to_string(kMaxRank) + ", got " +
                    std::to_string(rank));
}

char letter_char(const Letter& l) {
  char base = l.sign > 0 ? 'a' : 'A';
  return static_cast<char>(base + l.generator - 1);
}

}  // namespace

Word::Word(int rank) : rank_(rank) { check_rank(rank); }

Word::Word(int rank, std::vector<Letter> letters)
    : rank_(rank), letters_(std::move(letters)) {
  check_rank(rank);
  for (const Letter& l : letters_) {
    if (l.generator < 1 || l.generator > rank_)
      throw Error(ErrorCode::InvalidGenerator,
                  "generator index " + std::to_string(l.generator) +
                      " outside 1.." + std::to_string(rank_));
    if (l.sign != 1 && l.sign != -1)
      throw Error(ErrorCode::InvalidInput, "letter sign must be +1 or -1");
  }
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i].cancels(letters_[i - 1])) return false;
  return true;
}

bool Word::is_cyclically_reduced() const {
  if (!is_reduced()) return false;
  return letters_.size() < 2 || !letters_.front().cancels(letters_.back());
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.push_back(it->inverse());
  return Word(rank_, std::move(out));
}

Word Word::operator*(const Word& other) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::max(rank_, other.rank_), std::move(out));
}

Word Word::power(int exponent) const {
  Word base = exponent < 0 ? inverse() : *this;
  std::vector<Letter> out;
  for (int i = 0; i < std::abs(exponent); ++i)
    out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  return Word(rank_, std::move(out));
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_) s.push_back(letter_char(l));
  return s;
}

Word parse_word(std::string_view text, int rank) {
  check_rank(rank);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    Letter l;
    if (c >= 'a' && c <= 'z') {
      l = {c - 'a' + 1, 1};
    } else if (c >= 'A' && c <= 'Z') {
      l = {c - 'A' + 1, -1};
    } else {
      throw Error(ErrorCode::InvalidGenerator,
                  std::string("not a generator letter: '") + c + "'");
    }
    if (l.generator > rank)
      throw Error(ErrorCode::InvalidGenerator,
                  std::string("letter '") + c + "' exceeds rank " +
                      std::to_string(rank));
    letters.push_back(l);
  }
  return Word(rank, std::move(letters));
}

std::vector<Word> parse_words(std::string_view text, int rank) {
  std::vector<Word> words;
  if (text.empty()) return words;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma - start);
    words.push_back(parse_word(piece, rank));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return words;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (!stack.empty() && stack.back().cancels(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(w.rank(), std::move(stack));
}

CyclicReduction cyclic_reduce(const Word& w) {
  Word reduced = free_reduce(w);
  auto letters = reduced.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return {Word(w.rank(), {letters.begin() + lo, letters.begin() + hi}),
          Word(w.rank(), {letters.begin(), letters.begin() + lo})};
}

PowerDecomposition power_decompose(const Word& w) {
  if (w.empty())
    throw Error(ErrorCode::DegenerateInput, "identity word has no root");
  auto letters = w.letters();
  const std::size_t len = letters.size();
  // Smallest period dividing the length gives the maximal exponent.
  for (std::size_t period = 1; period <= len; ++period) {
    if (len % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < len && periodic; ++i)
      periodic = letters[i] == letters[i - period];
    if (periodic)
      return {Word(w.rank(), {letters.begin(), letters.begin() + period}),
              static_cast<int>(len / period)};
  }
  return {w, 1};
}

}  // namespace stallings
