#include "stallings/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stallings/error.hpp"

namespace stallings {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p])
      throw Error(ErrorCode::InvalidInput, "images do not form a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  Permutation result(degree);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
  };
  while (true) {
    skip_space();
    if (i >= text.size()) break;
    if (text[i] != '(')
      throw Error(ErrorCode::InvalidInput, "expected '(' in cycle notation");
    ++i;
    std::vector<Point> cycle;
    while (true) {
      skip_space();
      if (i >= text.size())
        throw Error(ErrorCode::InvalidInput, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t value = 0;
      bool any = false;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
        any = true;
      }
      if (!any || value < 1 || value > degree)
        throw Error(ErrorCode::InvalidInput, "cycle entry out of range");
      cycle.push_back(static_cast<Point>(value - 1));
    }
    std::vector<Point> images(result.images_);
    for (std::size_t j = 0; j < cycle.size(); ++j)
      images[cycle[j]] = result.images_[cycle[(j + 1) % cycle.size()]];
    result = Permutation(std::move(images));
  }
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::then(const Permutation& other) const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    p.images_[i] = other.images_[images_[i]];
  return p;
}

Permutation Permutation::pow(long long exponent) const {
  Permutation base = exponent < 0 ? inverse() : *this;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  // Rotate each cycle by e mod its length.
  Permutation result(images_.size());
  std::vector<bool> seen(images_.size(), false);
  std::vector<Point> cycle;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    cycle.clear();
    for (Point x = static_cast<Point>(start); !seen[x]; x = base.images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    std::size_t shift = static_cast<std::size_t>(e % cycle.size());
    for (std::size_t j = 0; j < cycle.size(); ++j)
      result.images_[cycle[j]] = cycle[(j + shift) % cycle.size()];
  }
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

int Permutation::sign() const {
  std::size_t even_cycles = 0;
  for (std::size_t len : cycle_lengths())
    if (len % 2 == 0) ++even_cycles;
  return even_cycles % 2 == 0 ? 1 : -1;
}

std::vector<std::size_t> Permutation::cycle_lengths() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

std::size_t Permutation::fixed_point_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] == i) ++count;
  return count;
}

std::string Permutation::cycles_str() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    bool first = true;
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

PermTuple::PermTuple(std::vector<Permutation> perms) : perms_(std::move(perms)) {
  if (perms_.empty())
    throw Error(ErrorCode::InvalidInput, "a tuple needs at least one generator");
  degree_ = perms_.front().degree();
  inverses_.reserve(perms_.size());
  for (const Permutation& p : perms_) {
    if (p.degree() != degree_)
      throw Error(ErrorCode::InvalidInput, "tuple permutations differ in degree");
    inverses_.push_back(p.inverse());
  }
}

PermTuple PermTuple::identity(std::size_t degree, int rank) {
  return PermTuple(std::vector<Permutation>(static_cast<std::size_t>(rank),
                                            Permutation(degree)));
}

Point act(const PermTuple& t, const Word& w, Point x) {
  for (const Letter& l : w.letters()) x = t.apply(l, x);
  return x;
}

Permutation evaluate(const PermTuple& t, const Word& w) {
  std::vector<Point> images(t.degree());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = static_cast<Point>(i);
  for (const Letter& l : w.letters()) {
    const Permutation& p = l.sign > 0 ? t.perm(l.generator) : t.inverse(l.generator);
    for (Point& y : images) y = p(y);
  }
  return Permutation(std::move(images));
}

std::vector<Permutation> group_closure(std::span<const Permutation> gens,
                                       std::size_t degree) {
  std::set<std::vector<Point>> seen;
  std::vector<Permutation> elements{Permutation(degree)};
  seen.insert({elements.front().images().begin(), elements.front().images().end()});
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const Permutation& g : gens) {
      Permutation next = elements[i].then(g);
      std::vector<Point> key(next.images().begin(), next.images().end());
      if (seen.insert(std::move(key)).second) elements.push_back(std::move(next));
    }
  }
  return elements;
}

}  // namespace stallings
