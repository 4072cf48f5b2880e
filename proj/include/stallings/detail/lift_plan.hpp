#pragma once

// Lifting a connected precover into a target graph: once the image of one
// vertex is fixed, every other image is forced along a spanning tree, and the
// remaining edges only need checking.

#include <cstddef>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/perm.hpp"

namespace stallings::detail {

struct TreeStep {
  std::size_t parent;
  int label;
  bool forward;  // parent --label--> child when true
  std::size_t child;
};

struct ClosingEdge {
  std::size_t from;
  int label;
  std::size_t to;
};

struct ComponentPlan {
  std::size_t root = 0;
  std::vector<std::size_t> vertices;  // positions in the source precover
  std::vector<TreeStep> steps;
  std::vector<ClosingEdge> closing;
};

// One plan per connected component of src; the component containing `first`
// (if any) comes first and is rooted there.
std::vector<ComponentPlan> make_plans(const Precover& src,
                                      std::ptrdiff_t first = -1);

struct TupleTarget {
  const PermTuple& t;
  std::size_t size() const { return t.degree(); }
  int out(std::size_t v, int label) const {
    return static_cast<int>(t.perm(label)(static_cast<Point>(v)));
  }
  int in(std::size_t v, int label) const {
    return static_cast<int>(t.inverse(label)(static_cast<Point>(v)));
  }
};

struct PrecoverTarget {
  const Precover& p;
  std::size_t size() const { return p.size(); }
  int out(std::size_t v, int label) const { return p.out(v, label); }
  int in(std::size_t v, int label) const { return p.in(v, label); }
};

// Fills image[] for the plan's vertices starting from root -> x; false when
// the component does not lift there.
template <class Target>
bool lift(const ComponentPlan& plan, const Target& target, std::size_t x,
          std::vector<int>& image) {
  image[plan.root] = static_cast<int>(x);
  for (const TreeStep& s : plan.steps) {
    auto from = static_cast<std::size_t>(image[s.parent]);
    int y = s.forward ? target.out(from, s.label) : target.in(from, s.label);
    if (y < 0) return false;
    image[s.child] = y;
  }
  for (const ClosingEdge& e : plan.closing) {
    if (target.out(static_cast<std::size_t>(image[e.from]), e.label) != image[e.to])
      return false;
  }
  return true;
}

template <class Target>
std::size_t count_lifts(const ComponentPlan& plan, const Target& target,
                        std::vector<int>& image) {
  std::size_t count = 0;
  for (std::size_t x = 0; x < target.size(); ++x)
    if (lift(plan, target, x, image)) ++count;
  return count;
}

}  // namespace stallings::detail
