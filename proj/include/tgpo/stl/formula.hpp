#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tgpo/util/error.hpp"

namespace tgpo::stl {

// Closed integer step interval attached to a temporal operator.
struct Interval {
  int lo = 0;
  int hi = 0;

  Interval() = default;
  Interval(int a, int b) : lo(a), hi(b) {
    if (a < 0 || a > b) {
      throw Error("invalid interval [" + std::to_string(a) + "," + std::to_string(b) + "]");
    }
  }
  bool operator==(const Interval&) const = default;
};

// Immutable formula AST. Copies share nodes and are safe across threads.
class Formula {
 public:
  enum class Kind { True, Predicate, Not, And, Or, Eventually, Always, Until };

  static Formula boolean_true();
  static Formula predicate(std::string label);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula eventually(Interval iv, Formula f);
  static Formula always(Interval iv, Formula f);
  static Formula until(Interval iv, Formula lhs, Formula rhs);

  Kind kind() const;
  const Interval& interval() const;         // temporal nodes only
  const std::string& label() const;         // Predicate only
  const std::vector<Formula>& children() const;

  bool structurally_equal(const Formula& other) const;

  // Number of nodes of the given kind in the tree.
  int count(Kind k) const;

  // Stable identity of the underlying node, used for monitor memoisation.
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Push negations down to predicates. `Not` survives only directly above a
// predicate; `!True` and negated Until are rejected.
Formula normalize(const Formula& f);

// Canonical text form; parse(format(f)) is structurally equal to f.
std::string format(const Formula& f);

}  // namespace tgpo::stl
