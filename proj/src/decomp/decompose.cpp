#include "tgpo/decomp/decompose.hpp"

#include "tgpo/util/error.hpp"

namespace tgpo::decomp {
namespace {

using stl::Formula;
using Kind = Formula::Kind;

class Builder {
 public:
  TaskSet run(const Formula& f) {
    walk(f, TimeExpr::constant(0));
    return std::move(ts_);
  }

 private:
  TaskSet ts_;

  int fresh_variable(int lo, int hi) {
    int id = ts_.n_variables();
    ts_.variables.push_back({id, lo, hi});
    return id;
  }

  // A predicate (possibly negated) required over [start, end]. Positive
  // polarity becomes a subgoal, negative an avoidance constraint.
  void emit(const std::string& label, bool negated, TimeExpr start, TimeExpr end) {
    if (negated) {
      ts_.constraints.push_back({label, std::move(start), std::move(end)});
      return;
    }
    SubgoalKind kind = start == end ? SubgoalKind::Reach : SubgoalKind::Stay;
    ts_.subgoals.push_back({label, kind, std::move(start), std::move(end)});
  }

  // Unwraps a predicate or negated predicate; nullptr label means neither.
  static const std::string* atom_label(const Formula& f, bool& negated) {
    if (f.kind() == Kind::Predicate) {
      negated = false;
      return &f.label();
    }
    if (f.kind() == Kind::Not && f.children()[0].kind() == Kind::Predicate) {
      negated = true;
      return &f.children()[0].label();
    }
    return nullptr;
  }

  void walk(const Formula& f, const TimeExpr& at) {
    switch (f.kind()) {
      case Kind::True:
        return;  // vacuous conjunct
      case Kind::Predicate:
        emit(f.label(), false, at, at);
        return;
      case Kind::Not: {
        bool negated = false;
        const std::string* label = atom_label(f, negated);
        if (!label) throw DecomposeError("negation is only supported directly on predicates");
        emit(*label, true, at, at);
        return;
      }
      case Kind::And:
        for (const Formula& c : f.children()) walk(c, at);
        return;
      case Kind::Or:
        throw DecomposeError("disjunction cannot be flattened into subgoals");
      case Kind::Eventually: {
        int id = fresh_variable(f.interval().lo, f.interval().hi);
        walk(f.children()[0], at.plus_var(id));
        return;
      }
      case Kind::Always:
        walk_always(f.children()[0], at, f.interval().lo, f.interval().hi);
        return;
      case Kind::Until: {
        bool lneg = false, rneg = false;
        const std::string* left = atom_label(f.children()[0], lneg);
        const std::string* right = atom_label(f.children()[1], rneg);
        if (!left || !right)
          throw DecomposeError("until operands must be predicates or negated predicates");
        int id = fresh_variable(f.interval().lo, f.interval().hi);
        TimeExpr trigger = at.plus_var(id);
        emit(*right, rneg, trigger, trigger);
        emit(*left, lneg, at, trigger);
        return;
      }
    }
    throw DecomposeError("unsupported formula structure");
  }

  // G distributes over conjunction and fuses with nested G (windows add);
  // anything temporal underneath other than G is out of the fragment.
  void walk_always(const Formula& body, const TimeExpr& at, int lo, int hi) {
    switch (body.kind()) {
      case Kind::True:
        return;
      case Kind::Predicate:
        emit(body.label(), false, at.plus(lo), at.plus(hi));
        return;
      case Kind::Not: {
        bool negated = false;
        const std::string* label = atom_label(body, negated);
        if (!label) throw DecomposeError("negation is only supported directly on predicates");
        emit(*label, true, at.plus(lo), at.plus(hi));
        return;
      }
      case Kind::And:
        for (const Formula& c : body.children()) walk_always(c, at, lo, hi);
        return;
      case Kind::Always:
        walk_always(body.children()[0], at, lo + body.interval().lo, hi + body.interval().hi);
        return;
      default:
        throw DecomposeError("always may not contain eventually, until, or disjunction");
    }
  }
};

}  // namespace

TaskSet decompose(const Formula& f) {
  Formula normalized = [&] {
    try {
      return stl::normalize(f);
    } catch (const Error& e) {
      throw DecomposeError(e.what());
    }
  }();
  return Builder().run(normalized);
}

}  // namespace tgpo::decomp
