#include "tgpo/stl/formula.hpp"

#include <utility>

namespace tgpo::stl {

struct Formula::Node {
  Kind kind;
  Interval interval;
  std::string label;
  std::vector<Formula> children;
};

namespace {

Formula make(Formula::Kind kind, Interval iv, std::string label, std::vector<Formula> children);

}  // namespace

Formula Formula::boolean_true() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::True;
  return Formula(std::move(n));
}

Formula Formula::predicate(std::string label) {
  if (label.empty()) throw Error("predicate label must be non-empty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Predicate;
  n->label = std::move(label);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) throw Error("conjunction needs at least one operand");
  if (children.size() == 1) return children.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) throw Error("disjunction needs at least one operand");
  if (children.size() == 1) return children.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::eventually(Interval iv, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eventually;
  n->interval = iv;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::always(Interval iv, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Always;
  n->interval = iv;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::until(Interval iv, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Until;
  n->interval = iv;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Interval& Formula::interval() const { return node_->interval; }
const std::string& Formula::label() const { return node_->label; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

bool Formula::structurally_equal(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->interval != other.node_->interval) return false;
  if (node_->label != other.node_->label) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (!node_->children[i].structurally_equal(other.node_->children[i])) return false;
  }
  return true;
}

int Formula::count(Kind k) const {
  int n = (node_->kind == k) ? 1 : 0;
  for (const auto& c : node_->children) n += c.count(k);
  return n;
}

namespace {

Formula normalize_impl(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      if (negated) throw Error("cannot normalize negated True");
      return f;
    case K::Predicate:
      return negated ? Formula::negation(f) : f;
    case K::Not:
      return normalize_impl(f.children()[0], !negated);
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(normalize_impl(c, negated));
      const bool make_and = (f.kind() == K::And) != negated;
      return make_and ? Formula::conjunction(std::move(kids))
                      : Formula::disjunction(std::move(kids));
    }
    case K::Eventually:
      return negated ? Formula::always(f.interval(), normalize_impl(f.children()[0], true))
                     : Formula::eventually(f.interval(), normalize_impl(f.children()[0], false));
    case K::Always:
      return negated ? Formula::eventually(f.interval(), normalize_impl(f.children()[0], true))
                     : Formula::always(f.interval(), normalize_impl(f.children()[0], false));
    case K::Until:
      if (negated) throw Error("cannot normalize a negated Until (no Release operator)");
      return Formula::until(f.interval(), normalize_impl(f.children()[0], false),
                            normalize_impl(f.children()[1], false));
  }
  throw Error("unreachable formula kind");
}

// Binding strength, tightest first: atoms/temporal > ! > U > & > |
int precedence(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::True:
    case K::Predicate:
    case K::Eventually:
    case K::Always:
      return 0;
    case K::Not:
      return 1;
    case K::Until:
      return 2;
    case K::And:
      return 3;
    case K::Or:
      return 4;
  }
  return 5;
}

void format_impl(const Formula& f, std::string& out, int parent_prec) {
  using K = Formula::Kind;
  const int prec = precedence(f.kind());
  const bool parens = prec >= parent_prec && parent_prec > 0;
  if (parens) out += '(';
  switch (f.kind()) {
    case K::True:
      out += "True";
      break;
    case K::Predicate:
      out += f.label();
      break;
    case K::Not:
      out += '!';
      format_impl(f.children()[0], out, precedence(K::Not));
      break;
    case K::And: {
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += " & ";
        first = false;
        format_impl(c, out, precedence(K::And));
      }
      break;
    }
    case K::Or: {
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += " | ";
        first = false;
        format_impl(c, out, precedence(K::Or));
      }
      break;
    }
    case K::Eventually:
    case K::Always: {
      out += (f.kind() == K::Eventually) ? 'F' : 'G';
      out += '[' + std::to_string(f.interval().lo) + ',' + std::to_string(f.interval().hi) + "](";
      format_impl(f.children()[0], out, 0);
      out += ')';
      break;
    }
    case K::Until: {
      out += '(';
      format_impl(f.children()[0], out, 0);
      out += ") U[" + std::to_string(f.interval().lo) + ',' +
             std::to_string(f.interval().hi) + "] (";
      format_impl(f.children()[1], out, 0);
      out += ')';
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

Formula normalize(const Formula& f) { return normalize_impl(f, false); }

std::string format(const Formula& f) {
  std::string out;
  format_impl(f, out, 0);
  return out;
}

}  // namespace tgpo::stl
