#include "tgpo/stl/parser.hpp"

#include <cctype>
#include <string>

#include "tgpo/util/error.hpp"

namespace tgpo::stl {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_disj();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  // Maximal identifier at the cursor, or empty if none. Does not consume.
  std::string_view peek_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return {};
    size_t end = pos_;
    while (end < text_.size() && is_ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  // True when the identifier is followed (ignoring whitespace) by '[',
  // which disambiguates temporal operators from region labels.
  bool operator_follows(std::string_view ident) {
    size_t p = pos_ + ident.size();
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && text_[p] == '[';
  }

  int parse_int() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000'000) fail("integer too large");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  Interval parse_interval() {
    expect('[');
    size_t at = pos_;
    int lo = parse_int();
    expect(',');
    int hi = parse_int();
    expect(']');
    if (lo > hi) throw ParseError("empty interval: lower bound exceeds upper bound", at);
    return Interval(lo, hi);
  }

  Formula parse_disj() {
    std::vector<Formula> parts{parse_conj()};
    while (eat('|')) parts.push_back(parse_conj());
    return parts.size() == 1 ? parts.front() : Formula::disjunction(std::move(parts));
  }

  Formula parse_conj() {
    std::vector<Formula> parts{parse_term()};
    while (eat('&')) parts.push_back(parse_term());
    return parts.size() == 1 ? parts.front() : Formula::conjunction(std::move(parts));
  }

  Formula parse_term() {
    Formula lhs = parse_unary();
    for (;;) {
      std::string_view ident = peek_ident();
      if (ident != "U" || !operator_follows(ident)) break;
      pos_ += ident.size();
      Interval iv = parse_interval();
      expect('(');
      Formula rhs = parse_disj();
      expect(')');
      lhs = Formula::until(iv, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_temporal(char op) {
    Interval iv = parse_interval();
    expect('(');
    Formula child = parse_disj();
    expect(')');
    return op == 'F' ? Formula::eventually(iv, std::move(child))
                     : Formula::always(iv, std::move(child));
  }

  Formula parse_unary() {
    if (eat('!')) return Formula::negation(parse_unary());
    if (eat('(')) {
      Formula inner = parse_disj();
      expect(')');
      return inner;
    }
    std::string_view ident = peek_ident();
    if (ident.empty()) fail("expected formula");
    if ((ident == "F" || ident == "G") && operator_follows(ident)) {
      char op = ident[0];
      pos_ += ident.size();
      return parse_temporal(op);
    }
    if (ident == "True") {
      pos_ += ident.size();
      return Formula::boolean_true();
    }
    if (ident == "U") fail("'U' is reserved; it cannot name a region");
    pos_ += ident.size();
    return Formula::predicate(std::string(ident));
  }
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace tgpo::stl
