#include "mullat/expr.hpp"

#include <cctype>

#include "mullat/error.hpp"

namespace mullat::expr {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Node parse_all() {
    Node n = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::parse_error, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }

  static Node binary(Node::Kind k, Node a, Node b) {
    Node n;
    n.kind = k;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
  }

  Node sum() {
    Node left = product();
    for (;;) {
      if (eat('+')) {
        left = binary(Node::Kind::add, std::move(left), product());
      } else if (eat('-')) {
        left = binary(Node::Kind::sub, std::move(left), product());
      } else {
        return left;
      }
    }
  }

  Node product() {
    Node left = unary();
    for (;;) {
      if (eat('*')) {
        left = binary(Node::Kind::mul, std::move(left), unary());
      } else if (eat('/')) {
        left = binary(Node::Kind::div, std::move(left), unary());
      } else {
        return left;
      }
    }
  }

  Node unary() {
    if (eat('-')) {
      Node n;
      n.kind = Node::Kind::neg;
      n.children.push_back(unary());
      return n;
    }
    eat('+');
    return power();
  }

  Node power() {
    Node base = atom();
    if (!eat('^')) return base;
    Node n;
    n.kind = Node::Kind::pow;
    if (eat('(')) {
      n.exponent = signed_rational();
      expect(')');
    } else {
      bool neg = eat('-');
      n.exponent = unsigned_integer();
      if (neg) n.exponent = -n.exponent;
    }
    n.children.push_back(std::move(base));
    return n;
  }

  Rational signed_rational() {
    bool neg = eat('-');
    Rational q = unsigned_integer();
    if (eat('/')) {
      Integer d = unsigned_integer();
      if (d == 0) error("zero denominator");
      q /= d;
    }
    return neg ? Rational(-q) : q;
  }

  Integer unsigned_integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Node atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (eat('(')) {
      Node n = sum();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Node n;
      n.value = unsigned_integer();
      return n;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Node n;
      n.kind = Node::Kind::variable;
      n.name = std::string(s_.substr(start, pos_ - start));
      return n;
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::variable) out.insert(n.name);
  for (const auto& c : n.children) collect(c, out);
}

}  // namespace

Node parse(std::string_view text) { return Parser(text).parse_all(); }

std::set<std::string> variables(const Node& node) {
  std::set<std::string> out;
  collect(node, out);
  return out;
}

}  // namespace mullat::expr
