#include "qstc/radical.hpp"

#include <cmath>
#include <numeric>

namespace qstc {

struct Radical::Node {
  enum class Kind { Rational, Sum, Scale, Sqrt } kind;
  long num = 0;
  long den = 1;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool negate_b = false;
};

Radical::Radical() : Radical(rational(0, 1)) {}

Radical::Radical(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Radical Radical::integer(long value) { return rational(value, 1); }

Radical Radical::rational(long num, long den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num, den);
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Rational;
  n->num = g ? num / g : num;
  n->den = g ? den / g : den;
  return Radical(n);
}

Radical Radical::operator+(const Radical& rhs) const {
  if (is_zero()) return rhs;
  if (rhs.is_zero()) return *this;
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Sum;
  n->a = node_;
  n->b = rhs.node_;
  return Radical(n);
}

Radical Radical::operator-(const Radical& rhs) const {
  if (rhs.is_zero()) return *this;
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Sum;
  n->a = is_zero() ? rational(0, 1).node_ : node_;
  n->b = rhs.node_;
  n->negate_b = true;
  return Radical(n);
}

Radical Radical::operator-() const { return scaled(-1, 1); }

Radical Radical::scaled(long num, long den) const {
  if (node_->kind == Node::Kind::Rational) {
    return rational(node_->num * num, node_->den * den);
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Scale;
  n->num = num;
  n->den = den;
  n->a = node_;
  return Radical(n);
}

Radical Radical::sqrt() const {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Sqrt;
  n->a = node_;
  return Radical(n);
}

bool Radical::is_zero() const {
  return node_->kind == Node::Kind::Rational && node_->num == 0;
}

namespace {

double eval(const Radical::Node& n) {
  using K = Radical::Node::Kind;
  switch (n.kind) {
    case K::Rational:
      return static_cast<double>(n.num) / static_cast<double>(n.den);
    case K::Sum:
      return eval(*n.a) + (n.negate_b ? -eval(*n.b) : eval(*n.b));
    case K::Scale:
      return static_cast<double>(n.num) / static_cast<double>(n.den) * eval(*n.a);
    case K::Sqrt:
      return std::sqrt(eval(*n.a));
  }
  return 0.0;
}

std::string format(const Radical::Node& n, bool wrap_sum) {
  using K = Radical::Node::Kind;
  switch (n.kind) {
    case K::Rational:
      if (n.den == 1) return std::to_string(n.num);
      return "(" + std::to_string(n.num) + "/" + std::to_string(n.den) + ")";
    case K::Sum: {
      std::string s = format(*n.a, false) + (n.negate_b ? "-" : "+") + format(*n.b, n.negate_b);
      return wrap_sum ? "(" + s + ")" : s;
    }
    case K::Scale: {
      std::string s = format(*n.a, true);
      if (n.den != 1) s += "/" + std::to_string(n.den);
      if (n.num == -1) return "-" + s;
      if (n.num != 1) s = std::to_string(n.num) + "*" + s;
      return s;
    }
    case K::Sqrt:
      return "sqrt(" + format(*n.a, false) + ")";
  }
  return {};
}

}  // namespace

double Radical::value() const { return eval(*node_); }

std::string Radical::str() const { return format(*node_, false); }

Radical sqrt(const Radical& r) { return r.sqrt(); }

}  // namespace qstc
