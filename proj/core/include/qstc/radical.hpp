#pragma once

#include <memory>
#include <string>

namespace qstc {

// Immutable nested-radical expression: rationals, sums, rational scaling and
// square roots. Shared subtrees are cheap to copy.
class Radical {
 public:
  Radical();  // zero
  static Radical integer(long value);
  static Radical rational(long num, long den);

  Radical operator+(const Radical& rhs) const;
  Radical operator-(const Radical& rhs) const;
  Radical operator-() const;
  Radical scaled(long num, long den) const;
  Radical sqrt() const;

  double value() const;
  // True only for the literal zero (no simplification is attempted).
  bool is_zero() const;
  std::string str() const;

  struct Node;

 private:
  explicit Radical(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Radical sqrt(const Radical& r);

}  // namespace qstc
