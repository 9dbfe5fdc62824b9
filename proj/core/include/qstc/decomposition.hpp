#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qstc/int_poly.hpp"

namespace qstc {

// Polynomial over Q, lowest degree first, trimmed.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<mpq_class> coeffs);
  explicit RatPoly(const IntPoly& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  RatPoly operator+(const RatPoly& rhs) const;
  RatPoly operator-(const RatPoly& rhs) const;
  RatPoly operator*(const RatPoly& rhs) const;
  RatPoly scaled(const mpq_class& s) const;
  RatPoly monic() const;
  void divrem(const RatPoly& d, RatPoly& q, RatPoly& r) const;
  // g(h(x)).
  RatPoly compose(const RatPoly& inner) const;

  std::string str(char var = 'x') const;
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// f = outer(inner(x)) with deg inner = s, inner monic and inner(0) = 0.
// Returns nothing when no such decomposition exists.
std::optional<std::pair<RatPoly, RatPoly>> decompose_with_inner_degree(const RatPoly& f, int s);

// Complete decomposition into indecomposable components, outermost first.
// By Ritt's first theorem the multiset of component degrees is unique.
std::vector<RatPoly> complete_decomposition(const RatPoly& f);

// True when an irreducible quartic has a Galois group that is a 2-group,
// i.e. its resolvent cubic has a rational root.
bool quartic_has_two_group(const RatPoly& quartic);

// Largest degree of a radical step needed to solve f(x^2) = 0: the largest
// indecomposable component degree of f, where quartic components with a
// 2-group Galois group count as two nested square roots. At least 2, because
// the outer substitution x^2 always contributes a square root.
int radical_degree(const IntPoly& irreducible_factor);

}  // namespace qstc
