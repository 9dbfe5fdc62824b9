#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qstc {

// Dense polynomial with arbitrary-precision integer coefficients, stored
// lowest degree first and always trimmed (no trailing zeros).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const mpz_class& c, std::size_t degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  // Coefficient of x^i; zero past the degree.
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& leading() const { return c_.back(); }

  mpz_class content() const;
  IntPoly primitive_part() const;  // positive leading coefficient
  IntPoly derivative() const;
  IntPoly negated() const;

  IntPoly operator+(const IntPoly& rhs) const;
  IntPoly operator-(const IntPoly& rhs) const;
  IntPoly operator*(const IntPoly& rhs) const;
  IntPoly operator*(const mpz_class& s) const;
  // Coefficient-wise exact division; the caller guarantees divisibility.
  IntPoly divexact(const mpz_class& s) const;

  // Exact division in Z[x]. Returns false when `d` does not divide *this.
  bool divides_by(const IntPoly& d, IntPoly* quotient = nullptr) const;
  // Pseudo-remainder: lc(d)^(deg - deg d + 1) * (*this) mod d.
  IntPoly pseudo_remainder(const IntPoly& d) const;

  // p(x^2) -> coefficients at even powers; odd powers must vanish.
  IntPoly substitute_power(unsigned e) const;

  mpz_class evaluate(const mpz_class& x) const;
  double evaluate(double x) const;
  mpz_class max_norm() const;
  mpz_class l2_norm_ceil() const;

  std::string str(char var = 'x') const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Product of the polynomials in `factors`.
IntPoly product(const std::vector<IntPoly>& factors);

}  // namespace qstc
