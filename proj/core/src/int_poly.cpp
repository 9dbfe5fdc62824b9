#include "qstc/int_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qstc {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& a : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (leading() < 0) g = -g;
  return divexact(g);
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpz_class> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::negated() const {
  IntPoly r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
  std::vector<mpz_class> r(std::max(c_.size(), rhs.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + rhs.coeff(i);
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
  std::vector<mpz_class> r(std::max(c_.size(), rhs.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - rhs.coeff(i);
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<mpz_class> r(c_.size() + rhs.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), c_[i].get_mpz_t(), rhs.c_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const mpz_class& s) const {
  IntPoly r = *this;
  for (auto& a : r.c_) a *= s;
  r.trim();
  return r;
}

IntPoly IntPoly::divexact(const mpz_class& s) const {
  IntPoly r = *this;
  for (auto& a : r.c_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), s.get_mpz_t());
  return r;
}

bool IntPoly::divides_by(const IntPoly& d, IntPoly* quotient) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (is_zero()) {
    if (quotient) *quotient = IntPoly();
    return true;
  }
  if (degree() < d.degree()) return false;
  // Cheap necessary condition on the constant terms.
  if (d.c_[0] != 0 && c_[0] != 0 && !mpz_divisible_p(c_[0].get_mpz_t(), d.c_[0].get_mpz_t())) {
    return false;
  }
  std::vector<mpz_class> rem = c_;
  std::vector<mpz_class> q(c_.size() - d.c_.size() + 1);
  const mpz_class& lc = d.leading();
  for (int i = degree() - d.degree(); i >= 0; --i) {
    mpz_class& top = rem[i + d.degree()];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_class f;
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    q[i] = f;
    for (std::size_t j = 0; j < d.c_.size(); ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), f.get_mpz_t(), d.c_[j].get_mpz_t());
    }
  }
  for (const auto& a : rem) {
    if (a != 0) return false;
  }
  if (quotient) *quotient = IntPoly(std::move(q));
  return true;
}

IntPoly IntPoly::pseudo_remainder(const IntPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<mpz_class> rem = c_;
  const int dd = d.degree();
  const mpz_class& lc = d.leading();
  int e = degree() - dd + 1;
  for (int top = degree(); top >= dd; --top) {
    const mpz_class f = rem[top];
    for (auto& a : rem) a *= lc;
    for (int j = 0; j <= dd; ++j) rem[top - dd + j] -= f * d.c_[j];
    --e;
  }
  IntPoly r(std::move(rem));
  if (e > 0) {
    mpz_class s;
    mpz_pow_ui(s.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
    r = r * s;
  }
  return r;
}

IntPoly IntPoly::substitute_power(unsigned e) const {
  if (e == 0) throw std::invalid_argument("power must be positive");
  std::vector<mpz_class> r(c_.size() / e + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i % e != 0) {
      if (c_[i] != 0) throw std::domain_error("polynomial is not a polynomial in x^e");
      continue;
    }
    r[i / e] = c_[i];
  }
  return IntPoly(std::move(r));
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double IntPoly::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

mpz_class IntPoly::max_norm() const {
  mpz_class m = 0;
  for (const auto& a : c_) {
    if (abs(a) > m) m = abs(a);
  }
  return m;
}

mpz_class IntPoly::l2_norm_ceil() const {
  mpz_class s = 0;
  for (const auto& a : c_) s += a * a;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  if (r * r < s) ++r;
  return r;
}

std::string IntPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& a = c_[i];
    if (a == 0) continue;
    const bool neg = a < 0;
    const mpz_class mag = abs(a);
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i > 0) {
      if (mag != 1) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return out.str();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  const mpz_class ca = a.content();
  const mpz_class cb = b.content();
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly x = a.primitive_part();
  IntPoly y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = x.pseudo_remainder(y);
    x = std::move(y);
    y = r.is_zero() ? IntPoly() : r.primitive_part();
  }
  return x.primitive_part() * c;
}

IntPoly product(const std::vector<IntPoly>& factors) {
  IntPoly r{1};
  for (const auto& f : factors) r = r * f;
  return r;
}

}  // namespace qstc
