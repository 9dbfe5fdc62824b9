#include "qstc/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qstc {

RatPoly::RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& a : c_) a.canonicalize();
  trim();
}

RatPoly::RatPoly(const IntPoly& p) {
  for (const auto& a : p.coeffs()) c_.emplace_back(a);
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::operator+(const RatPoly& rhs) const {
  std::vector<mpq_class> r(std::max(c_.size(), rhs.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + rhs.coeff(i);
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& rhs) const {
  std::vector<mpq_class> r(std::max(c_.size(), rhs.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - rhs.coeff(i);
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<mpq_class> r(c_.size() + rhs.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) r[i + j] += c_[i] * rhs.c_[j];
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::scaled(const mpq_class& s) const {
  std::vector<mpq_class> r = c_;
  for (auto& a : r) a *= s;
  return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / c_.back());
}

void RatPoly::divrem(const RatPoly& d, RatPoly& q, RatPoly& r) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<mpq_class> rem = c_;
  if (degree() < d.degree()) {
    q = RatPoly();
    r = *this;
    return;
  }
  std::vector<mpq_class> quot(c_.size() - d.c_.size() + 1);
  for (int i = degree() - d.degree(); i >= 0; --i) {
    const mpq_class f = rem[i + d.degree()] / d.c_.back();
    quot[i] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= f * d.c_[j];
  }
  q = RatPoly(std::move(quot));
  r = RatPoly(std::move(rem));
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
  RatPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + RatPoly({*it});
  return acc;
}

std::string RatPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) out << " + ";
    out << "(" << c_[i].get_str() << ")";
    if (i > 0) out << "*" << var << "^" << i;
    first = false;
  }
  return out.str();
}

std::optional<std::pair<RatPoly, RatPoly>> decompose_with_inner_degree(const RatPoly& f, int s) {
  const int n = f.degree();
  if (s <= 1 || s >= n || n % s != 0) return std::nullopt;
  const int r = n / s;
  const RatPoly fm = f.monic();

  // Approximate r-th root: match the s-1 coefficients below the leading one.
  std::vector<mpq_class> h(static_cast<std::size_t>(s) + 1);
  h[s] = 1;
  for (int j = 1; j < s; ++j) {
    RatPoly power({mpq_class(1)});
    const RatPoly hp{std::vector<mpq_class>(h)};
    for (int i = 0; i < r; ++i) power = power * hp;
    h[s - j] = (fm.coeff(n - j) - power.coeff(n - j)) / r;
  }
  const RatPoly inner{std::vector<mpq_class>(h)};

  // Inner-adic expansion: every remainder must be a constant.
  std::vector<mpq_class> outer;
  RatPoly rest = fm;
  while (!rest.is_zero()) {
    RatPoly q, rem;
    rest.divrem(inner, q, rem);
    if (rem.degree() > 0) return std::nullopt;
    outer.push_back(rem.coeff(0));
    rest = q;
  }
  RatPoly g(std::move(outer));
  g = g.scaled(f.coeffs().back());
  if (g.compose(inner) != f) return std::nullopt;
  return std::make_pair(g, inner);
}

std::vector<RatPoly> complete_decomposition(const RatPoly& f) {
  const int n = f.degree();
  for (int s = 2; s < n; ++s) {
    if (n % s != 0) continue;
    if (auto d = decompose_with_inner_degree(f, s)) {
      auto comps = complete_decomposition(d->first);
      comps.push_back(d->second);
      return comps;
    }
  }
  return {f};
}

bool quartic_has_two_group(const RatPoly& quartic) {
  if (quartic.degree() != 4) throw std::invalid_argument("expected a quartic");
  const RatPoly m = quartic.monic();
  const mpq_class a = m.coeff(3), b = m.coeff(2), c = m.coeff(1), d = m.coeff(0);
  // Resolvent cubic z^3 + p z^2 + q z + r.
  const mpq_class p = -b;
  const mpq_class q = a * c - 4 * d;
  const mpq_class r = -(a * a * d - 4 * b * d + c * c);
  mpz_class L = 1;
  for (const mpq_class* v : {&p, &q, &r}) {
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v->get_den_mpz_t());
  }
  // u = L z turns the cubic into a monic integer one whose rational roots are
  // integers.
  const mpq_class Lq(L);
  const mpz_class c2 = mpz_class(p * Lq);
  const mpz_class c1 = mpz_class(q * Lq * Lq);
  const mpz_class c0 = mpz_class(r * Lq * Lq * Lq);
  if (c0 == 0) return true;
  auto value = [&](const mpz_class& u) -> mpz_class { return ((u + c2) * u + c1) * u + c0; };

  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(0, 2) = -c0.get_d();
  companion(1, 2) = -c1.get_d();
  companion(2, 2) = -c2.get_d();
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  for (int i = 0; i < 3; ++i) {
    const std::complex<double> z = solver.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
    mpz_class guess(std::nearbyint(z.real()));
    for (int delta = -2; delta <= 2; ++delta) {
      if (value(guess + delta) == 0) return true;
    }
  }
  return false;
}

int radical_degree(const IntPoly& irreducible_factor) {
  int worst = 2;
  for (const RatPoly& comp : complete_decomposition(RatPoly(irreducible_factor))) {
    int d = comp.degree();
    if (d == 4 && quartic_has_two_group(comp)) d = 2;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace qstc
