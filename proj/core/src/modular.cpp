#include "qstc/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace qstc::modular {

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero modulo p");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::from(const mpz_class& a) const {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p_));
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const IntPoly& f, const PrimeField& F) {
  Poly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.from(f.coeffs()[i]);
  trim(r);
  return r;
}

Poly add(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint64_t s, const PrimeField& F) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, const PrimeField& F) {
  if (b.empty()) throw std::domain_error("polynomial division by zero modulo p");
  r = a;
  if (a.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(a.size() - b.size() + 1, 0);
  const std::uint64_t inv_lc = F.inv(b.back());
  for (int i = degree(a) - degree(b); i >= 0; --i) {
    const std::uint64_t c = F.mul(r[i + b.size() - 1], inv_lc);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.sub(r[i + j], F.mul(c, b[j]));
  }
  trim(q);
  trim(r);
}

Poly rem(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly q, r;
  divrem(a, b, q, r, F);
  return r;
}

Poly monic(const Poly& a, const PrimeField& F) {
  if (a.empty()) return a;
  return scale(a, F.inv(a.back()), F);
}

Poly gcd(Poly a, Poly b, const PrimeField& F) {
  while (!b.empty()) {
    Poly r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

Poly ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& t, const PrimeField& F) {
  Poly r0 = a, r1 = b;
  Poly s0{1}, s1{};
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    Poly q, r;
    divrem(r0, r1, q, r, F);
    Poly s2 = sub(s0, mul(q, s1, F), F);
    Poly t2 = sub(t0, mul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return r0;
  }
  const std::uint64_t inv_lc = F.inv(r0.back());
  s = scale(s0, inv_lc, F);
  t = scale(t0, inv_lc, F);
  return scale(r0, inv_lc, F);
}

Poly derivative(const Poly& a, const PrimeField& F) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(a[i], i % F.modulus());
  trim(d);
  return d;
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, const PrimeField& F) {
  Poly result{1};
  result = rem(result, m, F);
  Poly b = rem(base, m, F);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, F), m, F);
  }
  return result;
}

bool is_squarefree(const Poly& f, const PrimeField& F) {
  const Poly d = derivative(f, F);
  if (d.empty()) return degree(f) <= 0;
  return degree(gcd(f, d, F)) == 0;
}

std::vector<std::pair<int, Poly>> distinct_degree(const Poly& f, const PrimeField& F) {
  std::vector<std::pair<int, Poly>> out;
  Poly rest = monic(f, F);
  const Poly x{0, 1};
  Poly h = x;
  const mpz_class p(static_cast<unsigned long>(F.modulus()));
  for (int d = 1; 2 * d <= degree(rest); ++d) {
    h = powmod(h, p, rest, F);
    const Poly g = gcd(rest, sub(h, x, F), F);
    if (degree(g) > 0) {
      out.emplace_back(d, g);
      Poly q, r;
      divrem(rest, g, q, r, F);
      rest = q;
      h = rem(h, rest, F);
    }
  }
  if (degree(rest) > 0) out.emplace_back(degree(rest), rest);
  return out;
}

std::vector<Poly> equal_degree(const Poly& f, int d, const PrimeField& F, std::mt19937_64& rng) {
  if (degree(f) == d) return {monic(f, F)};
  if (F.modulus() == 2) throw std::domain_error("equal-degree splitting needs an odd prime");
  const int n = degree(f);
  mpz_class e;
  mpz_class p(static_cast<unsigned long>(F.modulus()));
  mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coeff(0, F.modulus() - 1);
  for (;;) {
    Poly a(n);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Poly g = gcd(f, a, F);
    if (degree(g) <= 0) {
      Poly b = powmod(a, e, f, F);
      b = sub(b, Poly{1}, F);
      g = gcd(f, b, F);
    }
    if (degree(g) > 0 && degree(g) < n) {
      Poly q, r;
      divrem(f, g, q, r, F);
      auto left = equal_degree(g, d, F, rng);
      auto right = equal_degree(q, d, F, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<Poly> factor_squarefree(const Poly& f, const PrimeField& F, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  for (const auto& [d, g] : distinct_degree(f, F)) {
    auto parts = equal_degree(g, d, F, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<int> degree_pattern(const Poly& f, const PrimeField& F) {
  std::vector<int> degs;
  for (const auto& [d, g] : distinct_degree(f, F)) {
    for (int i = 0; i < degree(g) / d; ++i) degs.push_back(d);
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace qstc::modular
