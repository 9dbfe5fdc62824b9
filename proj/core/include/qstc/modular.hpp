#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qstc/int_poly.hpp"

namespace qstc::modular {

__extension__ using u128 = unsigned __int128;

// Arithmetic in Z/p for a prime p < 2^63.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {}
  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t from(const mpz_class& a) const;

 private:
  std::uint64_t p_;
};

// Polynomial over Z/p, lowest degree first, trimmed.
using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPoly& f, const PrimeField& F);
void trim(Poly& f);
inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly add(const Poly& a, const Poly& b, const PrimeField& F);
Poly sub(const Poly& a, const Poly& b, const PrimeField& F);
Poly mul(const Poly& a, const Poly& b, const PrimeField& F);
Poly scale(const Poly& a, std::uint64_t s, const PrimeField& F);
// a = q*b + r with deg r < deg b.
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, const PrimeField& F);
Poly rem(const Poly& a, const Poly& b, const PrimeField& F);
Poly monic(const Poly& a, const PrimeField& F);
Poly gcd(Poly a, Poly b, const PrimeField& F);
// Returns g = gcd(a, b) (monic) and s, t with s*a + t*b = g.
Poly ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& t, const PrimeField& F);
Poly derivative(const Poly& a, const PrimeField& F);
Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, const PrimeField& F);

bool is_squarefree(const Poly& f, const PrimeField& F);

// Distinct-degree factorization of a monic squarefree polynomial: pairs
// (d, product of all irreducible factors of degree d).
std::vector<std::pair<int, Poly>> distinct_degree(const Poly& f, const PrimeField& F);

// Cantor-Zassenhaus splitting of a product of degree-d irreducibles (odd p).
std::vector<Poly> equal_degree(const Poly& f, int d, const PrimeField& F, std::mt19937_64& rng);

// Monic irreducible factors of a monic squarefree polynomial.
std::vector<Poly> factor_squarefree(const Poly& f, const PrimeField& F, std::uint64_t seed);

// Sorted multiset of irreducible factor degrees.
std::vector<int> degree_pattern(const Poly& f, const PrimeField& F);

// First `count` primes >= `start` for which `accept` holds.
template <class Pred>
std::vector<std::uint64_t> primes_from(std::uint64_t start, std::size_t count, Pred accept) {
  std::vector<std::uint64_t> out;
  mpz_class p = start - 1;
  while (out.size() < count) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    const std::uint64_t v = p.get_ui();
    if (accept(v)) out.push_back(v);
  }
  return out;
}

}  // namespace qstc::modular
