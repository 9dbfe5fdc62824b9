#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qstc/int_poly.hpp"

namespace qstc {

struct IntFactor {
  IntPoly factor;  // primitive, positive leading coefficient
  int multiplicity = 1;
};

struct ModularPattern {
  std::uint64_t prime = 0;
  std::vector<int> degrees;
};

struct Factorization {
  mpz_class unit;  // signed content
  std::vector<IntFactor> factors;
  // Degree patterns of the squarefree part modulo the sampled primes.
  std::vector<ModularPattern> patterns;
  std::uint64_t lifting_prime = 0;
};

// Squarefree part of a primitive polynomial: f / gcd(f, f').
IntPoly squarefree_part(const IntPoly& f);

// Smallest primes >= start that do not divide lc(f) and keep f squarefree.
std::vector<std::uint64_t> good_primes(const IntPoly& f, std::size_t count,
                                       std::uint64_t start = 1000003);

// Degree splittings compatible with every pattern: the subset sums that each
// modular pattern can realise. Used both as evidence and for pruning.
std::vector<bool> admissible_degrees(const std::vector<ModularPattern>& patterns, int total);

// Complete factorization over Z (Zassenhaus: modular factorization, Hensel
// lifting, recombination). Deterministic for a given input.
Factorization factor(const IntPoly& f, std::size_t pattern_primes = 8);

}  // namespace qstc
