#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "qstc/chain_model.hpp"
#include "qstc/factorization.hpp"
#include "qstc/int_poly.hpp"

namespace qstc {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Integer matrix from a Hamiltonian whose entries are all integers.
// Throws UnsupportedError otherwise.
IntMatrix to_integer_matrix(const HamiltonianMatrix& h);
IntMatrix to_integer_matrix(const Eigen::MatrixXd& h);

// det(x I - A), exact. Computed by Hessenberg reduction modulo enough 62-bit
// primes to cover the coefficient bound, then Chinese remaindering.
IntPoly char_poly_exact(const IntMatrix& a);
IntPoly char_poly_exact(const HamiltonianMatrix& h);

// q with p(x) = x^(k+1) q(x^2), leading coefficient positive.
IntPoly reduce_even(const IntPoly& p, int k);

enum class Certification { Proved, Evidence };
std::string to_string(Certification c);

struct FactorDegree {
  IntPoly factor;
  int degree = 0;
  int multiplicity = 1;
  std::vector<int> component_degrees;  // complete functional decomposition
  int radical_degree = 2;
};

struct DegreeProfile {
  std::vector<int> degrees;  // irreducible factor degrees with multiplicity, ascending
  std::vector<FactorDegree> factors;
  std::vector<ModularPattern> patterns;
  bool squarefree = true;
  Certification certification = Certification::Evidence;
  int max_degree = 0;
  // Largest radical step needed to write every root of q(x^2) in radicals.
  int radical_degree = 2;
};

DegreeProfile factor_degree_profile(const IntPoly& q, std::size_t primes = 8);

enum class SequenceTag { S5, S8, S14, S44 };
std::string to_string(SequenceTag t);
int seed_length(SequenceTag t);

// Tag iff 3k+5 = 2^m (N0+1) - 1 for a catalogued N0.
std::optional<SequenceTag> classify_sequence(int k);

struct CharPolyOptions {
  int max_k = 50;
  bool allow_large = false;  // raises the cap to k = 100
};

struct CharPolyReport {
  int k = 0;
  std::size_t n_qubits = 0;
  IntPoly char_poly;
  IntPoly reduced_poly;
  DegreeProfile profile;
  std::optional<SequenceTag> sequence;
  std::string warning;
};

// Report for the homogeneous chain with N = 3k + 5 and unit couplings.
CharPolyReport char_poly_report(int k, const CharPolyOptions& options = {});
// Report for any integer-coupling chain.
CharPolyReport char_poly_report(const ChainSpec& spec, const CharPolyOptions& options = {});

}  // namespace qstc
