#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qstc/chain_model.hpp"
#include "qstc/radical.hpp"

namespace qstc {

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column j belongs to eigenvalues[j]
  int null_multiplicity = 0;
  bool paired = false;
  double pairing_error = 0.0;  // max |λ_i + λ_{N-1-i}|
};

// Relative threshold below which |λ| / max|λ| counts as zero.
inline constexpr double kNullTolerance = 1e-9;

Spectrum decompose(const HamiltonianMatrix& h);
Spectrum decompose(const Eigen::MatrixXd& h);

// Number of eigenvalues with |λ| < tol (absolute). A negative tol selects the
// default relative rule kNullTolerance * max|λ|.
int null_multiplicity(const HamiltonianMatrix& h, double tol = -1.0);
int null_multiplicity(const Eigen::VectorXd& eigenvalues, double tol = -1.0);

// Largest |a_i - b_i| after sorting both lists; lists must have equal length.
double sorted_max_deviation(std::vector<double> a, std::vector<double> b);

// Greedy multiset containment: every element of `sub` is matched to a distinct
// element of `super`. Returns the worst matched distance (infinity if `sub` is
// larger than `super`).
double containment_deviation(std::vector<double> sub, std::vector<double> super);

// Two mirror copies of a chain joined through a new central backbone qubit.
// Site numbering of `child_matrix` and `transform` is the glue order:
//   [0, N)        first copy in parent glue order (glue site last)
//   N             central qubit
//   [N+1, 2N+1)   second copy, reversed
// Parent glue order is cell order with the final A1 moved to the last slot.
struct GlueResult {
  ChainSpec child;
  Eigen::MatrixXd parent_matrix;  // h_N in glue order
  Eigen::MatrixXd child_matrix;   // h_{2N+1} in glue order
  Eigen::MatrixXd block_A;        // (N+1)x(N+1)
  Eigen::MatrixXd transform;      // D, orthogonal
  // child cell-order index -> glue-order index
  std::vector<std::size_t> child_site_map;

  // Largest entry of D^T h D outside the two diagonal blocks.
  double off_block_residual() const;
  // max |(D^T h D) - diag(A, h_N)|.
  double block_residual() const;
  double orthogonality_residual() const;
};

// Requires an odd number of qubits (even cell count) and bridge_v > 0.
GlueResult glue(const ChainSpec& parent, double bridge_v);

struct LemmaReport {
  bool lemma1 = false;  // parent spectrum contained in glued spectrum
  bool lemma2 = false;  // null multiplicity equals k+1
  bool lemma3 = false;  // ±λ pairing
  bool lemma4 = false;  // block diagonalization and null-vector lifting
  double containment_violation = 0.0;
  int null_count = 0;
  int expected_null_count = 0;
  double pairing_violation = 0.0;
  double block_violation = 0.0;
  double null_lift_violation = 0.0;
  int new_positive_eigenvalues = 0;

  bool all() const { return lemma1 && lemma2 && lemma3 && lemma4; }
};

// Glue checks use bridge coupling `bridge_v`; chains of any parity are
// accepted here (the glue construction itself is parity agnostic).
LemmaReport verify_lemmas(const ChainSpec& spec, double tol = 1e-10, double bridge_v = 1.0);

struct SpectralValue {
  double value;
  std::string tag;
};

struct SequenceSpectrum {
  int n0 = 0;
  int level = 0;
  std::size_t n_qubits = 0;
  std::vector<SpectralValue> positive;  // closed forms, ascending
  std::vector<double> all;              // full spectrum incl. zeros, ascending
};

bool is_sequence_seed(int n0);
SequenceSpectrum sequence_spectrum(int n0, int level);

}  // namespace qstc
