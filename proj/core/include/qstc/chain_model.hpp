#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qstc {

// Site ordering used when laying out the one-excitation matrix.
//
// Cell:      A1_1, A2_1, B_1, A1_2, A2_2, B_2, ..., A1_{n+1}, A2_{n+1}
// Symmetric: A2_1, then the backbone A1_1, B_1, ..., B_n, A1_{n+1}, then
//            A2_{n+1}, then the interior g-qubits A2_2 ... A2_n.
enum class Numbering { Cell, Symmetric };

enum class SiteKind { A1, A2, B };

// Coupling layout of a decorated chain with n_cells three-qubit cells plus a
// closing two-qubit cell. t_i couples A1_i-B_i, w_i couples B_i-A1_{i+1} and
// g_i couples A1_i-A2_i.
struct ChainSpec {
  int n_cells = 0;
  std::vector<double> t;
  std::vector<double> w;
  std::vector<double> g;
  Numbering numbering = Numbering::Cell;

  // Total number of qubits, 3 n_cells + 2.
  std::size_t size() const { return 3 * static_cast<std::size_t>(n_cells) + 2; }
  // Chain-length parameter with N = 3k + 5.
  int k() const { return n_cells - 1; }

  // Throws ValidationError on non-positive/non-finite couplings or list
  // lengths that disagree with n_cells.
  void validate() const;

  // All couplings equal. Requires N = 3k + 5 with k >= 0.
  static ChainSpec homogeneous(std::size_t n_qubits, double coupling = 1.0);
  // t_i = t, w_i = w, g_i = g on every cell.
  static ChainSpec dimerized(int n_cells, double t, double w, double g);

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

// Mirror-symmetric chain given by its independent couplings: k+1 backbone
// couplings v_i (from the chain end towards the centre) and the g-couplings of
// the mirror-independent half, outermost first. The central g-qubit (present
// when k is odd) is included as the last entry; it may be omitted, in which
// case it takes the value of the innermost listed g.
struct SymmetricChainSpec {
  int k = 0;
  std::vector<double> v;
  std::vector<double> g;

  std::size_t size() const { return 3 * static_cast<std::size_t>(k) + 5; }
  void validate() const;
};

ChainSpec expand_symmetric(const SymmetricChainSpec& spec,
                           Numbering numbering = Numbering::Cell);

// Chain read from the other end.
ChainSpec mirrored(const ChainSpec& spec);
bool is_mirror_symmetric(const ChainSpec& spec, double tol = 1e-12);

// 0-based index of a site in cell order. cell is 1-based as in the coupling
// labels; B exists for cells 1..n_cells, A1/A2 for 1..n_cells+1.
std::size_t cell_order_index(SiteKind kind, int cell);

// perm[i] is the symmetric-order index of the site with cell-order index i.
std::vector<std::size_t> numbering_permutation(int n_cells);
inline std::vector<std::size_t> numbering_permutation(const ChainSpec& spec) {
  return numbering_permutation(spec.n_cells);
}
std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm);

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

// Real symmetric one-excitation Hamiltonian stored as its strict upper
// triangle (the diagonal is identically zero).
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(std::size_t size, Numbering numbering,
                    std::pair<std::size_t, std::size_t> corners,
                    std::vector<MatrixEntry> upper);

  std::size_t size() const { return size_; }
  Numbering numbering() const { return numbering_; }
  // (sender, receiver), 0-based: the two end-of-backbone A1 qubits.
  std::pair<std::size_t, std::size_t> corner_sites() const { return corners_; }
  std::span<const MatrixEntry> entries() const { return upper_; }

  Eigen::MatrixXd dense() const;
  double max_abs() const;
  double frobenius_norm_squared() const;

 private:
  std::size_t size_;
  Numbering numbering_;
  std::pair<std::size_t, std::size_t> corners_;
  std::vector<MatrixEntry> upper_;
};

HamiltonianMatrix build_hamiltonian(const ChainSpec& spec);

}  // namespace qstc
