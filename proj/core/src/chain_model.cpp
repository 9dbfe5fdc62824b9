#include "qstc/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qstc/errors.hpp"

namespace qstc {
namespace {

void require_positive(const std::vector<double>& values, const char* name) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) {
      std::ostringstream msg;
      msg << "coupling " << name << "[" << i + 1 << "] = " << values[i]
          << " must be finite and strictly positive";
      throw ValidationError(msg.str());
    }
  }
}

void require_length(const std::vector<double>& values, std::size_t expected,
                    const char* name) {
  if (values.size() != expected) {
    std::ostringstream msg;
    msg << "coupling list " << name << " has " << values.size()
        << " entries, expected " << expected;
    throw ValidationError(msg.str());
  }
}

}  // namespace

void ChainSpec::validate() const {
  if (n_cells < 1) {
    throw ValidationError("n_cells must be >= 1 (smallest chain has 5 qubits)");
  }
  const auto n = static_cast<std::size_t>(n_cells);
  require_length(t, n, "t");
  require_length(w, n, "w");
  require_length(g, n + 1, "g");
  require_positive(t, "t");
  require_positive(w, "w");
  require_positive(g, "g");
}

ChainSpec ChainSpec::homogeneous(std::size_t n_qubits, double coupling) {
  if (n_qubits < 5 || (n_qubits - 2) % 3 != 0) {
    throw ValidationError("homogeneous chain length must satisfy N = 3k + 5, got " +
                          std::to_string(n_qubits));
  }
  const int n_cells = static_cast<int>((n_qubits - 2) / 3);
  return dimerized(n_cells, coupling, coupling, coupling);
}

ChainSpec ChainSpec::dimerized(int n_cells, double t, double w, double g) {
  if (n_cells < 1) throw ValidationError("n_cells must be >= 1");
  ChainSpec spec;
  spec.n_cells = n_cells;
  spec.t.assign(n_cells, t);
  spec.w.assign(n_cells, w);
  spec.g.assign(n_cells + 1, g);
  spec.validate();
  return spec;
}

void SymmetricChainSpec::validate() const {
  if (k < 0) throw ValidationError("symmetric chain needs k >= 0");
  require_length(v, static_cast<std::size_t>(k) + 1, "v");
  const auto full = static_cast<std::size_t>((k + 3) / 2);
  const bool short_ok = (k % 2 == 1) && g.size() == full - 1 && !g.empty();
  if (g.size() != full && !short_ok) {
    std::ostringstream msg;
    msg << "symmetric chain with k=" << k << " takes " << full
        << " distinct g couplings";
    if (k % 2 == 1) msg << " (or " << full - 1 << " without the central one)";
    msg << ", got " << g.size();
    throw ValidationError(msg.str());
  }
  require_positive(v, "v");
  require_positive(g, "g");
}

ChainSpec expand_symmetric(const SymmetricChainSpec& spec, Numbering numbering) {
  spec.validate();
  const int k = spec.k;
  ChainSpec out;
  out.n_cells = k + 1;
  out.numbering = numbering;

  std::vector<double> backbone(spec.v.begin(), spec.v.end());
  backbone.insert(backbone.end(), spec.v.rbegin(), spec.v.rend());
  for (int i = 0; i < out.n_cells; ++i) {
    out.t.push_back(backbone[2 * i]);
    out.w.push_back(backbone[2 * i + 1]);
  }

  const int n_g = k + 2;
  for (int i = 0; i < n_g; ++i) {
    const auto half = static_cast<std::size_t>(std::min(i, n_g - 1 - i));
    out.g.push_back(half < spec.g.size() ? spec.g[half] : spec.g.back());
  }
  out.validate();
  return out;
}

ChainSpec mirrored(const ChainSpec& spec) {
  ChainSpec out = spec;
  // Reading the backbone backwards swaps the roles of t and w.
  out.t.assign(spec.w.rbegin(), spec.w.rend());
  out.w.assign(spec.t.rbegin(), spec.t.rend());
  out.g.assign(spec.g.rbegin(), spec.g.rend());
  return out;
}

bool is_mirror_symmetric(const ChainSpec& spec, double tol) {
  const ChainSpec m = mirrored(spec);
  auto close = [tol](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(a[i]))) return false;
    }
    return true;
  };
  return close(spec.t, m.t) && close(spec.w, m.w) && close(spec.g, m.g);
}

std::size_t cell_order_index(SiteKind kind, int cell) {
  const auto base = 3 * static_cast<std::size_t>(cell - 1);
  switch (kind) {
    case SiteKind::A1:
      return base;
    case SiteKind::A2:
      return base + 1;
    case SiteKind::B:
      return base + 2;
  }
  return base;
}

std::vector<std::size_t> numbering_permutation(int n_cells) {
  if (n_cells < 1) throw ValidationError("n_cells must be >= 1");
  const auto n = static_cast<std::size_t>(n_cells);
  std::vector<std::size_t> perm(3 * n + 2);

  // Backbone occupies symmetric slots 1 .. 2n+1, alternating A1 and B.
  for (int c = 1; c <= n_cells + 1; ++c) {
    perm[cell_order_index(SiteKind::A1, c)] = 1 + 2 * static_cast<std::size_t>(c - 1);
    if (c <= n_cells) {
      perm[cell_order_index(SiteKind::B, c)] = 2 + 2 * static_cast<std::size_t>(c - 1);
    }
  }
  perm[cell_order_index(SiteKind::A2, 1)] = 0;
  perm[cell_order_index(SiteKind::A2, n_cells + 1)] = 2 * n + 2;
  for (int c = 2; c <= n_cells; ++c) {
    perm[cell_order_index(SiteKind::A2, c)] = 2 * n + 3 + static_cast<std::size_t>(c - 2);
  }
  return perm;
}

std::vector<std::size_t> invert_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

HamiltonianMatrix::HamiltonianMatrix(std::size_t size, Numbering numbering,
                                     std::pair<std::size_t, std::size_t> corners,
                                     std::vector<MatrixEntry> upper)
    : size_(size), numbering_(numbering), corners_(corners), upper_(std::move(upper)) {}

Eigen::MatrixXd HamiltonianMatrix::dense() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size_, size_);
  for (const auto& e : upper_) {
    h(e.row, e.col) = e.value;
    h(e.col, e.row) = e.value;
  }
  return h;
}

double HamiltonianMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : upper_) m = std::max(m, std::abs(e.value));
  return m;
}

double HamiltonianMatrix::frobenius_norm_squared() const {
  double s = 0.0;
  for (const auto& e : upper_) s += 2.0 * e.value * e.value;
  return s;
}

HamiltonianMatrix build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_cells;
  const std::size_t size = spec.size();

  std::vector<std::size_t> relabel(size);
  if (spec.numbering == Numbering::Symmetric) {
    relabel = numbering_permutation(n);
  } else {
    for (std::size_t i = 0; i < size; ++i) relabel[i] = i;
  }

  std::vector<MatrixEntry> upper;
  upper.reserve(size - 1);
  auto add = [&](std::size_t a, std::size_t b, double value) {
    std::size_t i = relabel[a];
    std::size_t j = relabel[b];
    if (i > j) std::swap(i, j);
    upper.push_back({i, j, value});
  };

  for (int c = 1; c <= n + 1; ++c) {
    const std::size_t a1 = cell_order_index(SiteKind::A1, c);
    add(a1, cell_order_index(SiteKind::A2, c), spec.g[c - 1]);
    if (c <= n) {
      const std::size_t b = cell_order_index(SiteKind::B, c);
      add(a1, b, spec.t[c - 1]);
      add(b, cell_order_index(SiteKind::A1, c + 1), spec.w[c - 1]);
    }
  }
  std::sort(upper.begin(), upper.end(), [](const MatrixEntry& x, const MatrixEntry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });

  const std::pair corners{relabel[cell_order_index(SiteKind::A1, 1)],
                          relabel[cell_order_index(SiteKind::A1, n + 1)]};
  return HamiltonianMatrix(size, spec.numbering, corners, std::move(upper));
}

}  // namespace qstc
