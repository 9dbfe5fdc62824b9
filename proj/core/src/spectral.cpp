#include "qstc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qstc/errors.hpp"

namespace qstc {
namespace {

std::string fingerprint(const Eigen::MatrixXd& h) {
  std::size_t seed = static_cast<std::size_t>(h.rows());
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    seed ^= std::hash<double>{}(h.data()[i]) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  std::ostringstream s;
  s << h.rows() << "x" << h.cols() << " frob=" << h.norm() << " hash=" << std::hex << seed;
  return s.str();
}

double max_abs(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

// Parent cell index -> parent glue index (final A1 and A2 swapped).
std::size_t parent_glue_index(std::size_t cell_index, std::size_t n) {
  if (cell_index == n - 2) return n - 1;
  if (cell_index == n - 1) return n - 2;
  return cell_index;
}

GlueResult glue_impl(const ChainSpec& parent, double bridge_v) {
  parent.validate();
  if (!(bridge_v > 0.0) || !std::isfinite(bridge_v)) {
    throw ValidationError("bridge coupling must be finite and positive");
  }
  const std::size_t n = parent.size();
  const int nc = parent.n_cells;

  ChainSpec cell_parent = parent;
  cell_parent.numbering = Numbering::Cell;
  const Eigen::MatrixXd h_cell = build_hamiltonian(cell_parent).dense();

  GlueResult r;
  r.parent_matrix = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r.parent_matrix(parent_glue_index(i, n), parent_glue_index(j, n)) = h_cell(i, j);
    }
  }

  const std::size_t m = 2 * n + 1;
  const Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n).rowwise().reverse();
  r.child_matrix = Eigen::MatrixXd::Zero(m, m);
  r.child_matrix.topLeftCorner(n, n) = r.parent_matrix;
  r.child_matrix.bottomRightCorner(n, n) = s * r.parent_matrix * s;
  r.child_matrix(n - 1, n) = r.child_matrix(n, n - 1) = bridge_v;
  r.child_matrix(n, n + 1) = r.child_matrix(n + 1, n) = bridge_v;

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  r.transform = Eigen::MatrixXd::Zero(m, m);
  r.transform.block(0, 0, n, n) = inv_sqrt2 * Eigen::MatrixXd::Identity(n, n);
  r.transform.block(0, n + 1, n, n) = inv_sqrt2 * Eigen::MatrixXd::Identity(n, n);
  r.transform(n, n) = 1.0;
  r.transform.block(n + 1, 0, n, n) = inv_sqrt2 * s;
  r.transform.block(n + 1, n + 1, n, n) = -inv_sqrt2 * s;

  r.block_A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  r.block_A.topLeftCorner(n, n) = r.parent_matrix;
  r.block_A(n - 1, n) = r.block_A(n, n - 1) = std::sqrt(2.0) * bridge_v;

  ChainSpec& c = r.child;
  c.n_cells = 2 * nc + 1;
  c.numbering = Numbering::Cell;
  c.t = parent.t;
  c.w = parent.w;
  c.g = parent.g;
  c.t.push_back(bridge_v);
  c.w.push_back(bridge_v);
  for (int j = 1; j <= nc; ++j) {
    c.t.push_back(parent.w[nc - j]);
    c.w.push_back(parent.t[nc - j]);
  }
  for (int j = 1; j <= nc + 1; ++j) c.g.push_back(parent.g[nc + 1 - j]);

  // First copy keeps parent cells 1..nc+1; the new B qubit is the centre;
  // cells nc+2.. mirror the parent.
  r.child_site_map.assign(m, 0);
  for (int cell = 1; cell <= nc + 1; ++cell) {
    for (SiteKind kind : {SiteKind::A1, SiteKind::A2, SiteKind::B}) {
      if (kind == SiteKind::B && cell > nc) continue;
      const std::size_t p = cell_order_index(kind, cell);
      r.child_site_map[p] = parent_glue_index(p, n);
      const int mirror_cell = kind == SiteKind::B ? 2 * nc + 2 - cell : 2 * nc + 3 - cell;
      const std::size_t q = parent_glue_index(p, n);
      r.child_site_map[cell_order_index(kind, mirror_cell)] = n + 1 + (n - 1 - q);
    }
  }
  r.child_site_map[cell_order_index(SiteKind::B, nc + 1)] = n;
  return r;
}

}  // namespace

Spectrum decompose(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw ValidationError("matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge for matrix " + fingerprint(h));
  }
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  s.null_multiplicity = null_multiplicity(s.eigenvalues);
  const Eigen::Index n = s.eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    s.pairing_error = std::max(s.pairing_error,
                               std::abs(s.eigenvalues(i) + s.eigenvalues(n - 1 - i)));
  }
  s.paired = s.pairing_error <= 1e-10 * std::max(1.0, max_abs(s.eigenvalues));
  return s;
}

Spectrum decompose(const HamiltonianMatrix& h) { return decompose(h.dense()); }

int null_multiplicity(const Eigen::VectorXd& eigenvalues, double tol) {
  if (tol < 0.0) tol = kNullTolerance * std::max(max_abs(eigenvalues), 1e-300);
  int count = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues(i)) < tol) ++count;
  }
  return count;
}

int null_multiplicity(const HamiltonianMatrix& h, double tol) {
  return null_multiplicity(decompose(h).eigenvalues, tol);
}

double sorted_max_deviation(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double containment_deviation(std::vector<double> sub, std::vector<double> super) {
  if (sub.size() > super.size()) return std::numeric_limits<double>::infinity();
  std::sort(sub.begin(), sub.end());
  std::sort(super.begin(), super.end());
  std::vector<bool> used(super.size(), false);
  double worst = 0.0;
  for (double x : sub) {
    auto it = std::lower_bound(super.begin(), super.end(), x);
    std::size_t best = super.size();
    double best_d = std::numeric_limits<double>::infinity();
    // Scan outwards from the insertion point for the nearest unused value.
    auto pos = static_cast<std::ptrdiff_t>(it - super.begin());
    for (std::ptrdiff_t lo = pos - 1; lo >= 0; --lo) {
      if (!used[lo]) {
        best = static_cast<std::size_t>(lo);
        best_d = x - super[lo];
        break;
      }
    }
    for (auto hi = static_cast<std::size_t>(pos); hi < super.size(); ++hi) {
      if (!used[hi]) {
        if (super[hi] - x < best_d) {
          best = hi;
          best_d = super[hi] - x;
        }
        break;
      }
    }
    if (best == super.size()) return std::numeric_limits<double>::infinity();
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

double GlueResult::off_block_residual() const {
  const Eigen::MatrixXd b = transform.transpose() * child_matrix * transform;
  const Eigen::Index n = block_A.rows();
  return std::max(b.topRightCorner(n, b.cols() - n).cwiseAbs().maxCoeff(),
                  b.bottomLeftCorner(b.rows() - n, n).cwiseAbs().maxCoeff());
}

double GlueResult::block_residual() const {
  const Eigen::MatrixXd b = transform.transpose() * child_matrix * transform;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(b.rows(), b.cols());
  const Eigen::Index n = block_A.rows();
  expected.topLeftCorner(n, n) = block_A;
  expected.bottomRightCorner(parent_matrix.rows(), parent_matrix.cols()) = parent_matrix;
  return (b - expected).cwiseAbs().maxCoeff();
}

double GlueResult::orthogonality_residual() const {
  const Eigen::Index m = transform.rows();
  return (transform.transpose() * transform - Eigen::MatrixXd::Identity(m, m))
      .cwiseAbs()
      .maxCoeff();
}

GlueResult glue(const ChainSpec& parent, double bridge_v) {
  parent.validate();
  if (parent.size() % 2 == 0) {
    throw StructuralError("glueing needs a parent with an odd number of qubits, got " +
                          std::to_string(parent.size()));
  }
  return glue_impl(parent, bridge_v);
}

LemmaReport verify_lemmas(const ChainSpec& spec, double tol, double bridge_v) {
  spec.validate();
  LemmaReport rep;
  const Spectrum parent = decompose(build_hamiltonian(spec));
  const double scale = std::max(1.0, max_abs(parent.eigenvalues));

  rep.expected_null_count = spec.k() + 1;
  rep.null_count = parent.null_multiplicity;
  rep.lemma2 = rep.null_count == rep.expected_null_count;

  rep.pairing_violation = parent.pairing_error;
  rep.lemma3 = rep.pairing_violation <= tol * scale;

  const GlueResult g = glue_impl(spec, bridge_v);
  const Spectrum child = decompose(g.child_matrix);
  rep.containment_violation =
      containment_deviation(to_vector(parent.eigenvalues), to_vector(child.eigenvalues));
  rep.lemma1 = rep.containment_violation <= tol * scale;

  const Spectrum a = decompose(g.block_A);
  for (Eigen::Index i = 0; i < a.eigenvalues.size(); ++i) {
    if (a.eigenvalues(i) > kNullTolerance * scale) ++rep.new_positive_eigenvalues;
  }

  rep.block_violation = g.block_residual();
  const Spectrum p_glue = decompose(g.parent_matrix);
  const Eigen::Index n = g.parent_matrix.rows();
  const double zero_tol = kNullTolerance * scale;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(p_glue.eigenvalues(j)) >= zero_tol) continue;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n + 1);
    x.head(n) = p_glue.eigenvectors.col(j);
    rep.null_lift_violation = std::max(rep.null_lift_violation, std::abs(x(n - 1)));
    rep.null_lift_violation =
        std::max(rep.null_lift_violation, (g.block_A * x).cwiseAbs().maxCoeff());
  }
  rep.lemma4 = rep.block_violation <= std::max(tol, 1e-12) * scale &&
               rep.null_lift_violation <= tol * scale;
  return rep;
}

// ---------------------------------------------------------------------------
// Exactly solvable sequences.

namespace {

struct SequenceSeed {
  std::vector<Radical> positives;  // level-0 positive eigenvalues
  std::vector<Radical> inner;      // radicands feeding level 1
};

Radical integer(long v) { return Radical::integer(v); }

SequenceSeed seed_for(int n0) {
  const Radical s5 = integer(5).sqrt();
  SequenceSeed seed;
  switch (n0) {
    case 5:
      seed.positives = {integer(1), integer(3).sqrt()};
      seed.inner = {integer(2)};
      break;
    case 8:
      seed.positives = {integer(1), integer(2).sqrt(), integer(2)};
      seed.inner = {integer(0), integer(3)};
      break;
    case 14:
      seed.positives = {integer(1)};
      for (int s : {1, -1}) {
        const Radical r = s > 0 ? s5 : -s5;
        seed.positives.push_back((integer(5) + r).scaled(1, 2).sqrt());
        seed.positives.push_back((integer(7) + r).scaled(1, 2).sqrt());
        seed.inner.push_back((integer(5) + r).scaled(1, 2));
      }
      seed.inner.insert(seed.inner.begin(), integer(0));
      break;
    case 44: {
      seed.positives = {integer(1), integer(2).sqrt(), integer(2)};
      seed.inner = {integer(0), integer(3)};
      for (int s : {1, -1}) {
        const Radical r = s > 0 ? s5 : -s5;
        seed.positives.push_back((integer(5) + r).scaled(1, 2).sqrt());
        seed.positives.push_back((integer(7) + r).scaled(1, 2).sqrt());
        seed.inner.push_back((integer(5) + r).scaled(1, 2));
      }
      // 2cos(pi m/15) = (a + b sqrt5 + c sqrt(30 + 6 e sqrt5)) / 4 with e = -a b.
      for (int a : {1, -1}) {
        for (int b : {1, -1}) {
          for (int c : {1, -1}) {
            const int e = -a * b;
            const Radical inner_root = (integer(30) + (e > 0 ? s5 : -s5).scaled(6, 1)).sqrt();
            const Radical tail = (b > 0 ? s5 : -s5) + (c > 0 ? inner_root : -inner_root);
            seed.positives.push_back((integer(12 + a) + tail).sqrt().scaled(1, 2));
            if (a == -1) seed.inner.push_back((integer(7) + tail).scaled(1, 4));
          }
        }
      }
      break;
    }
    default:
      throw UnsupportedError("no exactly solvable sequence starts at N0=" + std::to_string(n0) +
                             " (catalog: 5, 8, 14, 44)");
  }
  return seed;
}

}  // namespace

bool is_sequence_seed(int n0) { return n0 == 5 || n0 == 8 || n0 == 14 || n0 == 44; }

SequenceSpectrum sequence_spectrum(int n0, int level) {
  if (!is_sequence_seed(n0)) {
    throw UnsupportedError("no exactly solvable sequence starts at N0=" + std::to_string(n0) +
                           " (catalog: 5, 8, 14, 44)");
  }
  if (level < 0 || level > 8) {
    throw ValidationError("sequence level must lie in [0, 8]");
  }
  SequenceSeed seed = seed_for(n0);
  std::vector<Radical> positives = seed.positives;
  std::vector<Radical> inner = seed.inner;
  for (int l = 1; l <= level; ++l) {
    std::vector<Radical> next;
    for (const Radical& m : inner) {
      if (m.is_zero()) {
        positives.push_back(integer(3).sqrt());
        next.push_back(integer(2));
        continue;
      }
      const Radical root = m.sqrt();
      positives.push_back((integer(3) + root).sqrt());
      positives.push_back((integer(3) - root).sqrt());
      next.push_back(integer(2) + root);
      next.push_back(integer(2) - root);
    }
    inner = std::move(next);
  }

  SequenceSpectrum out;
  out.n0 = n0;
  out.level = level;
  out.n_qubits = (static_cast<std::size_t>(n0) + 1) * (std::size_t{1} << level) - 1;
  for (const Radical& r : positives) out.positive.push_back({r.value(), r.str()});
  std::sort(out.positive.begin(), out.positive.end(),
            [](const SpectralValue& a, const SpectralValue& b) { return a.value < b.value; });
  const std::size_t zeros = out.n_qubits - 2 * out.positive.size();
  for (const auto& p : out.positive) {
    out.all.push_back(p.value);
    out.all.push_back(-p.value);
  }
  out.all.insert(out.all.end(), zeros, 0.0);
  std::sort(out.all.begin(), out.all.end());
  return out;
}

}  // namespace qstc
