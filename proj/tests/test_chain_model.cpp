#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qstc/chain_model.hpp"
#include "qstc/errors.hpp"
#include "qstc/spectral.hpp"

using namespace qstc;

namespace {

ChainSpec random_chain(int n_cells, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  ChainSpec s;
  s.n_cells = n_cells;
  for (int i = 0; i < n_cells; ++i) {
    s.t.push_back(u(rng));
    s.w.push_back(u(rng));
  }
  for (int i = 0; i <= n_cells; ++i) s.g.push_back(u(rng));
  return s;
}

Eigen::MatrixXd literal(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("cell numbering reproduces the eight-qubit matrix entry by entry") {
  const double v1 = 1.1, v2 = 1.2, w1 = 1.3, w2 = 1.4, g1 = 1.5, g2 = 1.6, g3 = 1.7;
  ChainSpec s{2, {v1, v2}, {w1, w2}, {g1, g2, g3}, Numbering::Cell};
  const Eigen::MatrixXd expected = literal({
      {0, g1, v1, 0, 0, 0, 0, 0},
      {g1, 0, 0, 0, 0, 0, 0, 0},
      {v1, 0, 0, w1, 0, 0, 0, 0},
      {0, 0, w1, 0, g2, v2, 0, 0},
      {0, 0, 0, g2, 0, 0, 0, 0},
      {0, 0, 0, v2, 0, 0, w2, 0},
      {0, 0, 0, 0, 0, w2, 0, g3},
      {0, 0, 0, 0, 0, 0, g3, 0},
  });
  const HamiltonianMatrix h = build_hamiltonian(s);
  CHECK(h.size() == 8);
  CHECK((h.dense() - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.corner_sites() == std::pair<std::size_t, std::size_t>{0, 6});
}

TEST_CASE("symmetric numbering reproduces the mirror-symmetric eight-qubit matrix") {
  const double v1 = 1.1, v2 = 1.2, g1 = 1.5, g2 = 1.6;
  SymmetricChainSpec sym{1, {v1, v2}, {g1, g2}};
  const ChainSpec s = expand_symmetric(sym, Numbering::Symmetric);
  const Eigen::MatrixXd expected = literal({
      {0, g1, 0, 0, 0, 0, 0, 0},
      {g1, 0, v1, 0, 0, 0, 0, 0},
      {0, v1, 0, v2, 0, 0, 0, 0},
      {0, 0, v2, 0, v2, 0, 0, g2},
      {0, 0, 0, v2, 0, v1, 0, 0},
      {0, 0, 0, 0, v1, 0, g1, 0},
      {0, 0, 0, 0, 0, g1, 0, 0},
      {0, 0, 0, g2, 0, 0, 0, 0},
  });
  const HamiltonianMatrix h = build_hamiltonian(s);
  CHECK((h.dense() - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.corner_sites() == std::pair<std::size_t, std::size_t>{1, 5});
}

TEST_CASE("builder agrees with the edge-list oracle and keeps matrix invariants") {
  std::mt19937_64 rng(11);
  for (int nc = 1; nc <= 11; ++nc) {
    const ChainSpec s = random_chain(nc, rng);
    const HamiltonianMatrix h = build_hamiltonian(s);
    const Eigen::MatrixXd d = h.dense();
    CHECK((d - oracle::cell_matrix(s)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.diagonal().cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      CHECK((d.row(r).array() != 0.0).count() <= 3);
    }
    const auto [a, b] = oracle::cell_corners(s);
    CHECK(h.corner_sites().first == static_cast<std::size_t>(a));
    CHECK(h.corner_sites().second == static_cast<std::size_t>(b));
    CHECK(h.frobenius_norm_squared() == doctest::Approx(d.squaredNorm()).epsilon(1e-14));
  }
}

TEST_CASE("five-qubit homogeneous chain") {
  const ChainSpec s = ChainSpec::homogeneous(5);
  CHECK(s.n_cells == 1);
  const auto ev = oracle::jacobi_eigenvalues(build_hamiltonian(s).dense());
  const std::vector<double> expected{-std::sqrt(3.0), -1.0, 0.0, 1.0, std::sqrt(3.0)};
  CHECK(oracle::max_abs_diff(ev, expected) < 1e-12);
}

TEST_CASE("numbering permutation conjugates cell order into symmetric order") {
  std::mt19937_64 rng(5);
  for (int nc : {1, 2, 4, 7}) {
    ChainSpec s = random_chain(nc, rng);
    const auto perm = numbering_permutation(s);
    const auto inv = invert_permutation(perm);
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(inv[perm[i]] == i);

    const Eigen::MatrixXd cell = build_hamiltonian(s).dense();
    s.numbering = Numbering::Symmetric;
    const HamiltonianMatrix hs = build_hamiltonian(s);
    const Eigen::MatrixXd sym = hs.dense();
    const auto n = static_cast<Eigen::Index>(perm.size());
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        CHECK(sym(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])) ==
              cell(i, j));
    CHECK(hs.corner_sites().first == perm[0]);
    CHECK(hs.corner_sites().second == perm[3 * static_cast<std::size_t>(nc)]);
  }
}

TEST_CASE("both numberings share one spectrum (N = 14)") {
  std::mt19937_64 rng(17);
  ChainSpec s = random_chain(4, rng);
  const auto a = oracle::jacobi_eigenvalues(build_hamiltonian(s).dense());
  s.numbering = Numbering::Symmetric;
  const auto b = oracle::jacobi_eigenvalues(build_hamiltonian(s).dense());
  CHECK(oracle::max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("symmetric expansion") {
  SUBCASE("k = 0 gives five qubits") {
    const ChainSpec s = expand_symmetric({0, {1.3}, {0.7}});
    CHECK(s.size() == 5);
    CHECK(s.t == std::vector<double>{1.3});
    CHECK(s.w == std::vector<double>{1.3});
    CHECK(s.g == std::vector<double>{0.7, 0.7});
  }
  SUBCASE("k = 1 keeps an independent central g") {
    const ChainSpec s = expand_symmetric({1, {1.0, 2.0}, {0.5, 0.9}});
    CHECK(s.t == std::vector<double>{1.0, 2.0});
    CHECK(s.w == std::vector<double>{2.0, 1.0});
    CHECK(s.g == std::vector<double>{0.5, 0.9, 0.5});
  }
  SUBCASE("k = 1 short form repeats the innermost g") {
    const ChainSpec s = expand_symmetric({1, {1.0, 2.0}, {0.5}});
    CHECK(s.g == std::vector<double>{0.5, 0.5, 0.5});
  }
  SUBCASE("k = 2, eigenvectors are even or odd under the mirror") {
    const ChainSpec s = expand_symmetric({2, {1.1, 0.8, 1.4}, {0.6, 1.2}});
    CHECK(s.size() == 11);
    CHECK(s.g == std::vector<double>{0.6, 1.2, 1.2, 0.6});
    CHECK(is_mirror_symmetric(s));
    CHECK(mirrored(s) == s);
    const Spectrum sp = decompose(build_hamiltonian(s));
    // Site reversal within the cell order: A1_i <-> A1_{n+2-i}, etc.
    const auto n = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (int c = 1; c <= s.n_cells + 1; ++c) {
      const int m = s.n_cells + 2 - c;
      r(static_cast<Eigen::Index>(cell_order_index(SiteKind::A1, c)),
        static_cast<Eigen::Index>(cell_order_index(SiteKind::A1, m))) = 1;
      r(static_cast<Eigen::Index>(cell_order_index(SiteKind::A2, c)),
        static_cast<Eigen::Index>(cell_order_index(SiteKind::A2, m))) = 1;
    }
    for (int c = 1; c <= s.n_cells; ++c) {
      r(static_cast<Eigen::Index>(cell_order_index(SiteKind::B, c)),
        static_cast<Eigen::Index>(cell_order_index(SiteKind::B, s.n_cells + 1 - c))) = 1;
    }
    const Eigen::MatrixXd h = build_hamiltonian(s).dense();
    CHECK((r * h * r.transpose() - h).cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(sp.eigenvalues[j]) < 1e-8) continue;  // null space is degenerate
      const Eigen::VectorXd v = sp.eigenvectors.col(j);
      const double parity = (r * v).dot(v);
      CHECK(std::abs(std::abs(parity) - 1.0) < 1e-9);
    }
  }
  SUBCASE("wrong g count is rejected") {
    CHECK_THROWS_AS(expand_symmetric({2, {1, 1, 1}, {1}}), ValidationError);
    CHECK_THROWS_AS(expand_symmetric({2, {1, 1}, {1, 1}}), ValidationError);
  }
}

TEST_CASE("validation") {
  ChainSpec s = ChainSpec::homogeneous(8);
  s.g[1] = 0.0;
  CHECK_THROWS_AS(build_hamiltonian(s), ValidationError);
  s = ChainSpec::homogeneous(8);
  s.t.pop_back();
  CHECK_THROWS_AS(build_hamiltonian(s), ValidationError);
  s = ChainSpec::homogeneous(8);
  s.w[0] = std::nan("");
  CHECK_THROWS_AS(build_hamiltonian(s), ValidationError);
  CHECK_THROWS_AS(ChainSpec::homogeneous(9), ValidationError);
  CHECK_THROWS_AS(ChainSpec::homogeneous(2), ValidationError);
}

TEST_CASE("Frobenius identity and pairing hold for random chains") {
  std::mt19937_64 rng(23);
  for (int nc = 1; nc <= 10; ++nc) {
    const ChainSpec s = random_chain(nc, rng);
    const HamiltonianMatrix h = build_hamiltonian(s);
    const auto ev = oracle::jacobi_eigenvalues(h.dense());
    double sum = 0.0;
    for (double x : ev) sum += x * x;
    CHECK(sum == doctest::Approx(h.frobenius_norm_squared()).epsilon(1e-10));
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] + ev[ev.size() - 1 - i]) < 1e-10);
  }
}
