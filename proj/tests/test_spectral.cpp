#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qstc/errors.hpp"
#include "qstc/spectral.hpp"

using namespace qstc;

namespace {

const double r2 = std::sqrt(2.0);
const double r3 = std::sqrt(3.0);
const double r5 = std::sqrt(5.0);

std::vector<double> full(std::vector<double> positive, int zeros) {
  std::vector<double> out(static_cast<std::size_t>(zeros), 0.0);
  for (double p : positive) {
    out.push_back(p);
    out.push_back(-p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> numeric(std::size_t n) {
  return oracle::to_vector(decompose(build_hamiltonian(ChainSpec::homogeneous(n))).eigenvalues);
}

ChainSpec random_symmetric(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  SymmetricChainSpec s;
  s.k = k;
  for (int i = 0; i <= k; ++i) s.v.push_back(u(rng));
  for (int i = 0; i < (k + 3) / 2; ++i) s.g.push_back(u(rng));
  return expand_symmetric(s);
}

}  // namespace

TEST_CASE("homogeneous spectra in closed form") {
  CHECK(oracle::max_abs_diff(numeric(5), full({1, r3}, 1)) < 1e-12);
  CHECK(oracle::max_abs_diff(numeric(8), full({1, r2, 2}, 2)) < 1e-12);
  CHECK(oracle::max_abs_diff(
            numeric(14), full({1, std::sqrt((5 + r5) / 2), std::sqrt((5 - r5) / 2),
                               std::sqrt((7 + r5) / 2), std::sqrt((7 - r5) / 2)},
                              4)) < 1e-12);
}

TEST_CASE("decomposition invariants") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 8; ++k) {
    const HamiltonianMatrix h = build_hamiltonian(random_symmetric(k, rng));
    const Spectrum s = decompose(h);
    const Eigen::MatrixXd& v = s.eigenvectors;
    const auto n = v.rows();
    CHECK((v * v.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXd rec = v * s.eigenvalues.asDiagonal() * v.transpose();
    CHECK((rec - h.dense()).cwiseAbs().maxCoeff() < 1e-9 * h.max_abs());
    for (Eigen::Index i = 1; i < n; ++i) CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
    CHECK(oracle::max_abs_diff(oracle::to_vector(s.eigenvalues),
                               oracle::jacobi_eigenvalues(h.dense())) < 1e-10);
  }
}

TEST_CASE("decompose reports non-finite input") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = m(1, 0) = std::nan("");
  CHECK_THROWS_AS(decompose(m), NumericalError);
}

TEST_CASE("null multiplicity equals k + 1") {
  CHECK(null_multiplicity(build_hamiltonian(ChainSpec::homogeneous(5))) == 1);
  CHECK(null_multiplicity(build_hamiltonian(ChainSpec::homogeneous(11))) == 3);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  ChainSpec s;
  s.n_cells = 11;
  for (int i = 0; i < 11; ++i) {
    s.t.push_back(u(rng));
    s.w.push_back(u(rng));
  }
  for (int i = 0; i < 12; ++i) s.g.push_back(u(rng));
  CHECK(s.size() == 35);
  CHECK(null_multiplicity(build_hamiltonian(s)) == 11);
  // Rank oracle: N minus the rank of the matrix.
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(build_hamiltonian(s).dense());
  CHECK(35 - lu.rank() == 11);
}

TEST_CASE("containment and sorted deviation helpers") {
  CHECK(sorted_max_deviation({3, 1, 2}, {1, 2, 3.5}) == doctest::Approx(0.5));
  CHECK(containment_deviation({1, 1}, {1, 2, 1}) == 0.0);
  CHECK(containment_deviation({1, 1}, {1, 2}) == doctest::Approx(1.0));
  CHECK(std::isinf(containment_deviation({1, 2, 3}, {1, 2})));
}

TEST_CASE("glueing two five-qubit chains") {
  const GlueResult g = glue(ChainSpec::homogeneous(5), 1.0);
  CHECK(g.child == ChainSpec::homogeneous(11));
  CHECK(g.off_block_residual() < 1e-12);
  CHECK(g.block_residual() < 1e-12);
  CHECK(g.orthogonality_residual() < 1e-12);
  // New positive eigenvalues come from the (N+1)-block.
  std::vector<double> a = oracle::jacobi_eigenvalues(g.block_A);
  std::vector<double> expected = full({1, r3, std::sqrt(3 + r2), std::sqrt(3 - r2)}, 3);
  std::vector<double> child = oracle::jacobi_eigenvalues(g.child_matrix);
  CHECK(oracle::max_abs_diff(child, expected) < 1e-12);
  CHECK(containment_deviation({std::sqrt(3 + r2), std::sqrt(3 - r2)}, a) < 1e-12);
  // Child matrix is the homogeneous N = 11 matrix in glue order.
  const Eigen::MatrixXd cell = build_hamiltonian(g.child).dense();
  const auto& map = g.child_site_map;
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      CHECK(g.child_matrix(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) ==
            cell(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
}

TEST_CASE("glueing eleven qubits gives the nested radicals of 23") {
  const GlueResult g = glue(ChainSpec::homogeneous(11), 1.0);
  CHECK(g.child.size() == 23);
  const std::vector<double> a = oracle::jacobi_eigenvalues(g.block_A);
  std::vector<double> fresh;
  for (double s : {1.0, -1.0})
    for (double u : {1.0, -1.0}) fresh.push_back(std::sqrt(3 + s * std::sqrt(2 + u * r2)));
  CHECK(containment_deviation(fresh, a) < 1e-12);
}

TEST_CASE("glueing random symmetric chains keeps the site map and the block form") {
  std::mt19937_64 rng(99);
  for (int k : {0, 2, 4, 6}) {
    const ChainSpec p = random_symmetric(k, rng);
    const GlueResult g = glue(p, 0.7);
    CHECK(g.block_residual() < 1e-12);
    const Eigen::MatrixXd cell = build_hamiltonian(g.child).dense();
    const auto& map = g.child_site_map;
    double worst = 0.0;
    for (std::size_t i = 0; i < map.size(); ++i)
      for (std::size_t j = 0; j < map.size(); ++j)
        worst = std::max(worst, std::abs(g.child_matrix(static_cast<Eigen::Index>(map[i]),
                                                        static_cast<Eigen::Index>(map[j])) -
                                         cell(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    CHECK(worst == 0.0);
    CHECK(containment_deviation(oracle::jacobi_eigenvalues(build_hamiltonian(p).dense()),
                                oracle::jacobi_eigenvalues(cell)) < 1e-10);
  }
}

TEST_CASE("glue preconditions") {
  CHECK_THROWS_AS(glue(ChainSpec::homogeneous(8), 1.0), StructuralError);
  CHECK_THROWS_AS(glue(ChainSpec::homogeneous(5), 0.0), ValidationError);
}

TEST_CASE("lemma report") {
  SUBCASE("homogeneous five qubits") {
    const LemmaReport r = verify_lemmas(ChainSpec::homogeneous(5));
    CHECK(r.all());
    CHECK(r.null_count == 1);
    CHECK(r.new_positive_eigenvalues == 2);
  }
  SUBCASE("random symmetric, eleven qubits") {
    std::mt19937_64 rng(4);
    const LemmaReport r = verify_lemmas(random_symmetric(2, rng));
    CHECK(r.lemma2);
    CHECK(r.lemma3);
  }
  SUBCASE("broken mirror symmetry still pairs eigenvalues") {
    ChainSpec s = ChainSpec::homogeneous(11);
    s.t[0] = 1.7;
    s.g[2] = 0.4;
    const LemmaReport r = verify_lemmas(s);
    CHECK(r.lemma2);
    CHECK(r.lemma3);
  }
  SUBCASE("homogeneous chains gain k + 2 positive eigenvalues") {
    for (std::size_t n : {5u, 11u, 17u, 23u}) {
      const LemmaReport r = verify_lemmas(ChainSpec::homogeneous(n));
      CHECK(r.all());
      CHECK(r.new_positive_eigenvalues == static_cast<int>((n + 1) / 3));
    }
  }
}

TEST_CASE("sequence spectra") {
  SUBCASE("eight, level 0") {
    const auto s = sequence_spectrum(8, 0);
    REQUIRE(s.positive.size() == 3);
    CHECK(s.positive[0].value == doctest::Approx(1.0));
    CHECK(s.positive[1].value == doctest::Approx(r2));
    CHECK(s.positive[2].value == doctest::Approx(2.0));
  }
  SUBCASE("eight, level 1 adds sqrt3 and sqrt(3 +- sqrt3)") {
    const auto s = sequence_spectrum(8, 1);
    CHECK(s.n_qubits == 17);
    std::vector<double> pos;
    for (const auto& p : s.positive) pos.push_back(p.value);
    CHECK(containment_deviation({r3, std::sqrt(3 + r3), std::sqrt(3 - r3)}, pos) < 1e-14);
  }
  SUBCASE("forty-four, level 0") {
    const auto s = sequence_spectrum(44, 0);
    CHECK(s.positive.size() == 15);
    std::vector<double> pos;
    for (const auto& p : s.positive) pos.push_back(p.value);
    // (1/2) sqrt(13 + b sqrt5 + c sqrt(30 + 6 e sqrt5)) is an eigenvalue only for e = -b.
    const std::vector<double> spectrum = numeric(44);
    for (double b : {1.0, -1.0}) {
      for (double c : {1.0, -1.0}) {
        for (double e : {1.0, -1.0}) {
          const double x = 0.5 * std::sqrt(13 + b * r5 + c * std::sqrt(30 + 6 * e * r5));
          const double d = containment_deviation({x}, spectrum);
          if (e == -b) {
            CHECK(d < 1e-12);
          } else {
            CHECK(d > 1e-3);
          }
        }
      }
    }
    CHECK(oracle::max_abs_diff(s.all, numeric(44)) < 1e-10);
  }
  SUBCASE("every catalogued chain up to 119 qubits") {
    for (int n0 : {5, 8, 14, 44}) {
      for (int level = 0;; ++level) {
        const auto s = sequence_spectrum(n0, level);
        if (s.n_qubits > 119) break;
        CHECK(oracle::max_abs_diff(s.all, numeric(s.n_qubits)) < 1e-10);
      }
    }
  }
  SUBCASE("unknown seed") {
    CHECK_THROWS_AS(sequence_spectrum(11, 0), UnsupportedError);
    CHECK(is_sequence_seed(14));
    CHECK_FALSE(is_sequence_seed(17));
  }
}
