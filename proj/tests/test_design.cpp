#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qstc/design.hpp"
#include "qstc/errors.hpp"

using namespace qstc;

namespace {

constexpr double kPi = 3.14159265358979323846;

double sum_sq_couplings(const ChainSpec& s) {
  double a = 0.0;
  for (double x : s.t) a += x * x;
  for (double x : s.w) a += x * x;
  for (double x : s.g) a += x * x;
  return a;
}

}  // namespace

TEST_CASE("eight-qubit feasible intervals") {
  for (int k : {1, 2, 3, 5, 10}) {
    const double kk = k;
    const auto [lo, hi] = pst_feasible_interval(PstFamily::N8, k);
    CHECK(lo == doctest::Approx((4 * kk * kk + 8 * kk + 3) / (kk * kk + 2 * kk + 3)));
    CHECK(hi == doctest::Approx((kk + 1) * (kk + 1)));
    CHECK(lo < hi);
  }
  CHECK_THROWS_AS(pst_feasible_interval(PstFamily::N8, 0), ValidationError);
}

TEST_CASE("eight-qubit design at k = 1, v1 = sqrt 3") {
  const PstDesign d = design_pst_n8(1, std::sqrt(3.0));
  CHECK(d.v2 == doctest::Approx(std::sqrt(2.5)));
  CHECK(d.g1 == doctest::Approx(1.0));
  CHECK(d.g2 == doctest::Approx(1.0));
  const ChainSpec c = d.chain();
  CHECK(c.size() == 8);
  CHECK(is_mirror_symmetric(c));
}

TEST_CASE("eight-qubit designs reach integer spectra and transfer perfectly") {
  for (int k : {1, 2, 3, 5, 10}) {
    const auto [lo, hi] = pst_feasible_interval(PstFamily::N8, k);
    for (double f : {0.1, 0.5, 0.9}) {
      const double v1 = std::sqrt(lo + f * (hi - lo));
      const PstDesign d = design_pst_n8(k, v1);
      const ChainSpec c = d.chain();
      CHECK(oracle::max_abs_diff(oracle::jacobi_eigenvalues(oracle::cell_matrix(c)), d.target_spectrum) < 1e-9);
      CHECK(oracle::expm_probability(c, kPi) > 1.0 - 1e-9);
      CHECK(oracle::expm_probability(c, 2 * kPi) < 1e-9);
      const CosineSeries ref = probability_closed_form_pst(PstFamily::N8, k);
      for (double t : {0.3, 1.7, 2.9}) CHECK(std::abs(ref.probability(t) - oracle::expm_probability(c, t)) < 1e-9);
    }
  }
}

TEST_CASE("eight-qubit series coefficients at k = 1") {
  const CosineSeries s = probability_closed_form_pst(PstFamily::N8, 1);
  CHECK(s.frequencies == std::vector<double>{1, 2, 3});
  CHECK(s.coefficients[0] == doctest::Approx(5.0 / 16));
  CHECK(s.coefficients[1] == doctest::Approx(-8.0 / 16));
  CHECK(s.coefficients[2] == doctest::Approx(3.0 / 16));
}

TEST_CASE("infeasible v1 is rejected with the interval") {
  try {
    design_pst_n8(1, 2.1);
    FAIL("expected InfeasibleDesignError");
  } catch (const InfeasibleDesignError& e) {
    CHECK(e.lo() == doctest::Approx(2.5));
    CHECK(e.hi() == doctest::Approx(4.0));
  }
  CHECK_THROWS_AS(design_pst_n8(1, 1.5), InfeasibleDesignError);
  CHECK_THROWS_AS(design_pst_n8(1, -std::sqrt(3.0)), InfeasibleDesignError);
  CHECK_THROWS_AS(design_pst_n11(1, 3.0), InfeasibleDesignError);
}

TEST_CASE("eleven-qubit design at k = 1, v1 = 2") {
  const PstDesign d = design_pst_n11(1, 2.0);
  CHECK(d.v2 == doctest::Approx(std::sqrt(63.0) / 4));
  CHECK(d.v3 == doctest::Approx(std::sqrt(5.0)));
  CHECK(d.g1 == doctest::Approx(std::sqrt(1.5)));
  CHECK(d.g2 == doctest::Approx(0.75));
  const ChainSpec c = d.chain();
  // sum lambda^2 = 2 (1 + 4 + 9 + 16)
  CHECK(2 * sum_sq_couplings(c) == doctest::Approx(60.0));
  CHECK(oracle::max_abs_diff(oracle::jacobi_eigenvalues(oracle::cell_matrix(c)), d.target_spectrum) < 1e-9);
  CHECK(oracle::expm_probability(c, kPi) > 1.0 - 1e-9);
}

TEST_CASE("eleven-qubit designs across k") {
  for (int k : {1, 2, 3, 6}) {
    const double kk = k;
    const auto [lo, hi] = pst_feasible_interval(PstFamily::N11, k);
    CHECK(lo == doctest::Approx(1.5 * (4 * kk * kk + 12 * kk + 5) / (2 * kk * kk + 2 * kk + 5)));
    CHECK(hi == doctest::Approx((2 * kk * kk + 6 * kk + 3) / 2));
    const PstDesign d = design_pst_n11(k, std::sqrt(0.5 * (lo + hi)));
    const ChainSpec c = d.chain();
    CHECK(d.target_spectrum.size() == 11);
    CHECK(oracle::max_abs_diff(oracle::jacobi_eigenvalues(oracle::cell_matrix(c)), d.target_spectrum) < 1e-9);
    CHECK(oracle::expm_probability(c, kPi) > 1.0 - 1e-9);
    const CosineSeries ref = probability_closed_form_pst(PstFamily::N11, k);
    for (double t : {0.4, 2.2}) CHECK(std::abs(ref.probability(t) - oracle::expm_probability(c, t)) < 1e-9);
  }
  CHECK_NOTHROW(design_pst_n11(3, 2.0));
}

TEST_CASE("dimerized upper bound") {
  CHECK(dimerized_upper_bound(0.5) == doctest::Approx(0.346021).epsilon(1e-6));
  CHECK(dimerized_upper_bound(1.0) == 1.0);
  for (double w : {0.2, 0.7, 1.3, 3.0}) CHECK(dimerized_upper_bound(w) == doctest::Approx(dimerized_upper_bound(1 / w)));
  CHECK_THROWS_AS(dimerized_upper_bound(0.0), ValidationError);
}

TEST_CASE("dimerized series agrees with numerical propagation") {
  for (double w : {0.3, 0.6, 1.0, 1.4, 2.5}) {
    for (double g : {0.1, 0.5, 1.0, 2.0, 3.9}) {
      const ChainSpec c = ChainSpec::dimerized(3, 1.0, w, g);
      const CosineSeries s = dimerized_series(w, g);
      for (double t : {0.5, 3.3, 17.0}) CHECK(std::abs(s.probability(t) - oracle::expm_probability(c, t)) < 1e-10);
      CHECK(peak_search(s, 200.0).probability <= dimerized_upper_bound(w) + 1e-9);
    }
  }
  const TransferTrace tr = dimerized_probability_exact(0.8, 0.4, linspace(0, 50, 501));
  CHECK(tr.peak_probability <= dimerized_upper_bound(0.8));
}

TEST_CASE("pretty-good transfer search") {
  const CosineSeries s = dimerized_series(1.0, 0.3);
  const PgtSearchResult loose = pgt_search(s, 0.05, 2000.0);
  REQUIRE(loose.reached);
  CHECK(s.probability(loose.t_found) > 0.95);
  // Nothing earlier crosses the threshold.
  const auto [t_scan, p_scan] =
      oracle::dense_scan([&](double t) { return s.probability(t); }, loose.t_found * (1 - 1e-9), 400001);
  CHECK(p_scan <= 0.95 + 1e-6);
  const PgtSearchResult tight = pgt_search(s, 0.01, 2000.0);
  if (tight.reached) CHECK(tight.t_found >= loose.t_found);
  const PgtSearchResult none = pgt_search(s, 0.05, 5.0);
  CHECK_FALSE(none.reached);
  CHECK(none.infidelity >= 0.05);
  CHECK(none.probability == doctest::Approx(oracle::dense_scan([&](double t) { return s.probability(t); }, 5.0, 100001).second).epsilon(1e-6));
  // Below the dimerized bound, no arrival time can work.
  CHECK_THROWS_AS(pgt_search(dimerized_series(0.5, 0.3), 0.2, 50.0), ValidationError);
  CHECK_THROWS_AS(pgt_search(s, 0.0, 10.0), ValidationError);
  CHECK_THROWS_AS(pgt_search(s, 0.1, -1.0), ValidationError);
}
