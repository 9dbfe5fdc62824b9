#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qstc/dynamics.hpp"
#include "qstc/errors.hpp"

using namespace qstc;

namespace {

ChainSpec random_chain(std::mt19937_64& rng, int nc) {
  std::uniform_real_distribution<double> u(0.3, 2.0);
  ChainSpec s;
  s.n_cells = nc;
  for (int i = 0; i < nc; ++i) {
    s.t.push_back(u(rng));
    s.w.push_back(u(rng));
  }
  for (int i = 0; i <= nc; ++i) s.g.push_back(u(rng));
  return s;
}

double p17(double t) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  const double a = -2 * std::cos(t) - std::cos(2 * t) - 3 * std::cos(r2 * t) + 2 * std::cos(r3 * t) +
                   (2 + r3) * std::cos(std::sqrt(3 - r3) * t) + (2 - r3) * std::cos(std::sqrt(3 + r3) * t);
  return a * a / 144.0;
}

}  // namespace

TEST_CASE("propagator matches a Taylor matrix exponential") {
  std::mt19937_64 rng(5);
  for (int nc : {1, 2, 4, 7}) {
    const ChainSpec s = random_chain(rng, nc);
    const Propagator prop(build_hamiltonian(s));
    for (double t : {0.0, 0.37, 2.5, 11.0, 40.0}) {
      CHECK(std::abs(prop.probability(t) - oracle::expm_probability(s, t)) < 1e-10);
    }
  }
}

TEST_CASE("state evolution is unitary") {
  std::mt19937_64 rng(9);
  const ChainSpec s = random_chain(rng, 5);
  const Propagator prop(build_hamiltonian(s));
  for (double t : {0.5, 3.0, 77.0}) {
    double norm = 0.0;
    for (const auto& c : prop.state(t)) norm += std::norm(c);
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
}

TEST_CASE("trace at t = 0") {
  const TransferTrace tr = transfer_probability(ChainSpec::homogeneous(11), {0.0});
  CHECK(tr.probability[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tr.fidelity[0] == doctest::Approx(0.5));
  CHECK(average_fidelity(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(transfer_probability(ChainSpec::homogeneous(8), {0.0, NAN}), ValidationError);
}

TEST_CASE("seventeen-qubit homogeneous chain follows its cosine formula") {
  const Propagator prop(build_hamiltonian(ChainSpec::homogeneous(17)));
  const CosineSeries series = closed_form_probability(ChainSpec::homogeneous(17));
  double worst = 0.0, worst_series = 0.0;
  for (const double t : linspace(0.0, 500.0, 2001)) {
    worst = std::max(worst, std::abs(prop.probability(t) - p17(t)));
    worst_series = std::max(worst_series, std::abs(series.probability(t) - p17(t)));
  }
  CHECK(worst < 1e-9);
  CHECK(worst_series < 1e-9);
  // Zero-frequency weight cancels, so P(0) = 0 and the coefficients sum to zero.
  CHECK(std::abs(series.coefficient_sum()) < 1e-12);
}

TEST_CASE("closed-form series agrees with numerical propagation") {
  std::mt19937_64 rng(17);
  for (int nc : {1, 3, 6}) {
    const ChainSpec s = random_chain(rng, nc);
    const CosineSeries series = closed_form_probability(s);
    const Propagator prop(build_hamiltonian(s));
    for (double t : {0.2, 1.3, 9.0, 55.5}) CHECK(std::abs(series.probability(t) - prop.probability(t)) < 1e-10);
    CHECK(std::is_sorted(series.frequencies.begin(), series.frequencies.end()));
  }
}

TEST_CASE("eight-qubit homogeneous chain amplitudes") {
  // Independent check: frequencies of the corner amplitude are the distinct |lambda|.
  const CosineSeries s = closed_form_probability(ChainSpec::homogeneous(8));
  const std::vector<double> expected = {0.0, 1.0, std::sqrt(2.0), 2.0};
  REQUIRE(s.frequencies.size() <= expected.size());
  for (double f : s.frequencies) {
    bool found = false;
    for (double e : expected) found = found || std::abs(f - e) < 1e-9;
    CHECK(found);
  }
}

TEST_CASE("peak search finds the dense-scan maximum") {
  std::mt19937_64 rng(23);
  for (int nc : {1, 2, 3}) {
    const ChainSpec s = random_chain(rng, nc);
    const Propagator prop(build_hamiltonian(s));
    const double t_max = 30.0;
    const Peak pk = peak_search(prop, t_max);
    const auto [t_scan, p_scan] = oracle::dense_scan([&](double t) { return prop.probability(t); }, t_max, 200001);
    CHECK(pk.probability >= p_scan - 1e-12);
    CHECK(pk.time >= 0.0);
    CHECK(pk.time <= t_max);
    CHECK(std::abs(prop.probability(pk.time) - pk.probability) < 1e-14);
    const Peak ps = peak_search(closed_form_probability(s), t_max);
    CHECK(std::abs(ps.probability - pk.probability) < 1e-9);
  }
}

TEST_CASE("linspace endpoints") {
  const auto v = linspace(1.0, 3.0, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 1.0);
  CHECK(v.back() == 3.0);
  CHECK(v[2] == doctest::Approx(2.0));
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), ValidationError);
}
