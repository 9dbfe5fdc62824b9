#include <cmath>

#include "doctest.h"
#include "qstc/design.hpp"
#include "qstc/errors.hpp"
#include "qstc/optimizer.hpp"

using namespace qstc;

TEST_CASE("variable layout per scenario") {
  CHECK(OptProblem::make(Scenario::FixedW_OptG, 2, 10, 0.8, 1).dimension() == 1);
  CHECK(OptProblem::make(Scenario::Alpha_OptTG, 3, 10, 0.8, 1).dimension() == 2);
  CHECK(OptProblem::make(Scenario::Full_KPlus4, 4, 10, 0, 1).dimension() == 8);
  OptProblem sym = OptProblem::make(Scenario::Full_KPlus4, 3, 10, 0, 1);
  sym.symmetric = true;
  CHECK(sym.dimension() == 5);

  OptProblem alpha = OptProblem::make(Scenario::Alpha_OptTG, 1, 10, 0.5, 1);
  const ChainSpec c = assemble_chain(alpha, std::vector<double>{1.2, 0.7});
  CHECK(c.t == std::vector<double>{1.2, 1.2});
  CHECK(c.w[0] == doctest::Approx(2.4));
  CHECK(c.g == std::vector<double>{0.7, 0.7, 0.7});

  sym.bounds.assign(5, {0.05, 4.0});
  const ChainSpec m = assemble_chain(sym, std::vector<double>{1.0, 1.5, 0.2, 0.3, 0.4});
  CHECK(m.g == std::vector<double>{0.2, 0.3, 0.4, 0.3, 0.2});
  CHECK(is_mirror_symmetric(m) == false);  // t != w, so only the g-couplings mirror
  CHECK_THROWS_AS(assemble_chain(alpha, std::vector<double>{1.0}), ValidationError);
  CHECK_THROWS_AS(assemble_chain(alpha, std::vector<double>{5.0, 1.0}), ValidationError);
}

TEST_CASE("a known perfect-transfer chain scores one") {
  // N8 design with v1 = v2 has uniform t and w.
  const double x = std::sqrt(7.5);
  const PstDesign d = design_pst_n8(1, std::sqrt(x));
  REQUIRE(d.v2 == doctest::Approx(d.v1));
  OptProblem p = OptProblem::make(Scenario::Full_KPlus4, 1, 3.14159265358979323846, 0, 1);
  CHECK(objective(p, std::vector<double>{d.v1, d.v2, d.g1, d.g2, d.g1}) > 1 - 1e-10);
  p.window_max = true;
  p.arrival_time = 3.0;
  CHECK(objective(p, std::vector<double>{d.v1, d.v2, d.g1, d.g2, d.g1}) < 1 - 1e-4);
  p.arrival_time = 3.2;
  CHECK(objective(p, std::vector<double>{d.v1, d.v2, d.g1, d.g2, d.g1}) > 1 - 1e-10);
}

TEST_CASE("runs are reproducible and thread-count independent") {
  OptProblem p = OptProblem::make(Scenario::Alpha_OptTG, 1, 16, 0.8, 42);
  const OptResult a = optimize(p, 1200);
  const OptResult b = optimize(p, 1200);
  p.settings.threads = 3;
  const OptResult c = optimize(p, 1200);
  CHECK(a.best_params == b.best_params);
  CHECK(a.best_params == c.best_params);
  CHECK(a.best_P == c.best_P);
  CHECK(a.trajectory == c.trajectory);
  p.seed = 43;
  p.settings.threads = 1;
  CHECK(optimize(p, 1200).best_params != a.best_params);
}

TEST_CASE("result bookkeeping") {
  OptProblem p = OptProblem::make(Scenario::Full_KPlus4, 1, 8, 0, 5);
  const OptResult r = optimize(p, 3000);
  CHECK(r.evaluations <= 3000);
  CHECK(r.evaluations % 75 == 0);
  CHECK(r.trajectory.size() == static_cast<std::size_t>(r.generations) + 1);
  CHECK(std::is_sorted(r.trajectory.begin(), r.trajectory.end()));
  CHECK(r.trajectory.back() == r.best_P);
  CHECK(objective(p, r.best_params) == r.best_P);
  CHECK(r.neg_log_infidelity == doctest::Approx(-std::log10(1 - r.best_P)));
  for (std::size_t i = 0; i < r.best_params.size(); ++i) {
    CHECK(r.best_params[i] >= p.bounds[i].first);
    CHECK(r.best_params[i] <= p.bounds[i].second);
  }
}

TEST_CASE("degenerate bounds pin the variable") {
  OptProblem p = OptProblem::make(Scenario::Alpha_OptTG, 1, 12, 1.0, 2);
  p.bounds[0] = {1.0, 1.0};
  const OptResult r = optimize(p, 600);
  CHECK(r.best_params[0] == 1.0);
}

TEST_CASE("fixed-w optimum stays under the dimerized bound") {
  for (double w : {0.5, 0.9}) {
    OptProblem p = OptProblem::make(Scenario::FixedW_OptG, 2, 110, w, 11);
    p.window_max = true;
    const OptResult r = optimize(p, 450);
    CHECK(r.best_P <= dimerized_upper_bound(w) + 1e-9);
    CHECK(r.best_P > 0.5 * dimerized_upper_bound(w));
  }
}

TEST_CASE("invalid problems") {
  OptProblem p = OptProblem::make(Scenario::FixedW_OptG, 2, 10, 0.8, 1);
  CHECK_THROWS_AS(optimize(p, 100), ValidationError);  // population 15, needs 150
  p.bounds = {{0.0, 1.0}};
  CHECK_THROWS_AS(optimize(p, 1000), ValidationError);
  p.bounds = {{0.1, 1.0}, {0.1, 1.0}};
  CHECK_THROWS_AS(optimize(p, 1000), ValidationError);
  p = OptProblem::make(Scenario::FixedW_OptG, 2, -1, 0.8, 1);
  CHECK_THROWS_AS(optimize(p, 1000), ValidationError);
  CHECK_THROWS_AS(scenario_from_string("nope"), ValidationError);
  CHECK(scenario_from_string("fig4") == Scenario::Alpha_OptTG);
  CHECK(strategy_from_string(to_string(DeStrategy::CurrentToBest1Bin)) == DeStrategy::CurrentToBest1Bin);
}

TEST_CASE("sweep isolates failing jobs") {
  OptProblem good = OptProblem::make(Scenario::FixedW_OptG, 0, 10, 1.0, 1);
  OptProblem bad = good;
  bad.bounds = {{2.0, 1.0}};
  const auto entries = sweep({good, bad, good}, 300);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].result.has_value());
  CHECK_FALSE(entries[1].result.has_value());
  CHECK_FALSE(entries[1].error.empty());
  CHECK(entries[2].result->best_P == entries[0].result->best_P);
  CHECK_THROWS_AS(sweep({}, 300), ValidationError);
}

TEST_CASE("alternative strategy also improves on the initial population") {
  OptProblem p = OptProblem::make(Scenario::Alpha_OptTG, 1, 16, 1.0, 8);
  p.settings.strategy = DeStrategy::CurrentToBest1Bin;
  p.settings.dither = true;
  const OptResult r = optimize(p, 1500);
  CHECK(r.best_P >= r.trajectory.front());
  CHECK(r.best_P > 0.5);
}
