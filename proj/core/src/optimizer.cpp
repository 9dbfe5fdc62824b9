#include "qstc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "qstc/dynamics.hpp"
#include "qstc/errors.hpp"

namespace qstc {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Portable stream: same draws on every standard library.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t individual) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= generation * 0xd1b54a32d192ed03ULL;
    std::uint64_t b = splitmix64(s);
    s ^= individual * 0x8cb92ba72f3d8dd7ULL;
    std::uint64_t c = splitmix64(s);
    engine_.seed(a ^ (b << 1) ^ (c << 2));
  }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

 private:
  std::mt19937_64 engine_;
};

void evaluate_all(const OptProblem& problem, const std::vector<std::vector<double>>& xs,
                  std::vector<double>& out) {
  out.resize(xs.size());
  const int threads = std::max(1, problem.settings.threads);
  if (threads == 1 || xs.size() < 2) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = objective(problem, xs[i]);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < xs.size();
             i += static_cast<std::size_t>(threads)) {
          out[i] = objective(problem, xs[i]);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double repair(double v, double parent, double lo, double hi) {
  if (v < lo) return 0.5 * (lo + parent);
  if (v > hi) return 0.5 * (hi + parent);
  return v;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::FixedW_OptG:
      return "fixed_w";
    case Scenario::Alpha_OptTG:
      return "alpha";
    case Scenario::Full_KPlus4:
      return "full";
  }
  return {};
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "fixed_w" || s == "fig3") return Scenario::FixedW_OptG;
  if (s == "alpha" || s == "fig4") return Scenario::Alpha_OptTG;
  if (s == "full" || s == "fig5") return Scenario::Full_KPlus4;
  throw ValidationError("unknown scenario '" + s + "' (fixed_w, alpha, full)");
}

std::string to_string(DeStrategy s) {
  return s == DeStrategy::Rand1Bin ? "rand1bin" : "current_to_best1bin";
}

DeStrategy strategy_from_string(const std::string& s) {
  if (s == "rand1bin") return DeStrategy::Rand1Bin;
  if (s == "current_to_best1bin") return DeStrategy::CurrentToBest1Bin;
  throw ValidationError("unknown strategy '" + s + "' (rand1bin, current_to_best1bin)");
}

int OptProblem::dimension() const {
  switch (scenario) {
    case Scenario::FixedW_OptG:
      return 1;
    case Scenario::Alpha_OptTG:
      return 2;
    case Scenario::Full_KPlus4:
      return symmetric ? 2 + (k + 3) / 2 : k + 4;
  }
  return 0;
}

void OptProblem::validate() const {
  if (k < 0) throw ValidationError("k must be non-negative");
  if (!(arrival_time > 0.0) || !std::isfinite(arrival_time)) {
    throw ValidationError("arrival time must be finite and positive");
  }
  if (static_cast<int>(bounds.size()) != dimension()) {
    std::ostringstream m;
    m << "scenario " << to_string(scenario) << " has " << dimension() << " variables, got "
      << bounds.size() << " bounds";
    throw ValidationError(m.str());
  }
  for (const auto& [lo, hi] : bounds) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
      throw ValidationError("bounds must satisfy 0 < lo <= hi < inf");
    }
  }
  if (scenario != Scenario::Full_KPlus4 && !(fixed_value > 0.0)) {
    throw ValidationError("fixed w / alpha must be positive");
  }
  if (settings.population_factor < 1 || !(settings.crossover >= 0.0 && settings.crossover <= 1.0) ||
      !(settings.weight > 0.0)) {
    throw ValidationError("invalid differential evolution settings");
  }
}

OptProblem OptProblem::make(Scenario scenario, int k, double arrival_time, double fixed_value,
                            std::uint64_t seed) {
  OptProblem p;
  p.scenario = scenario;
  p.k = k;
  p.arrival_time = arrival_time;
  p.fixed_value = fixed_value;
  p.seed = seed;
  p.bounds.assign(static_cast<std::size_t>(p.dimension()), {kCouplingLower, kCouplingUpper});
  return p;
}

ChainSpec assemble_chain(const OptProblem& problem, std::span<const double> params) {
  if (static_cast<int>(params.size()) != problem.dimension()) {
    throw ValidationError("parameter vector has the wrong length");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto [lo, hi] = problem.bounds[i];
    if (!(params[i] >= lo && params[i] <= hi)) {
      throw ValidationError("parameter " + std::to_string(i) + " outside its bounds");
    }
  }
  const int nc = problem.k + 1;
  switch (problem.scenario) {
    case Scenario::FixedW_OptG:
      return ChainSpec::dimerized(nc, 1.0, problem.fixed_value, params[0]);
    case Scenario::Alpha_OptTG:
      return ChainSpec::dimerized(nc, params[0], params[0] / problem.fixed_value, params[1]);
    case Scenario::Full_KPlus4: {
      ChainSpec c = ChainSpec::dimerized(nc, params[0], params[1], 1.0);
      const int n_g = problem.k + 2;
      for (int i = 0; i < n_g; ++i) {
        const int j = problem.symmetric ? std::min(i, n_g - 1 - i) : i;
        c.g[i] = params[2 + j];
      }
      return c;
    }
  }
  throw ValidationError("unknown scenario");
}

double objective(const OptProblem& problem, std::span<const double> params) {
  const HamiltonianMatrix h = build_hamiltonian(assemble_chain(problem, params));
  if (problem.window_max) {
    const auto [a, b] = h.corner_sites();
    const CosineSeries series = closed_form_probability(decompose(h), a, b);
    return peak_search(series, problem.arrival_time, 1e-9).probability;
  }
  return Propagator(h).probability(problem.arrival_time);
}

double neg_log_infidelity(double p) { return -std::log10(std::max(1.0 - p, 1e-16)); }

OptResult optimize(const OptProblem& problem, std::size_t budget) {
  problem.validate();
  const auto dim = static_cast<std::size_t>(problem.dimension());
  const std::size_t np = std::max<std::size_t>(4, dim * problem.settings.population_factor);
  if (budget < 10 * np) {
    throw ValidationError("budget " + std::to_string(budget) + " is below the minimum " +
                          std::to_string(10 * np) + " (population x 10 generations)");
  }
  const DeSettings& cfg = problem.settings;

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (std::size_t i = 0; i < np; ++i) {
    Stream rng(problem.seed, 0, i);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto [lo, hi] = problem.bounds[j];
      pop[i][j] = lo + rng.uniform() * (hi - lo);
    }
  }
  std::vector<double> fit;
  evaluate_all(problem, pop, fit);

  OptResult res;
  res.evaluations = np;
  auto best_index = [&] {
    return static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
  };
  std::size_t best = best_index();
  res.trajectory.push_back(fit[best]);

  std::vector<std::vector<double>> trial(np, std::vector<double>(dim));
  std::vector<double> trial_fit;
  for (std::uint64_t gen = 1; res.evaluations + np <= budget; ++gen) {
    for (std::size_t i = 0; i < np; ++i) {
      Stream rng(problem.seed, gen, i);
      auto pick = [&](std::initializer_list<std::size_t> avoid) {
        for (;;) {
          const std::size_t r = rng.below(np);
          if (std::find(avoid.begin(), avoid.end(), r) == avoid.end()) return r;
        }
      };
      const double f = cfg.dither ? 0.5 + 0.5 * rng.uniform() : cfg.weight;
      std::vector<double> mutant(dim);
      if (cfg.strategy == DeStrategy::Rand1Bin) {
        const std::size_t r1 = pick({i});
        const std::size_t r2 = pick({i, r1});
        const std::size_t r3 = pick({i, r1, r2});
        for (std::size_t j = 0; j < dim; ++j) mutant[j] = pop[r1][j] + f * (pop[r2][j] - pop[r3][j]);
      } else {
        const std::size_t r1 = pick({i});
        const std::size_t r2 = pick({i, r1});
        for (std::size_t j = 0; j < dim; ++j) {
          mutant[j] = pop[i][j] + f * (pop[best][j] - pop[i][j]) + f * (pop[r1][j] - pop[r2][j]);
        }
      }
      const std::size_t forced = rng.below(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        const auto [lo, hi] = problem.bounds[j];
        const bool take = j == forced || rng.uniform() < cfg.crossover;
        trial[i][j] = take ? repair(mutant[j], pop[i][j], lo, hi) : pop[i][j];
      }
    }
    evaluate_all(problem, trial, trial_fit);
    res.evaluations += np;
    for (std::size_t i = 0; i < np; ++i) {
      if (trial_fit[i] >= fit[i]) {
        pop[i] = trial[i];
        fit[i] = trial_fit[i];
      }
    }
    best = best_index();
    res.trajectory.push_back(fit[best]);
    res.generations = static_cast<int>(gen);
  }
  res.best_params = pop[best];
  res.best_P = fit[best];
  res.neg_log_infidelity = neg_log_infidelity(res.best_P);
  return res;
}

std::vector<SweepEntry> sweep(const std::vector<OptProblem>& problems, std::size_t budget) {
  if (problems.empty()) throw ValidationError("sweep needs at least one problem");
  std::vector<SweepEntry> out;
  out.reserve(problems.size());
  for (const auto& p : problems) {
    SweepEntry e{p, std::nullopt, {}};
    try {
      e.result = optimize(p, budget);
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qstc
