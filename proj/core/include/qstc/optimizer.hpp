#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qstc/chain_model.hpp"

namespace qstc {

enum class Scenario {
  FixedW_OptG,  // t = 1, w fixed, one uniform g
  Alpha_OptTG,  // variables (t, g), w = t / alpha
  Full_KPlus4,  // variables t, w, g_1 .. g_{k+2}
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

enum class DeStrategy { Rand1Bin, CurrentToBest1Bin };

std::string to_string(DeStrategy s);
DeStrategy strategy_from_string(const std::string& s);

struct DeSettings {
  int population_factor = 15;  // population = factor * dimension
  double crossover = 0.9;
  double weight = 0.7;
  DeStrategy strategy = DeStrategy::Rand1Bin;
  bool dither = false;  // weight drawn from [0.5, 1) per trial
  int threads = 1;
};

inline constexpr double kCouplingLower = 0.05;
inline constexpr double kCouplingUpper = 4.0;

struct OptProblem {
  Scenario scenario = Scenario::FixedW_OptG;
  int k = 2;
  double arrival_time = 1.0;
  std::vector<std::pair<double, double>> bounds;
  double fixed_value = 1.0;  // w for FixedW_OptG, alpha for Alpha_OptTG
  std::uint64_t seed = 1;
  bool window_max = false;  // maximise over [0, T] instead of at T
  bool symmetric = false;   // Full_KPlus4: mirror-symmetric g couplings
  DeSettings settings;

  std::size_t n_qubits() const { return 3 * static_cast<std::size_t>(k) + 5; }
  int dimension() const;
  void validate() const;

  // Problem with default coupling bounds for every variable.
  static OptProblem make(Scenario scenario, int k, double arrival_time, double fixed_value,
                         std::uint64_t seed);
};

ChainSpec assemble_chain(const OptProblem& problem, std::span<const double> params);
double objective(const OptProblem& problem, std::span<const double> params);

double neg_log_infidelity(double p);

struct OptResult {
  std::vector<double> best_params;
  double best_P = 0.0;
  double neg_log_infidelity = 0.0;
  std::size_t evaluations = 0;
  int generations = 0;
  std::vector<double> trajectory;  // best-so-far after each generation
};

// Differential evolution over the box bounds. The random stream of each
// (generation, individual) pair is derived from the seed alone, so the result
// does not depend on the thread count.
OptResult optimize(const OptProblem& problem, std::size_t budget);

struct SweepEntry {
  OptProblem problem;
  std::optional<OptResult> result;
  std::string error;
};

std::vector<SweepEntry> sweep(const std::vector<OptProblem>& problems, std::size_t budget);

}  // namespace qstc
