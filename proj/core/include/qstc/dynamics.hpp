#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qstc/chain_model.hpp"
#include "qstc/spectral.hpp"

namespace qstc {

// Averaged single-qubit transfer fidelity with the phase fixed to zero.
inline double average_fidelity(double p) {
  const double q = p < 0.0 ? 0.0 : p;
  return 0.5 + std::sqrt(q) / 3.0 + q / 6.0;
}

struct TransferTrace {
  std::vector<double> times;
  std::vector<double> probability;
  std::vector<double> fidelity;
  double peak_time = 0.0;
  double peak_probability = 0.0;
};

// Corner-to-corner amplitude <B|exp(-iHt)|A> from one eigendecomposition.
class Propagator {
 public:
  explicit Propagator(const HamiltonianMatrix& h);
  Propagator(const HamiltonianMatrix& h, std::size_t sender, std::size_t receiver);
  Propagator(const Spectrum& spectrum, std::size_t sender, std::size_t receiver);

  std::complex<double> amplitude(double t) const;
  double probability(double t) const;
  // Full column exp(-iHt)|A>.
  std::vector<std::complex<double>> state(double t) const;
  double max_frequency() const { return max_freq_; }

 private:
  Spectrum spectrum_;
  std::size_t sender_;
  std::vector<double> weights_;  // V(B,j) V(A,j)
  double max_freq_ = 0.0;
};

TransferTrace transfer_probability(const ChainSpec& spec, const std::vector<double>& times);
TransferTrace transfer_probability(const Propagator& prop, const std::vector<double>& times);

// Amplitude sum_j c_j cos(w_j t); probability is its square.
struct CosineSeries {
  std::vector<double> frequencies;  // ascending, non-negative
  std::vector<double> coefficients;

  double amplitude(double t) const;
  double probability(double t) const { const double a = amplitude(t); return a * a; }
  double coefficient_sum() const;
  double abs_sum() const;
  double max_frequency() const { return frequencies.empty() ? 0.0 : frequencies.back(); }
};

inline constexpr double kFrequencyMergeTolerance = 1e-9;

// Requires sender and receiver on the same sublattice of a bipartite
// Hamiltonian (true for the two corner qubits of every chain), so that the
// amplitude is real. Throws UnsupportedError otherwise.
CosineSeries closed_form_probability(const Spectrum& spectrum, std::size_t sender,
                                     std::size_t receiver);
CosineSeries closed_form_probability(const ChainSpec& spec);

struct Peak {
  double time = 0.0;
  double probability = 0.0;
};

// Global maximum of p on [0, t_max]: grid with step <= pi / (8 w_max), then
// golden-section refinement of the best local maxima.
template <class F>
Peak peak_search(F&& p, double max_frequency, double t_max, double refine_tol = 1e-10);

Peak peak_search(const Propagator& prop, double t_max, double refine_tol = 1e-10);
Peak peak_search(const CosineSeries& series, double t_max, double refine_tol = 1e-10);

// Time grid with `samples` points on [0, t_max].
std::vector<double> linspace(double t0, double t1, std::size_t samples);

namespace detail {
double golden_max(const std::function<double(double)>& f, double a, double b, double tol);
// Grid spacing used by peak_search: the largest h <= pi / (8 w_max) dividing t_max.
std::size_t peak_grid_steps(double max_frequency, double t_max);
// Refines the best local maxima of `values`, sampled at t_i = i h.
Peak refine_peaks(const std::vector<double>& values, double h,
                  const std::function<double(double)>& p, double refine_tol);
}  // namespace detail

template <class F>
Peak peak_search(F&& p, double max_frequency, double t_max, double refine_tol) {
  if (!(t_max > 0.0)) return {};
  const std::size_t steps = detail::peak_grid_steps(max_frequency, t_max);
  const double h = t_max / static_cast<double>(steps);
  std::vector<double> values(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) values[i] = p(h * static_cast<double>(i));
  return detail::refine_peaks(values, h, [&p](double t) { return p(t); }, refine_tol);
}

}  // namespace qstc
