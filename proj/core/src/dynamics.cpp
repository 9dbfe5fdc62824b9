#include "qstc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qstc/errors.hpp"

namespace qstc {

Propagator::Propagator(const HamiltonianMatrix& h)
    : Propagator(h, h.corner_sites().first, h.corner_sites().second) {}

Propagator::Propagator(const HamiltonianMatrix& h, std::size_t sender, std::size_t receiver)
    : Propagator(decompose(h), sender, receiver) {}

Propagator::Propagator(const Spectrum& spectrum, std::size_t sender, std::size_t receiver)
    : spectrum_(spectrum), sender_(sender) {
  const auto n = static_cast<std::size_t>(spectrum_.eigenvalues.size());
  if (sender >= n || receiver >= n) throw ValidationError("site index out of range");
  weights_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    weights_[j] = spectrum_.eigenvectors(receiver, j) * spectrum_.eigenvectors(sender, j);
    max_freq_ = std::max(max_freq_, std::abs(spectrum_.eigenvalues(j)));
  }
}

std::complex<double> Propagator::amplitude(double t) const {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const double phase = spectrum_.eigenvalues(j) * t;
    re += weights_[j] * std::cos(phase);
    im -= weights_[j] * std::sin(phase);
  }
  return {re, im};
}

double Propagator::probability(double t) const { return std::norm(amplitude(t)); }

std::vector<std::complex<double>> Propagator::state(double t) const {
  const auto n = static_cast<std::size_t>(spectrum_.eigenvalues.size());
  std::vector<std::complex<double>> psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = spectrum_.eigenvalues(j) * t;
    const std::complex<double> c =
        spectrum_.eigenvectors(sender_, j) * std::complex<double>(std::cos(phase), -std::sin(phase));
    for (std::size_t i = 0; i < n; ++i) psi[i] += spectrum_.eigenvectors(i, j) * c;
  }
  return psi;
}

TransferTrace transfer_probability(const Propagator& prop, const std::vector<double>& times) {
  TransferTrace tr;
  tr.times = times;
  tr.probability.reserve(times.size());
  tr.fidelity.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw ValidationError("time samples must be finite");
    const double p = prop.probability(times[i]);
    tr.probability.push_back(p);
    tr.fidelity.push_back(average_fidelity(p));
    if (i == 0 || p > tr.peak_probability) {
      tr.peak_probability = p;
      tr.peak_time = times[i];
    }
  }
  return tr;
}

TransferTrace transfer_probability(const ChainSpec& spec, const std::vector<double>& times) {
  return transfer_probability(Propagator(build_hamiltonian(spec)), times);
}

double CosineSeries::amplitude(double t) const {
  double a = 0.0;
  for (std::size_t j = 0; j < frequencies.size(); ++j) a += coefficients[j] * std::cos(frequencies[j] * t);
  return a;
}

double CosineSeries::coefficient_sum() const {
  double s = 0.0;
  for (double c : coefficients) s += c;
  return s;
}

double CosineSeries::abs_sum() const {
  double s = 0.0;
  for (double c : coefficients) s += std::abs(c);
  return s;
}

CosineSeries closed_form_probability(const Spectrum& spectrum, std::size_t sender,
                                     std::size_t receiver) {
  const auto n = static_cast<std::size_t>(spectrum.eigenvalues.size());
  if (sender >= n || receiver >= n) throw ValidationError("site index out of range");
  struct Group {
    double freq;
    double cos_coeff;
    double sin_coeff;
  };
  std::vector<Group> groups;
  std::vector<std::pair<double, double>> terms;  // (lambda, weight)
  for (std::size_t j = 0; j < n; ++j) {
    terms.emplace_back(spectrum.eigenvalues(j),
                       spectrum.eigenvectors(receiver, j) * spectrum.eigenvectors(sender, j));
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return std::abs(a.first) < std::abs(b.first);
  });
  double scale = 0.0;
  for (const auto& [lambda, w] : terms) scale = std::max(scale, std::abs(w));
  for (const auto& [lambda, w] : terms) {
    const double f = std::abs(lambda);
    const double sign = lambda >= 0.0 ? 1.0 : -1.0;
    if (groups.empty() || f - groups.back().freq > kFrequencyMergeTolerance) {
      groups.push_back({f, 0.0, 0.0});
    }
    groups.back().cos_coeff += w;
    // sin(-|l| t) = -sin(|l| t): the odd part cancels only for mirrored weights.
    if (f > kFrequencyMergeTolerance) groups.back().sin_coeff += sign * w;
  }
  for (const auto& g : groups) {
    if (std::abs(g.sin_coeff) > 1e-9 * std::max(scale, 1e-300)) {
      throw UnsupportedError(
          "amplitude is not a pure cosine series: sender and receiver do not share a "
          "sublattice of a bipartite coupling graph");
    }
  }
  CosineSeries s;
  for (const auto& g : groups) {
    if (std::abs(g.cos_coeff) <= 1e-14) continue;
    s.frequencies.push_back(g.freq);
    s.coefficients.push_back(g.cos_coeff);
  }
  return s;
}

CosineSeries closed_form_probability(const ChainSpec& spec) {
  const HamiltonianMatrix h = build_hamiltonian(spec);
  return closed_form_probability(decompose(h), h.corner_sites().first, h.corner_sites().second);
}

std::vector<double> linspace(double t0, double t1, std::size_t samples) {
  if (samples < 2) throw ValidationError("a time grid needs at least 2 samples");
  std::vector<double> t(samples);
  const double h = (t1 - t0) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) t[i] = t0 + h * static_cast<double>(i);
  t.back() = t1;
  return t;
}

namespace detail {

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

std::size_t peak_grid_steps(double max_frequency, double t_max) {
  const double step_limit = 3.14159265358979323846 / (8.0 * std::max(max_frequency, 1e-12));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t_max / step_limit)));
}

Peak refine_peaks(const std::vector<double>& values, double h,
                  const std::function<double(double)>& p, double refine_tol) {
  const std::size_t steps = values.size() - 1;
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t i = 0; i <= steps; ++i) {
    const bool left = i == 0 || values[i] >= values[i - 1];
    const bool right = i == steps || values[i] >= values[i + 1];
    if (left && right) cand.emplace_back(values[i], i);
  }
  std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  Peak best;
  const std::size_t keep = std::min<std::size_t>(cand.size(), 16);
  for (std::size_t c = 0; c < keep; ++c) {
    const std::size_t i = cand[c].second;
    const double a = h * static_cast<double>(i == 0 ? 0 : i - 1);
    const double b = h * static_cast<double>(std::min(i + 1, steps));
    const double t = golden_max(p, a, b, refine_tol);
    const double v = p(t);
    const double tg = h * static_cast<double>(i);
    const double grid_v = p(tg);
    const double tt = v >= grid_v ? t : tg;
    const double vv = std::max(v, grid_v);
    if (vv > best.probability || (vv == best.probability && tt < best.time)) best = {tt, vv};
  }
  return best;
}

}  // namespace detail

Peak peak_search(const Propagator& prop, double t_max, double refine_tol) {
  return peak_search([&prop](double t) { return prop.probability(t); }, prop.max_frequency(),
                     t_max, refine_tol);
}

Peak peak_search(const CosineSeries& series, double t_max, double refine_tol) {
  if (!(t_max > 0.0)) return {};
  const std::size_t steps = detail::peak_grid_steps(series.max_frequency(), t_max);
  const double h = t_max / static_cast<double>(steps);
  // cos(w (i+1) h) = 2 cos(w h) cos(w i h) - cos(w (i-1) h), one term at a time.
  std::vector<double> amp(steps + 1, 0.0);
  for (std::size_t j = 0; j < series.frequencies.size(); ++j) {
    const double c = series.coefficients[j];
    const double two_cos = 2.0 * std::cos(series.frequencies[j] * h);
    double prev = std::cos(series.frequencies[j] * h);  // value at i = -1
    double cur = 1.0;
    for (std::size_t i = 0; i <= steps; ++i) {
      amp[i] += c * cur;
      const double next = two_cos * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  for (double& a : amp) a *= a;
  return detail::refine_peaks(amp, h, [&series](double t) { return series.probability(t); },
                              refine_tol);
}

}  // namespace qstc
