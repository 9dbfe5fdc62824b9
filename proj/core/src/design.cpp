#include "qstc/design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstc/errors.hpp"

namespace qstc {
namespace {

void require_k(int k) {
  if (k < 1) throw ValidationError("spectrum offset k must be a positive integer");
}

[[noreturn]] void infeasible(const char* family, int k, double v1, std::pair<double, double> iv) {
  std::ostringstream msg;
  msg.precision(12);
  msg << family << " design with k=" << k << " needs " << iv.first << " < v1^2 < " << iv.second
      << ", got v1^2 = " << v1 * v1;
  throw InfeasibleDesignError(msg.str(), iv.first, iv.second);
}

std::vector<double> integer_spectrum(int k, int top, int zeros) {
  std::vector<double> s(static_cast<std::size_t>(zeros), 0.0);
  for (int e = k; e <= k + top; ++e) {
    s.push_back(e);
    s.push_back(-e);
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

ChainSpec PstDesign::chain() const {
  SymmetricChainSpec s;
  s.k = family == PstFamily::N8 ? 1 : 2;
  if (family == PstFamily::N8) {
    s.v = {v1, v2};
  } else {
    s.v = {v1, v2, v3};
  }
  s.g = {g1, g2};
  return expand_symmetric(s);
}

std::pair<double, double> pst_feasible_interval(PstFamily family, int k) {
  require_k(k);
  const double kk = k;
  if (family == PstFamily::N8) {
    return {(4 * kk * kk + 8 * kk + 3) / (kk * kk + 2 * kk + 3), (kk + 1) * (kk + 1)};
  }
  return {1.5 * (4 * kk * kk + 12 * kk + 5) / (2 * kk * kk + 2 * kk + 5),
          (2 * kk * kk + 6 * kk + 3) / 2.0};
}

PstDesign design_pst_n8(int k, double v1) {
  require_k(k);
  const auto iv = pst_feasible_interval(PstFamily::N8, k);
  const double x = v1 * v1;
  if (!(v1 > 0.0) || !(x > iv.first && x < iv.second)) infeasible("N8", k, v1, iv);
  const double kk = k;
  PstDesign d;
  d.family = PstFamily::N8;
  d.k = k;
  d.v1 = v1;
  d.v2 = std::sqrt((3 + 4 * kk * (kk + 2)) / (2 * x));
  d.g1 = std::sqrt((kk + 1) * (kk + 1) - x);
  // Fixed by the trace identity sum(lambda^2) = 2 sum(couplings^2).
  d.g2 = std::sqrt(kk * kk + 2 * kk + 3 - (4 * kk * kk + 8 * kk + 3) / x);
  d.feasible_interval = iv;
  d.target_spectrum = integer_spectrum(k, 2, 2);
  return d;
}

PstDesign design_pst_n11(int k, double v1) {
  require_k(k);
  const auto iv = pst_feasible_interval(PstFamily::N11, k);
  const double x = v1 * v1;
  if (!(v1 > 0.0) || !(x > iv.first && x < iv.second)) infeasible("N11", k, v1, iv);
  const double kk = k;
  PstDesign d;
  d.family = PstFamily::N11;
  d.k = k;
  d.v1 = v1;
  d.v2 = std::sqrt(3 * (5 + 12 * kk + 4 * kk * kk)) / (2 * v1);
  d.v3 = std::sqrt(3 + 2 * kk);
  d.g1 = std::sqrt((3 + 6 * kk + 2 * kk * kk - 2 * x) / 2);
  d.g2 = std::sqrt((10 + 4 * kk + 4 * kk * kk) * x - (15 + 36 * kk + 12 * kk * kk)) / (2 * v1);
  d.feasible_interval = iv;
  d.target_spectrum = integer_spectrum(k, 3, 3);
  return d;
}

PstDesign design_pst(PstFamily family, int k, double v1) {
  return family == PstFamily::N8 ? design_pst_n8(k, v1) : design_pst_n11(k, v1);
}

CosineSeries probability_closed_form_pst(PstFamily family, int k) {
  require_k(k);
  const double kk = k;
  CosineSeries s;
  if (family == PstFamily::N8) {
    const double den = 8 * (kk + 1);
    s.frequencies = {kk, kk + 1, kk + 2};
    s.coefficients = {(2 * kk + 3) / den, -4 * (kk + 1) / den, (2 * kk + 1) / den};
    return s;
  }
  const double den = 16 * (kk + 1) * (kk + 2);
  s.frequencies = {kk, kk + 1, kk + 2, kk + 3};
  s.coefficients = {(10 + 9 * kk + 2 * kk * kk) / den, -3 * (5 + 7 * kk + 2 * kk * kk) / den,
                    3 * (1 + 2 * kk) * (2 + kk) / den, -(1 + 2 * kk) * (1 + kk) / den};
  return s;
}

double dimerized_upper_bound(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("w must be finite and positive");
  if (w == 1.0) return 1.0;
  const double a = w * (1 + w * w) / (1 + w * w * w * w);
  return a * a;
}

CosineSeries dimerized_series(double w, double g) {
  if (!(w > 0.0) || !(g > 0.0)) throw ValidationError("w and g must be positive");
  const double r2 = std::sqrt(2.0);
  const double w2 = w * w;
  const double w4 = w2 * w2;
  const double pre = w / (4 * (w2 + 1) * (w4 + 1));
  std::vector<std::pair<double, double>> terms = {
      {std::sqrt(g * g + w2 - r2 * w + 1), pre * (w2 + 1) * (w2 + r2 * w + 1)},
      {std::sqrt(g * g + w2 + r2 * w + 1), pre * (w2 + 1) * (w2 - r2 * w + 1)},
      {std::sqrt(g * g + w2 + 1), -pre * 2 * (w4 + 1)},
      {g, -pre * 4 * w2},
  };
  std::sort(terms.begin(), terms.end());
  CosineSeries s;
  for (const auto& [f, c] : terms) {
    if (!s.frequencies.empty() && f - s.frequencies.back() <= kFrequencyMergeTolerance) {
      s.coefficients.back() += c;
    } else {
      s.frequencies.push_back(f);
      s.coefficients.push_back(c);
    }
  }
  return s;
}

TransferTrace dimerized_probability_exact(double w, double g, const std::vector<double>& times) {
  const CosineSeries s = dimerized_series(w, g);
  TransferTrace tr;
  tr.times = times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double p = s.probability(times[i]);
    tr.probability.push_back(p);
    tr.fidelity.push_back(average_fidelity(p));
    if (i == 0 || p > tr.peak_probability) {
      tr.peak_probability = p;
      tr.peak_time = times[i];
    }
  }
  return tr;
}

PgtSearchResult pgt_search(const CosineSeries& series, double epsilon, double t_max) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
  if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");
  if (series.abs_sum() < std::sqrt(1.0 - epsilon)) {
    throw ValidationError("series cannot reach P > 1 - epsilon: sum |c_j| is too small");
  }
  PgtSearchResult res;
  res.epsilon = epsilon;
  res.frequencies = series.frequencies;
  const double target = 1.0 - epsilon;
  auto p = [&](double t) {
    ++res.scan_budget;
    return series.probability(t);
  };
  // Fixed step so that a longer horizon only extends the scanned prefix.
  const double h = 3.14159265358979323846 / (8.0 * std::max(series.max_frequency(), 1e-12));
  const std::function<double(double)> fn = p;

  auto consider = [&](double t, double v) {
    if (v > res.probability) {
      res.probability = v;
      res.t_found = t;
    }
  };
  // Earliest crossing in [lo, hi] given P(lo) <= target < P(hi).
  auto crossing = [&](double lo, double hi) {
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (p(mid) > target ? hi : lo) = mid;
    }
    res.reached = true;
    res.t_found = hi;
    res.probability = p(hi);
    res.infidelity = 1.0 - res.probability;
    return res;
  };

  double prev2 = 0.0;
  double prev = p(0.0);
  res.probability = prev;
  if (prev > target) return crossing(0.0, 0.0);
  for (std::size_t i = 1;; ++i) {
    const double t_prev = h * static_cast<double>(i - 1);
    if (t_prev >= t_max) break;
    const double t = std::min(h * static_cast<double>(i), t_max);
    const double cur = p(t);
    // Every grid sample before t is at or below the target here.
    if (i >= 2 && prev >= prev2 && prev >= cur) {
      const double a = h * static_cast<double>(i - 2);
      const double tp = detail::golden_max(fn, a, t, 1e-12);
      const double vp = p(tp);
      if (vp > target) return crossing(a, tp);
      consider(tp, vp);
    }
    if (cur > target) return crossing(t_prev, t);
    consider(t, cur);
    prev2 = prev;
    prev = cur;
  }
  res.infidelity = 1.0 - res.probability;
  res.reached = res.infidelity < epsilon;
  return res;
}

}  // namespace qstc
