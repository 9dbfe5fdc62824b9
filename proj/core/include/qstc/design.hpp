#pragma once

#include <utility>
#include <vector>

#include "qstc/chain_model.hpp"
#include "qstc/dynamics.hpp"

namespace qstc {

enum class PstFamily { N8, N11 };

// Perfect-transfer chain with a consecutive-integer spectrum and arrival time pi.
struct PstDesign {
  PstFamily family = PstFamily::N8;
  int k = 1;
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;  // N11 only
  double g1 = 0.0;
  double g2 = 0.0;
  std::pair<double, double> feasible_interval;  // open interval for v1^2
  std::vector<double> target_spectrum;          // ascending, zeros included

  // N8: t=(v1,v2), w=(v2,v1), g=(g1,g2,g1)
  // N11: t=(v1,v3,v2), w=(v2,v3,v1), g=(g1,g2,g2,g1)
  ChainSpec chain() const;
};

std::pair<double, double> pst_feasible_interval(PstFamily family, int k);
PstDesign design_pst_n8(int k, double v1);
PstDesign design_pst_n11(int k, double v1);
PstDesign design_pst(PstFamily family, int k, double v1);

// Amplitude series of a PST design; independent of the free coupling v1.
CosineSeries probability_closed_form_pst(PstFamily family, int k);

// Largest transfer probability reachable by an 11-qubit chain with t=1, w, g.
double dimerized_upper_bound(double w);

// Exact amplitude series of the 11-qubit chain with t_i=1, w_i=w, g_i=g.
CosineSeries dimerized_series(double w, double g);
TransferTrace dimerized_probability_exact(double w, double g, const std::vector<double>& times);

struct PgtSearchResult {
  double epsilon = 0.0;
  bool reached = false;
  double t_found = 0.0;  // first arrival time with 1 - P < epsilon, or best time
  double probability = 0.0;
  double infidelity = 1.0;
  std::size_t scan_budget = 0;  // series evaluations
  std::vector<double> frequencies;
};

// Earliest t in [0, t_max] with 1 - P(t) < epsilon. Requires the coefficient
// magnitudes to sum to at least one (otherwise P < 1 everywhere).
PgtSearchResult pgt_search(const CosineSeries& series, double epsilon, double t_max);

}  // namespace qstc
