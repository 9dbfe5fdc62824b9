#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "qstc/chain_model.hpp"
#include "qstc/design.hpp"
#include "qstc/dynamics.hpp"
#include "qstc/exact_algebra.hpp"
#include "qstc/optimizer.hpp"
#include "qstc/spectral.hpp"

namespace qstc {

using Json = nlohmann::ordered_json;

// Accepts the explicit, symmetric and homogeneous chain schemas.
ChainSpec chain_from_json(const Json& j);
Json chain_to_json(const ChainSpec& spec);
ChainSpec read_chain_file(const std::string& path);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Json spectrum_to_json(const Spectrum& s, const std::vector<std::string>& tags = {});
Json lemma_report_to_json(const LemmaReport& r);
Json char_poly_report_to_json(const CharPolyReport& r);
Json pst_design_to_json(const PstDesign& d);
Json pgt_result_to_json(const PgtSearchResult& r);
Json cosine_series_to_json(const CosineSeries& s);
Json opt_result_to_json(const OptResult& r);
Json opt_problem_to_json(const OptProblem& p);

// One optimization job. "T" is absolute; "T_over_N" scales with the qubit count.
struct OptJob {
  OptProblem problem;
  std::size_t budget = 0;
};

OptJob opt_job_from_json(const Json& j);

// A recipe lists value grids under "k", "T_over_N"/"T" and "w"/"alpha"; the
// cartesian product is expanded in that nesting order.
std::vector<OptJob> opt_jobs_from_recipe(const Json& j);

// Fixed 15-significant-digit rendering used in every CSV file.
std::string format_number(double x);

void write_trace_csv(std::ostream& os, const TransferTrace& trace);

// Columns scenario,k,N,T,w_or_alpha,best_P,neg_log_infidelity,seed.
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries);

struct RunManifest {
  std::string command;
  Json inputs = Json::object();
  std::vector<std::string> outputs;
  std::string tool_version;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::string error;

  Json to_json() const;
};

}  // namespace qstc
