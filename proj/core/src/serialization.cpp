#include "qstc/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "qstc/errors.hpp"

namespace qstc {
namespace {

template <class T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.count(item.key())) throw ValidationError("unknown field '" + item.key() + "'");
  }
}

Numbering numbering_from(const Json& j) {
  const auto s = get_or<std::string>(j, "numbering", "cell");
  if (s == "cell") return Numbering::Cell;
  if (s == "symmetric") return Numbering::Symmetric;
  throw ValidationError("numbering must be 'cell' or 'symmetric'");
}

Json poly_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

ChainSpec chain_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("chain spec must be a JSON object");
  // Output documents carry their input chain under "chain".
  if (j.contains("chain")) return chain_from_json(j.at("chain"));
  ChainSpec spec;
  if (j.contains("homogeneous")) {
    const Json& h = j.at("homogeneous");
    reject_unknown(h, {"N", "coupling", "numbering"});
    const int n = get<int>(h, "N");
    if (n < 5) throw ValidationError("homogeneous chain needs N >= 5 with N = 2 mod 3");
    spec = ChainSpec::homogeneous(static_cast<std::size_t>(n), get_or<double>(h, "coupling", 1.0));
    spec.numbering = numbering_from(h);
  } else if (j.contains("symmetric")) {
    const Json& s = j.at("symmetric");
    reject_unknown(s, {"k", "v", "g", "numbering"});
    SymmetricChainSpec sym;
    sym.k = get<int>(s, "k");
    sym.v = get<std::vector<double>>(s, "v");
    sym.g = get<std::vector<double>>(s, "g");
    spec = expand_symmetric(sym, numbering_from(s));
  } else {
    reject_unknown(j, {"n_cells", "t", "w", "g", "numbering"});
    spec.n_cells = get<int>(j, "n_cells");
    spec.t = get<std::vector<double>>(j, "t");
    spec.w = get<std::vector<double>>(j, "w");
    spec.g = get<std::vector<double>>(j, "g");
    spec.numbering = numbering_from(j);
  }
  spec.validate();
  return spec;
}

Json chain_to_json(const ChainSpec& spec) {
  Json j;
  j["n_cells"] = spec.n_cells;
  j["t"] = numbers(spec.t);
  j["w"] = numbers(spec.w);
  j["g"] = numbers(spec.g);
  j["numbering"] = spec.numbering == Numbering::Cell ? "cell" : "symmetric";
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

ChainSpec read_chain_file(const std::string& path) { return chain_from_json(read_json_file(path)); }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

Json spectrum_to_json(const Spectrum& s, const std::vector<std::string>& tags) {
  Json j;
  Json ev = Json::array();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) ev.push_back(s.eigenvalues[i]);
  j["eigenvalues"] = ev;
  j["null_multiplicity"] = s.null_multiplicity;
  j["paired"] = s.paired;
  j["pairing_error"] = s.pairing_error;
  j["tags"] = tags;
  return j;
}

Json lemma_report_to_json(const LemmaReport& r) {
  Json j;
  j["lemma1"] = r.lemma1;
  j["lemma2"] = r.lemma2;
  j["lemma3"] = r.lemma3;
  j["lemma4"] = r.lemma4;
  j["containment_violation"] = r.containment_violation;
  j["null_count"] = r.null_count;
  j["expected_null_count"] = r.expected_null_count;
  j["pairing_violation"] = r.pairing_violation;
  j["block_violation"] = r.block_violation;
  j["null_lift_violation"] = r.null_lift_violation;
  j["new_positive_eigenvalues"] = r.new_positive_eigenvalues;
  return j;
}

Json char_poly_report_to_json(const CharPolyReport& r) {
  const DegreeProfile& p = r.profile;
  Json j;
  j["k"] = r.k;
  j["N"] = r.n_qubits;
  j["char_poly"] = poly_json(r.char_poly);
  j["reduced_poly"] = poly_json(r.reduced_poly);
  j["factor_degrees"] = p.degrees;
  j["max_degree"] = p.max_degree;
  j["radical_degree"] = p.radical_degree;
  j["squarefree"] = p.squarefree;
  j["certification"] = to_string(p.certification);
  Json factors = Json::array();
  for (const auto& f : p.factors) {
    factors.push_back({{"degree", f.degree},
                       {"multiplicity", f.multiplicity},
                       {"component_degrees", f.component_degrees},
                       {"radical_degree", f.radical_degree},
                       {"coefficients", poly_json(f.factor)}});
  }
  j["factors"] = factors;
  Json patterns = Json::array();
  for (const auto& m : p.patterns) patterns.push_back({{"prime", m.prime}, {"degrees", m.degrees}});
  j["patterns"] = patterns;
  j["sequence"] = r.sequence ? Json(to_string(*r.sequence)) : Json(nullptr);
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

Json pst_design_to_json(const PstDesign& d) {
  Json j;
  j["family"] = d.family == PstFamily::N8 ? "n8" : "n11";
  j["k"] = d.k;
  j["v1"] = d.v1;
  j["v2"] = d.v2;
  if (d.family == PstFamily::N11) j["v3"] = d.v3;
  j["g1"] = d.g1;
  j["g2"] = d.g2;
  j["feasible_interval"] = {d.feasible_interval.first, d.feasible_interval.second};
  j["target_spectrum"] = numbers(d.target_spectrum);
  j["chain"] = chain_to_json(d.chain());
  return j;
}

Json cosine_series_to_json(const CosineSeries& s) {
  return {{"frequencies", numbers(s.frequencies)}, {"coefficients", numbers(s.coefficients)}};
}

Json pgt_result_to_json(const PgtSearchResult& r) {
  Json j;
  j["epsilon"] = r.epsilon;
  j["reached"] = r.reached;
  j["t_found"] = r.t_found;
  j["probability"] = r.probability;
  j["infidelity"] = r.infidelity;
  j["scan_budget"] = r.scan_budget;
  j["frequencies"] = numbers(r.frequencies);
  return j;
}

Json opt_result_to_json(const OptResult& r) {
  Json j;
  j["best_params"] = numbers(r.best_params);
  j["best_P"] = r.best_P;
  j["neg_log_infidelity"] = r.neg_log_infidelity;
  j["evaluations"] = r.evaluations;
  j["generations"] = r.generations;
  j["trajectory"] = numbers(r.trajectory);
  return j;
}

Json opt_problem_to_json(const OptProblem& p) {
  Json j;
  j["scenario"] = to_string(p.scenario);
  j["k"] = p.k;
  j["N"] = p.n_qubits();
  j["T"] = p.arrival_time;
  if (p.scenario == Scenario::FixedW_OptG) j["w"] = p.fixed_value;
  if (p.scenario == Scenario::Alpha_OptTG) j["alpha"] = p.fixed_value;
  Json b = Json::array();
  for (const auto& [lo, hi] : p.bounds) b.push_back({lo, hi});
  j["bounds"] = b;
  j["seed"] = p.seed;
  j["window_max"] = p.window_max;
  j["symmetric"] = p.symmetric;
  j["population_factor"] = p.settings.population_factor;
  j["crossover"] = p.settings.crossover;
  j["weight"] = p.settings.weight;
  j["strategy"] = to_string(p.settings.strategy);
  j["dither"] = p.settings.dither;
  return j;
}

OptJob opt_job_from_json(const Json& j) {
  reject_unknown(j, {"description", "scenario", "k", "N", "T", "T_over_N", "w", "alpha", "bounds",
                     "seed", "budget", "window_max", "symmetric", "population_factor", "crossover",
                     "weight", "strategy", "dither"});
  OptJob job;
  OptProblem& p = job.problem;
  p.scenario = scenario_from_string(get<std::string>(j, "scenario"));
  p.k = get<int>(j, "k");
  if (p.k < 0) throw ValidationError("k must be non-negative");
  if (j.contains("N") && get<std::size_t>(j, "N") != p.n_qubits()) {
    throw ValidationError("N does not match 3k+5");
  }
  const bool abs_t = j.contains("T");
  if (abs_t == j.contains("T_over_N")) throw ValidationError("give exactly one of T, T_over_N");
  p.arrival_time = abs_t ? get<double>(j, "T")
                         : get<double>(j, "T_over_N") * static_cast<double>(p.n_qubits());
  if (p.scenario == Scenario::FixedW_OptG) p.fixed_value = get<double>(j, "w");
  if (p.scenario == Scenario::Alpha_OptTG) p.fixed_value = get<double>(j, "alpha");
  if (p.scenario == Scenario::Full_KPlus4 && (j.contains("w") || j.contains("alpha"))) {
    throw ValidationError("scenario full takes neither w nor alpha");
  }
  if (!j.contains("seed")) throw ValidationError("missing field 'seed'");
  p.seed = get<std::uint64_t>(j, "seed");
  job.budget = get<std::size_t>(j, "budget");
  p.window_max = get_or<bool>(j, "window_max", false);
  p.symmetric = get_or<bool>(j, "symmetric", false);
  p.settings.population_factor = get_or<int>(j, "population_factor", p.settings.population_factor);
  p.settings.crossover = get_or<double>(j, "crossover", p.settings.crossover);
  p.settings.weight = get_or<double>(j, "weight", p.settings.weight);
  p.settings.strategy =
      strategy_from_string(get_or<std::string>(j, "strategy", to_string(p.settings.strategy)));
  p.settings.dither = get_or<bool>(j, "dither", false);

  const auto dim = static_cast<std::size_t>(p.dimension());
  p.bounds.assign(dim, {kCouplingLower, kCouplingUpper});
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (!b.is_array()) throw ValidationError("bounds must be an array");
    if (b.size() == 2 && b[0].is_number()) {
      const auto pair = get<std::pair<double, double>>(j, "bounds");
      p.bounds.assign(dim, pair);
    } else {
      p.bounds = get<std::vector<std::pair<double, double>>>(j, "bounds");
    }
  }
  p.validate();
  return job;
}

std::vector<OptJob> opt_jobs_from_recipe(const Json& j) {
  if (!j.is_object()) throw ValidationError("recipe must be a JSON object");
  auto values = [&](const char* key) {
    std::vector<Json> out;
    if (!j.contains(key)) return out;
    if (j.at(key).is_array()) {
      for (const auto& v : j.at(key)) out.push_back(v);
    } else {
      out.push_back(j.at(key));
    }
    if (out.empty()) throw ValidationError(std::string("empty grid for '") + key + "'");
    return out;
  };
  const char* t_key = j.contains("T") ? "T" : "T_over_N";
  const char* f_key = j.contains("alpha") ? "alpha" : "w";
  auto ks = values("k");
  auto ts = values(t_key);
  auto fs = values(f_key);
  if (ks.empty()) throw ValidationError("missing field 'k'");
  if (ts.empty()) throw ValidationError("missing field 'T' or 'T_over_N'");
  if (fs.empty()) fs.push_back(nullptr);

  std::vector<OptJob> jobs;
  for (const auto& k : ks) {
    for (const auto& f : fs) {
      for (const auto& t : ts) {
        Json one = j;
        one["k"] = k;
        one[t_key] = t;
        if (f.is_null()) {
          one.erase(f_key);
        } else {
          one[f_key] = f;
        }
        jobs.push_back(opt_job_from_json(one));
      }
    }
  }
  return jobs;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const TransferTrace& trace) {
  os << "t,P,f\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << format_number(trace.times[i]) << ',' << format_number(trace.probability[i]) << ','
       << format_number(trace.fidelity[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries) {
  os << "scenario,k,N,T,w_or_alpha,best_P,neg_log_infidelity,seed\n";
  for (const auto& e : entries) {
    const OptProblem& p = e.problem;
    os << to_string(p.scenario) << ',' << p.k << ',' << p.n_qubits() << ','
       << format_number(p.arrival_time) << ','
       << (p.scenario == Scenario::Full_KPlus4 ? std::string() : format_number(p.fixed_value))
       << ',';
    if (e.result) {
      os << format_number(e.result->best_P) << ',' << format_number(e.result->neg_log_infidelity);
    } else {
      os << "nan,nan";
    }
    os << ',' << p.seed << '\n';
  }
}

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["tool_version"] = tool_version;
  j["seed"] = seed;
  j["wall_time"] = wall_time;
  j["error"] = error.empty() ? Json(nullptr) : Json(error);
  return j;
}

}  // namespace qstc
