#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qstc/chain_model.hpp"
#include "qstc/design.hpp"
#include "qstc/dynamics.hpp"
#include "qstc/errors.hpp"
#include "qstc/exact_algebra.hpp"
#include "qstc/optimizer.hpp"
#include "qstc/serialization.hpp"
#include "qstc/spectral.hpp"

namespace {

using namespace qstc;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInfeasible = 4;

struct Run {
  RunManifest manifest;
  std::string manifest_path;
  int threads = 1;

  void output(const std::string& path) {
    if (path.empty()) return;
    manifest.outputs.push_back(path);
    if (manifest_path.empty()) manifest_path = path + ".manifest.json";
  }
};

void emit(const Json& j, const std::string& path, Run& run) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  write_json_file(path, j);
  run.output(path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  return out;
}

bool is_homogeneous(const ChainSpec& spec) {
  const double c = spec.t.front();
  auto same = [c](const std::vector<double>& v) {
    for (double x : v) {
      if (x != c) return false;
    }
    return true;
  };
  return same(spec.t) && same(spec.w) && same(spec.g);
}

std::vector<std::string> sequence_tags(const ChainSpec& spec) {
  if (!is_homogeneous(spec)) return {};
  if (auto tag = classify_sequence(spec.k())) return {to_string(*tag)};
  return {};
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string spec;
  bool lemmas = false;
  bool exact = false;
  bool allow_large = false;
  double tol = 1e-10;
  double bridge = 1.0;
  std::string out;
};

void cmd_spectrum(const SpectrumArgs& a, Run& run) {
  const ChainSpec spec = read_chain_file(a.spec);
  run.manifest.inputs["spec"] = chain_to_json(spec);
  const Spectrum s = decompose(build_hamiltonian(spec));
  const auto tags = sequence_tags(spec);
  Json j = spectrum_to_json(s, tags);
  j["n_qubits"] = spec.size();
  j["chain"] = chain_to_json(spec);
  std::cerr << "N=" << spec.size() << " null_multiplicity=" << s.null_multiplicity
            << " paired=" << (s.paired ? "yes" : "no");
  for (const auto& t : tags) std::cerr << " tag=" << t;
  std::cerr << '\n';
  if (a.lemmas) {
    const LemmaReport r = verify_lemmas(spec, a.tol, a.bridge);
    j["lemmas"] = lemma_report_to_json(r);
    std::cerr << "lemmas " << r.lemma1 << r.lemma2 << r.lemma3 << r.lemma4
              << (r.all() ? " all pass\n" : " FAILED\n");
  }
  if (a.exact) {
    CharPolyOptions opt;
    opt.allow_large = a.allow_large;
    const CharPolyReport r = char_poly_report(spec, opt);
    j["exact"] = char_poly_report_to_json(r);
    std::cerr << "reduced degree " << r.reduced_poly.degree() << ", max factor degree "
              << r.profile.max_degree << ", radical degree " << r.profile.radical_degree
              << " (" << to_string(r.profile.certification) << ")\n";
    if (!r.warning.empty()) std::cerr << "warning: " << r.warning << '\n';
  }
  emit(j, a.out, run);
}

// ------------------------------------------------------------------ evolve

struct EvolveArgs {
  std::string spec;
  double tmax = 0.0;
  std::size_t samples = 1001;
  std::string out;
};

void cmd_evolve(const EvolveArgs& a, Run& run) {
  if (!(a.tmax > 0.0)) throw ValidationError("--tmax must be positive");
  const ChainSpec spec = read_chain_file(a.spec);
  run.manifest.inputs["spec"] = chain_to_json(spec);
  const auto times = linspace(0.0, a.tmax, a.samples);
  const Propagator prop(build_hamiltonian(spec));
  const TransferTrace tr = transfer_probability(prop, times);
  if (a.out.empty()) {
    write_trace_csv(std::cout, tr);
  } else {
    auto f = open_out(a.out);
    write_trace_csv(f, tr);
    run.output(a.out);
  }
  const Peak p = peak_search(prop, a.tmax);
  std::cerr << "peak t*=" << format_number(p.time) << " P*=" << format_number(p.probability)
            << " (grid: t=" << format_number(tr.peak_time)
            << " P=" << format_number(tr.peak_probability) << ")\n";
}

// ------------------------------------------------------------------ design

struct DesignArgs {
  std::string family = "n8";
  int k = 1;
  double v1 = 0.0;
  double w = 1.0;
  std::string spec;
  double epsilon = 1e-2;
  double tmax = 0.0;
  std::string out;
};

void cmd_design_pst(const DesignArgs& a, Run& run) {
  PstFamily fam;
  if (a.family == "n8") {
    fam = PstFamily::N8;
  } else if (a.family == "n11") {
    fam = PstFamily::N11;
  } else {
    throw ValidationError("--family must be n8 or n11");
  }
  const PstDesign d = design_pst(fam, a.k, a.v1);
  Json j = pst_design_to_json(d);
  j["series"] = cosine_series_to_json(probability_closed_form_pst(fam, a.k));
  emit(j, a.out, run);
  const Propagator prop(build_hamiltonian(d.chain()));
  std::cerr << "P(pi)=" << format_number(prop.probability(3.14159265358979323846)) << '\n';
}

void cmd_design_bound(const DesignArgs& a, Run& run) {
  Json j;
  j["w"] = a.w;
  j["P_up"] = dimerized_upper_bound(a.w);
  emit(j, a.out, run);
}

void cmd_design_pgt(const DesignArgs& a, Run& run) {
  const ChainSpec spec = read_chain_file(a.spec);
  run.manifest.inputs["spec"] = chain_to_json(spec);
  const CosineSeries series = closed_form_probability(spec);
  const PgtSearchResult r = pgt_search(series, a.epsilon, a.tmax);
  Json j = pgt_result_to_json(r);
  j["series"] = cosine_series_to_json(series);
  j["chain"] = chain_to_json(spec);
  emit(j, a.out, run);
  std::cerr << (r.reached ? "reached" : "not reached") << " t=" << format_number(r.t_found)
            << " 1-P=" << format_number(r.infidelity) << '\n';
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string config;
  std::string out;
  std::string json;
};

void cmd_optimize(const OptimizeArgs& a, Run& run) {
  Json cfg = read_json_file(a.config);
  // A manifest of an earlier run carries the resolved config.
  if (cfg.contains("inputs") && cfg["inputs"].contains("config")) cfg = cfg["inputs"]["config"];
  run.manifest.inputs["config"] = cfg;
  auto jobs = opt_jobs_from_recipe(cfg);
  run.manifest.seed = jobs.front().problem.seed;

  std::vector<SweepEntry> entries;
  Json results = Json::array();
  for (auto& job : jobs) {
    job.problem.settings.threads = run.threads;
    SweepEntry e{job.problem, std::nullopt, {}};
    try {
      e.result = optimize(job.problem, job.budget);
    } catch (const Error& ex) {
      e.error = ex.what();
    }
    Json row;
    row["problem"] = opt_problem_to_json(job.problem);
    row["budget"] = job.budget;
    if (e.result) {
      row["result"] = opt_result_to_json(*e.result);
      std::cerr << to_string(job.problem.scenario) << " k=" << job.problem.k
                << " T=" << format_number(job.problem.arrival_time)
                << " P=" << format_number(e.result->best_P) << '\n';
    } else {
      row["error"] = e.error;
      std::cerr << "error: " << e.error << '\n';
    }
    results.push_back(row);
    entries.push_back(std::move(e));
  }
  if (a.out.empty()) {
    write_sweep_csv(std::cout, entries);
  } else {
    auto f = open_out(a.out);
    write_sweep_csv(f, entries);
    run.output(a.out);
  }
  if (!a.json.empty()) {
    write_json_file(a.json, results);
    run.output(a.json);
  }
}

// -------------------------------------------------------------------- glue

struct GlueArgs {
  std::string spec;
  double bridge = 1.0;
  std::string out;
};

void cmd_glue(const GlueArgs& a, Run& run) {
  const ChainSpec parent = read_chain_file(a.spec);
  run.manifest.inputs["spec"] = chain_to_json(parent);
  const GlueResult g = glue(parent, a.bridge);
  const LemmaReport r = verify_lemmas(parent, 1e-10, a.bridge);
  emit(chain_to_json(g.child), a.out, run);
  std::cerr << "N=" << parent.size() << " -> " << g.child.size()
            << " block residual " << format_number(g.block_residual())
            << ", containment " << format_number(r.containment_violation) << '\n';
}

// --------------------------------------------------------------- sequences

struct SequencesArgs {
  int k_min = 1;
  int k_max = 30;
  bool allow_large = false;
  std::string config;
  std::string out;
};

void cmd_sequences(SequencesArgs a, Run& run) {
  if (!a.config.empty()) {
    const Json cfg = read_json_file(a.config);
    a.k_min = cfg.value("k_min", a.k_min);
    a.k_max = cfg.value("k_max", a.k_max);
    a.allow_large = cfg.value("allow_large", a.allow_large);
    run.manifest.inputs["config"] = cfg;
  }
  if (a.k_min < 0 || a.k_max < a.k_min) throw ValidationError("need 0 <= k-min <= k-max");
  CharPolyOptions opt;
  opt.allow_large = a.allow_large;

  std::ostringstream csv;
  csv << "k,N,sequence,poly,max_factor_degree,factor_degrees,certification\n";
  for (int k = a.k_min; k <= a.k_max; ++k) {
    const CharPolyReport r = char_poly_report(k, opt);
    std::string degs;
    for (int d : r.profile.degrees) degs += (degs.empty() ? "" : " ") + std::to_string(d);
    const std::string tag = r.sequence ? to_string(*r.sequence) : "";
    csv << k << ',' << r.n_qubits << ',' << tag << ',' << r.profile.radical_degree << ','
        << r.profile.max_degree << ',' << degs << ',' << to_string(r.profile.certification)
        << '\n';
    std::cerr << "k=" << k << " N=" << r.n_qubits << ' ' << (tag.empty() ? "-" : tag)
              << " poly=" << r.profile.radical_degree << '\n';
    if (!r.warning.empty()) std::cerr << "warning: " << r.warning << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    auto f = open_out(a.out);
    f << csv.str();
    run.output(a.out);
  }
}

int threads_from_env() {
  if (const char* v = std::getenv("QSTC_THREADS")) {
    try {
      return std::max(1, std::stoi(v));
    } catch (const std::exception&) {
      throw ValidationError("QSTC_THREADS must be a positive integer");
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decorated qubit chains: spectra, transfer dynamics, designs and optimization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", QSTC_VERSION);

  Run run;
  run.manifest.tool_version = QSTC_VERSION;
  std::optional<int> threads;
  app.add_option("--threads", threads, "worker threads (default $QSTC_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--manifest", run.manifest_path, "run manifest path (default <output>.manifest.json)");

  std::function<void()> action;
  std::string primary_out;

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, lemma checks, exact char poly");
  spectrum->add_option("spec", sa.spec, "chain spec JSON")->required();
  spectrum->add_flag("--verify-lemmas", sa.lemmas, "append the glue/pairing lemma report");
  spectrum->add_flag("--exact", sa.exact, "exact characteristic polynomial and factor degrees");
  spectrum->add_flag("--allow-large", sa.allow_large, "raise the exact size cap to k = 100");
  spectrum->add_option("--tol", sa.tol, "lemma tolerance");
  spectrum->add_option("--bridge", sa.bridge, "glue bridge coupling");
  spectrum->add_option("--out", sa.out, "JSON output file");
  spectrum->callback([&] {
    primary_out = sa.out;
    action = [&] { cmd_spectrum(sa, run); };
  });

  EvolveArgs ea;
  auto* evolve = app.add_subcommand("evolve", "corner-to-corner transfer probability trace");
  evolve->add_option("spec", ea.spec, "chain spec JSON")->required();
  evolve->add_option("--tmax", ea.tmax, "final time")->required();
  evolve->add_option("--samples", ea.samples, "number of time samples");
  evolve->add_option("--out", ea.out, "CSV output file (default stdout)");
  evolve->callback([&] {
    primary_out = ea.out;
    action = [&] { cmd_evolve(ea, run); };
  });

  DesignArgs da;
  auto* design = app.add_subcommand("design", "perfect-transfer designs and bounds");
  design->require_subcommand(1);
  auto* pst = design->add_subcommand("pst", "integer-spectrum chain with perfect transfer at pi");
  pst->add_option("--family", da.family, "n8 or n11")->required();
  pst->add_option("--k", da.k, "spectrum offset")->required();
  pst->add_option("--v1", da.v1, "free coupling")->required();
  pst->add_option("--out", da.out, "JSON output file");
  pst->callback([&] {
    primary_out = da.out;
    action = [&] { cmd_design_pst(da, run); };
  });
  auto* bound = design->add_subcommand("bound", "upper bound of the dimerized 11-qubit chain");
  bound->add_option("--w", da.w, "inter-cell coupling")->required();
  bound->add_option("--out", da.out, "JSON output file");
  bound->callback([&] {
    primary_out = da.out;
    action = [&] { cmd_design_bound(da, run); };
  });
  auto* pgt = design->add_subcommand("pgt", "earliest time with 1 - P < epsilon");
  pgt->add_option("--spec", da.spec, "chain spec JSON")->required();
  pgt->add_option("--epsilon", da.epsilon, "infidelity target");
  pgt->add_option("--tmax", da.tmax, "search horizon")->required();
  pgt->add_option("--out", da.out, "JSON output file");
  pgt->callback([&] {
    primary_out = da.out;
    action = [&] { cmd_design_pgt(da, run); };
  });

  OptimizeArgs oa;
  auto* opt = app.add_subcommand("optimize", "coupling optimization sweeps");
  opt->add_option("--config", oa.config, "job or recipe JSON (or a previous manifest)")->required();
  opt->add_option("--out", oa.out, "CSV sweep table (default stdout)");
  opt->add_option("--json", oa.json, "JSON results file");
  opt->callback([&] {
    primary_out = oa.out;
    action = [&] { cmd_optimize(oa, run); };
  });

  GlueArgs ga;
  auto* gl = app.add_subcommand("glue", "join two mirror copies through a central qubit");
  gl->add_option("spec", ga.spec, "parent chain spec JSON (odd N)")->required();
  gl->add_option("--bridge", ga.bridge, "bridge coupling");
  gl->add_option("--out", ga.out, "child spec JSON (default stdout)");
  gl->callback([&] {
    primary_out = ga.out;
    action = [&] { cmd_glue(ga, run); };
  });

  SequencesArgs qa;
  auto* seq = app.add_subcommand("sequences", "factor-degree table of homogeneous chains");
  seq->add_option("--k-min", qa.k_min, "first k");
  seq->add_option("--k-max", qa.k_max, "last k");
  seq->add_flag("--allow-large", qa.allow_large, "allow k up to 100");
  seq->add_option("--config", qa.config, "JSON with k_min, k_max, allow_large");
  seq->add_option("--out", qa.out, "CSV output file (default stdout)");
  seq->callback([&] {
    primary_out = qa.out;
    action = [&] { cmd_sequences(qa, run); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  run.manifest.command = command;
  Json args = Json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  run.manifest.inputs["argv"] = args;

  if (run.manifest_path.empty()) {
    run.manifest_path = primary_out.empty() ? "run.manifest.json" : primary_out + ".manifest.json";
  }
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    run.threads = threads ? *threads : threads_from_env();
    action();
  } catch (const InfeasibleDesignError& e) {
    run.manifest.error = e.what();
    code = kExitInfeasible;
  } catch (const NumericalError& e) {
    run.manifest.error = e.what();
    code = kExitNumerical;
  } catch (const InconclusiveError& e) {
    run.manifest.error = e.what();
    code = kExitNumerical;
  } catch (const Error& e) {
    run.manifest.error = e.what();
    code = kExitInput;
  } catch (const nlohmann::json::exception& e) {
    run.manifest.error = e.what();
    code = kExitInput;
  } catch (const std::exception& e) {
    run.manifest.error = e.what();
    code = kExitNumerical;
  }
  if (code != 0) std::cerr << "error: " << run.manifest.error << '\n';
  run.manifest.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!run.manifest_path.empty()) {
    try {
      write_json_file(run.manifest_path, run.manifest.to_json());
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      if (code == 0) code = kExitInput;
    }
  }
  return code;
}
