// rds-ss: successive-sampling estimation for respondent-driven samples, plus
// the simulation studies used to evaluate it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rdsss/classic.hpp"
#include "rdsss/error.hpp"
#include "rdsss/harness.hpp"
#include "rdsss/io.hpp"
#include "rdsss/kernels.hpp"
#include "rdsss/netgen.hpp"
#include "rdsss/parallel.hpp"
#include "rdsss/presets.hpp"
#include "rdsss/rds_sim.hpp"
#include "rdsss/ss_estimator.hpp"

namespace fs = std::filesystem;
using namespace rdsss;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleParams: return kExitInfeasible;
    case ErrorCode::IoError: return kExitIo;
    default: return kExitValidation;
  }
}

struct Options {
  std::string input;
  std::string method = "ss";
  std::optional<std::int64_t> population_size;
  std::optional<std::int64_t> trials;
  std::optional<std::int64_t> iterations;
  std::optional<std::uint64_t> seed;
  std::string grid;
  unsigned threads = 0;
  std::string preset;
  std::string config;
  std::string out_dir = ".";
  std::string out;
  bool repair = false;
  bool no_isotonic = false;
  std::optional<std::int64_t> replicates;
};

std::uint64_t resolve_seed(const Options& opt, const Json* config, bool& generated) {
  generated = false;
  if (opt.seed) return *opt.seed;
  if (config && config->contains("seed")) {
    const Json& s = config->at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer()) fail(ErrorCode::ConfigError, "/seed: expected an integer");
    return s.get<std::uint64_t>();
  }
  generated = true;
  const std::uint64_t seed = fresh_seed();
  std::cerr << "rds-ss: no --seed given, using seed " << seed << '\n';
  return seed;
}

// A manifest written by an earlier run can be passed back as the config.
Json unwrap_manifest(Json j) {
  if (j.is_object() && j.contains("command") && j.contains("config") && j.contains("seed")) {
    Json cfg = j.at("config");
    cfg["seed"] = j.at("seed");
    return cfg;
  }
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_text(opt.out, text);
  }
}

SimConfig sim_from_options(const Options& opt, std::uint64_t seed) {
  SimConfig cfg;
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.iterations) cfg.iterations = *opt.iterations;
  cfg.isotonic = !opt.no_isotonic;
  cfg.rng_seed = seed;
  validate(cfg);
  return cfg;
}

RdsSample load_validated_sample(const Options& opt, std::optional<std::int64_t> N, std::vector<std::string>& log) {
  RdsSample sample = read_sample_csv(opt.input);
  if (opt.repair) sample = repair_sample(std::move(sample), N, log);
  const auto violations = validate_sample(sample, N);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << violations.size() << " validation problem(s):";
    for (const Violation& v : violations)
      msg << "\n  record " << v.record << ": " << to_string(v.kind) << " (" << v.detail << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  if (sample.empty()) fail(ErrorCode::EmptySample, "input has no records");
  return sample;
}

int cmd_estimate(const Options& opt) {
  const Method method = parse_method(opt.method);
  if (method == Method::SS && !opt.population_size)
    fail(ErrorCode::MissingPopulationSize, "--method ss requires --population-size");
  bool generated = false;
  const std::uint64_t seed = method == Method::SS ? resolve_seed(opt, nullptr, generated) : opt.seed.value_or(0);

  std::vector<std::string> log;
  const RdsSample sample = load_validated_sample(opt, opt.population_size, log);
  const SimConfig cfg = sim_from_options(opt, seed);
  const Estimate est = estimate(sample, method, opt.population_size, cfg);

  RunManifest manifest;
  manifest.command = "estimate";
  manifest.config = {{"input", opt.input},
                     {"method", opt.method},
                     {"population_size", opt.population_size ? Json(*opt.population_size) : Json(nullptr)},
                     {"trials", cfg.trials},
                     {"iterations", cfg.iterations},
                     {"isotonic", cfg.isotonic},
                     {"repair", opt.repair}};
  manifest.seed = seed;
  manifest.seed_generated = generated;

  Json report = estimate_report(est, sample, log);
  report["manifest_hash"] = manifest.hash();
  emit(opt, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_sensitivity(const Options& opt) {
  bool generated = false;
  const std::uint64_t seed = resolve_seed(opt, nullptr, generated);
  const auto grid = parse_grid(opt.grid);

  std::vector<std::string> log;
  const RdsSample sample = load_validated_sample(opt, std::nullopt, log);
  for (const std::string& line : log) std::cerr << "rds-ss: " << line << '\n';
  const SimConfig cfg = sim_from_options(opt, seed);
  const auto points = sensitivity_sweep(sample, grid, cfg);

  RunManifest manifest;
  manifest.command = "sensitivity";
  manifest.config = {{"input", opt.input},   {"grid", opt.grid},          {"trials", cfg.trials},
                     {"iterations", cfg.iterations}, {"isotonic", cfg.isotonic}, {"repair", opt.repair}};
  manifest.seed = seed;
  manifest.seed_generated = generated;

  std::ostringstream csv;
  write_sensitivity_csv(csv, points, mu_mean(sample), mu_vh(sample), manifest.hash());
  emit(opt, csv.str());
  return kExitOk;
}

Graph graph_from_network(const Json& net, const std::string& path, Rng& rng) {
  const std::string model = net.value("model", std::string("mixing"));
  if (model == "configuration") {
    if (!net.contains("degrees")) fail(ErrorCode::ConfigError, path + "/degrees: missing required field");
    return sample_configuration_graph(degree_distribution_from_json(net.at("degrees"), path + "/degrees"), rng);
  }
  if (model != "mixing") fail(ErrorCode::ConfigError, path + "/model: expected \"mixing\" or \"configuration\"");
  if (net.contains("probabilities")) {
    const Json& p = net.at("probabilities");
    MixingProbs probs;
    try {
      probs.p_ii = p.at("p_ii").get<double>();
      probs.p_iu = p.at("p_iu").get<double>();
      probs.p_uu = p.at("p_uu").get<double>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorCode::ConfigError, path + "/probabilities: needs numeric p_ii, p_iu, p_uu");
    }
    for (double v : {probs.p_ii, probs.p_iu, probs.p_uu})
      if (!(v >= 0.0 && v <= 1.0)) fail(ErrorCode::InfeasibleParams, path + "/probabilities: outside [0, 1]");
    if (!net.contains("N") || !net.at("N").is_number_integer())
      fail(ErrorCode::ConfigError, path + "/N: missing required integer");
    const auto N = net.at("N").get<std::int64_t>();
    const auto infected = net.value("infected", std::int64_t{0});
    return sample_mixing_graph(N, infected, probs, rng);
  }
  Json params = net;
  params.erase("model");
  return sample_mixing_graph(net_params_from_json(params, path), rng);
}

int cmd_simulate(const Options& opt) {
  const Json config = unwrap_manifest(load_json_file(opt.config));
  bool generated = false;
  const std::uint64_t seed = resolve_seed(opt, &config, generated);
  if (!config.contains("network")) fail(ErrorCode::ConfigError, "/network: missing required field");

  Rng rng = make_stream(seed, {0});
  const Graph g = graph_from_network(config.at("network"), "/network", rng);

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config = config;
  manifest.config.erase("seed");
  manifest.seed = seed;
  manifest.seed_generated = generated;
  manifest.started = utc_timestamp();
  const std::string hash = manifest.hash();

  const fs::path dir = prepare_out_dir(opt.out_dir);
  std::ostringstream edges, nodes;
  write_edge_list(edges, g, hash);
  write_nodes_csv(nodes, g, hash);
  write_text(dir / "edges.txt", edges.str());
  write_text(dir / "nodes.csv", nodes.str());

  if (config.contains("design")) {
    const RdsDesign design = design_from_json(config.at("design"), "/design");
    Rng sampling = make_stream(seed, {1});
    const RdsRun run = run_rds(g, design, sampling);
    std::ostringstream csv;
    write_sample_csv(csv, run.sample, hash);
    write_text(dir / "sample.csv", csv.str());
    if (run.sample.exhausted)
      std::cerr << "rds-ss: sample exhausted at n=" << run.sample.size() << " (target " << design.target_n << ")\n";
  }
  manifest.finished = utc_timestamp();
  write_text(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return kExitOk;
}

int cmd_study(const Options& opt) {
  Json config;
  if (!opt.config.empty()) config = unwrap_manifest(load_json_file(opt.config));
  if (!opt.preset.empty()) config["preset"] = opt.preset;

  std::vector<Scenario> scenarios;
  if (config.contains("scenarios")) {
    const Json& list = config.at("scenarios");
    if (!list.is_array() || list.empty()) fail(ErrorCode::ConfigError, "/scenarios: expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Scenario s = scenario_from_json(list[i], "/scenarios/" + std::to_string(i));
      if (s.id.empty()) s.id = "scenario" + std::to_string(i);
      scenarios.push_back(std::move(s));
    }
  } else if (config.contains("preset")) {
    const StudyPreset preset = make_preset(config.at("preset").get<std::string>());
    if (preset.long_running) std::cerr << "rds-ss: preset " << preset.name << " is paper scale and long-running\n";
    scenarios = preset.scenarios;
  } else {
    fail(ErrorCode::ConfigError, "study needs --preset or a config with \"scenarios\"");
  }
  for (Scenario& s : scenarios) {
    if (opt.replicates) s.replicates = *opt.replicates;
    if (opt.trials) s.sim.trials = *opt.trials;
    if (opt.iterations) s.sim.iterations = *opt.iterations;
    if (opt.no_isotonic) s.sim.isotonic = false;
  }

  bool generated = false;
  const std::uint64_t seed = resolve_seed(opt, &config, generated);

  // The manifest stores the expanded scenarios so it replays without presets.
  RunManifest manifest;
  manifest.command = "study";
  manifest.config = Json{{"scenarios", Json::array()}};
  for (const Scenario& s : scenarios) manifest.config["scenarios"].push_back(scenario_to_json(s));
  manifest.seed = seed;
  manifest.seed_generated = generated;
  manifest.started = utc_timestamp();
  const std::string hash = manifest.hash();

  const StudyResult result = run_study(scenarios, seed);

  const fs::path dir = prepare_out_dir(opt.out_dir);
  std::ostringstream csv;
  write_study_csv(csv, result, hash);
  write_text(dir / "study.csv", csv.str());
  Json j = study_to_json(result);
  j["manifest_hash"] = hash;
  write_text(dir / "study.json", j.dump(2) + "\n");
  manifest.finished = utc_timestamp();
  write_text(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return kExitOk;
}

int cmd_curves(const Options& opt) {
  const Json config = unwrap_manifest(load_json_file(opt.config));
  bool generated = false;
  const std::uint64_t seed = resolve_seed(opt, &config, generated);

  DegreeDistribution dist;
  if (config.contains("degree_distribution")) {
    dist = degree_distribution_from_json(config.at("degree_distribution"), "/degree_distribution");
  } else if (config.contains("network")) {
    Rng rng = make_stream(seed, {0});
    const Graph g = graph_from_network(config.at("network"), "/network", rng);
    std::vector<int> degrees;
    for (int d : g.degrees())
      if (d > 0) degrees.push_back(d);
    dist = DegreeDistribution::from_degrees(degrees);
  } else {
    fail(ErrorCode::ConfigError, "curves need \"degree_distribution\" or \"network\"");
  }

  std::vector<std::int64_t> sizes;
  if (config.contains("sample_sizes")) {
    for (const Json& v : config.at("sample_sizes")) {
      if (!v.is_number_integer()) fail(ErrorCode::ConfigError, "/sample_sizes: expected integers");
      sizes.push_back(v.get<std::int64_t>());
    }
  } else if (config.contains("sample_fractions")) {
    for (const Json& v : config.at("sample_fractions")) {
      if (!v.is_number()) fail(ErrorCode::ConfigError, "/sample_fractions: expected numbers");
      sizes.push_back(std::llround(v.get<double>() * dist.total()));
    }
  } else {
    fail(ErrorCode::ConfigError, "curves need \"sample_sizes\" or \"sample_fractions\"");
  }

  SimConfig cfg;
  cfg.trials = opt.trials.value_or(config.value("trials", std::int64_t{2000}));
  cfg.rng_seed = seed;
  validate(cfg);
  const InclusionCurves curves = inclusion_curves(dist, sizes, cfg);

  RunManifest manifest;
  manifest.command = "curves";
  manifest.config = config;
  manifest.config.erase("seed");
  manifest.config["trials"] = cfg.trials;
  manifest.seed = seed;
  manifest.seed_generated = generated;
  manifest.started = utc_timestamp();
  const std::string hash = manifest.hash();

  const fs::path dir = prepare_out_dir(opt.out_dir);
  std::ostringstream ss, prop;
  write_curves_csv(ss, curves.successive, hash);
  write_curves_csv(prop, curves.proportional, hash);
  write_text(dir / "curves.csv", ss.str());
  write_text(dir / "curves_proportional.csv", prop.str());
  manifest.finished = utc_timestamp();
  write_text(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive-sampling estimation for respondent-driven sampling data"};
  app.set_version_flag("--version", std::string(RDSSS_VERSION));
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "64-bit master seed (random and logged when omitted)");
    sub->add_option("--threads", opt.threads, "worker thread cap (falls back to RDS_SS_THREADS)");
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--trials", opt.trials, "simulated samples per iteration (M)")->check(CLI::PositiveNumber);
    sub->add_option("--iterations", opt.iterations, "estimator iterations (r)")->check(CLI::PositiveNumber);
    sub->add_flag("--no-isotonic", opt.no_isotonic, "keep the raw simulated inclusion map");
  };

  auto* est = app.add_subcommand("estimate", "estimate a population mean from an RDS sample CSV");
  est->add_option("--input", opt.input, "sample CSV")->required();
  est->add_option("--method", opt.method, "ss | vh | mean")->check(CLI::IsMember({"ss", "vh", "mean"}));
  est->add_option("--population-size", opt.population_size, "assumed population size N");
  est->add_option("--out", opt.out, "write the JSON report here instead of stdout");
  est->add_flag("--repair", opt.repair, "fix degree 0 and degrees above N-1 instead of rejecting");
  add_sim(est);
  add_common(est);

  auto* sens = app.add_subcommand("sensitivity", "SS estimate over a grid of population sizes");
  sens->add_option("--input", opt.input, "sample CSV")->required();
  sens->add_option("--grid", opt.grid, "min:max:points")->required();
  sens->add_option("--out", opt.out, "write the CSV here instead of stdout");
  sens->add_flag("--repair", opt.repair, "fix degree-0 records instead of rejecting");
  add_sim(sens);
  add_common(sens);

  auto* sim = app.add_subcommand("simulate", "generate a network and, optionally, an RDS sample from it");
  sim->add_option("--config", opt.config, "JSON config")->required();
  sim->add_option("--out-dir", opt.out_dir, "output directory");
  add_common(sim);

  auto* study = app.add_subcommand("study", "replicated bias/variance/MSE study");
  study->add_option("--config", opt.config, "JSON config with \"scenarios\" (or a previous manifest)");
  study->add_option("--preset", opt.preset, "fig1|fig3|table2|fig6 with -desk or -paper");
  study->add_option("--out-dir", opt.out_dir, "output directory");
  study->add_option("--replicates", opt.replicates, "override every scenario's replicate count")
      ->check(CLI::PositiveNumber);
  add_sim(study);
  add_common(study);

  auto* curves = app.add_subcommand("curves", "degree -> inclusion probability curves");
  curves->add_option("--config", opt.config, "JSON config")->required();
  curves->add_option("--out-dir", opt.out_dir, "output directory");
  curves->add_option("--trials", opt.trials, "simulated samples per curve (M)")->check(CLI::PositiveNumber);
  add_common(curves);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (opt.threads > 0) set_thread_limit(opt.threads);
    if (*est) return cmd_estimate(opt);
    if (*sens) return cmd_sensitivity(opt);
    if (*sim) return cmd_simulate(opt);
    if (*study) return cmd_study(opt);
    if (*curves) return cmd_curves(opt);
  } catch (const Error& e) {
    std::cerr << "rds-ss: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "rds-ss: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
