#include "rdsss/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rdsss/error.hpp"

namespace rdsss {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& message) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

template <class T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    parse_fail(line, std::string("bad ") + what + " '" + std::string(text) + "'");
  return value;
}

void write_hash_comment(std::ostream& out, const std::string& manifest_hash) {
  if (!manifest_hash.empty()) out << "# manifest_hash=" << manifest_hash << '\n';
}

[[noreturn]] void config_fail(const std::string& path, const std::string& message) {
  fail(ErrorCode::ConfigError, (path.empty() ? "/" : path) + ": " + message);
}

const Json& require(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) config_fail(path, "expected an object");
  if (!j.contains(key)) config_fail(path + "/" + key, "missing required field");
  return j.at(key);
}

double get_number(const Json& j, const std::string& path, const char* key, std::optional<double> fallback) {
  if (!j.is_object()) config_fail(path, "expected an object");
  if (!j.contains(key)) {
    if (!fallback) config_fail(path + "/" + key, "missing required field");
    return *fallback;
  }
  const Json& v = j.at(key);
  if (!v.is_number()) config_fail(path + "/" + key, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const Json& j, const std::string& path, const char* key,
                         std::optional<std::int64_t> fallback) {
  if (!j.is_object()) config_fail(path, "expected an object");
  if (!j.contains(key)) {
    if (!fallback) config_fail(path + "/" + key, "missing required field");
    return *fallback;
  }
  const Json& v = j.at(key);
  if (!v.is_number_integer()) config_fail(path + "/" + key, "expected an integer");
  return v.get<std::int64_t>();
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) config_fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) config_fail(path + "/" + key, "unknown field");
  }
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

RdsSample read_sample_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::unordered_map<std::string, std::size_t> column;
  bool have_header = false;
  bool have_wave = false;
  std::size_t columns = 0;
  RdsSample sample;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_commas(view);
    if (!have_header) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (!column.emplace(std::string(fields[c]), c).second)
          parse_fail(line_no, "duplicate column '" + std::string(fields[c]) + "'");
      }
      for (const char* req : {"id", "recruiter_id", "degree", "outcome"})
        if (!column.count(req)) parse_fail(line_no, std::string("header lacks column '") + req + "'");
      have_wave = column.count("wave") != 0;
      columns = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != columns)
      parse_fail(line_no, "expected " + std::to_string(columns) + " fields, got " + std::to_string(fields.size()));

    RdsRecord r;
    r.id = std::string(fields[column["id"]]);
    if (r.id.empty()) parse_fail(line_no, "empty id");
    const std::string_view recruiter = fields[column["recruiter_id"]];
    if (!recruiter.empty()) r.recruiter_id = std::string(recruiter);
    r.degree = parse_number<int>(fields[column["degree"]], line_no, "degree");
    r.outcome = parse_number<double>(fields[column["outcome"]], line_no, "outcome");
    if (have_wave) r.wave = parse_number<int>(fields[column["wave"]], line_no, "wave");
    sample.records.push_back(std::move(r));
  }
  if (!have_header) parse_fail(line_no, "missing header");
  if (!have_wave) assign_waves(sample);
  return sample;
}

RdsSample read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_sample_csv(in);
}

void write_sample_csv(std::ostream& out, const RdsSample& sample, const std::string& manifest_hash) {
  write_hash_comment(out, manifest_hash);
  out << "id,recruiter_id,degree,outcome,wave\n";
  for (const RdsRecord& r : sample.records) {
    out << r.id << ',' << r.recruiter_id.value_or("") << ',' << r.degree << ',' << format_double(r.outcome)
        << ',' << r.wave << '\n';
  }
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& manifest_hash) {
  write_hash_comment(out, manifest_hash);
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_nodes_csv(std::ostream& out, const Graph& g, const std::string& manifest_hash) {
  write_hash_comment(out, manifest_hash);
  out << "id,z,degree\n";
  for (std::size_t i = 0; i < g.node_count(); ++i)
    out << i << ',' << static_cast<int>(g.z()[i]) << ',' << g.degree(i) << '\n';
}

Graph read_graph(std::istream& edges, std::istream& nodes) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::uint8_t> z;
  bool header = false;
  while (std::getline(nodes, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto f = split_commas(view);
    if (f.size() != 3) parse_fail(line_no, "node rows need id,z,degree");
    const auto id = parse_number<std::size_t>(f[0], line_no, "node id");
    if (id != z.size()) parse_fail(line_no, "node ids must be 0..N-1 in order");
    z.push_back(static_cast<std::uint8_t>(parse_number<int>(f[1], line_no, "z")));
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> list;
  line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t space = view.find(' ');
    if (space == std::string_view::npos) parse_fail(line_no, "edge rows need 'u v'");
    list.emplace_back(parse_number<std::uint32_t>(trim(view.substr(0, space)), line_no, "node"),
                      parse_number<std::uint32_t>(trim(view.substr(space + 1)), line_no, "node"));
  }
  return Graph(std::move(z), std::move(list));
}

void write_study_csv(std::ostream& out, const StudyResult& result, const std::string& manifest_hash) {
  write_hash_comment(out, manifest_hash);
  out << "scenario,N,n,sample_fraction,prevalence,mean_degree,w,R,seed_regime,estimator,assumed_N,"
         "replicates,truth,mean,bias,variance,mse,bias_se,exhausted\n";
  for (const ScenarioResult& sr : result.scenarios) {
    const Scenario& s = sr.scenario;
    double truth = 0.0;
    for (double t : sr.truths) truth += t;
    truth /= static_cast<double>(sr.truths.size());
    const double fraction = static_cast<double>(s.design.target_n) / static_cast<double>(s.net.N);
    for (const EstimatorSummary& e : sr.estimators) {
      out << s.id << ',' << s.net.N << ',' << s.design.target_n << ',' << format_double(fraction) << ','
          << format_double(s.net.prevalence) << ',' << format_double(s.net.mean_degree) << ','
          << format_double(s.net.w) << ',' << format_double(s.net.R) << ',' << to_string(s.design.seed_regime)
          << ',' << e.label << ',' << e.assumed << ',' << e.replicates << ',' << format_double(truth) << ','
          << format_double(e.mean) << ',' << format_double(e.bias) << ',' << format_double(e.variance) << ','
          << format_double(e.mse) << ',' << format_double(e.bias_se) << ',' << sr.exhausted << '\n';
    }
  }
}

Json study_to_json(const StudyResult& result) {
  Json j;
  j["master_seed"] = result.master_seed;
  j["scenarios"] = Json::array();
  for (const ScenarioResult& sr : result.scenarios) {
    Json s;
    s["scenario"] = scenario_to_json(sr.scenario);
    s["truths"] = sr.truths;
    s["sample_sizes"] = sr.sample_sizes;
    s["exhausted"] = sr.exhausted;
    s["reseeds"] = sr.reseeds;
    s["estimators"] = Json::array();
    for (const EstimatorSummary& e : sr.estimators) {
      s["estimators"].push_back({{"label", e.label},
                                 {"method", to_string(e.method)},
                                 {"assumed_N", e.assumed},
                                 {"replicates", e.replicates},
                                 {"mean", e.mean},
                                 {"bias", e.bias},
                                 {"variance", e.variance},
                                 {"mse", e.mse},
                                 {"bias_se", e.bias_se},
                                 {"estimates", e.estimates}});
    }
    j["scenarios"].push_back(std::move(s));
  }
  return j;
}

void write_curves_csv(std::ostream& out, const std::vector<CurvePoint>& points, const std::string& manifest_hash) {
  write_hash_comment(out, manifest_hash);
  out << "k,n_over_N,pi\n";
  for (const CurvePoint& p : points)
    out << p.degree << ',' << format_double(p.n_over_N) << ',' << format_double(p.pi) << '\n';
}

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityPoint>& points, double sample_mean,
                           double vh, const std::string& manifest_hash) {
  write_hash_comment(out, manifest_hash);
  out << "estimator,N,estimate\n";
  out << "mean,," << format_double(sample_mean) << '\n';
  out << "vh,," << format_double(vh) << '\n';
  for (const SensitivityPoint& p : points)
    out << "ss," << p.population_size << ',' << format_double(p.estimate.value) << '\n';
}

Json estimate_report(const Estimate& est, const RdsSample& sample, const std::vector<std::string>& warnings) {
  Json j;
  j["method"] = to_string(est.method);
  j["estimate"] = est.value;
  j["n"] = sample.size();
  j["assumed_N"] = est.assumed_N ? Json(*est.assumed_N) : Json(nullptr);
  j["config"] = {{"trials", est.config.trials},
                 {"iterations", est.config.iterations},
                 {"seed", est.config.rng_seed},
                 {"isotonic", est.config.isotonic}};
  Json diag;
  std::vector<std::string> all = warnings;
  if (est.fit) {
    diag["moment_residual"] = est.fit->moment_residual;
    diag["iterations_run"] = est.fit->iterations_run;
    diag["implied_population"] = est.fit->implied_population;
    Json map = Json::object();
    for (const auto& [k, p] : est.fit->inclusion.probs) map[std::to_string(k)] = p;
    diag["inclusion"] = map;
    all.insert(all.end(), est.fit->warnings.begin(), est.fit->warnings.end());
  }
  if (sample.exhausted) all.push_back("sample flagged as exhausted before reaching its target size");
  diag["warnings"] = all;
  j["diagnostics"] = diag;
  return j;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string RunManifest::hash() const {
  Json core{{"command", command}, {"config", config}, {"seed", seed}, {"version", version}};
  return fnv1a64_hex(core.dump());
}

Json RunManifest::to_json() const {
  return {{"command", command},     {"config", config},   {"seed", seed},         {"seed_generated", seed_generated},
          {"version", version},     {"hash", hash()},     {"started", started},   {"finished", finished}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ConfigError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

NetParams net_params_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"model", "N", "prevalence", "mean_degree", "w", "R"});
  NetParams p;
  p.N = get_integer(j, path, "N", std::nullopt);
  p.prevalence = get_number(j, path, "prevalence", 0.2);
  p.mean_degree = get_number(j, path, "mean_degree", 7.0);
  p.w = get_number(j, path, "w", 1.0);
  p.R = get_number(j, path, "R", 5.0);
  return p;
}

RdsDesign design_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"seed_count", "coupons", "target_n", "seed_regime", "reseed"});
  RdsDesign d;
  d.seed_count = get_integer(j, path, "seed_count", 10);
  d.coupons = get_integer(j, path, "coupons", 2);
  d.target_n = get_integer(j, path, "target_n", std::nullopt);
  if (j.contains("seed_regime")) {
    if (!j.at("seed_regime").is_string()) config_fail(path + "/seed_regime", "expected a string");
    try {
      d.seed_regime = parse_seed_regime(j.at("seed_regime").get<std::string>());
    } catch (const Error& e) {
      config_fail(path + "/seed_regime", e.what());
    }
  }
  if (j.contains("reseed")) {
    if (!j.at("reseed").is_boolean()) config_fail(path + "/reseed", "expected a boolean");
    d.reseed = j.at("reseed").get<bool>();
  }
  try {
    validate(d);
  } catch (const Error& e) {
    config_fail(path, e.what());
  }
  return d;
}

SimConfig sim_config_from_json(const Json& j, const std::string& path, SimConfig defaults) {
  check_keys(j, path, {"trials", "iterations", "isotonic", "convergence_tol"});
  SimConfig c = defaults;
  c.trials = get_integer(j, path, "trials", defaults.trials);
  c.iterations = get_integer(j, path, "iterations", defaults.iterations);
  c.convergence_tol = get_number(j, path, "convergence_tol", defaults.convergence_tol);
  if (j.contains("isotonic")) {
    if (!j.at("isotonic").is_boolean()) config_fail(path + "/isotonic", "expected a boolean");
    c.isotonic = j.at("isotonic").get<bool>();
  }
  try {
    validate(c);
  } catch (const Error& e) {
    config_fail(path, e.what());
  }
  return c;
}

Scenario scenario_from_json(const Json& j, const std::string& path) {
  check_keys(j, path, {"id", "net", "design", "assumed_N", "replicates", "estimators", "sim"});
  Scenario s;
  if (j.contains("id")) {
    if (!j.at("id").is_string()) config_fail(path + "/id", "expected a string");
    s.id = j.at("id").get<std::string>();
  }
  s.net = net_params_from_json(require(j, path, "net"), path + "/net");
  s.design = design_from_json(require(j, path, "design"), path + "/design");
  s.replicates = get_integer(j, path, "replicates", 100);
  if (s.replicates < 1) config_fail(path + "/replicates", "must be >= 1");
  if (j.contains("sim")) s.sim = sim_config_from_json(j.at("sim"), path + "/sim", s.sim);

  if (j.contains("assumed_N")) {
    const Json& a = j.at("assumed_N");
    if (!a.is_array() || a.empty()) config_fail(path + "/assumed_N", "expected a non-empty array");
    s.assumed_sizes.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string item_path = path + "/assumed_N/" + std::to_string(i);
      const Json& v = a[i];
      if (v.is_number_integer()) {
        s.assumed_sizes.push_back({AssumedSize::Kind::Explicit, v.get<std::int64_t>()});
      } else if (v == "true") {
        s.assumed_sizes.push_back({AssumedSize::Kind::True, 0});
      } else if (v == "nhat_s") {
        s.assumed_sizes.push_back({AssumedSize::Kind::NhatSmall, 0});
      } else if (v == "nhat_l") {
        s.assumed_sizes.push_back({AssumedSize::Kind::NhatLarge, 0});
      } else {
        config_fail(item_path, "expected \"true\", \"nhat_s\", \"nhat_l\" or an integer");
      }
    }
  }
  if (j.contains("estimators")) {
    const Json& e = j.at("estimators");
    if (!e.is_array()) config_fail(path + "/estimators", "expected an array");
    s.estimators = {false, false, false};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == "ss") s.estimators.ss = true;
      else if (e[i] == "vh") s.estimators.vh = true;
      else if (e[i] == "mean") s.estimators.mean = true;
      else config_fail(path + "/estimators/" + std::to_string(i), "expected ss, vh or mean");
    }
  }
  try {
    validate(s);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InfeasibleParams) throw;
    config_fail(path, e.what());
  }
  return s;
}

Json scenario_to_json(const Scenario& s) {
  Json assumed = Json::array();
  for (const AssumedSize& a : s.assumed_sizes) {
    switch (a.kind) {
      case AssumedSize::Kind::True: assumed.push_back("true"); break;
      case AssumedSize::Kind::NhatSmall: assumed.push_back("nhat_s"); break;
      case AssumedSize::Kind::NhatLarge: assumed.push_back("nhat_l"); break;
      case AssumedSize::Kind::Explicit: assumed.push_back(a.value); break;
    }
  }
  Json estimators = Json::array();
  if (s.estimators.ss) estimators.push_back("ss");
  if (s.estimators.vh) estimators.push_back("vh");
  if (s.estimators.mean) estimators.push_back("mean");
  return {{"id", s.id},
          {"net",
           {{"N", s.net.N}, {"prevalence", s.net.prevalence}, {"mean_degree", s.net.mean_degree}, {"w", s.net.w},
            {"R", s.net.R}}},
          {"design",
           {{"seed_count", s.design.seed_count},
            {"coupons", s.design.coupons},
            {"target_n", s.design.target_n},
            {"seed_regime", to_string(s.design.seed_regime)},
            {"reseed", s.design.reseed}}},
          {"assumed_N", assumed},
          {"replicates", s.replicates},
          {"estimators", estimators},
          {"sim",
           {{"trials", s.sim.trials},
            {"iterations", s.sim.iterations},
            {"isotonic", s.sim.isotonic},
            {"convergence_tol", s.sim.convergence_tol}}}};
}

DegreeDistribution degree_distribution_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || j.empty()) config_fail(path, "expected an object mapping degree -> count");
  std::vector<DegreeClass> classes;
  for (const auto& [key, value] : j.items()) {
    int degree = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), degree);
    if (ec != std::errc{} || ptr != key.data() + key.size() || degree < 1)
      config_fail(path + "/" + key, "keys must be positive integer degrees");
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
      config_fail(path + "/" + key, "counts must be non-negative integers");
    classes.push_back({degree, static_cast<double>(value.get<std::int64_t>())});
  }
  return DegreeDistribution(std::move(classes));
}

}  // namespace rdsss
