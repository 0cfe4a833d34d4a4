#pragma once

// File formats.
//
// Sample CSV: header `id,recruiter_id,degree,outcome[,wave]` (any column
// order), comma separated, '.' decimal point. An empty recruiter_id marks a
// seed. Lines starting with '#' are comments; writers use one to carry the
// run's manifest hash.
//
// Graph: edge list with one "u v" pair per line, plus a node CSV with header
// `id,z,degree`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdsss/harness.hpp"
#include "rdsss/netgen.hpp"
#include "rdsss/ss_estimator.hpp"

namespace rdsss {

using Json = nlohmann::ordered_json;

// Shortest representation that parses back to the same double.
std::string format_double(double value);

RdsSample read_sample_csv(std::istream& in);
RdsSample read_sample_csv(const std::string& path);
void write_sample_csv(std::ostream& out, const RdsSample& sample, const std::string& manifest_hash = "");

void write_edge_list(std::ostream& out, const Graph& g, const std::string& manifest_hash = "");
void write_nodes_csv(std::ostream& out, const Graph& g, const std::string& manifest_hash = "");
Graph read_graph(std::istream& edges, std::istream& nodes);

void write_study_csv(std::ostream& out, const StudyResult& result, const std::string& manifest_hash = "");
Json study_to_json(const StudyResult& result);

void write_curves_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                      const std::string& manifest_hash = "");

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityPoint>& points, double sample_mean,
                           double vh, const std::string& manifest_hash = "");

Json estimate_report(const Estimate& estimate, const RdsSample& sample, const std::vector<std::string>& warnings);

struct RunManifest {
  std::string command;
  Json config;
  std::uint64_t seed = 0;
  bool seed_generated = false;
  std::string version = RDSSS_VERSION;
  std::string started;
  std::string finished;

  // Hash over everything except timestamps.
  std::string hash() const;
  Json to_json() const;
};

std::string fnv1a64_hex(const std::string& bytes);
std::string utc_timestamp();

// Config readers. Schema problems raise ConfigError naming the JSON path.
Json load_json_file(const std::string& path);
NetParams net_params_from_json(const Json& j, const std::string& path);
RdsDesign design_from_json(const Json& j, const std::string& path);
SimConfig sim_config_from_json(const Json& j, const std::string& path, SimConfig defaults = {});
Scenario scenario_from_json(const Json& j, const std::string& path);
Json scenario_to_json(const Scenario& s);
DegreeDistribution degree_distribution_from_json(const Json& j, const std::string& path);

}  // namespace rdsss
