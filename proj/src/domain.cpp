#include "rdsss/domain.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "rdsss/error.hpp"

namespace rdsss {

DegreeDistribution::DegreeDistribution(std::vector<DegreeClass> classes) {
  std::sort(classes.begin(), classes.end(),
            [](const DegreeClass& a, const DegreeClass& b) { return a.degree < b.degree; });
  for (const DegreeClass& c : classes) {
    if (c.degree < 1) fail(ErrorCode::InvalidArgument, "degree classes must be >= 1");
    if (!(c.count >= 0.0) || !std::isfinite(c.count))
      fail(ErrorCode::InvalidArgument, "degree counts must be finite and non-negative");
    if (!classes_.empty() && classes_.back().degree == c.degree) {
      classes_.back().count += c.count;
    } else {
      classes_.push_back(c);
    }
    total_ += c.count;
  }
}

DegreeDistribution DegreeDistribution::from_tally(const DegreeTally& tally) {
  std::vector<DegreeClass> classes;
  classes.reserve(tally.size());
  for (const auto& [k, v] : tally) classes.push_back({k, static_cast<double>(v)});
  return DegreeDistribution(std::move(classes));
}

DegreeDistribution DegreeDistribution::from_degrees(const std::vector<int>& degrees) {
  DegreeTally tally;
  for (int d : degrees) ++tally[d];
  return from_tally(tally);
}

int DegreeDistribution::max_degree() const noexcept {
  return classes_.empty() ? 0 : classes_.back().degree;
}

double DegreeDistribution::count(int degree) const noexcept {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), degree,
                             [](const DegreeClass& c, int d) { return c.degree < d; });
  return (it != classes_.end() && it->degree == degree) ? it->count : 0.0;
}

bool DegreeDistribution::integral() const noexcept {
  return std::all_of(classes_.begin(), classes_.end(),
                     [](const DegreeClass& c) { return c.count == std::floor(c.count); });
}

double DegreeDistribution::stub_total() const noexcept {
  double s = 0.0;
  for (const DegreeClass& c : classes_) s += c.degree * c.count;
  return s;
}

std::vector<int> DegreeDistribution::unit_degrees() const {
  if (!integral()) fail(ErrorCode::InvalidArgument, "unit expansion needs integer counts");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(total_));
  for (const DegreeClass& c : classes_)
    out.insert(out.end(), static_cast<std::size_t>(c.count), c.degree);
  return out;
}

double InclusionMap::at(int degree) const {
  auto it = probs.find(degree);
  if (it == probs.end())
    fail(ErrorCode::InvalidArgument, "no inclusion probability for degree " + std::to_string(degree));
  return it->second;
}

std::vector<int> RdsSample::degrees() const {
  std::vector<int> out;
  out.reserve(records.size());
  for (const RdsRecord& r : records) out.push_back(r.degree);
  return out;
}

std::vector<double> RdsSample::outcomes() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const RdsRecord& r : records) out.push_back(r.outcome);
  return out;
}

void validate(const SimConfig& config) {
  if (config.trials < 1) fail(ErrorCode::InvalidArgument, "trials (M) must be >= 1");
  if (config.iterations < 1) fail(ErrorCode::InvalidArgument, "iterations (r) must be >= 1");
  if (!(config.convergence_tol >= 0.0))
    fail(ErrorCode::InvalidArgument, "convergence tolerance must be >= 0");
}

DegreeTally degree_counts(const RdsSample& sample) {
  DegreeTally tally;
  for (const RdsRecord& r : sample.records) ++tally[r.degree];
  return tally;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DegreeNotPositive: return "DegreeNotPositive";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::EmptyId: return "EmptyId";
    case ViolationKind::UnknownRecruiter: return "UnknownRecruiter";
    case ViolationKind::SeedWaveNotZero: return "SeedWaveNotZero";
    case ViolationKind::WaveMismatch: return "WaveMismatch";
    case ViolationKind::SampleExceedsPopulation: return "SampleExceedsPopulation";
    case ViolationKind::DegreeExceedsPopulation: return "DegreeExceedsPopulation";
  }
  return "Unknown";
}

std::vector<Violation> validate_sample(const RdsSample& sample,
                                       std::optional<std::int64_t> population_size) {
  std::vector<Violation> out;
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(sample.records.size());

  for (std::size_t i = 0; i < sample.records.size(); ++i) {
    const RdsRecord& r = sample.records[i];
    if (r.id.empty()) out.push_back({ViolationKind::EmptyId, i, "record has an empty id"});
    if (r.degree < 1)
      out.push_back({ViolationKind::DegreeNotPositive, i, "degree " + std::to_string(r.degree)});
    if (population_size && r.degree > *population_size - 1)
      out.push_back({ViolationKind::DegreeExceedsPopulation, i,
                     "degree " + std::to_string(r.degree) + " > N-1"});

    if (r.is_seed()) {
      if (r.wave != 0) out.push_back({ViolationKind::SeedWaveNotZero, i, "seed id " + r.id});
    } else {
      auto it = seen.find(*r.recruiter_id);
      if (it == seen.end()) {
        out.push_back({ViolationKind::UnknownRecruiter, i,
                       "recruiter '" + *r.recruiter_id + "' does not precede record '" + r.id + "'"});
      } else if (r.wave != sample.records[it->second].wave + 1) {
        out.push_back({ViolationKind::WaveMismatch, i, "record '" + r.id + "'"});
      }
    }
    if (!r.id.empty() && !seen.emplace(r.id, i).second)
      out.push_back({ViolationKind::DuplicateId, i, "id '" + r.id + "'"});
  }

  if (population_size && static_cast<std::int64_t>(sample.size()) > *population_size) {
    out.push_back({ViolationKind::SampleExceedsPopulation, 0,
                   "n=" + std::to_string(sample.size()) + " > N=" + std::to_string(*population_size)});
  }
  return out;
}

RdsSample repair_sample(RdsSample sample, std::optional<std::int64_t> population_size,
                        std::vector<std::string>& log) {
  for (RdsRecord& r : sample.records) {
    if (r.degree < 1) {
      log.push_back("record '" + r.id + "': degree " + std::to_string(r.degree) + " set to 1");
      r.degree = 1;
    }
    if (population_size && r.degree > *population_size - 1 && *population_size > 1) {
      const int cap = static_cast<int>(*population_size - 1);
      log.push_back("record '" + r.id + "': degree " + std::to_string(r.degree) + " capped at " +
                    std::to_string(cap));
      r.degree = cap;
    }
  }
  return sample;
}

void assign_waves(RdsSample& sample) {
  std::unordered_map<std::string, int> wave_of;
  for (RdsRecord& r : sample.records) {
    if (r.is_seed()) {
      r.wave = 0;
    } else if (auto it = wave_of.find(*r.recruiter_id); it != wave_of.end()) {
      r.wave = it->second + 1;
    }
    wave_of.emplace(r.id, r.wave);
  }
}

}  // namespace rdsss
