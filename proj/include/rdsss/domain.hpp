#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdsss {

using DegreeTally = std::map<int, std::int64_t>;

struct DegreeClass {
  int degree = 0;
  double count = 0.0;
};

// Population degree counts. Counts are real-valued while the estimator
// iterates and integral when the distribution drives a simulation.
class DegreeDistribution {
 public:
  DegreeDistribution() = default;
  // Sorts by degree and merges duplicates. Degrees must be >= 1 and counts >= 0.
  explicit DegreeDistribution(std::vector<DegreeClass> classes);

  static DegreeDistribution from_tally(const DegreeTally& tally);
  static DegreeDistribution from_degrees(const std::vector<int>& degrees);

  const std::vector<DegreeClass>& classes() const noexcept { return classes_; }
  bool empty() const noexcept { return classes_.empty(); }
  std::size_t size() const noexcept { return classes_.size(); }

  double total() const noexcept { return total_; }
  int max_degree() const noexcept;
  double count(int degree) const noexcept;
  bool integral() const noexcept;
  // Total stubs, sum of k * N_k.
  double stub_total() const noexcept;

  // Requires integral(); returns the expanded per-unit degree list.
  std::vector<int> unit_degrees() const;

 private:
  std::vector<DegreeClass> classes_;
  double total_ = 0.0;
};

// Mapping degree -> inclusion probability.
struct InclusionMap {
  std::map<int, double> probs;
  std::int64_t n = 0;
  double N = 0.0;

  double at(int degree) const;  // throws InvalidArgument for an unmapped degree
  bool contains(int degree) const { return probs.count(degree) != 0; }
};

struct RdsRecord {
  std::string id;
  std::optional<std::string> recruiter_id;  // empty for seeds
  int degree = 0;
  double outcome = 0.0;
  int wave = 0;

  bool is_seed() const noexcept { return !recruiter_id.has_value(); }
  friend bool operator==(const RdsRecord&, const RdsRecord&) = default;
};

struct RdsSample {
  std::vector<RdsRecord> records;
  // Set by the simulator when recruitment ran out of reachable nodes before
  // hitting the target size.
  bool exhausted = false;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  std::vector<int> degrees() const;
  std::vector<double> outcomes() const;
};

struct SimConfig {
  std::int64_t trials = 2000;   // M
  std::int64_t iterations = 3;  // r
  std::uint64_t rng_seed = 0;
  // Pool-adjacent-violators cleanup of each simulated inclusion map.
  bool isotonic = true;
  // Early stop when the largest relative change in the map falls below this;
  // zero runs exactly `iterations` passes.
  double convergence_tol = 0.0;
};

void validate(const SimConfig& config);

DegreeTally degree_counts(const RdsSample& sample);

enum class ViolationKind {
  DegreeNotPositive,
  DuplicateId,
  EmptyId,
  UnknownRecruiter,
  SeedWaveNotZero,
  WaveMismatch,
  SampleExceedsPopulation,
  DegreeExceedsPopulation,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t record = 0;  // index of the offending record, 0 for sample-level issues
  std::string detail;
};

std::vector<Violation> validate_sample(const RdsSample& sample,
                                       std::optional<std::int64_t> population_size = std::nullopt);

// Repairs what can be repaired: degree 0 becomes 1, degrees above N-1 are
// capped at N-1. Each change is appended to `log`.
RdsSample repair_sample(RdsSample sample, std::optional<std::int64_t> population_size,
                        std::vector<std::string>& log);

// Fills in waves from recruiter links (seeds are wave 0).
void assign_waves(RdsSample& sample);

}  // namespace rdsss
