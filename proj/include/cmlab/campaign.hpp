#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmlab/conjecture.hpp"
#include "cmlab/ensembles.hpp"
#include "cmlab/io.hpp"
#include "cmlab/tolerances.hpp"

namespace cmlab {

inline constexpr const char* kVersion = "1.0.0";

enum class Suite {
  clarkson,
  parallelogram,
  hk,
  bcl,
  bcl_dominates_clarkson,
  mccarthy,
  ak,
  cm,
  duality,
  pairing_bound,
  interpolation,
  conjecture,
};

std::string_view to_string(Suite suite);
/// Throws InputError on an unknown name.
Suite parse_suite(std::string_view name);
const std::vector<Suite>& all_suites();

/// Whether p lies in the suite's domain. For duality p plays the role of q >= 2.
bool suite_accepts(Suite suite, double p);
/// Two-matrix suites always run with n = 2, whatever the n-grid says.
bool is_pair_suite(Suite suite);

/// Ensemble entry of a campaign; n, d and the seed come from the grid.
struct EnsembleChoice {
  EnsembleKind kind = EnsembleKind::ginibre;
  int rank = 0;          // low_rank; 0 picks max(1, d/2)
  double epsilon = 0.1;  // near_equal
};

enum class Fault {
  none,
  flip_ak_direction,  // harness self-test: ak evaluated with the wrong orientation
};

struct CampaignConfig {
  std::vector<Suite> suites;
  std::vector<EnsembleChoice> ensembles;
  std::vector<double> p_grid;
  std::vector<int> n_grid;
  std::vector<int> dims;
  int trials = 3;
  std::uint64_t seed = 20240601;
  std::string out;
  Tolerances tol;
  int threads = 0;  // 0: hardware concurrency
  Fault fault = Fault::none;
  // conjecture search
  int budget = SearchOptions{}.budget;
  int restarts = SearchOptions{}.restarts;
  // interpolation scan
  int x_samples = 9;
  int y_samples = 41;
  double y_half_width = 5.0;

  /// Throws InputError on an invalid configuration.
  void validate() const;
};

/// Every suite, every ensemble kind, p in {0.5, 1, 1.3, 1.5, 2, 2.5, 3, 4},
/// n in {2, 3, 4, 5}, d in {1, 2, 3, 4, 8}, 3 trials per cell.
CampaignConfig preset_config();
/// The seven inequality suites on the preset grid: 12,600 trials.
CampaignConfig inequality_preset();
/// Conjecture search grid: every kind, p in {0.5, 1.5, 2.5, 3, 4}, n in {2, 3}, d in {1, 2, 3, 4}.
CampaignConfig conjecture_preset();

/// Overlays the keys present in j onto base. Throws InputError on unknown keys or bad values.
CampaignConfig apply_config_json(CampaignConfig base, const Json& j);
/// Canonical form; output path and thread count are omitted since they do not affect results.
Json config_to_json(const CampaignConfig& config);
/// FNV-1a of the canonical config dump.
std::uint64_t config_hash(const CampaignConfig& config);

/// Seed of the tuple for (kind, n, d, trial); shared by every suite and p.
std::uint64_t trial_seed(std::uint64_t master, EnsembleKind kind, int n, int d, int trial);
EnsembleSpec trial_spec(const CampaignConfig& config, const EnsembleChoice& choice, int n, int d,
                        int trial);

struct TrialResult {
  std::string suite;
  std::string tag;
  double p = 0.0;
  int n = 0;
  int d = 0;
  std::string kind;
  int trial = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = true;
};

struct SuiteSummary {
  std::string suite;
  std::size_t trials = 0;
  std::size_t results = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::string worst_tag;
};

struct CampaignReport {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::size_t trials = 0;
  std::vector<TrialResult> results;
  std::vector<SuiteSummary> summary;  // in config suite order
  std::size_t violations = 0;
};

/// Runs every (suite x ensemble x p x n x d x trial) cell on a work pool.
/// Result order is the cell order, independent of scheduling. Throws InputError on invalid config.
CampaignReport run_campaign(const CampaignConfig& config);

Json trial_result_to_json(const TrialResult& r);
Json results_to_json(const std::vector<TrialResult>& results);
/// Full report; the timestamp goes under meta.generated_at when requested.
Json campaign_report_to_json(const CampaignReport& report, bool with_timestamp = true);

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the campaign, writes config.out when set, prints the per-suite summary to log.
int run_verify(const CampaignConfig& config, std::ostream& log);

/// Witness identities, the pairing bound at the witnesses and the replayed chain for one tuple.
int run_witness(const OperatorTuple& T, double p, const std::string& out, std::ostream& log,
                const Tolerances& tol = default_tolerances());

/// Writes the scan CSV to csv (or to the file out when non-empty) and prints the summary line.
int run_interpolate(const OperatorTuple& T, double p, std::span<const double> x_grid,
                    std::span<const double> y_grid, const std::string& out, std::ostream& csv,
                    std::ostream& log, const Tolerances& tol = default_tolerances());

struct ConjectureRecord {
  std::string kind;
  int n = 0;
  int d = 0;
  double p = 0.0;
  int trial = 0;
  FeasibilityCertificate certificate;
  bool verified = false;  // verify_certificate, independent of the search
};

/// One search per (ensemble x p x n x d x trial) cell; n = 1 cells are skipped.
std::vector<ConjectureRecord> run_conjecture_campaign(const CampaignConfig& config);
Json conjecture_report_to_json(const CampaignConfig& config,
                               const std::vector<ConjectureRecord>& records,
                               bool with_timestamp = true);
/// Nonzero only when the trace condition fails somewhere.
int run_conjecture(const CampaignConfig& config, std::ostream& log);

}  // namespace cmlab
