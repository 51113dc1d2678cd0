#pragma once

#include <optional>
#include <string>
#include <vector>

#include "osp/model_config.hpp"
#include "osp/ospforms.hpp"

namespace osp {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "ospverify";
inline constexpr const char* kToolVersion = "0.1.0";

/// Grid scan specification. Defaults cover the construction range and the
/// weak-condition range below the 1/6 threshold.
struct ScanSpec {
  double lambda_min = 0.01;
  double lambda_max = 0.16;
  int steps = 16;
  int n_max = 13;           // odd ceiling for bound evaluation
  double mass = 1.0;
  double sigma = 1.0;       // Gaussian test-function width
  double quad_tolerance = 1e-10;

  std::string out_path;     // empty: stdout summary only
  std::string format = "json";  // "json" or "csv"
};

/// Throws std::invalid_argument when the grid or parameters are malformed.
void validate(const ScanSpec& spec);

double lambda_at(const ScanSpec& spec, int index);

struct SplittingRecord {
  int n = 0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  bool ordered = true;
};

struct TheoremRecord {
  TheoremBounds bounds;
  bool pass = false;  // h > 0 and h_hat > 0
};

struct PsdRecord {
  PsdReport report;
  bool pass = false;  // triangular sum and restricted spectrum nonnegative
};

/// Everything verified at one coupling value.
struct LambdaRecord {
  double lambda = 0.0;
  bool inside_weak_condition = false;
  bool inside_construction_range = false;
  double weak_factor = 0.0;  // 1 - 6 lambda, the scanned threshold factor

  std::vector<SplittingRecord> splitting;
  std::optional<double> delta_infinity;
  std::vector<InequalityCheck> small_n;
  std::vector<TheoremRecord> theorem;
  std::vector<PsdRecord> psd;

  bool gated = false;  // checks count toward the exit status (weak condition holds)
  bool pass = false;
};

struct ReportFailure {
  double lambda = 0.0;
  std::string check;
  std::string detail;
};

/// Quadrature provenance of the shared scalar integrals: the one pair of
/// integrals every small-n margin and matrix entry in the report reduces to.
struct ScalarProvenance {
  double norm_sq = 0.0;
  double g1 = 0.0;
  double norm_sq_error = 0.0;
  double g1_error = 0.0;
  std::string mode = "min";
};

struct OspReport {
  ScanSpec spec;
  RenormConstants constants;
  ConfigProvenance provenance;
  ScalarProvenance scalars;
  std::vector<LambdaRecord> records;
  std::vector<ReportFailure> failures;

  bool all_passed() const { return failures.empty(); }
};

/// Evaluates the full verification pipeline over the coupling grid. Grid
/// points may be computed in parallel (thread count from the environment);
/// record order and all numeric output are independent of the thread count.
OspReport run_scan(const ScanSpec& spec, const RenormConstants& constants,
                   const ConfigProvenance& provenance = {});

/// Single-coupling record: small-n inequality checks for n <= 5, theorem
/// bounds plus matrix assembly for n >= 7.
LambdaRecord run_check(int n, double lambda, const ScanSpec& spec,
                       const RenormConstants& constants);

/// run_check wrapped as a one-record report.
OspReport run_check_report(int n, double lambda, const ScanSpec& spec,
                           const RenormConstants& constants,
                           const ConfigProvenance& provenance = {});

/// Canonical serialization; byte-identical across runs with the same config.
std::string report_to_json(const OspReport& report);

/// Flat projection of the JSON report.
std::string report_to_csv(const OspReport& report);

/// Number of worker threads a scan may use: OSPVERIFY_THREADS, default 1.
int scan_thread_count();

}  // namespace osp
