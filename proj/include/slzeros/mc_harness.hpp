#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "slzeros/ensembles.hpp"
#include "slzeros/sl_core.hpp"

namespace slzeros {

/// Process kinds whose zeros are counted in every replicate.
enum class CountedKind { Fn, Xn, Tn, Pert };

struct ExperimentConfig {
  std::string weight_name = "sine2";
  double expcos_a = 0.5;
  std::vector<int> n_list{50, 100, 200, 400};
  int replicates = 2000;
  std::uint64_t master_seed = 20240601;
  std::vector<CountedKind> kinds{CountedKind::Fn, CountedKind::Xn, CountedKind::Tn,
                                 CountedKind::Pert};
  /// Records CSV; empty disables persistence.
  std::string output_path;
  int grid_factor = 16;
  /// Eigenpairs per family; 0 means max(n_list).
  int k_max = 0;
  std::size_t eigen_grid = kDefaultGridCount;
  double pert_amplitude = 1.0;
  double pert_decay = 1.0;
  double pert_c0 = 0.5;
  double pert_c1 = 1.0;
  /// Worker threads; 0 reads SLZEROS_THREADS, falling back to the hardware count.
  unsigned threads = 0;
  /// Fill the millis column with wall time (makes the CSV non-reproducible).
  bool record_timing = false;

  bool counts(CountedKind kind) const;
  int effective_k_max() const;
  /// Throws ConfigError on a violated invariant.
  void validate() const;
};

/// Read-only state shared by all replicates of one experiment.
struct ExperimentContext {
  std::shared_ptr<const CumulativeWeight> omega;
  SturmLiouvilleBasis basis;
  std::shared_ptr<const PerturbationFamily> perturbation;
};

/// Normalized weight, eigen families (when f_n is counted) and the
/// perturbation family (validated up to max(n_list) when counted; a violated
/// bound is reported as ConfigError).
ExperimentContext build_context(const ExperimentConfig& config);

/// Thread count after applying SLZEROS_THREADS.
unsigned resolve_threads(unsigned requested);

struct ReplicateRecord {
  int n = 0;
  std::uint64_t replicate_id = 0;
  std::uint64_t seed = 0;
  /// -1 when the kind was not counted.
  int N_fn = -1, N_Xn = -1, N_Tn = -1, N_pert = -1;
  /// sup over the counting grid of |f_n - X_n|; -1 when either is missing.
  double sup_eps = -1.0;
  bool stable_fn = true, stable_Xn = true;
  double millis = 0.0;
};

/// Column header of the records CSV.
const char* records_csv_header();
std::string format_record(const ReplicateRecord& rec);
std::vector<ReplicateRecord> read_records_csv(const std::string& path);

/// Runs every (n, replicate) pair. Records come back sorted by
/// (n, replicate_id) and are identical for any thread count. When
/// `config.output_path` is set, rows are appended as the ordered prefix grows.
std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& config,
                                            const ExperimentContext& context);
std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Summaries

struct CountStats {
  bool present = false;
  double mean = 0.0;
  double se = 0.0;
  double var = 0.0;
  double var_over_n = 0.0;
  double var_over_n_ci_lo = 0.0;
  double var_over_n_ci_hi = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks = 0.0;
};

struct SummaryRow {
  int n = 0;
  int replicates = 0;
  CountStats fn, Xn, Tn, pert;
  double contiguity = -1.0;
  double sup_eps_median_scaled = -1.0;
  double sup_eps_p99_scaled = -1.0;
  double V_estimate = 0.0;
  int unstable_fn = 0;
  int unstable_Xn = 0;
  bool reliable = true;
};

struct SummaryReport {
  std::vector<SummaryRow> rows;
  const SummaryRow* find(int n) const;
};

/// Statistics of one integer sample: unbiased variance, log-scale normal CI
/// for var/n, and KS against the Gaussian with fitted mean and variance.
CountStats count_statistics(std::span<const double> counts, int n);

SummaryReport summarize(const std::vector<ReplicateRecord>& records);
std::string summary_json(const SummaryReport& report, int indent = 2);

struct NValue {
  int n = 0;
  double value = 0.0;
};

/// E |N_fn - N_Xn| / sqrt(n) per n.
std::vector<NValue> contiguity_diagnostic(const std::vector<ReplicateRecord>& records);

struct SupEpsQuantiles {
  int n = 0;
  double median = 0.0;
  double p99 = 0.0;
};

/// Quantiles of sup|eps_n| sqrt(n) / log(n) per n.
std::vector<SupEpsQuantiles> sup_eps_diagnostic(const std::vector<ReplicateRecord>& records);

/// Least-squares slope of log(value) against log(n).
double loglog_slope(const std::vector<NValue>& values);

/// sup_t |F_emp(t) - Phi((t - mean)/sd)|; DomainError when sd <= 0.
double ks_statistic(std::span<const double> sample, double mean, double sd);

/// Standard normal CDF via erfc.
double normal_cdf(double z);

/// Linear-interpolated quantile of a sample (p in [0, 1]).
double quantile(std::vector<double> sample, double p);

// ---------------------------------------------------------------------------
// Coupling diagnostics

struct GapRow {
  double x = 0.0;
  /// E(X_n'(x) f_n(x)) / var f_n(x)
  double alpha = 0.0;
  /// |var X_n var f_n - cov(X_n, f_n)^2| at x
  double delta = 0.0;
  /// cov(eps_n(x), X_n(x_ref)) / var X_n(x_ref)
  double beta = 0.0;
};

struct GapTable {
  int n = 0;
  double x_ref = 0.0;
  int draws = 0;  // 0 for exact basis sums
  std::vector<GapRow> rows;
  double sup_alpha() const;
  double sup_n_delta() const;
  double sup_beta_scaled() const;  // sup |beta| n / log n
};

/// Exact second moments from the eigenbasis sums.
GapTable gap_diagnostics(const SturmLiouvilleBasis& basis, int n, std::span<const double> x_grid,
                         double x_ref);

/// Monte Carlo version over `draws` coupled coefficient draws.
GapTable gap_diagnostics_empirical(const SturmLiouvilleBasis& basis, int n,
                                   std::span<const double> x_grid, double x_ref, int draws,
                                   std::uint64_t seed);

struct CovariancePoint {
  double x = 0.0, y = 0.0;
  double empirical = 0.0;
  double exact = 0.0;
};

/// Empirical E X_n(x) X_n(y) at the given pairs against r_n((Omega(x)-Omega(y))/2).
std::vector<CovariancePoint> covariance_check_X(std::shared_ptr<const CumulativeWeight> omega,
                                                int n,
                                                std::span<const std::pair<double, double>> pairs,
                                                int draws, std::uint64_t seed);

}  // namespace slzeros
