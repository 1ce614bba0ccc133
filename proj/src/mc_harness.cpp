#include "slzeros/mc_harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "slzeros/eigen.hpp"
#include "slzeros/errors.hpp"
#include "slzeros/kernels.hpp"
#include "slzeros/zeros.hpp"

namespace slzeros {

namespace {

constexpr int kBatchSize = 64;

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;

/// Rows: points; columns: n^{-1/2} phi_1..phi_n, n^{-1/2} chi_1..chi_n.
Matrix design_matrix(const ProcessModel& model, std::span<const double> points, bool derivs = false) {
  const auto n = static_cast<Eigen::Index>(model.n());
  Matrix m(static_cast<Eigen::Index>(points.size()), 2 * n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  BasisRow row;
  for (std::size_t i = 0; i < points.size(); ++i) {
    model.basis(points[i], row, derivs);
    const auto& p = derivs ? row.dphi : row.phi;
    const auto& c = derivs ? row.dchi : row.chi;
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index k = 0; k < n; ++k) {
      m(r, k) = norm * p[static_cast<std::size_t>(k)];
      m(r, n + k) = norm * c[static_cast<std::size_t>(k)];
    }
  }
  return m;
}

Matrix coefficient_matrix(const std::vector<CoefficientDraw>& draws, int n) {
  Matrix c(2 * n, static_cast<Eigen::Index>(draws.size()));
  for (std::size_t j = 0; j < draws.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    for (int k = 0; k < n; ++k) {
      c(k, col) = draws[j].a[static_cast<std::size_t>(k)];
      c(n + k, col) = draws[j].b[static_cast<std::size_t>(k)];
    }
  }
  return c;
}

// Per-n state of one experiment: models, counting grids and design matrices.
struct CountingPlan {
  CountedKind kind;
  ProcessModel model;
  int n_hint;
  Matrix design;
};

std::vector<CountingPlan> make_plans(const ExperimentConfig& cfg, const ExperimentContext& ctx,
                                     int n) {
  ZeroCountOptions opt;
  opt.grid_factor = cfg.grid_factor;
  const Interval full{};
  std::vector<CountingPlan> plans;
  auto add = [&](CountedKind kind, ProcessModel model, int n_hint) {
    const int cells = 2 * base_cells(full, n_hint, opt);
    const auto pts = count_grid(full, cells);
    Matrix design = design_matrix(model, pts);
    plans.push_back({kind, std::move(model), n_hint, std::move(design)});
  };
  // f_n and X_n oscillate at frequencies up to n/2; T_n and its perturbation
  // up to n, so they are counted with n_hint = 2n for the same density.
  if (cfg.counts(CountedKind::Fn)) {
    add(CountedKind::Fn, ProcessModel::sturm_liouville(ProcessKind::f, ctx.basis, n), n);
  }
  if (cfg.counts(CountedKind::Xn)) {
    add(CountedKind::Xn, ProcessModel::liouville_trig(ProcessKind::X, ctx.omega, n), n);
  }
  if (cfg.counts(CountedKind::Tn)) {
    add(CountedKind::Tn, ProcessModel::trig(ProcessKind::T, n), 2 * n);
  }
  if (cfg.counts(CountedKind::Pert)) {
    add(CountedKind::Pert, ProcessModel::perturbed(ctx.perturbation, n), 2 * n);
  }
  return plans;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

bool ExperimentConfig::counts(CountedKind kind) const {
  return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

int ExperimentConfig::effective_k_max() const {
  if (k_max > 0) return k_max;
  return n_list.empty() ? 0 : *std::max_element(n_list.begin(), n_list.end());
}

void ExperimentConfig::validate() const {
  if (replicates < 2) throw ConfigError("replicates must be >= 2");
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw ConfigError("n_list entries must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("n_list must be strictly ascending");
  }
  if (counts(CountedKind::Fn) && effective_k_max() < n_list.back()) {
    std::ostringstream msg;
    msg << "k_max = " << effective_k_max() << " is smaller than max(n_list) = " << n_list.back();
    throw ConfigError(msg.str());
  }
  if (grid_factor < 1) throw ConfigError("grid_factor must be >= 1");
  if (eigen_grid < 16) throw ConfigError("eigen_grid must be >= 16");
  if (kinds.empty()) throw ConfigError("at least one process kind must be counted");
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SLZEROS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentContext build_context(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentContext ctx;
  ctx.omega = std::make_shared<const CumulativeWeight>(
      builtin_weight(cfg.weight_name, cfg.expcos_a), cfg.eigen_grid);
  if (cfg.counts(CountedKind::Fn)) {
    EigenSolveOptions opt;
    opt.threads = resolve_threads(cfg.threads);
    const int k_max = cfg.effective_k_max();
    ctx.basis.cos_family = std::make_shared<const EigenBasis>(
        eigen_solve(ctx.omega, BoundaryCondition::C, k_max, opt));
    ctx.basis.sin_family = std::make_shared<const EigenBasis>(
        eigen_solve(ctx.omega, BoundaryCondition::D, k_max, opt));
  }
  if (cfg.counts(CountedKind::Pert)) {
    auto fam = std::make_shared<PerturbationFamily>(PerturbationFamily::oscillating(
        cfg.pert_amplitude, cfg.pert_decay, cfg.pert_c0, cfg.pert_c1));
    try {
      fam->validate(cfg.n_list.back(), Grid(cfg.eigen_grid));
    } catch (const InvariantError& e) {
      throw ConfigError(e.what());
    }
    ctx.perturbation = std::move(fam);
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Records

const char* records_csv_header() {
  return "n,replicate_id,seed,N_fn,N_Xn,N_Tn,N_pert,sup_eps,stable_fn,stable_Xn,millis";
}

std::string format_record(const ReplicateRecord& r) {
  std::ostringstream out;
  out << r.n << ',' << r.replicate_id << ',' << r.seed << ',' << r.N_fn << ',' << r.N_Xn << ','
      << r.N_Tn << ',' << r.N_pert << ',' << format_double(r.sup_eps) << ','
      << (r.stable_fn ? 1 : 0) << ',' << (r.stable_Xn ? 1 : 0) << ',' << format_double(r.millis);
  return out.str();
}

std::vector<ReplicateRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open records file " + path);
  std::string line;
  std::getline(in, line);
  if (line != records_csv_header()) throw ConfigError("unexpected records header in " + path);
  std::vector<ReplicateRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) throw ConfigError("malformed records row: " + line);
    ReplicateRecord r;
    r.n = std::stoi(cells[0]);
    r.replicate_id = std::stoull(cells[1]);
    r.seed = std::stoull(cells[2]);
    r.N_fn = std::stoi(cells[3]);
    r.N_Xn = std::stoi(cells[4]);
    r.N_Tn = std::stoi(cells[5]);
    r.N_pert = std::stoi(cells[6]);
    r.sup_eps = std::stod(cells[7]);
    r.stable_fn = cells[8] == "1";
    r.stable_Xn = cells[9] == "1";
    r.millis = std::stod(cells[10]);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiment driver

std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, build_context(cfg));
}

std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& cfg,
                                            const ExperimentContext& ctx) {
  cfg.validate();
  if (cfg.counts(CountedKind::Fn) &&
      (!ctx.basis.cos_family || ctx.basis.size() < static_cast<std::size_t>(cfg.n_list.back()))) {
    throw ConfigError("eigenbasis shorter than max(n_list)");
  }
  if (cfg.counts(CountedKind::Pert) && !ctx.perturbation) {
    throw ConfigError("perturbation family missing from the experiment context");
  }

  std::ofstream sink;
  if (!cfg.output_path.empty()) {
    sink.open(cfg.output_path, std::ios::trunc);
    if (!sink) throw ConfigError("cannot write " + cfg.output_path);
    sink << records_csv_header() << '\n';
    sink.flush();
  }

  const unsigned threads = resolve_threads(cfg.threads);
  const auto M = static_cast<std::size_t>(cfg.replicates);
  const std::size_t batches = (M + kBatchSize - 1) / kBatchSize;
  std::vector<ReplicateRecord> all;
  all.reserve(M * cfg.n_list.size());

  ZeroCountOptions zopt;
  zopt.grid_factor = cfg.grid_factor;
  zopt.locate = false;

  for (int n : cfg.n_list) {
    const auto plans = make_plans(cfg, ctx, n);
    std::vector<ReplicateRecord> recs(M);
    std::vector<char> batch_done(batches, 0);
    std::size_t flushed = 0;
    std::mutex writer;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto work_batch = [&](std::size_t b) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::size_t first = b * kBatchSize;
      const std::size_t last = std::min(M, first + kBatchSize);
      std::vector<CoefficientDraw> draws;
      draws.reserve(last - first);
      for (std::size_t r = first; r < last; ++r) {
        draws.push_back(sample_coefficients(cfg.master_seed, n, r));
      }
      const Matrix coeffs = coefficient_matrix(draws, n);
      for (std::size_t j = 0; j < draws.size(); ++j) {
        auto& rec = recs[first + j];
        rec.n = n;
        rec.replicate_id = first + j;
        rec.seed = draws[j].derived_seed();
      }
      Matrix values_f, values_x;
      for (const auto& plan : plans) {
        Matrix values = plan.design * coeffs;
        for (std::size_t j = 0; j < draws.size(); ++j) {
          const auto col = static_cast<Eigen::Index>(j);
          std::span<const double> fine(values.col(col).data(),
                                       static_cast<std::size_t>(values.rows()));
          auto shared = std::make_shared<const CoefficientDraw>(draws[j]);
          RandomProcess proc(plan.model, shared);
          const auto res = count_zeros_presampled(
              fine, [&proc](double x) { return proc.value(x); }, Interval{}, plan.n_hint, zopt);
          auto& rec = recs[first + j];
          switch (plan.kind) {
            case CountedKind::Fn: rec.N_fn = res.count; rec.stable_fn = res.stable; break;
            case CountedKind::Xn: rec.N_Xn = res.count; rec.stable_Xn = res.stable; break;
            case CountedKind::Tn: rec.N_Tn = res.count; break;
            case CountedKind::Pert: rec.N_pert = res.count; break;
          }
        }
        if (plan.kind == CountedKind::Fn) values_f = std::move(values);
        if (plan.kind == CountedKind::Xn) values_x = std::move(values);
      }
      if (values_f.size() > 0 && values_x.size() > 0) {
        for (std::size_t j = 0; j < draws.size(); ++j) {
          const auto col = static_cast<Eigen::Index>(j);
          recs[first + j].sup_eps = (values_f.col(col) - values_x.col(col)).cwiseAbs().maxCoeff();
        }
      }
      if (cfg.record_timing) {
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        for (std::size_t r = first; r < last; ++r) recs[r].millis = ms / static_cast<double>(last - first);
      }

      std::lock_guard lock(writer);
      batch_done[b] = 1;
      while (flushed < batches && batch_done[flushed]) {
        if (sink.is_open()) {
          const std::size_t lo = flushed * kBatchSize;
          const std::size_t hi = std::min(M, lo + kBatchSize);
          for (std::size_t r = lo; r < hi; ++r) sink << format_record(recs[r]) << '\n';
          sink.flush();
        }
        ++flushed;
      }
    };

    auto worker = [&] {
      for (std::size_t b = next++; b < batches && !failed; b = next++) {
        try {
          work_batch(b);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  return all;
}

// ---------------------------------------------------------------------------
// Statistics

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_statistic(std::span<const double> sample, double mean, double sd) {
  if (!(sd > 0.0)) throw DomainError("ks_statistic: reference sd must be positive");
  if (sample.size() < 2) throw PreconditionError("ks_statistic: need at least two samples");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf((sorted[i] - mean) / sd);
    d = std::max({d, static_cast<double>(i + 1) / m - cdf, cdf - static_cast<double>(i) / m});
  }
  return std::clamp(d, 0.0, 1.0);
}

double quantile(std::vector<double> sample, double p) {
  if (sample.empty()) throw PreconditionError("quantile: empty sample");
  std::sort(sample.begin(), sample.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (pos - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

CountStats count_statistics(std::span<const double> counts, int n) {
  CountStats s;
  const std::size_t m = counts.size();
  if (m < 2) return s;
  s.present = true;
  const double md = static_cast<double>(m);
  s.mean = std::accumulate(counts.begin(), counts.end(), 0.0) / md;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double c : counts) {
    const double d = c - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  s.var = m2 / (md - 1.0);
  s.se = std::sqrt(s.var / md);
  s.var_over_n = s.var / n;
  const double spread = std::exp(1.959963984540054 * std::sqrt(2.0 / (md - 1.0)));
  s.var_over_n_ci_lo = s.var_over_n / spread;
  s.var_over_n_ci_hi = s.var_over_n * spread;
  m2 /= md;
  m3 /= md;
  m4 /= md;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    // Standardizing by sqrt(n) does not change the fitted-moment KS distance.
    s.ks = ks_statistic(counts, s.mean, std::sqrt(s.var));
  } else {
    s.ks = 1.0;
  }
  return s;
}

const SummaryRow* SummaryReport::find(int n) const {
  for (const auto& r : rows) {
    if (r.n == n) return &r;
  }
  return nullptr;
}

namespace {

std::vector<int> distinct_n(const std::vector<ReplicateRecord>& records) {
  std::vector<int> ns;
  for (const auto& r : records) ns.push_back(r.n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

}  // namespace

std::vector<NValue> contiguity_diagnostic(const std::vector<ReplicateRecord>& records) {
  std::vector<NValue> out;
  for (int n : distinct_n(records)) {
    double sum = 0.0;
    int used = 0;
    for (const auto& r : records) {
      if (r.n != n || r.N_fn < 0 || r.N_Xn < 0) continue;
      sum += std::abs(r.N_fn - r.N_Xn);
      ++used;
    }
    if (used > 0) out.push_back({n, sum / used / std::sqrt(static_cast<double>(n))});
  }
  return out;
}

std::vector<SupEpsQuantiles> sup_eps_diagnostic(const std::vector<ReplicateRecord>& records) {
  std::vector<SupEpsQuantiles> out;
  for (int n : distinct_n(records)) {
    std::vector<double> scaled;
    const double factor = std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n));
    for (const auto& r : records) {
      if (r.n == n && r.sup_eps >= 0.0) scaled.push_back(r.sup_eps * factor);
    }
    if (scaled.empty()) continue;
    out.push_back({n, quantile(scaled, 0.5), quantile(scaled, 0.99)});
  }
  return out;
}

double loglog_slope(const std::vector<NValue>& values) {
  if (values.size() < 2) throw PreconditionError("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& v : values) {
    if (!(v.value > 0.0)) throw DomainError("loglog_slope: values must be positive");
    const double lx = std::log(static_cast<double>(v.n));
    const double ly = std::log(v.value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(values.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SummaryReport summarize(const std::vector<ReplicateRecord>& records) {
  SummaryReport report;
  const auto contiguity = contiguity_diagnostic(records);
  const auto sup_eps = sup_eps_diagnostic(records);
  for (int n : distinct_n(records)) {
    SummaryRow row;
    row.n = n;
    std::vector<double> fn, xn, tn, pert;
    for (const auto& r : records) {
      if (r.n != n) continue;
      ++row.replicates;
      if (r.N_fn >= 0) fn.push_back(r.N_fn);
      if (r.N_Xn >= 0) xn.push_back(r.N_Xn);
      if (r.N_Tn >= 0) tn.push_back(r.N_Tn);
      if (r.N_pert >= 0) pert.push_back(r.N_pert);
      if (r.N_fn >= 0 && !r.stable_fn) ++row.unstable_fn;
      if (r.N_Xn >= 0 && !r.stable_Xn) ++row.unstable_Xn;
    }
    if (row.replicates < 2) {
      throw PreconditionError("summarize: need at least two records per n");
    }
    row.fn = count_statistics(fn, n);
    row.Xn = count_statistics(xn, n);
    row.Tn = count_statistics(tn, n);
    row.pert = count_statistics(pert, n);
    for (const auto& c : contiguity) {
      if (c.n == n) row.contiguity = c.value;
    }
    for (const auto& q : sup_eps) {
      if (q.n == n) {
        row.sup_eps_median_scaled = q.median;
        row.sup_eps_p99_scaled = q.p99;
      }
    }
    row.V_estimate = row.fn.present ? row.fn.var_over_n : row.Xn.var_over_n;
    row.reliable = !((!fn.empty() && row.unstable_fn == static_cast<int>(fn.size())) ||
                     (!xn.empty() && row.unstable_Xn == static_cast<int>(xn.size())));
    report.rows.push_back(row);
  }
  return report;
}

std::string summary_json(const SummaryReport& report, int indent) {
  using nlohmann::json;
  auto stats = [](const CountStats& s) {
    if (!s.present) return json(nullptr);
    return json{{"mean", s.mean},
                {"se", s.se},
                {"var", s.var},
                {"var_over_n", s.var_over_n},
                {"var_over_n_ci95", {s.var_over_n_ci_lo, s.var_over_n_ci_hi}},
                {"skewness", s.skewness},
                {"excess_kurtosis", s.excess_kurtosis},
                {"ks", s.ks}};
  };
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"replicates", r.replicates},
                    {"N_fn", stats(r.fn)},
                    {"N_Xn", stats(r.Xn)},
                    {"N_Tn", stats(r.Tn)},
                    {"N_pert", stats(r.pert)},
                    {"contiguity", r.contiguity},
                    {"sup_eps_scaled_median", r.sup_eps_median_scaled},
                    {"sup_eps_scaled_p99", r.sup_eps_p99_scaled},
                    {"V_estimate", r.V_estimate},
                    {"unstable_fn", r.unstable_fn},
                    {"unstable_Xn", r.unstable_Xn},
                    {"reliable", r.reliable}});
  }
  return json{{"per_n", rows}}.dump(indent);
}

// ---------------------------------------------------------------------------
// Coupling diagnostics

double GapTable::sup_alpha() const {
  double s = 0.0;
  for (const auto& r : rows) s = std::max(s, std::abs(r.alpha));
  return s;
}

double GapTable::sup_n_delta() const {
  double s = 0.0;
  for (const auto& r : rows) s = std::max(s, n * r.delta);
  return s;
}

double GapTable::sup_beta_scaled() const {
  double s = 0.0;
  for (const auto& r : rows) s = std::max(s, std::abs(r.beta));
  return s * n / std::log(static_cast<double>(n));
}

GapTable gap_diagnostics(const SturmLiouvilleBasis& basis, int n, std::span<const double> x_grid,
                         double x_ref) {
  const auto fmodel = ProcessModel::sturm_liouville(ProcessKind::f, basis, n);
  const auto xmodel = ProcessModel::liouville_trig(ProcessKind::X, basis.cos_family->omega_ptr(), n);
  GapTable table;
  table.n = n;
  table.x_ref = x_ref;
  BasisRow ref, rf, rx;
  xmodel.basis(x_ref, ref, false);
  const auto nn = static_cast<std::size_t>(n);
  double var_ref = 0.0;
  for (std::size_t k = 0; k < nn; ++k) var_ref += ref.phi[k] * ref.phi[k] + ref.chi[k] * ref.chi[k];
  var_ref /= n;
  for (double x : x_grid) {
    fmodel.basis(x, rf, false);
    xmodel.basis(x, rx, true);
    double var_f = 0, var_x = 0, cov = 0, dxf = 0, eps_ref = 0;
    for (std::size_t k = 0; k < nn; ++k) {
      var_f += rf.phi[k] * rf.phi[k] + rf.chi[k] * rf.chi[k];
      var_x += rx.phi[k] * rx.phi[k] + rx.chi[k] * rx.chi[k];
      cov += rf.phi[k] * rx.phi[k] + rf.chi[k] * rx.chi[k];
      dxf += rx.dphi[k] * rf.phi[k] + rx.dchi[k] * rf.chi[k];
      eps_ref += (rf.phi[k] - rx.phi[k]) * ref.phi[k] + (rf.chi[k] - rx.chi[k]) * ref.chi[k];
    }
    var_f /= n;
    var_x /= n;
    cov /= n;
    dxf /= n;
    eps_ref /= n;
    table.rows.push_back({x, dxf / var_f, std::abs(var_x * var_f - cov * cov), eps_ref / var_ref});
  }
  return table;
}

GapTable gap_diagnostics_empirical(const SturmLiouvilleBasis& basis, int n,
                                   std::span<const double> x_grid, double x_ref, int draws,
                                   std::uint64_t seed) {
  if (draws < 2) throw PreconditionError("gap_diagnostics_empirical: need draws >= 2");
  const auto fmodel = ProcessModel::sturm_liouville(ProcessKind::f, basis, n);
  const auto xmodel = ProcessModel::liouville_trig(ProcessKind::X, basis.cos_family->omega_ptr(), n);
  const Matrix bf = design_matrix(fmodel, x_grid);
  const Matrix bx = design_matrix(xmodel, x_grid);
  const Matrix bdx = design_matrix(xmodel, x_grid, true);
  const std::array<double, 1> ref_pt{x_ref};
  const Matrix bref = design_matrix(xmodel, ref_pt);

  const auto pts = static_cast<Eigen::Index>(x_grid.size());
  Eigen::ArrayXd s_ff = Eigen::ArrayXd::Zero(pts), s_xx = s_ff, s_xf = s_ff, s_dxf = s_ff,
                 s_eref = s_ff;
  double s_rr = 0.0;
  for (int first = 0; first < draws; first += kBatchSize) {
    std::vector<CoefficientDraw> batch;
    for (int r = first; r < std::min(draws, first + kBatchSize); ++r) {
      batch.push_back(sample_coefficients(seed, n, static_cast<std::uint64_t>(r)));
    }
    const Matrix c = coefficient_matrix(batch, n);
    const Matrix vf = bf * c, vx = bx * c, vdx = bdx * c, vr = bref * c;
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const double xr = vr(0, j);
      s_ff += vf.col(j).array().square();
      s_xx += vx.col(j).array().square();
      s_xf += vf.col(j).array() * vx.col(j).array();
      s_dxf += vdx.col(j).array() * vf.col(j).array();
      s_eref += (vf.col(j) - vx.col(j)).array() * xr;
      s_rr += xr * xr;
    }
  }
  GapTable table;
  table.n = n;
  table.x_ref = x_ref;
  table.draws = draws;
  const double d = draws;
  for (Eigen::Index i = 0; i < pts; ++i) {
    const double var_f = s_ff(i) / d, var_x = s_xx(i) / d, cov = s_xf(i) / d;
    table.rows.push_back({x_grid[static_cast<std::size_t>(i)], (s_dxf(i) / d) / var_f,
                          std::abs(var_x * var_f - cov * cov), (s_eref(i) / d) / (s_rr / d)});
  }
  return table;
}

std::vector<CovariancePoint> covariance_check_X(std::shared_ptr<const CumulativeWeight> omega,
                                                int n,
                                                std::span<const std::pair<double, double>> pairs,
                                                int draws, std::uint64_t seed) {
  const auto model = ProcessModel::liouville_trig(ProcessKind::X, omega, n);
  std::vector<double> pts;
  for (const auto& [x, y] : pairs) {
    pts.push_back(x);
    pts.push_back(y);
  }
  const Matrix b = design_matrix(model, pts);
  Eigen::ArrayXd sums = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(pairs.size()));
  for (int first = 0; first < draws; first += kBatchSize) {
    std::vector<CoefficientDraw> batch;
    for (int r = first; r < std::min(draws, first + kBatchSize); ++r) {
      batch.push_back(sample_coefficients(seed, n, static_cast<std::uint64_t>(r)));
    }
    const Matrix v = b * coefficient_matrix(batch, n);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      for (Eigen::Index p = 0; p < sums.size(); ++p) sums(p) += v(2 * p, j) * v(2 * p + 1, j);
    }
  }
  std::vector<CovariancePoint> out;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [x, y] = pairs[p];
    out.push_back({x, y, sums(static_cast<Eigen::Index>(p)) / draws, covariance_X(n, *omega, x, y)});
  }
  return out;
}

}  // namespace slzeros
