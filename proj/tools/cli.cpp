#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "slzeros/eigen.hpp"
#include "slzeros/ensembles.hpp"
#include "slzeros/errors.hpp"
#include "slzeros/kernels.hpp"
#include "slzeros/mc_harness.hpp"
#include "slzeros/sl_core.hpp"

namespace slzeros::cli {

namespace fs = std::filesystem;

namespace {

struct KeySpec {
  std::string key;
  std::string fallback;
  std::string flag;  // empty: settable through --config or --set only
};

const std::vector<KeySpec>& common_keys() {
  static const std::vector<KeySpec> keys{
      {"weight", "sine2", "--weight"},
      {"expcos_a", "0.5", ""},
      {"seed", "20240601", "--seed"},
      {"out", "slzeros_out", "--out"},
      {"eigen_grid", "8192", ""},
  };
  return keys;
}

const std::vector<KeySpec> kPertKeys{
    {"pert_amplitude", "1", ""},
    {"pert_decay", "1", ""},
    {"pert_c0", "0.5", ""},
    {"pert_c1", "1", ""},
};

std::vector<KeySpec> keys_for(const std::string& cmd) {
  std::vector<KeySpec> keys = common_keys();
  auto add = [&keys](std::vector<KeySpec> more) {
    keys.insert(keys.end(), more.begin(), more.end());
  };
  const KeySpec n_list{"n_list", "50,100,200,400", "--n-list"};
  const KeySpec replicates{"replicates", "2000", "--replicates"};
  const KeySpec grid{"grid_factor", "16", "--grid-factor"};
  const KeySpec k_max{"k_max", "0", "--k-max"};
  if (cmd == "eigen") {
    add({{"k_max", "50", "--k-max"}, {"bc", "both", "--bc"}});
  } else if (cmd == "simulate") {
    add({n_list, replicates, grid, k_max, {"kinds", "fn,Xn,Tn,pert", ""},
         {"record_timing", "false", ""}});
    add(kPertKeys);
  } else if (cmd == "kac") {
    add({n_list, k_max, {"kinds", "X,T", ""}});
  } else if (cmd == "compare") {
    add({n_list, replicates, grid, k_max});
  } else if (cmd == "diagnose") {
    add({n_list, k_max, {"draws", "2000", ""}, {"x_ref", "1", ""}, {"x_points", "64", ""},
         {"cov_pairs", "20", ""}, {"cov_draws", "5000", ""}});
  } else if (cmd == "robustness") {
    add({{"n_list", "400", "--n-list"}, replicates, grid});
    add(kPertKeys);
  }
  return keys;
}

const std::vector<std::pair<std::string, std::string>> kCommands{
    {"eigen", "Eigenvalues and asymptotic deviations of both eigen families"},
    {"simulate", "Monte Carlo zero counts; records.csv and summary.json"},
    {"kac", "Expected zero counts: Kac-Rice quadrature against closed forms"},
    {"compare", "Coupling diagnostics: contiguity and sup|eps| scaling"},
    {"diagnose", "Gap tables, covariance kernel check and var f_n(x)"},
    {"robustness", "Zero counts of T_n and the perturbed model at one n"}};

using Settings = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Typed access with errors naming the key

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

const std::string& raw(const Settings& s, const std::string& key) {
  const auto it = s.find(key);
  if (it == s.end()) throw ConfigError("missing key: " + key);
  return it->second;
}

double get_double(const Settings& s, const std::string& key) {
  const std::string& v = raw(s, key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::logic_error&) {
    throw ConfigError("key " + key + ": not a number: '" + v + "'");
  }
}

long long get_int(const Settings& s, const std::string& key) {
  const std::string& v = raw(s, key);
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::logic_error&) {
    throw ConfigError("key " + key + ": not an integer: '" + v + "'");
  }
}

std::uint64_t get_u64(const Settings& s, const std::string& key) {
  const std::string& v = raw(s, key);
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    const std::uint64_t i = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::logic_error&) {
    throw ConfigError("key " + key + ": not a non-negative integer: '" + v + "'");
  }
}

bool get_bool(const Settings& s, const std::string& key) {
  const std::string& v = raw(s, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key " + key + ": not a boolean: '" + v + "'");
}

std::vector<std::string> get_list(const Settings& s, const std::string& key) {
  std::vector<std::string> out;
  std::stringstream in(raw(s, key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("key " + key + ": empty list");
  return out;
}

std::vector<int> get_int_list(const Settings& s, const std::string& key) {
  std::vector<int> out;
  for (const auto& item : get_list(s, key)) {
    Settings one{{key, item}};
    const long long v = get_int(one, key);
    if (v < 1 || v > 1'000'000) throw ConfigError("key " + key + ": entry out of range: " + item);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int get_positive(const Settings& s, const std::string& key, long long lo = 1) {
  const long long v = get_int(s, key);
  if (v < lo || v > 100'000'000) {
    throw ConfigError("key " + key + ": must be >= " + std::to_string(lo));
  }
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// Configuration resolution: defaults, then file, then flags

void merge_file(const std::string& cmd, const std::string& path, Settings& settings) {
  std::set<std::string> allowed;
  for (const auto& k : keys_for(cmd)) allowed.insert(k.key);
  auto assign = [&](const std::string& key, const std::string& value) {
    if (!allowed.count(key)) throw ConfigError("unknown key: " + key);
    settings[key] = trim(value);
  };

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  if (fs::path(path).extension() == ".json") {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed JSON config " + path + ": " + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw ConfigError("JSON config " + path + " has no config object");
    }
    if (doc.contains("subcommand") && doc["subcommand"] != cmd) {
      throw ConfigError("manifest " + path + " belongs to subcommand " +
                        doc["subcommand"].get<std::string>());
    }
    for (const auto& [key, value] : doc["config"].items()) {
      if (!value.is_string()) throw ConfigError("key " + key + ": expected a string value");
      assign(key, value.get<std::string>());
    }
    return;
  }

  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("malformed config " + path + ": " + e.message() + " at line " +
                      std::to_string(e.line()));
  }
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      assign(name, node.data());
      continue;
    }
    if (std::none_of(kCommands.begin(), kCommands.end(),
                     [&](const auto& c) { return c.first == name; })) {
      throw ConfigError("unknown section: [" + name + "]");
    }
    if (name != cmd) continue;
    for (const auto& [key, leaf] : node) assign(key, leaf.data());
  }
}

// ---------------------------------------------------------------------------
// Output helpers

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Outputs {
 public:
  Outputs(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string());
  }

  fs::path path(const std::string& name) {
    files_.push_back(name);
    return dir_ / name;
  }

  std::ofstream open(const std::string& name) {
    std::ofstream f(path(name), std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + (dir_ / name).string());
    return f;
  }

  void manifest(const std::string& cmd, const Settings& settings) {
    nlohmann::json doc;
    doc["subcommand"] = cmd;
    doc["config"] = nlohmann::json::object();
    for (const auto& [k, v] : settings) doc["config"][k] = v;
    doc["outputs"] = files_;
    std::ofstream f(dir_ / "manifest.json", std::ios::trunc);
    f << doc.dump(2) << '\n';
    if (!f) throw ConfigError("cannot write manifest.json");
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

ExperimentConfig experiment_config(const Settings& s) {
  ExperimentConfig cfg;
  cfg.weight_name = raw(s, "weight");
  cfg.expcos_a = get_double(s, "expcos_a");
  cfg.master_seed = get_u64(s, "seed");
  cfg.eigen_grid = static_cast<std::size_t>(get_positive(s, "eigen_grid", 16));
  if (s.count("n_list")) cfg.n_list = get_int_list(s, "n_list");
  if (s.count("replicates")) cfg.replicates = get_positive(s, "replicates", 2);
  if (s.count("grid_factor")) cfg.grid_factor = get_positive(s, "grid_factor");
  if (s.count("k_max")) cfg.k_max = static_cast<int>(get_int(s, "k_max"));
  if (s.count("pert_amplitude")) {
    cfg.pert_amplitude = get_double(s, "pert_amplitude");
    cfg.pert_decay = get_double(s, "pert_decay");
    cfg.pert_c0 = get_double(s, "pert_c0");
    cfg.pert_c1 = get_double(s, "pert_c1");
  }
  if (s.count("record_timing")) cfg.record_timing = get_bool(s, "record_timing");
  if (cfg.k_max < 0) throw ConfigError("key k_max: must be >= 0");
  return cfg;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_eigen(const Settings& s, Outputs& out, std::ostream& log) {
  const int k_max = get_positive(s, "k_max");
  const std::string bc_key = raw(s, "bc");
  std::vector<BoundaryCondition> bcs;
  if (bc_key == "C" || bc_key == "both") bcs.push_back(BoundaryCondition::C);
  if (bc_key == "D" || bc_key == "both") bcs.push_back(BoundaryCondition::D);
  if (bcs.empty()) throw ConfigError("key bc: expected C, D or both, got '" + bc_key + "'");
  auto omega = std::make_shared<const CumulativeWeight>(
      builtin_weight(raw(s, "weight"), get_double(s, "expcos_a")),
      static_cast<std::size_t>(get_positive(s, "eigen_grid", 16)));
  EigenSolveOptions opt;
  opt.threads = resolve_threads(0);
  for (auto bc : bcs) {
    const EigenBasis basis = eigen_solve(omega, bc, k_max, opt);
    const auto dev = asymptotic_deviation(basis);
    const std::string name = std::string("eigen_") + bc_tag(bc) + ".csv";
    auto f = out.open(name);
    f << "k,lambda,sqrt_lambda_minus_half_k,sup_dev_value,sup_dev_deriv,sign_changes\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& p = basis[i];
      f << p.index << ',' << num(p.eigenvalue) << ','
        << num(std::sqrt(std::max(p.eigenvalue, 0.0)) - 0.5 * p.index) << ','
        << num(dev[i].sup_value) << ',' << num(dev[i].sup_deriv) << ','
        << interior_sign_changes(p) << '\n';
    }
    log << "eigen " << bc_tag(bc) << ": " << basis.size() << " pairs -> " << name << '\n';
  }
}

void cmd_simulate(const Settings& s, Outputs& out, std::ostream& log) {
  ExperimentConfig cfg = experiment_config(s);
  cfg.kinds.clear();
  for (const auto& k : get_list(s, "kinds")) {
    if (k == "fn") cfg.kinds.push_back(CountedKind::Fn);
    else if (k == "Xn") cfg.kinds.push_back(CountedKind::Xn);
    else if (k == "Tn") cfg.kinds.push_back(CountedKind::Tn);
    else if (k == "pert") cfg.kinds.push_back(CountedKind::Pert);
    else throw ConfigError("key kinds: unknown kind '" + k + "' (expected fn, Xn, Tn, pert)");
  }
  cfg.output_path = out.path("records.csv").string();
  const auto recs = run_experiment(cfg);
  auto f = out.open("summary.json");
  f << summary_json(summarize(recs)) << '\n';
  log << "simulate: " << recs.size() << " records -> records.csv, summary.json\n";
}

void cmd_kac(const Settings& s, Outputs& out, std::ostream& log) {
  const auto n_list = get_int_list(s, "n_list");
  const auto kinds = get_list(s, "kinds");
  for (const auto& k : kinds) {
    if (k != "X" && k != "T" && k != "C" && k != "f") {
      throw ConfigError("key kinds: unknown kind '" + k + "' (expected X, T, C, f)");
    }
  }
  auto omega = std::make_shared<const CumulativeWeight>(
      builtin_weight(raw(s, "weight"), get_double(s, "expcos_a")),
      static_cast<std::size_t>(get_positive(s, "eigen_grid", 16)));
  SturmLiouvilleBasis basis;
  if (std::find(kinds.begin(), kinds.end(), "f") != kinds.end()) {
    const long long k_req = get_int(s, "k_max");
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    if (k_req > 0 && k_req < n_max) throw ConfigError("key k_max: smaller than max(n_list)");
    const int k_max = k_req > 0 ? static_cast<int>(k_req) : n_max;
    EigenSolveOptions opt;
    opt.threads = resolve_threads(0);
    basis.cos_family = std::make_shared<const EigenBasis>(
        eigen_solve(omega, BoundaryCondition::C, k_max, opt));
    basis.sin_family = std::make_shared<const EigenBasis>(
        eigen_solve(omega, BoundaryCondition::D, k_max, opt));
  }
  auto f = out.open("kac.csv");
  f << "n,kind,expected,closed_form\n";
  for (int n : n_list) {
    for (const auto& k : kinds) {
      std::optional<ProcessModel> model;
      std::string closed;
      if (k == "X") {
        model = ProcessModel::liouville_trig(ProcessKind::X, omega, n);
        closed = num(expected_zeros_X(n));
      } else if (k == "T") {
        model = ProcessModel::trig(ProcessKind::T, n);
        closed = num(expected_zeros_T(n));
      } else if (k == "C") {
        model = ProcessModel::trig(ProcessKind::C, n);
      } else {
        model = ProcessModel::sturm_liouville(ProcessKind::f, basis, n);
      }
      const double e = kac_rice_expected(second_order_from_basis(*model), 0.0, kTwoPi);
      f << n << ',' << k << ',' << num(e) << ',' << closed << '\n';
    }
  }
  log << "kac: " << n_list.size() * kinds.size() << " rows -> kac.csv\n";
}

void cmd_compare(const Settings& s, Outputs& out, std::ostream& log) {
  ExperimentConfig cfg = experiment_config(s);
  cfg.kinds = {CountedKind::Fn, CountedKind::Xn};
  cfg.output_path = out.path("records.csv").string();
  const auto recs = run_experiment(cfg);
  auto c = out.open("contiguity.csv");
  c << "n,mean_abs_diff_over_sqrt_n\n";
  for (const auto& v : contiguity_diagnostic(recs)) c << v.n << ',' << num(v.value) << '\n';
  auto e = out.open("sup_eps.csv");
  e << "n,median_scaled,p99_scaled\n";
  std::vector<NValue> medians;
  for (const auto& q : sup_eps_diagnostic(recs)) {
    e << q.n << ',' << num(q.median) << ',' << num(q.p99) << '\n';
    medians.push_back({q.n, q.median});
  }
  log << "compare: contiguity.csv, sup_eps.csv";
  if (medians.size() >= 2) log << " (log-log slope of median " << loglog_slope(medians) << ")";
  log << '\n';
}

void cmd_diagnose(const Settings& s, Outputs& out, std::ostream& log) {
  ExperimentConfig cfg = experiment_config(s);
  cfg.kinds = {CountedKind::Fn};
  const int draws = get_positive(s, "draws", 2);
  const int x_points = get_positive(s, "x_points", 2);
  const int cov_pairs = get_positive(s, "cov_pairs");
  const int cov_draws = get_positive(s, "cov_draws", 1000);
  const double x_ref = get_double(s, "x_ref");
  if (x_ref < 0.0 || x_ref > kTwoPi) throw ConfigError("key x_ref: outside [0, 2pi]");
  const ExperimentContext ctx = build_context(cfg);

  std::vector<double> xs(static_cast<std::size_t>(x_points));
  for (int i = 0; i < x_points; ++i) xs[static_cast<std::size_t>(i)] = kTwoPi * i / (x_points - 1);

  auto gap = out.open("gap.csv");
  auto sum = out.open("gap_summary.csv");
  gap << "source,n,x,alpha,delta,beta\n";
  sum << "source,n,sup_alpha,sup_n_delta,sup_beta_scaled\n";
  auto emit = [&](const char* source, const GapTable& t) {
    for (const auto& r : t.rows) {
      gap << source << ',' << t.n << ',' << num(r.x) << ',' << num(r.alpha) << ','
          << num(r.delta) << ',' << num(r.beta) << '\n';
    }
    sum << source << ',' << t.n << ',' << num(t.sup_alpha()) << ',' << num(t.sup_n_delta()) << ','
        << num(t.sup_beta_scaled()) << '\n';
  };
  for (int n : cfg.n_list) {
    emit("exact", gap_diagnostics(ctx.basis, n, xs, x_ref));
    emit("empirical", gap_diagnostics_empirical(ctx.basis, n, xs, x_ref, draws, cfg.master_seed));
  }

  const int n_top = cfg.n_list.back();
  std::mt19937_64 rng(cfg.master_seed);
  auto uniform = [&rng] { return kTwoPi * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < cov_pairs; ++i) {
    const double x = uniform();
    pairs.emplace_back(x, uniform());
  }
  auto cov = out.open("covariance.csv");
  cov << "n,x,y,empirical,exact,abs_diff,band\n";
  const double band = 4.0 / std::sqrt(static_cast<double>(cov_draws));
  for (const auto& p : covariance_check_X(ctx.omega, n_top, pairs, cov_draws, cfg.master_seed)) {
    cov << n_top << ',' << num(p.x) << ',' << num(p.y) << ',' << num(p.empirical) << ','
        << num(p.exact) << ',' << num(std::abs(p.empirical - p.exact)) << ',' << num(band) << '\n';
  }

  auto var = out.open("variance_f.csv");
  var << "n,x,var_empirical,se,var_exact\n";
  const auto fmodel = ProcessModel::sturm_liouville(ProcessKind::f, ctx.basis, n_top);
  const auto exact = second_order_from_basis(fmodel);
  for (double x : xs) {
    const auto est = second_order_empirical(fmodel, cov_draws, x, cfg.master_seed);
    var << n_top << ',' << num(x) << ',' << num(est.var0) << ',' << num(est.se_var0) << ','
        << num(exact.var0(x)) << '\n';
  }
  log << "diagnose: gap.csv, gap_summary.csv, covariance.csv, variance_f.csv\n";
}

void cmd_robustness(const Settings& s, Outputs& out, std::ostream& log) {
  ExperimentConfig cfg = experiment_config(s);
  cfg.kinds = {CountedKind::Tn, CountedKind::Pert};
  cfg.output_path = out.path("records.csv").string();
  const auto recs = run_experiment(cfg);
  const auto report = summarize(recs);
  auto f = out.open("robustness.csv");
  f << "n,kind,mean,se,var_over_n,var_over_n_ci_lo,var_over_n_ci_hi,skewness,excess_kurtosis,ks,"
       "expected_T\n";
  for (const auto& row : report.rows) {
    for (const auto& [name, st] : {std::pair{"Tn", &row.Tn}, std::pair{"pert", &row.pert}}) {
      f << row.n << ',' << name << ',' << num(st->mean) << ',' << num(st->se) << ','
        << num(st->var_over_n) << ',' << num(st->var_over_n_ci_lo) << ','
        << num(st->var_over_n_ci_hi) << ',' << num(st->skewness) << ','
        << num(st->excess_kurtosis) << ',' << num(st->ks) << ','
        << num(expected_zeros_T(row.n)) << '\n';
    }
  }
  log << "robustness: " << recs.size() << " records -> records.csv, robustness.csv\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero statistics of random Sturm-Liouville sums", "slzeros"};
  app.require_subcommand(1);

  struct Bound {
    CLI::App* sub;
    std::string config;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;
  };
  std::map<std::string, Bound> bound;
  for (const auto& [cmd, help] : kCommands) {
    auto& b = bound[cmd];
    b.sub = app.add_subcommand(cmd, help);
    b.sub->add_option("--config", b.config, "INI file (or an emitted manifest.json)");
    b.sub->add_option("--set", b.sets, "key=value override")->take_all();
    for (const auto& k : keys_for(cmd)) {
      if (!k.flag.empty()) b.sub->add_option(k.flag, b.flags[k.key], k.key);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string cmd;
  for (const auto& [c, help] : kCommands) {
    if (bound[c].sub->parsed()) cmd = c;
  }
  const Bound& b = bound[cmd];

  try {
    Settings settings;
    for (const auto& k : keys_for(cmd)) settings[k.key] = k.fallback;
    if (!b.config.empty()) merge_file(cmd, b.config, settings);
    for (const auto& k : keys_for(cmd)) {
      if (k.flag.empty()) continue;
      const auto* opt = b.sub->get_option(k.flag);
      if (opt->count() > 0) settings[k.key] = trim(b.flags.at(k.key));
    }
    for (const auto& kv : b.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      const std::string key = trim(kv.substr(0, eq));
      if (!settings.count(key)) throw ConfigError("unknown key: " + key);
      settings[key] = trim(kv.substr(eq + 1));
    }

    Outputs outputs(raw(settings, "out"));
    if (cmd == "eigen") cmd_eigen(settings, outputs, out);
    else if (cmd == "simulate") cmd_simulate(settings, outputs, out);
    else if (cmd == "kac") cmd_kac(settings, outputs, out);
    else if (cmd == "compare") cmd_compare(settings, outputs, out);
    else if (cmd == "diagnose") cmd_diagnose(settings, outputs, out);
    else cmd_robustness(settings, outputs, out);
    outputs.manifest(cmd, settings);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace slzeros::cli
