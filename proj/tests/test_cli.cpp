#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "slzeros/mc_harness.hpp"

namespace fs = std::filesystem;
using slzeros::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "slzeros_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("cli eigen: flat eigenvalues and manifest") {
  const auto out = scratch("eigen");
  const auto r = invoke({"eigen", "--weight", "unit", "--k-max", "10", "--out", out.string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"eigen_C.csv", "eigen_D.csv"}) {
    const auto rows = read_csv(out / f);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0][1] == "lambda");
    for (std::size_t k = 1; k <= 10; ++k) {
      CHECK(std::abs(std::stod(rows[k][1]) - k * k / 4.0) < 1e-8);
    }
  }
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["subcommand"] == "eigen");
  CHECK(manifest["config"]["seed"] == "20240601");
  CHECK(manifest["config"]["weight"] == "unit");
}

TEST_CASE("cli eigen: sine2 offsets shrink") {
  const auto out = scratch("eigen_sine2");
  REQUIRE(invoke({"eigen", "--weight", "sine2", "--k-max", "50", "--bc", "D", "--out", out.string()})
              .code == 0);
  CHECK_FALSE(fs::exists(out / "eigen_C.csv"));
  const auto rows = read_csv(out / "eigen_D.csv");
  CHECK(std::abs(std::stod(rows[50][2])) < std::abs(std::stod(rows[10][2])));
  CHECK(50 * std::abs(std::stod(rows[50][2])) < 1.0);
}

TEST_CASE("cli configuration errors exit 2") {
  const auto out = scratch("errors");
  auto r = invoke({"eigen", "--weight", "bogus", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unit") != std::string::npos);
  CHECK(r.err.find("sine2") != std::string::npos);

  fs::create_directories(out);
  write(out / "bad.ini", "[eigen]\nk_max = 5\nflavour = strange\n");
  r = invoke({"eigen", "--config", (out / "bad.ini").string(), "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown key: flavour") != std::string::npos);

  write(out / "section.ini", "[eigne]\nk_max = 5\n");
  r = invoke({"eigen", "--config", (out / "section.ini").string(), "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("eigne") != std::string::npos);

  r = invoke({"eigen", "--set", "colour=red", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);

  r = invoke({"simulate", "--replicates", "1", "--out", out.string()});
  CHECK(r.code == 2);
  r = invoke({"simulate", "--n-list", "20,10", "--out", out.string()});
  CHECK(r.code == 2);
  r = invoke({"kac", "--n-list", "ten", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("n_list") != std::string::npos);
  r = invoke({"frobnicate"});
  CHECK(r.code == 2);
}

TEST_CASE("cli config file with flag override") {
  const auto out = scratch("ini");
  fs::create_directories(out);
  write(out / "run.ini", "weight = sine2\n[eigen]\nk_max = 4\nbc = C\n[simulate]\nreplicates = 9\n");
  const auto r = invoke({"eigen", "--config", (out / "run.ini").string(), "--k-max", "6", "--out",
                         (out / "o").string()});
  REQUIRE(r.code == 0);
  CHECK(read_csv(out / "o" / "eigen_C.csv").size() == 7);
  const auto manifest = nlohmann::json::parse(slurp(out / "o" / "manifest.json"));
  CHECK(manifest["config"]["k_max"] == "6");
  CHECK(manifest["config"]["bc"] == "C");
}

TEST_CASE("cli simulate: files, determinism and manifest round trip") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  const auto c = scratch("sim_c");
  const std::vector<std::string> common{"simulate", "--n-list", "10,20", "--replicates", "30",
                                        "--seed", "5"};
  auto args = common;
  args.insert(args.end(), {"--out", a.string()});
  REQUIRE(invoke(args).code == 0);
  args = common;
  args.insert(args.end(), {"--out", b.string()});
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(a / "records.csv") == slurp(b / "records.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  CHECK(read_csv(a / "records.csv").size() == 61);
  CHECK(read_csv(a / "records.csv")[0].size() == 11);

  const auto summary = nlohmann::json::parse(slurp(a / "summary.json"));
  REQUIRE(summary["per_n"].size() == 2);
  const auto& row = summary["per_n"][1];
  CHECK(row["n"] == 20);
  CHECK(row["N_fn"].contains("ks"));
  CHECK(row["N_fn"].contains("var_over_n"));
  CHECK(row.contains("contiguity"));

  REQUIRE(invoke({"simulate", "--config", (a / "manifest.json").string(), "--out", c.string()})
              .code == 0);
  CHECK(slurp(a / "records.csv") == slurp(c / "records.csv"));

  auto recs = slzeros::read_records_csv((a / "records.csv").string());
  CHECK(slzeros::summary_json(slzeros::summarize(recs)) + "\n" == slurp(a / "summary.json"));
}

TEST_CASE("cli kac") {
  const auto out = scratch("kac");
  REQUIRE(invoke({"kac", "--weight", "unit", "--n-list", "1,10", "--set", "kinds=X,T,f", "--out",
                  out.string()})
              .code == 0);
  const auto unit = read_csv(out / "kac.csv");
  CHECK(std::stod(unit[1][2]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::stod(unit[2][2]) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::stod(unit[3][2]) == doctest::Approx(1.0).epsilon(1e-6));
  const auto out2 = scratch("kac2");
  REQUIRE(invoke({"kac", "--weight", "sine2", "--n-list", "1,10", "--out", out2.string()}).code == 0);
  const auto sine2 = read_csv(out2 / "kac.csv");
  CHECK(std::stod(sine2[1][2]) == doctest::Approx(std::stod(unit[1][2])).epsilon(1e-10));
  CHECK(std::stod(sine2[3][2]) == doctest::Approx(std::stod(unit[4][2])).epsilon(1e-10));
}

TEST_CASE("cli robustness") {
  const auto out = scratch("robust");
  REQUIRE(invoke({"robustness", "--n-list", "20", "--replicates", "40", "--set", "pert_amplitude=0",
                  "--out", out.string()})
              .code == 0);
  const auto rows = read_csv(out / "robustness.csv");
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 2; i < rows[1].size(); ++i) CHECK(rows[1][i] == rows[2][i]);

  const auto bad = invoke({"robustness", "--n-list", "20", "--replicates", "4", "--set",
                           "pert_amplitude=3", "--out", scratch("robust_bad").string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("perturbation bound violated") != std::string::npos);
}

TEST_CASE("cli compare and diagnose") {
  const auto out = scratch("compare");
  REQUIRE(invoke({"compare", "--weight", "unit", "--n-list", "10,20", "--replicates", "20", "--out",
                  out.string()})
              .code == 0);
  for (const auto& row : read_csv(out / "contiguity.csv")) {
    if (row[0] != "n") CHECK(std::stod(row[1]) == 0.0);
  }
  CHECK(read_csv(out / "sup_eps.csv").size() == 3);

  const auto diag = scratch("diagnose");
  REQUIRE(invoke({"diagnose", "--n-list", "10,20", "--set", "draws=200", "--set", "x_points=9",
                  "--set", "cov_pairs=5", "--set", "cov_draws=1000", "--out", diag.string()})
              .code == 0);
  CHECK(read_csv(diag / "gap_summary.csv").size() == 5);
  CHECK(read_csv(diag / "gap.csv").size() == 1 + 4 * 9);
  const auto cov = read_csv(diag / "covariance.csv");
  REQUIRE(cov.size() == 6);
  for (std::size_t i = 1; i < cov.size(); ++i) CHECK(std::stod(cov[i][5]) <= std::stod(cov[i][6]));
  CHECK(read_csv(diag / "variance_f.csv").size() == 10);
}
