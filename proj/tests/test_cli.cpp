#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("WTH_CLI");
  REQUIRE(p != nullptr);
  return p;
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "wth_cli_test";
  fs::create_directories(d);
  return d;
}

int run(const std::string& args) {
  int rc = std::system((cli() + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string l;
  while (std::getline(in, l)) lines.push_back(l);
  return lines;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

TEST_CASE("gdof-curve CSV schema and fixed rows") {
  fs::path out = scratch() / "curve.csv";
  REQUIRE(run("gdof-curve --alpha-min 0 --alpha-max 2.5 --step 0.01 --out " +
              out.string()) == 0);
  auto lines = read_lines(out);
  REQUIRE(lines.size() == 252);  // header + 251 grid points
  CHECK(lines[0] == "alpha,d_with_helper,d_no_helper,bound1,bound2,bound3");
  auto row0 = split(lines[1], ',');
  CHECK(row0[0] == "0");
  CHECK(row0[1] == "1");
  CHECK(row0[2] == "1");
  auto row_last = split(lines[251], ',');
  CHECK(std::stod(row_last[0]) == Catch::Approx(2.5));
  CHECK(row_last[1] == "0");
  // alpha = 1.0 sits at index 100
  auto row_mid = split(lines[101], ',');
  CHECK(std::stod(row_mid[1]) == Catch::Approx(0.5));
  CHECK(fs::exists(scratch() / "curve.manifest.json"));
}

TEST_CASE("bounds CSV: normalized columns empty at P = 1") {
  fs::path out = scratch() / "bounds.csv";
  REQUIRE(run("bounds --alpha 1.0 --p-list 1,1e2,1e4,1e6,1e8 --out " + out.string()) ==
          0);
  auto lines = read_lines(out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] ==
        "P,bound_wt_bits,bound_half_sum_bits,bound_third_bits,min_bits,"
        "bound_wt_norm,bound_half_sum_norm,bound_third_norm,min_norm");
  auto p1 = split(lines[1], ',');
  CHECK(p1[0] == "1");
  CHECK(lines[1].back() == ',');  // trailing empty normalized cell
  // normalized min decreases toward the GDoF value 0.5
  double prev = 1e18;
  for (int i = 2; i <= 5; ++i) {
    auto cells = split(lines[i], ',');
    double v = std::stod(cells[8]);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev > 0.5);

  CHECK(run("bounds --alpha11 1 --alpha12 0.5 --alpha21 0.7 --alpha22 1 --out " +
            (scratch() / "basym.csv").string()) == 0);
}

TEST_CASE("simulate: determinism, zero-noise, config files") {
  fs::path d = scratch();
  std::string base = "simulate --alpha 0.25 --p-grid 1e4 --trials 50 --seed 7 ";
  REQUIRE(run(base + "--out " + (d / "s1").string()) == 0);
  REQUIRE(run(base + "--out " + (d / "s2").string()) == 0);
  CHECK(read_all(d / "s1.csv") == read_all(d / "s2.csv"));
  auto lines = read_lines(d / "s1.csv");
  CHECK(lines[0] ==
        "alpha,P,pe,H_v_bits,leakage_ub_bits,rate_lb_bits,normalized_rate,"
        "gdof_target,regime,seed,h11,h12,h21,h22");
  REQUIRE(lines.size() == 2);

  REQUIRE(run("simulate --alpha 0.25 --p-grid 1e4 --trials 20 --seed 7 --zero-noise "
              "--out " + (d / "sz").string()) == 0);
  auto zl = read_lines(d / "sz.csv");
  CHECK(split(zl[1], ',')[2] == "0");  // pe column

  std::ofstream cfgf(d / "run.cfg");
  cfgf << "alpha = 0.25\n# comment\np_grid = 1e4\ntrials = 20\nseed = 9\nout = "
       << (d / "sc").string() << "\nzero_noise = true\n";
  cfgf.close();
  REQUIRE(run("simulate --config " + (d / "run.cfg").string()) == 0);
  CHECK(fs::exists(d / "sc.csv"));
  CHECK(fs::exists(d / "sc.json"));
  CHECK(fs::exists(d / "sc.manifest.json"));

  std::ofstream bad(d / "bad.cfg");
  bad << "alfa = 0.25\n";
  bad.close();
  CHECK(run("simulate --config " + (d / "bad.cfg").string()) == 2);
}

TEST_CASE("exit codes") {
  fs::path d = scratch();
  CHECK(run("gdof-curve --alpha-min 2 --alpha-max 1 --out " + (d / "x.csv").string()) ==
        2);
  CHECK(run("nonsense-subcommand") == 2);
  // lambda goes negative: config error
  CHECK(run("simulate --alpha 1.0 --epsilon 0.05 --p-grid 1e4 --trials 1 --seed 1 "
            "--out " + (d / "neg").string()) == 2);
  // enumeration cap blown in the minimum-distance search: precondition failure
  CHECK(run("mindist --case triple --alpha 0.9 --p 1e18 --epsilon 0.01 --delta 0.01 "
            "--n-samples 1 --seed 1 --out " + (d / "cap.csv").string()) == 3);
}

TEST_CASE("mindist outputs and the zero-delta row") {
  fs::path d = scratch();
  fs::path out = d / "md.csv";
  REQUIRE(run("mindist --case pair --p 1e10 --epsilon 0.4 --delta 0.01 --n-samples 200 "
              "--seed 3 --out " + out.string() + " --detail " +
              (d / "md_detail.csv").string()) == 0);
  auto lines = read_lines(out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "case,P,epsilon,delta,n_samples,fraction,lemma_bound,vacuous_flag");
  auto cells = split(lines[1], ',');
  CHECK(cells[0] == "pair");
  CHECK(std::stod(cells[6]) == Catch::Approx(0.0192));
  CHECK(cells[7] == "0");
  auto detail = read_lines(d / "md_detail.csv");
  CHECK(detail.size() == 201);
  CHECK(detail[0] == "h11,h12,h21,h22,d_min");

  REQUIRE(run("mindist --case pair --p 1e10 --epsilon 0.4 --delta 0 --n-samples 50 "
              "--seed 3 --out " + (d / "md0.csv").string()) == 0);
  CHECK(split(read_lines(d / "md0.csv")[1], ',')[5] == "0");

  CHECK(run("mindist --case nonsense --out " + (d / "mdx.csv").string()) == 2);
}

TEST_CASE("default output directory env var") {
  fs::path d = scratch() / "envdir";
  fs::create_directories(d);
  std::string cmd = "WTH_OUTPUT_DIR=" + d.string() + " " + cli() +
                    " gdof-curve --alpha-min 0 --alpha-max 1 --step 0.5 --out env.csv "
                    ">/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(d / "env.csv"));
}
