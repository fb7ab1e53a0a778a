// Command-line front end: GDoF curves, finite-SNR converse bounds,
// Monte Carlo simulation and minimum-distance outage studies, all written
// as CSV plus a JSON manifest per run.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wth/bounds.hpp"
#include "wth/decode.hpp"
#include "wth/io.hpp"
#include "wth/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

static constexpr const char* kVersion = "0.1.0";
static constexpr const char* kOutDirEnv = "WTH_OUTPUT_DIR";

namespace {

std::string resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return path;
  if (const char* dir = std::getenv(kOutDirEnv)) return (fs::path(dir) / p).string();
  return path;
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_manifest(const std::string& command, const json& config,
                    std::uint64_t seed, const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["config"] = config;
  m["tool_version"] = kVersion;
  m["seed"] = seed;
  m["timestamp"] = timestamp_utc();
  m["outputs"] = outputs;
  fs::path mpath = fs::path(outputs.front());
  mpath.replace_extension(".manifest.json");
  std::ofstream out(mpath, std::ios::binary);
  if (!out) throw wth::config_error("cannot write manifest: " + mpath.string());
  out << m.dump(2) << '\n';
}

std::uint64_t pick_seed(std::uint64_t requested, bool given) {
  if (given) return requested;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

/// key = value lines, '#' comments. Unknown keys are errors so typos in a
/// sweep script fail loudly.
std::map<std::string, std::string> parse_config_file(const std::string& path,
                                                     const std::vector<std::string>& known) {
  std::ifstream in(path);
  if (!in) throw wth::config_error("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    std::string stripped = strip(line);
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw wth::config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = strip(stripped.substr(0, eq));
    std::string val = strip(stripped.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw wth::config_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

std::vector<double> parse_p_list(const std::string& s) {
  std::vector<double> ps;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    ps.push_back(std::stod(tok));
  }
  if (ps.empty()) throw wth::config_error("empty P list");
  return ps;
}

// ---------------------------------------------------------------------------

int cmd_gdof_curve(double amin, double amax, double step, const std::string& out_path,
                   std::uint64_t seed) {
  if (!(amin >= 0.0 && amax > amin && step > 0.0))
    throw wth::config_error("gdof-curve: need 0 <= alpha-min < alpha-max and step > 0");
  std::string path = resolve_out(out_path);
  wth::CsvWriter csv(path);
  csv.row({"alpha", "d_with_helper", "d_no_helper", "bound1", "bound2", "bound3"});
  long long n = static_cast<long long>(std::floor((amax - amin) / step + 1e-9));
  for (long long i = 0; i <= n; ++i) {
    double a = amin + step * static_cast<double>(i);
    wth::GdofBounds b = wth::gdof_bounds_general(wth::ChannelParams::symmetric(a));
    csv.row({wth::fmt_double(a), wth::fmt_double(wth::gdof_theorem1(a)),
             wth::fmt_double(wth::gdof_no_helper_symmetric(a)),
             wth::fmt_double(b.bound1), wth::fmt_double(b.bound2),
             wth::fmt_double(b.bound3)});
  }
  write_manifest("gdof-curve",
                 {{"alpha_min", amin}, {"alpha_max", amax}, {"step", step}, {"out", path}},
                 seed, {path});
  return 0;
}

int cmd_bounds(const wth::ChannelParams& base, const std::vector<double>& p_list,
               const std::string& out_path, std::uint64_t seed) {
  std::string path = resolve_out(out_path);
  wth::CsvWriter csv(path);
  csv.row({"P", "bound_wt_bits", "bound_half_sum_bits", "bound_third_bits", "min_bits",
           "bound_wt_norm", "bound_half_sum_norm", "bound_third_norm", "min_norm"});
  for (double p : p_list) {
    wth::ChannelParams c = base;
    c.p = p;
    c.validate();
    wth::RateBoundsBits r = wth::rate_upper_finite(c);
    double norm = wth::gdof_normalizer(p);
    auto nrm = [&](double bits) { return norm > 0.0 ? wth::fmt_double(bits / norm) : std::string(); };
    csv.row({wth::fmt_double(p), wth::fmt_double(r.bound_wt),
             wth::fmt_double(r.bound_half_sum), wth::fmt_double(r.bound_third),
             wth::fmt_double(r.min()), nrm(r.bound_wt), nrm(r.bound_half_sum),
             nrm(r.bound_third), nrm(r.min())});
  }
  write_manifest("bounds",
                 {{"alpha11", base.alpha11}, {"alpha12", base.alpha12},
                  {"alpha21", base.alpha21}, {"alpha22", base.alpha22},
                  {"h11", base.h11}, {"h12", base.h12}, {"h21", base.h21},
                  {"h22", base.h22}, {"p_list", p_list}, {"out", path}},
                 seed, {path});
  return 0;
}

int cmd_simulate(const wth::SimConfig& cfg, const std::vector<double>& p_grid,
                 const std::string& out_prefix) {
  std::string csv_path = resolve_out(out_prefix + ".csv");
  std::string json_path = resolve_out(out_prefix + ".json");
  std::vector<wth::SimReport> reports = wth::run_grid(cfg, p_grid);
  {
    wth::CsvWriter csv(csv_path);
    csv.row(wth::sim_csv_header());
    for (const auto& r : reports) csv.row(wth::sim_csv_row(r));
  }
  {
    json j = json::array();
    for (const auto& r : reports) j.push_back(wth::sim_report_json(r));
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw wth::config_error("cannot write: " + json_path);
    out << j.dump(2) << '\n';
  }
  write_manifest("simulate",
                 {{"alpha", cfg.alpha}, {"epsilon", cfg.epsilon}, {"gamma", cfg.gamma},
                  {"p_grid", p_grid}, {"n_trials", cfg.n_trials},
                  {"zero_noise", cfg.zero_noise}, {"out_prefix", out_prefix}},
                 cfg.seed, {csv_path, json_path});
  return 0;
}

int cmd_mindist(const std::string& kase, double alpha, double p, double epsilon,
                double delta, int n_samples, std::uint64_t seed,
                const std::string& out_path, const std::string& detail_path) {
  wth::SumKind kind;
  if (kase == "triple")
    kind = wth::SumKind::Triple;
  else if (kase == "pair")
    kind = wth::SumKind::Pair;
  else
    throw wth::config_error("mindist: case must be 'triple' or 'pair'");
  std::string path = resolve_out(out_path);

  wth::RngStream rng(seed, 0);
  wth::OutageEstimate est;
  if (detail_path.empty()) {
    est = wth::estimate_outage_fraction(kind, alpha, epsilon, p, delta, n_samples, rng);
  } else {
    // re-run the draw loop here so each sample can be logged
    wth::CsvWriter detail(resolve_out(detail_path));
    detail.row({"h11", "h12", "h21", "h22", "d_min"});
    int hits = 0;
    for (int i = 0; i < n_samples; ++i) {
      wth::ChannelParams c = wth::ChannelParams::symmetric(alpha, p);
      c.h11 = 1.0 + rng.uniform01();
      c.h12 = 1.0 + rng.uniform01();
      c.h21 = 1.0 + rng.uniform01();
      c.h22 = 1.0 + rng.uniform01();
      wth::SumContext sc = (kind == wth::SumKind::Triple)
                               ? wth::sum_context_triple(alpha, epsilon, c)
                               : wth::sum_context_pair(alpha, epsilon, c);
      double d = wth::min_distance(sc).d_min;
      if (d < delta) ++hits;
      detail.row({wth::fmt_double(c.h11), wth::fmt_double(c.h12), wth::fmt_double(c.h21),
                  wth::fmt_double(c.h22), wth::fmt_double(d)});
    }
    est.n_samples = n_samples;
    est.fraction = static_cast<double>(hits) / n_samples;
    est.bound = (kind == wth::SumKind::Triple ? 12096.0 : 192.0) * delta *
                std::pow(p, -epsilon / 2.0);
    est.vacuous = est.bound >= 1.0;
  }

  wth::CsvWriter csv(path);
  csv.row({"case", "P", "epsilon", "delta", "n_samples", "fraction", "lemma_bound",
           "vacuous_flag"});
  csv.row({kase, wth::fmt_double(p), wth::fmt_double(epsilon), wth::fmt_double(delta),
           std::to_string(est.n_samples), wth::fmt_double(est.fraction),
           wth::fmt_double(est.bound), est.vacuous ? "1" : "0"});
  write_manifest("mindist",
                 {{"case", kase}, {"alpha", alpha}, {"P", p}, {"epsilon", epsilon},
                  {"delta", delta}, {"n_samples", n_samples}, {"out", path},
                  {"detail", detail_path}},
                 seed, {path});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure-GDoF toolkit: curves, converse bounds, Monte Carlo trials"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // gdof-curve
  auto* curve = app.add_subcommand("gdof-curve", "Tabulate GDoF curves and bound terms");
  double amin = 0.0, amax = 2.5, astep = 0.01;
  std::string curve_out = "gdof_curve.csv";
  curve->add_option("--alpha-min", amin);
  curve->add_option("--alpha-max", amax);
  curve->add_option("--step", astep);
  curve->add_option("--out", curve_out);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Finite-SNR secure-rate upper bounds");
  double b_alpha = 1.0;
  wth::ChannelParams base;
  bool asym = false;
  std::string p_list_str = "1e2,1e4,1e6,1e8";
  std::string bounds_out = "bounds.csv";
  bounds->add_option("--alpha", b_alpha, "symmetric cross-link exponent");
  auto* o11 = bounds->add_option("--alpha11", base.alpha11);
  auto* o12 = bounds->add_option("--alpha12", base.alpha12);
  auto* o21 = bounds->add_option("--alpha21", base.alpha21);
  auto* o22 = bounds->add_option("--alpha22", base.alpha22);
  bounds->add_option("--h11", base.h11);
  bounds->add_option("--h12", base.h12);
  bounds->add_option("--h21", base.h21);
  bounds->add_option("--h22", base.h22);
  bounds->add_option("--p-list", p_list_str, "comma-separated SNR bases");
  bounds->add_option("--out", bounds_out);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo achievable-rate trials");
  std::string sim_config;
  double s_alpha = 0.25, s_epsilon = -1.0, s_gamma = 0.05;
  std::string s_p_grid = "1e4,1e6,1e8";
  long long s_trials = 10000;
  std::uint64_t s_seed = 0;
  bool s_zero_noise = false;
  std::string sim_out = "sim";
  sim->add_option("--config", sim_config, "key = value file; flags override");
  auto* f_alpha = sim->add_option("--alpha", s_alpha);
  auto* f_eps = sim->add_option("--epsilon", s_epsilon);
  auto* f_gamma = sim->add_option("--gamma", s_gamma);
  auto* f_grid = sim->add_option("--p-grid", s_p_grid);
  auto* f_trials = sim->add_option("--trials", s_trials);
  auto* f_seed = sim->add_option("--seed", s_seed);
  auto* f_zero = sim->add_flag("--zero-noise", s_zero_noise);
  auto* f_out = sim->add_option("--out", sim_out, "output path prefix");

  // mindist
  auto* md = app.add_subcommand("mindist", "Minimum-distance outage sampling");
  std::string md_case = "pair";
  double md_alpha = -1.0, md_p = 1e10, md_eps = 0.4, md_delta = 0.01;
  int md_n = 10000;
  std::uint64_t md_seed = 0;
  std::string md_out = "mindist.csv", md_detail;
  md->add_option("--case", md_case, "triple | pair");
  md->add_option("--alpha", md_alpha);
  md->add_option("--p", md_p);
  md->add_option("--epsilon", md_eps);
  md->add_option("--delta", md_delta);
  md->add_option("--n-samples", md_n);
  auto* md_fseed = md->add_option("--seed", md_seed);
  md->add_option("--out", md_out);
  md->add_option("--detail", md_detail, "per-sample (h, d_min) CSV");

  int threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = default)");

  try {
    app.parse(argc, argv);

    if (curve->parsed()) {
      return cmd_gdof_curve(amin, amax, astep, curve_out, pick_seed(0, false));
    }
    if (bounds->parsed()) {
      if (o11->count() || o12->count() || o21->count() || o22->count()) asym = true;
      if (!asym) base = wth::ChannelParams::symmetric(b_alpha, 1.0, base.h11, base.h12,
                                                      base.h21, base.h22);
      return cmd_bounds(base, parse_p_list(p_list_str), bounds_out, pick_seed(0, false));
    }
    if (sim->parsed()) {
      if (!sim_config.empty()) {
        auto kv = parse_config_file(sim_config, {"alpha", "epsilon", "gamma", "p_grid",
                                                 "trials", "seed", "zero_noise", "out"});
        auto take = [&](const char* key, const CLI::Option* flag, auto setter) {
          if (kv.count(key) && !flag->count()) setter(kv.at(key));
        };
        take("alpha", f_alpha, [&](const std::string& v) { s_alpha = std::stod(v); });
        take("epsilon", f_eps, [&](const std::string& v) { s_epsilon = std::stod(v); });
        take("gamma", f_gamma, [&](const std::string& v) { s_gamma = std::stod(v); });
        take("p_grid", f_grid, [&](const std::string& v) { s_p_grid = v; });
        take("trials", f_trials, [&](const std::string& v) { s_trials = std::stoll(v); });
        take("seed", f_seed, [&](const std::string& v) {
          s_seed = std::stoull(v);
          // mark as explicitly given
          f_seed->add_result(v);
        });
        take("zero_noise", f_zero, [&](const std::string& v) { s_zero_noise = v == "1" || v == "true"; });
        take("out", f_out, [&](const std::string& v) { sim_out = v; });
      }
      wth::SimConfig cfg;
      cfg.alpha = s_alpha;
      cfg.epsilon = s_epsilon > 0.0 ? s_epsilon : wth::default_epsilon(s_alpha);
      cfg.gamma = s_gamma;
      cfg.n_trials = s_trials;
      cfg.seed = pick_seed(s_seed, f_seed->count() > 0);
      cfg.zero_noise = s_zero_noise;
      return cmd_simulate(cfg, parse_p_list(s_p_grid), sim_out);
    }
    if (md->parsed()) {
      if (md_alpha < 0.0) md_alpha = md_case == "triple" ? 0.9 : 1.2;
      return cmd_mindist(md_case, md_alpha, md_p, md_eps, md_delta, md_n,
                         pick_seed(md_seed, md_fseed->count() > 0), md_out, md_detail);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const wth::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const wth::precondition_error& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
