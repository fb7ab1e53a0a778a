#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wth/io.hpp"
#include "wth/sim.hpp"

using namespace wth;
using Catch::Approx;

TEST_CASE("secrecy penalty per regime") {
  auto leak = [](double a) {
    return leakage_penalty_ub(scheme_params(a, default_epsilon(a), 0.05));
  };
  const double two_sqrt17 = std::log2(2.0 * std::sqrt(17.0));
  CHECK(leak(0.3) == Approx(two_sqrt17).epsilon(1e-15));  // 1 + half log2 17
  CHECK(leak(0.6) == Approx(two_sqrt17).epsilon(1e-15));
  CHECK(leak(0.8) == Approx(1.0 + two_sqrt17).epsilon(1e-15));
  CHECK(leak(0.9) == Approx(1.0 + two_sqrt17).epsilon(1e-15));
  CHECK(leak(1.2) == 1.0);
  CHECK(leak(1.6) == 1.0);
  CHECK(leakage_penalty_ub(SchemeParams{}) == 0.0);  // nothing transmitted
}

TEST_CASE("zero-noise single trial hits the rate identity") {
  for (double a : {0.25, 0.6, 1.6}) {
    SimConfig cfg;
    cfg.alpha = a;
    cfg.epsilon = default_epsilon(a);
    cfg.p = 1e6;
    cfg.n_trials = 1;
    cfg.seed = 9;
    cfg.zero_noise = true;
    SimReport r = run_trials(cfg);
    CHECK(r.pe == 0.0);
    CHECK(r.rate_lb_bits ==
          Approx(r.entropy_bits - 1.0 - r.leakage_ub_bits).margin(1e-12));
    CHECK(r.rate_lb_bits <= r.entropy_bits);
  }
}

TEST_CASE("reports are reproducible and seed-sensitive") {
  SimConfig cfg;
  cfg.alpha = 0.25;
  cfg.p = 1e4;
  cfg.n_trials = 400;
  cfg.seed = 31;
  SimReport a = run_trials(cfg);
  SimReport b = run_trials(cfg);
  CHECK(a.pe == b.pe);
  CHECK(a.rate_lb_bits == b.rate_lb_bits);
  cfg.seed = 32;
  SimReport d = run_trials(cfg);
  CHECK(a.h11 == d.h11);  // fixed gains for successive regimes
}

TEST_CASE("no scheme past alpha 2") {
  SimConfig cfg;
  cfg.alpha = 2.5;
  SimReport r = run_trials(cfg);
  CHECK(r.regime == Regime::R7);
  CHECK(r.rate_lb_bits == 0.0);
  CHECK(r.gdof_target == 0.0);
  CHECK(r.n_trials == 0);
}

TEST_CASE("joint regimes draw gains clearing the distance floor") {
  SimConfig cfg;
  cfg.alpha = 1.2;
  cfg.epsilon = 0.1;
  cfg.p = 1e6;
  cfg.n_trials = 50;
  cfg.seed = 4;
  SimReport r = run_trials(cfg);
  CHECK(r.joint_d_min >= cfg.outage_delta);
  CHECK(r.h11 > 1.0);
  CHECK(r.h11 <= 2.0);
}

TEST_CASE("grid runner orders and validates") {
  SimConfig cfg;
  cfg.alpha = 0.25;
  cfg.n_trials = 10;
  cfg.zero_noise = true;
  auto reports = run_grid(cfg, {1e4, 1e6});
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].p == 1e4);
  CHECK(reports[1].p == 1e6);
  CHECK_THROWS_AS(run_grid(cfg, {}), config_error);
  CHECK_THROWS_AS(run_grid(cfg, {1e6, 1e4}), config_error);
}

TEST_CASE("achievable rate never beats the converse at scale") {
  SimConfig cfg;
  cfg.alpha = 0.25;
  cfg.p = 1e8;
  cfg.n_trials = 2000;
  cfg.seed = 1;
  SimReport r = run_trials(cfg);
  CHECK(r.gdof_lb <= r.gdof_target + 0.05);
}

TEST_CASE("plug-in MI: leakage blows up without jamming, vanishes under independence") {
  MiConfig cfg;
  cfg.alpha = 0.3;
  cfg.epsilon = 0.05;
  cfg.p = 100.0;
  cfg.n_samples = 40000;
  cfg.seed = 17;

  MiConfig open = cfg;
  open.disable_jamming = true;
  open.zero_noise = true;
  open.bin_width = 1e-4;
  MiEstimate leaky = mi_plugin_estimate(open);
  CHECK(leaky.mi_bits == Approx(leaky.entropy_v_bits).margin(0.05));

  MiConfig indep = cfg;
  indep.independent_y2 = true;
  MiEstimate none = mi_plugin_estimate(indep);
  CHECK(none.mi_mm_bits < 0.1);
  CHECK(none.mi_bits < 0.5);

  MiEstimate normal = mi_plugin_estimate(cfg);
  CHECK(normal.mi_bits <=
        leakage_penalty_ub(scheme_params(cfg.alpha, cfg.epsilon, cfg.gamma)) + 0.5);
}

TEST_CASE("plug-in MI guards its sample budget") {
  MiConfig cfg;
  cfg.alpha = 0.3;
  cfg.p = 100.0;
  cfg.n_samples = 50;
  CHECK_THROWS_AS(mi_plugin_estimate(cfg), precondition_error);
  cfg.p = 1e8;
  cfg.n_samples = 1000000;
  CHECK_THROWS_AS(mi_plugin_estimate(cfg), precondition_error);  // support too big
}

TEST_CASE("CSV and JSON serialization") {
  SimConfig cfg;
  cfg.alpha = 0.25;
  cfg.n_trials = 5;
  cfg.p = 1e4;
  cfg.zero_noise = true;
  SimReport r = run_trials(cfg);
  auto row = sim_csv_row(r);
  REQUIRE(row.size() == sim_csv_header().size());
  CHECK(row[8] == "R1");
  auto j = sim_report_json(r);
  CHECK(j["regime"] == "R1");
  CHECK(j["pe"] == 0.0);

  CHECK(fmt_double(0.25) == "0.25");
  CHECK(fmt_double(1e8) == "1e+08");
  double v = 0.1 + 0.2;
  CHECK(std::strtod(fmt_double(v).c_str(), nullptr) == v);
}

TEST_CASE("scheme audit dump") {
  SchemeParams sp = scheme_params(0.9, 0.05, 0.05);
  ConstellationTable t = build_constellations(sp, 1e4);
  auto j = scheme_json(sp, t);
  CHECK(j["regime"] == "R4");
  CHECK(j["beta_c"] == 0.0);
  CHECK(j["lambda_c"] == Approx(0.35));
  CHECK(j["pam_vp"]["q_max"].get<long long>() >= 1);
}
