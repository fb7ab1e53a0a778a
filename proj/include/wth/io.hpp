#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wth/errors.hpp"
#include "wth/sim.hpp"

namespace wth {

/// Shortest text that round-trips the double exactly.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    // try to shorten without losing the round trip
    for (int prec = 1; prec < 17; ++prec) {
      char s[64];
      std::snprintf(s, sizeof(s), "%.*g", prec, v);
      if (std::strtod(s, nullptr) == v) return s;
    }
  }
  return buf;
}

/// Comma-separated, LF endings, header first. Cells are written verbatim;
/// callers keep commas out of them.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw config_error("cannot open for writing: " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline const std::vector<std::string>& sim_csv_header() {
  static const std::vector<std::string> h = {
      "alpha",        "P",           "pe",          "H_v_bits",
      "leakage_ub_bits", "rate_lb_bits", "normalized_rate", "gdof_target",
      "regime",       "seed",        "h11",         "h12",
      "h21",          "h22"};
  return h;
}

inline std::vector<std::string> sim_csv_row(const SimReport& r) {
  return {fmt_double(r.alpha),        fmt_double(r.p),
          fmt_double(r.pe),           fmt_double(r.entropy_bits),
          fmt_double(r.leakage_ub_bits), fmt_double(r.rate_lb_bits),
          fmt_double(r.gdof_lb),      fmt_double(r.gdof_target),
          regime_name(r.regime),      std::to_string(r.seed),
          fmt_double(r.h11),          fmt_double(r.h12),
          fmt_double(r.h21),          fmt_double(r.h22)};
}

inline nlohmann::json sim_report_json(const SimReport& r) {
  return {{"alpha", r.alpha},
          {"P", r.p},
          {"regime", regime_name(r.regime)},
          {"epsilon", r.epsilon},
          {"gamma", r.gamma},
          {"n_trials", r.n_trials},
          {"n_errors", r.n_errors},
          {"pe", r.pe},
          {"H_v_bits", r.entropy_bits},
          {"leakage_ub_bits", r.leakage_ub_bits},
          {"rate_lb_bits", r.rate_lb_bits},
          {"normalized_rate", r.gdof_lb},
          {"gdof_target", r.gdof_target},
          {"tx1_power", r.tx1_power},
          {"tx2_power", r.tx2_power},
          {"h", {r.h11, r.h12, r.h21, r.h22}},
          {"joint_d_min", r.joint_d_min},
          {"outage_redraws", r.outage_redraws},
          {"seed", r.seed}};
}

/// Audit dump of the scheme design at one (alpha, epsilon, gamma, P) point.
inline nlohmann::json scheme_json(const SchemeParams& sp, const ConstellationTable& t) {
  nlohmann::json j;
  j["regime"] = regime_name(sp.regime);
  j["alpha"] = sp.alpha;
  j["epsilon"] = sp.epsilon;
  j["gamma"] = sp.gamma;
  auto beta = [](const std::optional<double>& b) {
    return b ? nlohmann::json(*b) : nlohmann::json(nullptr);
  };
  j["beta_c"] = beta(sp.beta_c);
  j["beta_m"] = beta(sp.beta_m);
  j["beta_p"] = beta(sp.beta_p);
  j["lambda_c"] = sp.lambda_c;
  j["lambda_m"] = sp.lambda_m;
  j["lambda_p"] = sp.lambda_p;
  auto pam = [](const std::optional<PamSet>& s) {
    return s ? nlohmann::json{{"xi", s->xi}, {"q_max", s->q_max}}
             : nlohmann::json(nullptr);
  };
  j["pam_vc_uc"] = pam(t.vc);
  j["pam_vm_up"] = pam(t.vm);
  j["pam_vp"] = pam(t.vp);
  return j;
}

}  // namespace wth
