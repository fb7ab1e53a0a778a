#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "wth/params.hpp"
#include "wth/rng.hpp"

// Cooperative-jamming scheme for the symmetric channel: regime
// classification, per-regime power/rate exponents, PAM constellations and
// the two transmit encoders. The transmitter superposes a common, a middle
// and a private signal; the helper superposes a common and a private
// jamming signal, each pair arriving aligned at the eavesdropper.

namespace wth {

enum class Regime { R1, R2, R3, R4, R5, R6, R7 };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::R1: return "R1";
    case Regime::R2: return "R2";
    case Regime::R3: return "R3";
    case Regime::R4: return "R4";
    case Regime::R5: return "R5";
    case Regime::R6: return "R6";
    default: return "R7";
  }
}

/// Regime intervals tile [0, inf); a boundary alpha goes to the lower-index
/// regime (the curve is continuous, so either choice is GDoF-equivalent).
inline Regime regime_of(double alpha) {
  if (!(alpha >= 0.0)) throw config_error("regime_of: alpha must be >= 0");
  if (alpha <= 0.5) return Regime::R1;
  if (alpha <= 0.75) return Regime::R2;
  if (alpha <= 5.0 / 6.0) return Regime::R3;
  if (alpha <= 1.0) return Regime::R4;
  if (alpha <= 4.0 / 3.0) return Regime::R5;
  if (alpha <= 2.0) return Regime::R6;
  return Regime::R7;
}

enum class Signal { Vc, Vm, Vp, Uc, Up };
inline const char* signal_name(Signal s) {
  switch (s) {
    case Signal::Vc: return "v_c";
    case Signal::Vm: return "v_m";
    case Signal::Vp: return "v_p";
    case Signal::Uc: return "u_c";
    default: return "u_p";
  }
}

/// Per-regime design exponents. A disengaged signal has no beta (the
/// power exponent is "infinite": the signal is not sent) and rate
/// exponent lambda = 0.
struct SchemeParams {
  Regime regime = Regime::R1;
  double alpha = 0.0;
  double epsilon = 0.0;
  double gamma = 0.05;
  std::optional<double> beta_c, beta_m, beta_p;
  double lambda_c = 0.0, lambda_m = 0.0, lambda_p = 0.0;

  bool has_vc() const { return beta_c.has_value(); }
  bool has_vm() const { return beta_m.has_value(); }
  bool has_vp() const { return beta_p.has_value(); }
  bool has_uc() const { return has_vc(); }  // aligned pair (v_c, u_c)
  bool has_up() const { return has_vm(); }  // aligned pair (v_m, u_p)
};

/// Exponent table for the scheme, with the rate exponents shrunk by
/// epsilon. Rejects (alpha, epsilon) pairs that would drive an active
/// lambda negative.
inline SchemeParams scheme_params(double alpha, double epsilon, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 2.0))
    throw config_error("scheme_params: alpha must be in [0, 2]");
  if (!(epsilon > 0.0)) throw config_error("scheme_params: epsilon must be > 0");
  if (!(gamma > 0.0 && gamma <= 0.05))
    throw config_error("scheme_params: gamma must be in (0, 1/20]");

  SchemeParams sp;
  sp.regime = regime_of(alpha);
  sp.alpha = alpha;
  sp.epsilon = epsilon;
  sp.gamma = gamma;
  switch (sp.regime) {
    case Regime::R1:
      sp.beta_m = 0.0;
      sp.beta_p = alpha;
      sp.lambda_m = alpha - epsilon;
      sp.lambda_p = 1.0 - alpha - epsilon;
      break;
    case Regime::R2:
      sp.beta_m = 2.0 * alpha - 1.0;
      sp.beta_p = alpha;
      sp.lambda_m = 1.0 - alpha - epsilon;
      sp.lambda_p = 1.0 - alpha - epsilon;
      break;
    case Regime::R3:
      sp.beta_c = 0.0;
      sp.beta_m = 2.0 * alpha - 1.0;
      sp.beta_p = alpha;
      sp.lambda_c = 4.0 * alpha - 3.0 - epsilon;
      sp.lambda_m = 1.0 - alpha - epsilon;
      sp.lambda_p = 1.0 - alpha - epsilon;
      break;
    case Regime::R4:
      sp.beta_c = 0.0;
      sp.beta_m = 2.0 * alpha - 1.0;
      sp.beta_p = alpha;
      sp.lambda_c = alpha - 0.5 - epsilon;
      sp.lambda_m = 1.0 - alpha - epsilon;
      sp.lambda_p = 1.0 - alpha - epsilon;
      break;
    case Regime::R5:
      sp.beta_c = alpha - 1.0;
      sp.lambda_c = alpha / 2.0 - epsilon;
      break;
    case Regime::R6:
      sp.beta_c = alpha - 1.0;
      sp.lambda_c = 2.0 - alpha - epsilon;
      break;
    default:
      throw config_error("scheme_params: no scheme beyond alpha = 2");
  }

  auto check = [&](bool active, double lambda, const char* name) {
    if (active && lambda < 0.0) {
      std::ostringstream os;
      os << "scheme_params: lambda_" << name << " = " << lambda
         << " < 0 at alpha = " << alpha << " (epsilon = " << epsilon
         << " too large for this alpha)";
      throw config_error(os.str());
    }
  };
  check(sp.has_vc(), sp.lambda_c, "c");
  check(sp.has_vm(), sp.lambda_m, "m");
  check(sp.has_vp(), sp.lambda_p, "p");
  return sp;
}

/// Largest epsilon (capped at `cap`) keeping every active lambda positive,
/// halved against the regime's slack.
inline double default_epsilon(double alpha, double cap = 0.05) {
  Regime r = regime_of(alpha);
  double slack;
  switch (r) {
    case Regime::R1: slack = alpha; break;
    case Regime::R2: slack = 1.0 - alpha; break;
    case Regime::R3: slack = std::min(4.0 * alpha - 3.0, 1.0 - alpha); break;
    case Regime::R4: slack = std::min(alpha - 0.5, 1.0 - alpha); break;
    case Regime::R5: slack = alpha / 2.0; break;
    case Regime::R6: slack = 2.0 - alpha; break;
    default: slack = 0.0; break;
  }
  return std::min(cap, slack / 2.0);
}

/// Symmetric PAM set {xi * a : a integer, |a| <= q_max}.
struct PamSet {
  double xi = 1.0;
  long long q_max = 0;

  double value(long long index) const { return xi * static_cast<double>(index); }
  double max_magnitude() const { return xi * static_cast<double>(q_max); }
  long long cardinality() const { return 2 * q_max + 1; }
  /// Second moment under a uniform symbol: xi^2 * Q(Q+1)/3.
  double mean_square() const {
    double q = static_cast<double>(q_max);
    return xi * xi * q * (q + 1.0) / 3.0;
  }
};

struct ConstellationTable {
  std::optional<PamSet> vc, vm, vp;  // u_c shares vc; u_p shares vm

  const std::optional<PamSet>& of(Signal s) const {
    switch (s) {
      case Signal::Vc:
      case Signal::Uc: return vc;
      case Signal::Vm:
      case Signal::Up: return vm;
      default: return vp;
    }
  }
};

/// PAM sets per signal: the pair (v_c, u_c) uses step 6*gamma/Q, the pair
/// (v_m, u_p) step 2*gamma/Q and v_p step gamma/Q, with Q = floor(P^{lambda/2}).
inline ConstellationTable build_constellations(const SchemeParams& sp, double p) {
  if (!(p >= 1.0)) throw config_error("build_constellations: P must be >= 1");
  auto make = [&](double lambda, double num, const char* name) {
    double q_real = std::pow(p, lambda / 2.0);
    auto q = static_cast<long long>(std::floor(q_real));
    if (q < 1) {
      std::ostringstream os;
      os << "build_constellations: signal " << name << " gets q_max = " << q
         << " < 1 at P = " << p << " (P too small for this epsilon)";
      throw precondition_error(os.str());
    }
    return PamSet{num / static_cast<double>(q), q};
  };
  ConstellationTable t;
  if (sp.has_vc()) t.vc = make(sp.lambda_c, 6.0 * sp.gamma, "v_c");
  if (sp.has_vm()) t.vm = make(sp.lambda_m, 2.0 * sp.gamma, "v_m");
  if (sp.has_vp()) t.vp = make(sp.lambda_p, sp.gamma, "v_p");
  return t;
}

/// Integer PAM indices of the five symbols; absent signals carry no value.
struct SymbolTuple {
  std::optional<long long> vc, vm, vp, uc, up;

  std::optional<long long>& of(Signal s) {
    switch (s) {
      case Signal::Vc: return vc;
      case Signal::Vm: return vm;
      case Signal::Vp: return vp;
      case Signal::Uc: return uc;
      default: return up;
    }
  }
  const std::optional<long long>& of(Signal s) const {
    return const_cast<SymbolTuple&>(*this).of(s);
  }

  bool tx1_equal(const SymbolTuple& other) const {
    return vc == other.vc && vm == other.vm && vp == other.vp;
  }
};

inline SymbolTuple draw_symbols(const SchemeParams& sp, const ConstellationTable& t,
                                RngStream& rng) {
  SymbolTuple s;
  if (sp.has_vc()) s.vc = rng.uniform_int(-t.vc->q_max, t.vc->q_max);
  if (sp.has_vm()) s.vm = rng.uniform_int(-t.vm->q_max, t.vm->q_max);
  if (sp.has_vp()) s.vp = rng.uniform_int(-t.vp->q_max, t.vp->q_max);
  if (sp.has_uc()) s.uc = rng.uniform_int(-t.vc->q_max, t.vc->q_max);
  if (sp.has_up()) s.up = rng.uniform_int(-t.vm->q_max, t.vm->q_max);
  return s;
}

/// x1 = sum over present signals of sqrt(P^{-beta}) h22 * (PAM value).
inline double encode_tx1(const SymbolTuple& sym, const SchemeParams& sp,
                         const ConstellationTable& t, const ChannelParams& c) {
  double x1 = 0.0;
  if (sp.has_vc()) x1 += std::sqrt(std::pow(c.p, -*sp.beta_c)) * c.h22 * t.vc->value(*sym.vc);
  if (sp.has_vm()) x1 += std::sqrt(std::pow(c.p, -*sp.beta_m)) * c.h22 * t.vm->value(*sym.vm);
  if (sp.has_vp()) x1 += std::sqrt(std::pow(c.p, -*sp.beta_p)) * c.h22 * t.vp->value(*sym.vp);
  return x1;
}

/// x2 = sqrt(P^{alpha-1-beta_c}) h21 u_c + sqrt(P^{alpha-1-beta_m}) h21 u_p.
inline double encode_tx2(const SymbolTuple& sym, const SchemeParams& sp,
                         const ConstellationTable& t, const ChannelParams& c) {
  double x2 = 0.0;
  if (sp.has_uc())
    x2 += std::sqrt(std::pow(c.p, sp.alpha - 1.0 - *sp.beta_c)) * c.h21 * t.vc->value(*sym.uc);
  if (sp.has_up())
    x2 += std::sqrt(std::pow(c.p, sp.alpha - 1.0 - *sp.beta_m)) * c.h21 * t.vm->value(*sym.up);
  return x2;
}

/// Analytic E|x1|^2 under independent uniform symbols.
inline double tx1_mean_power(const SchemeParams& sp, const ConstellationTable& t,
                             const ChannelParams& c) {
  double e = 0.0;
  const double h22s = c.h22 * c.h22;
  if (sp.has_vc()) e += std::pow(c.p, -*sp.beta_c) * h22s * t.vc->mean_square();
  if (sp.has_vm()) e += std::pow(c.p, -*sp.beta_m) * h22s * t.vm->mean_square();
  if (sp.has_vp()) e += std::pow(c.p, -*sp.beta_p) * h22s * t.vp->mean_square();
  return e;
}

/// Analytic E|x2|^2 under independent uniform symbols.
inline double tx2_mean_power(const SchemeParams& sp, const ConstellationTable& t,
                             const ChannelParams& c) {
  double e = 0.0;
  const double h21s = c.h21 * c.h21;
  if (sp.has_uc()) e += std::pow(c.p, sp.alpha - 1.0 - *sp.beta_c) * h21s * t.vc->mean_square();
  if (sp.has_up()) e += std::pow(c.p, sp.alpha - 1.0 - *sp.beta_m) * h21s * t.vm->mean_square();
  return e;
}

/// H(v) in bits: the composite codeword symbol v determines (v_c, v_m, v_p)
/// and vice versa, so its entropy is the sum of the per-signal log
/// cardinalities.
inline double entropy_budget(const SchemeParams& sp, const ConstellationTable& t) {
  double h = 0.0;
  if (sp.has_vc()) h += std::log2(static_cast<double>(t.vc->cardinality()));
  if (sp.has_vm()) h += std::log2(static_cast<double>(t.vm->cardinality()));
  if (sp.has_vp()) h += std::log2(static_cast<double>(t.vp->cardinality()));
  return h;
}

/// The composite transmitted symbol v = sum sqrt(P^{-beta}) * value; used by
/// tests for the injectivity of the symbol-tuple -> v map.
inline double composite_v(const SymbolTuple& sym, const SchemeParams& sp,
                          const ConstellationTable& t, double p) {
  double v = 0.0;
  if (sp.has_vc()) v += std::sqrt(std::pow(p, -*sp.beta_c)) * t.vc->value(*sym.vc);
  if (sp.has_vm()) v += std::sqrt(std::pow(p, -*sp.beta_m)) * t.vm->value(*sym.vm);
  if (sp.has_vp()) v += std::sqrt(std::pow(p, -*sp.beta_p)) * t.vp->value(*sym.vp);
  return v;
}

}  // namespace wth
