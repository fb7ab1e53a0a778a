#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "wth/channel.hpp"
#include "wth/params.hpp"
#include "wth/scheme.hpp"

// Receiver side. Regimes R1-R3 and R6 peel PAM layers successively; R4 and
// R5 decode the top layers jointly as one integer combination, exploiting
// the minimum distance of the combined constellation. Also hosts the
// minimum-distance search itself and the Monte Carlo outage estimator over
// random channel gains.

namespace wth {

// ---------------------------------------------------------------------------
// successive (layer-peeling) decoding

struct DecodeLayer {
  Signal sig = Signal::Vm;
  double step = 0.0;  // received amplitude per unit index
  long long q_max = 0;
  bool keep = true;  // helper layers are decoded only to be stripped
};

/// Peeling order for the regimes decoded successively. Layers must come out
/// in strictly decreasing step order or the peel is unsound.
inline std::vector<DecodeLayer> successive_layers(const SchemeParams& sp,
                                                  const ConstellationTable& t,
                                                  const ChannelParams& c) {
  const RxCoefficients r = rx_coefficients(sp, c);
  std::vector<DecodeLayer> layers;
  auto add = [&](Signal s, bool keep) {
    const PamSet& pam = *t.of(s);
    layers.push_back({s, r.y1_of(s) * pam.xi, pam.q_max, keep});
  };
  switch (sp.regime) {
    case Regime::R1:
    case Regime::R2:
      add(Signal::Vm, true);
      add(Signal::Vp, true);
      break;
    case Regime::R3:
      add(Signal::Vc, true);
      add(Signal::Uc, false);
      add(Signal::Vm, true);
      add(Signal::Vp, true);
      break;
    case Regime::R6:
      add(Signal::Uc, false);
      add(Signal::Vc, true);
      break;
    default:
      throw precondition_error("successive_layers: regime uses joint decoding");
  }
  for (size_t i = 1; i < layers.size(); ++i) {
    if (!(layers[i].step < layers[i - 1].step)) {
      std::ostringstream os;
      os << "successive_layers: step of " << signal_name(layers[i].sig) << " ("
         << layers[i].step << ") not below step of " << signal_name(layers[i - 1].sig)
         << " (" << layers[i - 1].step << "); increase P";
      throw precondition_error(os.str());
    }
  }
  return layers;
}

/// Round-and-subtract down the layer stack; undecoded signals (e.g. u_p)
/// ride along as bounded noise.
inline SymbolTuple decode_successive(double y1, const std::vector<DecodeLayer>& layers) {
  SymbolTuple est;
  double y = y1;
  for (const DecodeLayer& l : layers) {
    long long q = std::llround(y / l.step);
    q = std::clamp(q, -l.q_max, l.q_max);
    y -= l.step * static_cast<double>(q);
    if (l.keep) est.of(l.sig) = q;
  }
  return est;
}

// ---------------------------------------------------------------------------
// joint decoding (R4, R5)

/// Received signal model y1 = scale * (a0 g0 q0 + a1 g1 q1 + a2 g2 q2)
/// + residual + noise. In R4 the integer slots are (q0, q1, q2) =
/// (v_m, u_c, v_c) and the residual collects v_p and u_p; in R5 they are
/// (q0, q1) = (v_c, u_c) with no third slot and no residual layer.
struct JointContext {
  Regime regime = Regime::R4;
  double scale = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // exact per-index amplitudes in y1
  long long q0_max = 0, q1_max = 0, q2_max = 0;
  // R4 residual stage
  double vp_step = 0.0;
  long long vp_q_max = 0;
  double resid_e_max = 0.0;  // bound on |residual| / sqrt(P^{1-alpha})
};

inline JointContext joint_context(const SchemeParams& sp, const ConstellationTable& t,
                                  const ChannelParams& c) {
  const RxCoefficients r = rx_coefficients(sp, c);
  JointContext jc;
  jc.regime = sp.regime;
  const double a = sp.alpha;
  if (sp.regime == Regime::R4) {
    jc.scale = 2.0 * sp.gamma * std::sqrt(std::pow(c.p, 1.0 - a + sp.epsilon));
    jc.c0 = r.y1_vm * t.vm->xi;
    jc.c1 = r.y1_uc * t.vc->xi;
    jc.c2 = r.y1_vc * t.vc->xi;
    jc.q0_max = t.vm->q_max;
    jc.q1_max = t.vc->q_max;
    jc.q2_max = t.vc->q_max;
    jc.vp_step = r.y1_vp * t.vp->xi;
    jc.vp_q_max = t.vp->q_max;
    jc.resid_e_max = sp.gamma * c.h11 * c.h22 +
                     2.0 * sp.gamma * c.h12 * c.h21 *
                         std::sqrt(std::pow(c.p, -(1.0 - a)));
    if (jc.resid_e_max > 0.6 + 1e-12) {
      std::ostringstream os;
      os << "joint_context: residual interference bound " << jc.resid_e_max
         << " exceeds 3/5";
      throw precondition_error(os.str());
    }
  } else if (sp.regime == Regime::R5) {
    jc.scale = 6.0 * sp.gamma * std::pow(c.p, sp.epsilon / 2.0);
    jc.c0 = r.y1_vc * t.vc->xi;
    jc.c1 = r.y1_uc * t.vc->xi;
    jc.q0_max = t.vc->q_max;
    jc.q1_max = t.vc->q_max;
  } else {
    throw precondition_error("joint_context: regime uses successive decoding");
  }
  return jc;
}

/// Structured nearest-point search. Sweeps the full range of q1 (the
/// cross-link layer); conditioned on q1 the remaining slots are recovered
/// by rounding, with a +-1 window on q2 to absorb rounding interaction.
/// R4 then strips the decoded top layers and rounds off v_p against u_p
/// treated as bounded noise.
inline SymbolTuple decode_joint(double y1, const JointContext& jc) {
  auto clampq = [](long long q, long long qm) { return std::clamp(q, -qm, qm); };
  double best = std::numeric_limits<double>::infinity();
  long long b0 = 0, b1 = 0, b2 = 0;
  for (long long q1 = -jc.q1_max; q1 <= jc.q1_max; ++q1) {
    const double t = y1 - jc.c1 * static_cast<double>(q1);
    if (jc.regime == Regime::R5) {
      long long q0 = clampq(std::llround(t / jc.c0), jc.q0_max);
      double d = std::abs(t - jc.c0 * static_cast<double>(q0));
      if (d < best) { best = d; b0 = q0; b1 = q1; }
      continue;
    }
    const long long r2 = std::llround(t / jc.c2);
    for (long long q2 = r2 - 1; q2 <= r2 + 1; ++q2) {
      const long long q2c = clampq(q2, jc.q2_max);
      const double u = t - jc.c2 * static_cast<double>(q2c);
      long long q0 = clampq(std::llround(u / jc.c0), jc.q0_max);
      double d = std::abs(u - jc.c0 * static_cast<double>(q0));
      if (d < best) { best = d; b0 = q0; b1 = q1; b2 = q2c; }
    }
  }
  SymbolTuple est;
  if (jc.regime == Regime::R5) {
    est.vc = b0;
    return est;
  }
  est.vc = b2;
  est.vm = b0;
  const double resid = y1 - jc.c2 * static_cast<double>(b2) -
                       jc.c1 * static_cast<double>(b1) -
                       jc.c0 * static_cast<double>(b0);
  est.vp = std::clamp(std::llround(resid / jc.vp_step), -jc.vp_q_max, jc.vp_q_max);
  return est;
}

/// Dispatch on regime.
inline SymbolTuple decode_rx1(double y1, const SchemeParams& sp,
                              const ConstellationTable& t, const ChannelParams& c) {
  if (sp.regime == Regime::R4 || sp.regime == Regime::R5)
    return decode_joint(y1, joint_context(sp, t, c));
  return decode_successive(y1, successive_layers(sp, t, c));
}

// ---------------------------------------------------------------------------
// minimum distance of integer combinations

/// Constellation of a0 g0 q0 + a1 g1 q1 + a2 g2 q2 with |q_k| <= q_k_max.
/// A pair context sets q2_max = 0. The a_k are the rounded design
/// amplitudes used in the distance analysis, not the exact transmit ones.
struct SumContext {
  double a0 = 1.0, a1 = 1.0, a2 = 0.0;
  double g0 = 1.0, g1 = 1.0, g2 = 1.0;
  long long q0_max = 0, q1_max = 0, q2_max = 0;
};

/// Three-slot context matching R4: a2 = floor(3 P^{1/4}),
/// a1 = floor(3 P^{(2a-3/2)/2}), a0 = 1, direct gains on slots 0 and 2.
inline SumContext sum_context_triple(double alpha, double epsilon, const ChannelParams& c) {
  if (!(alpha > 0.75 && alpha <= 1.0))
    throw config_error("sum_context_triple: alpha must be in (3/4, 1]");
  SumContext sc;
  sc.a2 = std::floor(3.0 * std::sqrt(std::pow(c.p, 0.5)));
  sc.a1 = std::floor(3.0 * std::sqrt(std::pow(c.p, 2.0 * alpha - 1.5)));
  sc.a0 = 1.0;
  sc.g0 = sc.g2 = c.h11 * c.h22;
  sc.g1 = c.h12 * c.h21;
  sc.q2_max = sc.q1_max =
      static_cast<long long>(std::floor(std::pow(c.p, (alpha - 0.5 - epsilon) / 2.0)));
  sc.q0_max = static_cast<long long>(std::floor(std::pow(c.p, (1.0 - alpha - epsilon) / 2.0)));
  return sc;
}

/// Two-slot context matching R5: a1 = floor(P^{a/4}) on the cross gain,
/// a0 = floor(P^{(2-3a/2)/2}) on the direct gain.
inline SumContext sum_context_pair(double alpha, double epsilon, const ChannelParams& c) {
  if (!(alpha > 1.0 && alpha <= 4.0 / 3.0))
    throw config_error("sum_context_pair: alpha must be in (1, 4/3]");
  SumContext sc;
  sc.a1 = std::floor(std::sqrt(std::pow(c.p, alpha / 2.0)));
  sc.a0 = std::floor(std::sqrt(std::pow(c.p, 2.0 - 1.5 * alpha)));
  sc.g0 = c.h11 * c.h22;
  sc.g1 = c.h12 * c.h21;
  sc.q0_max = sc.q1_max =
      static_cast<long long>(std::floor(std::pow(c.p, (alpha / 2.0 - epsilon) / 2.0)));
  sc.q2_max = 0;
  sc.a2 = 0.0;
  sc.g2 = 0.0;
  return sc;
}

struct MinDistResult {
  double d_min = 0.0;
  long long dq0 = 0, dq1 = 0, dq2 = 0;  // achieving index differences
};

/// Single evaluation point for both searches, so their results are
/// bitwise-identical (operation order matters at the last ulp).
inline double combo_value(const SumContext& sc, long long d0, long long d1, long long d2) {
  return std::abs(sc.a0 * sc.g0 * static_cast<double>(d0) +
                  sc.a1 * sc.g1 * static_cast<double>(d1) +
                  sc.a2 * sc.g2 * static_cast<double>(d2));
}

inline void check_enum_cap(double product, const char* who) {
  if (product > 1e8) {
    std::ostringstream os;
    os << who << ": enumeration size " << product << " exceeds cap 1e8";
    throw precondition_error(os.str());
  }
}

/// Exact minimum over nonzero difference triples, brute force. Oracle for
/// the fast version; refuses anything past the enumeration cap.
inline MinDistResult min_distance_naive(const SumContext& sc) {
  check_enum_cap(static_cast<double>(4 * sc.q2_max + 1) *
                     static_cast<double>(4 * sc.q1_max + 1) *
                     static_cast<double>(4 * sc.q0_max + 1),
                 "min_distance_naive");
  MinDistResult best;
  best.d_min = std::numeric_limits<double>::infinity();
  for (long long d2 = -2 * sc.q2_max; d2 <= 2 * sc.q2_max; ++d2)
    for (long long d1 = -2 * sc.q1_max; d1 <= 2 * sc.q1_max; ++d1)
      for (long long d0 = -2 * sc.q0_max; d0 <= 2 * sc.q0_max; ++d0) {
        if (d0 == 0 && d1 == 0 && d2 == 0) continue;
        double v = combo_value(sc, d0, d1, d2);
        if (v < best.d_min) { best.d_min = v; best.dq0 = d0; best.dq1 = d1; best.dq2 = d2; }
      }
  return best;
}

/// Same minimum, but the innermost slot is resolved by rounding: for fixed
/// (d2, d1) the best d0 is the nearest integer to -(a2 g2 d2 + a1 g1 d1) /
/// (a0 g0), checked with its two neighbours to cover clamping and the
/// excluded all-zero point.
inline MinDistResult min_distance(const SumContext& sc) {
  check_enum_cap(static_cast<double>(4 * sc.q2_max + 1) *
                     static_cast<double>(4 * sc.q1_max + 1),
                 "min_distance");
  MinDistResult best;
  best.d_min = std::numeric_limits<double>::infinity();
  const double w0 = sc.a0 * sc.g0;
  for (long long d2 = -2 * sc.q2_max; d2 <= 2 * sc.q2_max; ++d2)
    for (long long d1 = -2 * sc.q1_max; d1 <= 2 * sc.q1_max; ++d1) {
      const double s = sc.a2 * sc.g2 * static_cast<double>(d2) +
                       sc.a1 * sc.g1 * static_cast<double>(d1);
      const long long r = std::llround(-s / w0);
      for (long long d0 = r - 1; d0 <= r + 1; ++d0) {
        const long long d0c = std::clamp(d0, -2 * sc.q0_max, 2 * sc.q0_max);
        if (d0c == 0 && d1 == 0 && d2 == 0) continue;
        double v = combo_value(sc, d0c, d1, d2);
        if (v < best.d_min) { best.d_min = v; best.dq0 = d0c; best.dq1 = d1; best.dq2 = d2; }
      }
    }
  return best;
}

// ---------------------------------------------------------------------------
// outage over random channel gains

struct OutageEstimate {
  double fraction = 0.0;  // share of gain draws with d_min below delta
  double bound = 0.0;     // analytic ceiling on that share
  bool vacuous = false;   // bound >= 1 says nothing
  int n_samples = 0;
};

enum class SumKind { Triple, Pair };

/// Draws channel gains uniformly from (1, 2] and measures how often the
/// combined constellation's minimum distance falls below delta; the
/// analytic ceiling is 12096 delta P^{-eps/2} for the three-slot sum and
/// 192 delta P^{-eps/2} for the two-slot one.
inline OutageEstimate estimate_outage_fraction(SumKind kind, double alpha, double epsilon,
                                               double p, double delta, int n_samples,
                                               RngStream& rng) {
  if (n_samples < 1) throw config_error("estimate_outage_fraction: n_samples must be >= 1");
  if (!(delta >= 0.0)) throw config_error("estimate_outage_fraction: delta must be >= 0");
  OutageEstimate out;
  out.n_samples = n_samples;
  const double coeff = (kind == SumKind::Triple) ? 12096.0 : 192.0;
  out.bound = coeff * delta * std::pow(p, -epsilon / 2.0);
  out.vacuous = out.bound >= 1.0;
  int hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    ChannelParams c = ChannelParams::symmetric(alpha, p);
    c.h11 = 1.0 + rng.uniform01();
    c.h12 = 1.0 + rng.uniform01();
    c.h21 = 1.0 + rng.uniform01();
    c.h22 = 1.0 + rng.uniform01();
    SumContext sc = (kind == SumKind::Triple) ? sum_context_triple(alpha, epsilon, c)
                                              : sum_context_pair(alpha, epsilon, c);
    if (min_distance(sc).d_min < delta) ++hits;
  }
  out.fraction = static_cast<double>(hits) / static_cast<double>(n_samples);
  return out;
}

}  // namespace wth
