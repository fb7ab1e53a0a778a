#pragma once

#include <cmath>

#include "wth/params.hpp"
#include "wth/rng.hpp"
#include "wth/scheme.hpp"

// Channel layer: additive-noise observations at the legitimate receiver
// (y1) and eavesdropper (y2), plus the effective per-signal coefficients
// seen at each receiver after the encoder pre-scaling.

namespace wth {

struct ChannelSample {
  double x1 = 0.0, x2 = 0.0;
  double y1 = 0.0, y2 = 0.0;
  double z1 = 0.0, z2 = 0.0;
};

/// y1 = sqrt(P^{a11}) h11 x1 + sqrt(P^{a12}) h12 x2 + z1,
/// y2 = sqrt(P^{a21}) h21 x1 + sqrt(P^{a22}) h22 x2 + z2, z ~ N(0,1).
inline ChannelSample transmit(double x1, double x2, const ChannelParams& c,
                              RngStream& rng, bool zero_noise = false) {
  ChannelSample s;
  s.x1 = x1;
  s.x2 = x2;
  s.z1 = zero_noise ? 0.0 : rng.normal();
  s.z2 = zero_noise ? 0.0 : rng.normal();
  s.y1 = std::sqrt(std::pow(c.p, c.alpha11)) * c.h11 * x1 +
         std::sqrt(std::pow(c.p, c.alpha12)) * c.h12 * x2 + s.z1;
  s.y2 = std::sqrt(std::pow(c.p, c.alpha21)) * c.h21 * x1 +
         std::sqrt(std::pow(c.p, c.alpha22)) * c.h22 * x2 + s.z2;
  return s;
}

/// Effective amplitude multiplying each signal's PAM value in y1 and y2,
/// for the symmetric channel (alpha11 = alpha22 = 1, alpha12 = alpha21 = alpha).
/// In y2 the paired signals (v_c,u_c) and (v_m,u_p) land on the same
/// coefficient; y2_uc/y2_up mirror y2_vc/y2_vm so alignment is exact by
/// construction.
struct RxCoefficients {
  double y1_vc = 0.0, y1_vm = 0.0, y1_vp = 0.0, y1_uc = 0.0, y1_up = 0.0;
  double y2_vc = 0.0, y2_vm = 0.0, y2_vp = 0.0, y2_uc = 0.0, y2_up = 0.0;

  double y1_of(Signal s) const {
    switch (s) {
      case Signal::Vc: return y1_vc;
      case Signal::Vm: return y1_vm;
      case Signal::Vp: return y1_vp;
      case Signal::Uc: return y1_uc;
      default: return y1_up;
    }
  }
};

inline RxCoefficients rx_coefficients(const SchemeParams& sp, const ChannelParams& c) {
  RxCoefficients r;
  const double a = sp.alpha;
  const double g_dir = c.h11 * c.h22;    // v-side product in y1
  const double g_cross = c.h12 * c.h21;  // u-side product in y1
  const double g_eve = c.h21 * c.h22;    // common product in y2
  auto pw = [&](double e) { return std::sqrt(std::pow(c.p, e)); };
  if (sp.has_vc()) {
    r.y1_vc = pw(1.0 - *sp.beta_c) * g_dir;
    r.y1_uc = pw(2.0 * a - 1.0 - *sp.beta_c) * g_cross;
    r.y2_vc = pw(a - *sp.beta_c) * g_eve;
    r.y2_uc = r.y2_vc;
  }
  if (sp.has_vm()) {
    r.y1_vm = pw(1.0 - *sp.beta_m) * g_dir;
    r.y1_up = pw(2.0 * a - 1.0 - *sp.beta_m) * g_cross;
    r.y2_vm = pw(a - *sp.beta_m) * g_eve;
    r.y2_up = r.y2_vm;
  }
  if (sp.has_vp()) {
    r.y1_vp = pw(1.0 - *sp.beta_p) * g_dir;
    r.y2_vp = pw(a - *sp.beta_p) * g_eve;
  }
  return r;
}

}  // namespace wth
