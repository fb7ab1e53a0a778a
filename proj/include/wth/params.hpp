#pragma once

#include <cmath>
#include <string>

#include "wth/errors.hpp"

namespace wth {

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

/// Link exponents, fading coefficients and SNR base of the two-receiver
/// channel  y_k = sqrt(P^{a_k1}) h_k1 x_1 + sqrt(P^{a_k2}) h_k2 x_2 + z_k.
struct ChannelParams {
  double alpha11 = 1.0;
  double alpha12 = 0.0;
  double alpha21 = 0.0;
  double alpha22 = 1.0;
  double h11 = 1.5;
  double h12 = 1.5;
  double h21 = 1.5;
  double h22 = 1.5;
  double p = 1.0;

  void validate() const {
    auto bad = [](double v) { return !std::isfinite(v); };
    if (bad(alpha11) || bad(alpha12) || bad(alpha21) || bad(alpha22) ||
        alpha11 < 0 || alpha12 < 0 || alpha21 < 0 || alpha22 < 0)
      throw config_error("channel: all alpha exponents must be finite and >= 0");
    for (double h : {h11, h12, h21, h22})
      if (bad(h) || h <= 1.0 || h > 2.0)
        throw config_error("channel: fading coefficients must lie in (1, 2]");
    if (bad(p) || p < 1.0) throw config_error("channel: SNR base P must be >= 1");
  }

  bool is_symmetric() const {
    return alpha11 == 1.0 && alpha22 == 1.0 && alpha12 == alpha21;
  }

  /// The symmetric point: direct links at exponent 1, cross links at alpha.
  static ChannelParams symmetric(double alpha, double p = 1.0,
                                 double h11 = 1.5, double h12 = 1.5,
                                 double h21 = 1.5, double h22 = 1.5) {
    ChannelParams c{1.0, alpha, alpha, 1.0, h11, h12, h21, h22, p};
    c.validate();
    return c;
  }
};

}  // namespace wth
