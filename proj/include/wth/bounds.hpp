#pragma once

#include <algorithm>
#include <cmath>

#include "wth/params.hpp"

// Closed-form secure-GDoF expressions and finite-SNR converse rate bounds
// for the wiretap channel with a helper. All rates are bits per channel use
// (logs base 2); the GDoF normalizer is (1/2) log2 P.

namespace wth {

struct PhiTriple {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
};

inline PhiTriple compute_phi(const ChannelParams& c) {
  PhiTriple t;
  t.phi1 = pos(c.alpha12 - pos(c.alpha22 - c.alpha21));
  t.phi2 = pos(c.alpha11 - t.phi1);
  t.phi3 = std::min({c.alpha21, c.alpha12, t.phi2});
  return t;
}

/// Optimal secure GDoF of the symmetric channel, as a piecewise-linear
/// function of the cross-link exponent alpha. Intervals are evaluated
/// half-open [lo, hi) with the last one closed; the curve is continuous so
/// the boundary assignment does not change values.
inline double gdof_theorem1(double alpha) {
  if (!(alpha >= 0.0)) throw config_error("gdof_theorem1: alpha must be >= 0");
  if (alpha < 0.5) return 1.0;
  if (alpha < 0.75) return 2.0 - 2.0 * alpha;
  if (alpha < 5.0 / 6.0) return 2.0 * alpha - 1.0;
  if (alpha < 1.0) return 1.5 - alpha;
  if (alpha < 4.0 / 3.0) return alpha / 2.0;
  if (alpha < 2.0) return 2.0 - alpha;
  return 0.0;
}

/// Secure GDoF of the same channel with the helper removed.
inline double gdof_no_helper(const ChannelParams& c) {
  return pos(c.alpha11 - c.alpha21);
}

inline double gdof_no_helper_symmetric(double alpha) {
  if (!(alpha >= 0.0)) throw config_error("gdof_no_helper: alpha must be >= 0");
  return pos(1.0 - alpha);
}

/// The three GDoF upper-bound terms, valid for general (asymmetric) params.
struct GdofBounds {
  double bound1 = 0.0;
  double bound2 = 0.0;
  double bound3 = 0.0;
  double min() const { return std::min({bound1, bound2, bound3}); }
};

inline GdofBounds gdof_bounds_general(const ChannelParams& c) {
  const PhiTriple t = compute_phi(c);
  GdofBounds b;
  b.bound1 = std::max(t.phi1, pos(c.alpha11 - t.phi3)) + pos(t.phi3 - t.phi1);
  b.bound2 = 0.5 * (pos(c.alpha11 - c.alpha21) + pos(c.alpha22 - c.alpha12) +
                    std::max(c.alpha11, c.alpha12));
  b.bound3 = pos(c.alpha22 + c.alpha11 - c.alpha21);
  return b;
}

inline double gdof_upper_general(const ChannelParams& c) {
  return gdof_bounds_general(c).min();
}

inline double gdof_upper_symmetric(double alpha) {
  if (!(alpha >= 0.0)) throw config_error("gdof_upper_symmetric: alpha must be >= 0");
  ChannelParams c = ChannelParams::symmetric(alpha);
  return gdof_upper_general(c);
}

/// Finite-SNR secure-rate upper bounds, kept verbatim including the additive
/// constants (7.3 in the first bound, (1/2) log2 9 inside the second). The
/// constants matter at finite P but vanish under GDoF normalization; the
/// *_no_const fields strip them for convergence studies.
struct RateBoundsBits {
  double bound_wt = 0.0;        // genie-aided wiretap bound
  double bound_half_sum = 0.0;  // half-sum bound
  double bound_third = 0.0;     // interference-channel bound
  double bound_wt_no_const = 0.0;
  double bound_half_sum_no_const = 0.0;
  double bound_third_no_const = 0.0;
  double min() const { return std::min({bound_wt, bound_half_sum, bound_third}); }
};

inline RateBoundsBits rate_upper_finite(const ChannelParams& c) {
  c.validate();
  const PhiTriple t = compute_phi(c);
  const double p = c.p;
  const double h11s = c.h11 * c.h11, h12s = c.h12 * c.h12;
  const double h21s = c.h21 * c.h21, h22s = c.h22 * c.h22;

  RateBoundsBits r;
  r.bound_wt_no_const =
      0.5 * std::log2(1.0 + std::pow(p, c.alpha11 - t.phi3) * h11s / h21s +
                      std::pow(p, c.alpha12 - pos(c.alpha22 - c.alpha21)) * h12s / h22s) +
      0.5 * std::log2(1.0 + std::pow(p, t.phi3 - t.phi1) * h22s);
  r.bound_wt = r.bound_wt_no_const + 7.3;

  r.bound_half_sum_no_const =
      0.5 * (0.5 * std::log2(1.0 + std::pow(p, pos(c.alpha11 - c.alpha21)) / h21s) +
             0.5 * std::log2(1.0 + std::pow(p, pos(c.alpha22 - c.alpha12)) / h12s) +
             0.5 * std::log2(1.0 + std::pow(p, c.alpha11) * h11s +
                             std::pow(p, c.alpha12) * h12s));
  r.bound_half_sum = r.bound_half_sum_no_const + 0.5 * std::log2(9.0);

  r.bound_third_no_const =
      0.5 * std::log2(1.0 + std::pow(p, c.alpha11 - c.alpha21) * h11s / h21s +
                      std::pow(p, c.alpha22 + c.alpha11 - c.alpha21) * h11s * h22s / h21s);
  r.bound_third = r.bound_third_no_const;
  return r;
}

/// Secrecy-capacity lower bound of the no-helper channel (may be negative;
/// callers clamp at 0 for GDoF purposes).
inline double capacity_no_helper_lb(const ChannelParams& c) {
  c.validate();
  return 0.5 * std::log2(1.0 + std::pow(c.p, c.alpha11) * c.h11 * c.h11) -
         0.5 * std::log2(1.0 + std::pow(c.p, c.alpha21) * c.h21 * c.h21);
}

inline double gdof_normalizer(double p) { return 0.5 * std::log2(p); }

}  // namespace wth
