#pragma once

#include <cstddef>
#include <optional>

#include "cogcap/channel.hpp"
#include "cogcap/rates_low.hpp"
#include "cogcap/region.hpp"

namespace cogcap {

// Achievable rates when the primary receiver decodes the cognitive message
// first and strips it off:
//   rp = 0.5 ln(1 + (sqrt(Pp) + a sqrt(alpha Pc))^2)
//   rc = 0.5 ln(1 + (1-alpha) Pc / (1 + (b sqrt(Pp) + sqrt(alpha Pc))^2))
RatePair rates_high(const StandardChannel& ch, PowerSplit alpha);

// K(alpha) = 1 + b^2 Pp + 2 b sqrt(alpha Pp Pc).
double k_alpha(double b, double pp, double pc, PowerSplit alpha);

struct HighRegimePoint {
  PowerSplit alpha;
  RatePair rates;
  double k_alpha = 0.0;
  double a_min = 0.0;
};

struct AThreshold {
  double a_min = 0.0;
  // True at alpha = 1, where the decode-order condition holds for every a.
  bool vacuous = false;
};

// Smallest a for which the primary receiver can decode the cognitive
// message first: positive root of a^2 K - 2 a sqrt(alpha Pp Pc) - (1 + Pp).
AThreshold a_threshold(double b, double pp, double pc, PowerSplit alpha);

// Same threshold located by bisection on the rate-level decode-order
// inequality; used as a cross-check.
double a_threshold_bisection(double b, double pp, double pc, PowerSplit alpha);

// Threshold with the second square root outside the division by K, as
// originally typeset. Reported alongside the root, never used for decisions.
double a_threshold_printed(double b, double pp, double pc, PowerSplit alpha);

HighRegimePoint high_regime_point(const StandardChannel& ch, PowerSplit alpha);

// Primary receiver's rate for decoding the cognitive message first.
double cognitive_rate_at_primary(const StandardChannel& ch, PowerSplit alpha);

inline constexpr double kDefaultSlopeStep = 1e-6;

// mu_alpha = -(left derivative of rc_high) / (left derivative of rp_high),
// by one-sided finite difference with a Richardson agreement check at h/2.
double mu_of_alpha(const StandardChannel& ch, PowerSplit alpha, double h = kDefaultSlopeStep);

// Rates of the two-antenna genie strategy parametrized by (beta, alpha, k_p,
// k_c) after the primary receiver strips the cognitive layer.
double rp_high_cov(const StandardChannel& ch, double beta, double alpha, double k_p);
double rc_high_cov(const StandardChannel& ch, double beta, double alpha, double k_p, double k_c);

struct CovarianceMax {
  double beta = 0.0;
  double alpha = 0.0;
  double k_p = 0.0;
  double k_c = 0.0;
  double value = 0.0;
};

inline constexpr std::size_t kCovarianceGrid = 101;

// Maximizes mu rp_high_cov + rc_high_cov over beta, alpha in [0, 1] and
// k_p in [-sqrt(alpha beta Pp Pc), sqrt(alpha beta Pp Pc)] with
// k_c = sqrt((1-beta)(1-alpha) Pp Pc). Requires mu <= 1.
CovarianceMax weighted_covariance_max(const StandardChannel& ch, Weight w,
                                      std::size_t grid = kCovarianceGrid);

// True when full relaying (beta = 1, k_p aligned) is the maximizer.
bool full_relay_optimal(const StandardChannel& ch, const CovarianceMax& m);

struct BMaxOptions {
  double b_lo = 0.01;
  double b_hi = 3.0;
  double step = 0.01;
  double resolution = 1e-4;
  std::size_t covariance_grid = 41;
};

struct BMaxResult {
  double b_max = 0.0;
  std::size_t scanned = 0;  // grid points evaluated
  // The largest scanned b was a member, so the true b_max may be larger.
  bool hit_upper = false;
};

bool in_b_set(double pp, double pc, double a, double b, Weight w, std::size_t covariance_grid);

// Largest b on the scan grid (refined by bisection) for which full relaying
// maximizes the mu-weighted functional. Contiguity is not assumed. Throws
// EmptySet when no b qualifies.
BMaxResult b_max(double pp, double pc, double a, Weight w, const BMaxOptions& opts = {});

struct BoundaryReport {
  RatePair rates;
  bool on_boundary = false;
  AThreshold threshold;
  bool threshold_ok = false;
  std::optional<double> mu;
  bool mu_ok = false;
  std::optional<double> b_max;
  bool b_ok = false;
};

BoundaryReport boundary_point_high(const StandardChannel& ch, PowerSplit alpha, const BMaxOptions& opts = {});

// Decode-first achievable curve on a uniform alpha grid, each point tagged
// with its decode-order threshold and boundary verdict.
RegionCurve frontier_high(const StandardChannel& ch, std::size_t n_points, const BMaxOptions& opts = {});

}  // namespace cogcap
