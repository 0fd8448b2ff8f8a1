#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cogcap/channel.hpp"
#include "cogcap/rates_low.hpp"

namespace cogcap {

enum class Regime { kLow, kHigh };

const char* to_string(Regime r);

struct FrontierPoint {
  double alpha = 0.0;
  RatePair rates;
  // High regime only.
  double a_min = 0.0;
  bool on_boundary = false;
};

struct RegionCurve {
  std::vector<FrontierPoint> points;
  Regime regime = Regime::kLow;
};

// Nonnegative weight on R_p in the supporting-line functional mu R_p + R_c.
class Weight {
 public:
  constexpr Weight() = default;
  explicit Weight(double mu);
  [[nodiscard]] constexpr double value() const { return mu_; }

 private:
  double mu_ = 0.0;
};

inline constexpr std::size_t kDefaultFrontierPoints = 1001;
inline constexpr std::size_t kWeightedGridPoints = 10001;

// Samples the low-interference frontier on a uniform alpha grid. Points that
// bring no primary-rate gain over their predecessor are replaced by it, so the
// result is the Pareto frontier (this only happens when a = 0 or Pc = 0).
RegionCurve frontier_low(const StandardChannel& ch, std::size_t n_points = kDefaultFrontierPoints);

struct WeightedMax {
  double alpha = 0.0;
  double value = 0.0;
};

// argmax / max of mu * rp_low + rc_low over alpha in [0, 1].
WeightedMax maximize_weighted(const StandardChannel& ch, Weight w);

// 0.5 ln(1 + (sqrt(Pp) + a sqrt(Pc))^2), valid for a >= 1.
double sum_capacity(const StandardChannel& ch);

struct ConvexityReport {
  bool pass = true;
  double worst_slack = 0.0;
  std::size_t trials = 0;
};

inline constexpr double kDominationTol = 1e-9;

// Samples pairs of achievable points and checks every convex combination is
// componentwise dominated by the piecewise-linear frontier.
ConvexityReport convexity_check(const RegionCurve& curve, std::size_t n_trials, std::uint64_t seed);

// Slack of the best frontier point dominating (rp, rc); negative when the
// point lies outside the region.
double domination_slack(const RegionCurve& curve, double rp, double rc);

// Throws DomainError when the curve violates the ordering invariants.
void validate_curve(const RegionCurve& curve);

}  // namespace cogcap
