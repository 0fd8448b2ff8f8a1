#include "cogcap/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cogcap/error.hpp"
#include "cogcap/numeric.hpp"
#include "cogcap/random.hpp"

namespace cogcap {

const char* to_string(Regime r) { return r == Regime::kLow ? "low" : "high"; }

Weight::Weight(double mu) : mu_(mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("weight mu must be finite and nonnegative");
}

RegionCurve frontier_low(const StandardChannel& ch, std::size_t n_points) {
  if (ch.a > 1.0) throw RegimeError("low-interference frontier requires a <= 1");
  if (n_points < 2) throw DomainError("frontier needs at least two points");
  RegionCurve curve;
  curve.regime = Regime::kLow;
  curve.points.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double al = i + 1 == n_points ? 1.0 : static_cast<double>(i) / static_cast<double>(n_points - 1);
    const PowerSplit split(al);
    RatePair r{rp_low(ch, split), rc_low(ch, split)};
    if (!curve.points.empty() && r.rp <= curve.points.back().rates.rp) r = curve.points.back().rates;
    curve.points.push_back({al, r});
  }
  return curve;
}

WeightedMax maximize_weighted(const StandardChannel& ch, Weight w) {
  const double mu = w.value();
  const auto objective = [&](double al) {
    const PowerSplit split(std::clamp(al, 0.0, 1.0));
    return mu * rp_low(ch, split) + rc_low(ch, split);
  };
  const auto best = numeric::grid_refine_max(objective, 0.0, 1.0, kWeightedGridPoints);
  return {best.arg, best.value};
}

double sum_capacity(const StandardChannel& ch) {
  if (ch.pc == 0.0) return 0.5 * std::log1p(ch.pp);
  if (ch.a < 1.0) {
    throw RegimeError("sum-capacity closed form requires a >= 1 (got a = " + std::to_string(ch.a) + ")");
  }
  const double s = std::sqrt(ch.pp) + ch.a * std::sqrt(ch.pc);
  return 0.5 * std::log1p(s * s);
}

void validate_curve(const RegionCurve& curve) {
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& pt = pts[i];
    if (!(pt.alpha >= 0.0 && pt.alpha <= 1.0)) throw DomainError("curve alpha outside [0, 1]");
    if (!(pt.rates.rp >= 0.0) || !(pt.rates.rc >= 0.0)) throw DomainError("curve rates must be nonnegative");
    if (i == 0) continue;
    if (!(pt.alpha > pts[i - 1].alpha)) throw DomainError("curve alphas must be strictly increasing");
    if (curve.regime == Regime::kLow &&
        (pt.rates.rp < pts[i - 1].rates.rp || pt.rates.rc > pts[i - 1].rates.rc)) {
      throw DomainError("low-regime curve must have rp nondecreasing and rc nonincreasing");
    }
  }
}

double domination_slack(const RegionCurve& curve, double rp, double rc) {
  double best = -std::numeric_limits<double>::infinity();
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const RatePair& v = pts[i].rates;
    best = std::max(best, std::min(v.rp - rp, v.rc - rc));
    if (i + 1 == pts.size()) continue;
    const RatePair& w = pts[i + 1].rates;
    const double lo = std::min(v.rp, w.rp);
    const double hi = std::max(v.rp, w.rp);
    if (rp < lo || rp > hi || hi == lo) continue;
    const double t = (rp - v.rp) / (w.rp - v.rp);
    best = std::max(best, v.rc + t * (w.rc - v.rc) - rc);
  }
  return best;
}

ConvexityReport convexity_check(const RegionCurve& curve, std::size_t n_trials, std::uint64_t seed) {
  validate_curve(curve);
  ConvexityReport report;
  if (curve.points.empty()) return report;
  report.worst_slack = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  const auto n = curve.points.size();
  const auto pick = [&]() {
    const auto i = std::min<std::size_t>(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
    // Any point dominated by a frontier vertex is achievable; shrink half of
    // the draws into the interior.
    RatePair r = curve.points[i].rates;
    if (rng.uniform() < 0.5) {
      r.rp *= rng.uniform();
      r.rc *= rng.uniform();
    }
    return r;
  };
  for (std::size_t t = 0; t < n_trials; ++t) {
    const RatePair x = pick();
    const RatePair y = pick();
    const double lam = rng.uniform();
    const double slack =
        domination_slack(curve, lam * x.rp + (1.0 - lam) * y.rp, lam * x.rc + (1.0 - lam) * y.rc);
    report.worst_slack = std::min(report.worst_slack, slack);
  }
  report.trials = n_trials;
  if (n_trials == 0) report.worst_slack = 0.0;
  report.pass = report.worst_slack >= -kDominationTol;
  return report;
}

}  // namespace cogcap
