#include "cogcap/rates_high.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <tuple>

#include "cogcap/error.hpp"
#include "cogcap/numeric.hpp"

namespace cogcap {

namespace {

constexpr double kRichardsonTol = 1e-4;
constexpr double kSlopeFloor = 1e-14;
constexpr double kMembershipTol = 1e-6;

double sq(double x) { return x * x; }

}  // namespace

RatePair rates_high(const StandardChannel& ch, PowerSplit alpha) {
  const double al = alpha.value();
  const double rp = 0.5 * std::log1p(sq(std::sqrt(ch.pp) + ch.a * std::sqrt(al * ch.pc)));
  const double rc =
      0.5 * std::log1p(alpha.complement() * ch.pc / (1.0 + sq(ch.b * std::sqrt(ch.pp) + std::sqrt(al * ch.pc))));
  return {rp, rc};
}

double k_alpha(double b, double pp, double pc, PowerSplit alpha) {
  return 1.0 + b * b * pp + 2.0 * b * std::sqrt(alpha.value() * pp * pc);
}

AThreshold a_threshold(double b, double pp, double pc, PowerSplit alpha) {
  if (alpha.value() == 1.0) return {0.0, true};
  const double k = k_alpha(b, pp, pc, alpha);
  if (!(k > 0.0)) throw DomainError("K(alpha) must be positive; use b >= 0");
  const double cross = std::sqrt(alpha.value() * pp * pc);
  return {(cross + std::sqrt(cross * cross + k * (1.0 + pp))) / k, false};
}

double a_threshold_bisection(double b, double pp, double pc, PowerSplit alpha) {
  if (alpha.value() == 1.0) return 0.0;
  const double al = alpha.value();
  // Decode-order inequality with the common factor (1 - alpha) Pc divided out:
  //   1 / (1 + (b sqrt(Pp) + sqrt(alpha Pc))^2) <= a^2 / (1 + (sqrt(Pp) + a sqrt(alpha Pc))^2)
  const double lhs = 1.0 / (1.0 + sq(b * std::sqrt(pp) + std::sqrt(al * pc)));
  const auto gap = [&](double a) { return a * a / (1.0 + sq(std::sqrt(pp) + a * std::sqrt(al * pc))) - lhs; };
  double hi = 1.0;
  while (gap(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw ToleranceError("decode-order threshold bracket did not close");
  }
  return numeric::bisect(gap, 0.0, hi, 1e-15 * std::max(1.0, hi), 400).root;
}

double a_threshold_printed(double b, double pp, double pc, PowerSplit alpha) {
  const double al = alpha.value();
  const double k = k_alpha(b, pp, pc, alpha);
  return std::sqrt(al * pp * pc) / k + std::sqrt(k + pp * (1.0 + sq(b * std::sqrt(pp) + std::sqrt(al * pc))));
}

HighRegimePoint high_regime_point(const StandardChannel& ch, PowerSplit alpha) {
  return {alpha, rates_high(ch, alpha), k_alpha(ch.b, ch.pp, ch.pc, alpha),
          a_threshold(ch.b, ch.pp, ch.pc, alpha).a_min};
}

double cognitive_rate_at_primary(const StandardChannel& ch, PowerSplit alpha) {
  const double al = alpha.value();
  return 0.5 * std::log1p(ch.a * ch.a * alpha.complement() * ch.pc /
                          (1.0 + sq(std::sqrt(ch.pp) + ch.a * std::sqrt(al * ch.pc))));
}

double mu_of_alpha(const StandardChannel& ch, PowerSplit alpha, double h) {
  const double al = alpha.value();
  if (!(al > 0.0)) throw DomainError("left derivative needs alpha > 0");
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const auto slope = [&](double step) {
    step = std::min(step, al);
    const RatePair here = rates_high(ch, alpha);
    const RatePair left = rates_high(ch, PowerSplit(al - step));
    const double drp = here.rp - left.rp;
    if (std::abs(drp) < kSlopeFloor) {
      throw DegenerateSlope("primary rate is flat in alpha; mu_alpha is undefined");
    }
    return -(here.rc - left.rc) / drp;
  };
  const double mu = slope(h);
  const double mu_half = slope(0.5 * h);
  if (std::abs(mu - mu_half) > kRichardsonTol * std::max(std::abs(mu), 1e-300)) {
    throw ToleranceError("finite-difference slope unstable between h and h/2");
  }
  return mu;
}

double rp_high_cov(const StandardChannel& ch, double beta, double alpha, double k_p) {
  return 0.5 * std::log1p(beta * ch.pp + 2.0 * ch.a * k_p + alpha * ch.a * ch.a * ch.pc);
}

double rc_high_cov(const StandardChannel& ch, double beta, double alpha, double k_p, double k_c) {
  const double num = ch.b * ch.b * (1.0 - beta) * ch.pp + 2.0 * k_c * ch.b + (1.0 - alpha) * ch.pc;
  const double den = 1.0 + ch.b * ch.b * beta * ch.pp + 2.0 * k_p * ch.b + alpha * ch.pc;
  return 0.5 * std::log1p(num / den);
}

namespace {

// Search coordinates: beta, alpha in [0,1] and t in [-1,1] with
// k_p = t sqrt(alpha beta Pp Pc).
struct CovPoint {
  double beta;
  double alpha;
  double t;
};

struct CovObjective {
  const StandardChannel& ch;
  double mu;

  [[nodiscard]] double k_p(const CovPoint& x) const { return x.t * std::sqrt(x.alpha * x.beta * ch.pp * ch.pc); }
  [[nodiscard]] double k_c(const CovPoint& x) const {
    return std::sqrt((1.0 - x.beta) * (1.0 - x.alpha) * ch.pp * ch.pc);
  }
  double operator()(const CovPoint& x) const {
    const double kp = k_p(x);
    return mu * rp_high_cov(ch, x.beta, x.alpha, kp) + rc_high_cov(ch, x.beta, x.alpha, kp, k_c(x));
  }
};

// Lexicographic tie-break on (beta, alpha, t).
bool lex_less(const CovPoint& x, const CovPoint& y) {
  return std::tie(x.beta, x.alpha, x.t) < std::tie(y.beta, y.alpha, y.t);
}

}  // namespace

CovarianceMax weighted_covariance_max(const StandardChannel& ch, Weight w, std::size_t grid) {
  if (w.value() > 1.0) throw DomainError("covariance parametrization is only used for mu <= 1");
  if (grid < 2) throw DomainError("covariance grid needs at least two points per axis");
  const CovObjective f{ch, w.value()};
  const auto node = [&](std::size_t i, double lo, double hi) {
    return i + 1 == grid ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
  };

  CovPoint best{0.0, 0.0, -1.0};
  double best_val = f(best);
  for (std::size_t ib = 0; ib < grid; ++ib) {
    for (std::size_t ia = 0; ia < grid; ++ia) {
      for (std::size_t it = 0; it < grid; ++it) {
        const CovPoint x{node(ib, 0.0, 1.0), node(ia, 0.0, 1.0), node(it, -1.0, 1.0)};
        const double v = f(x);
        if (v > best_val || (v == best_val && lex_less(x, best))) {
          best = x;
          best_val = v;
        }
      }
    }
  }

  // Coordinate refinement: golden section on a shrinking window around the
  // incumbent, with the window ends themselves as candidates so box corners
  // are reachable exactly.
  std::array<double, 3> radius{1.0 / static_cast<double>(grid - 1), 1.0 / static_cast<double>(grid - 1),
                               2.0 / static_cast<double>(grid - 1)};
  const std::array<std::pair<double, double>, 3> box{{{0.0, 1.0}, {0.0, 1.0}, {-1.0, 1.0}}};
  for (int round = 0; round < 30; ++round) {
    for (int d = 0; d < 3; ++d) {
      double* coord = d == 0 ? &best.beta : d == 1 ? &best.alpha : &best.t;
      const double lo = std::max(box[d].first, *coord - radius[d]);
      const double hi = std::min(box[d].second, *coord + radius[d]);
      if (!(hi > lo)) continue;
      const double saved = *coord;
      const auto along = [&](double v) {
        *coord = v;
        return f(best);
      };
      const auto refined = numeric::golden_max(along, lo, hi, 1e-13);
      double cand = saved;
      double cand_val = best_val;
      for (double v : {refined.arg, lo, hi}) {
        const double val = along(v);
        if (val > cand_val) {
          cand = v;
          cand_val = val;
        }
      }
      *coord = cand;
      best_val = cand_val;
      radius[d] *= 0.5;
    }
  }

  return {best.beta, best.alpha, f.k_p(best), f.k_c(best), best_val};
}

bool full_relay_optimal(const StandardChannel& ch, const CovarianceMax& m) {
  return m.beta >= 1.0 - kMembershipTol &&
         std::abs(m.k_p - std::sqrt(m.alpha * ch.pp * ch.pc)) <= kMembershipTol * std::sqrt(ch.pp * ch.pc);
}

bool in_b_set(double pp, double pc, double a, double b, Weight w, std::size_t covariance_grid) {
  const StandardChannel ch = StandardChannel::make(a, b, pp, pc);
  return full_relay_optimal(ch, weighted_covariance_max(ch, w, covariance_grid));
}

BMaxResult b_max(double pp, double pc, double a, Weight w, const BMaxOptions& opts) {
  if (w.value() > 1.0) throw DomainError("b_max is defined for mu <= 1");
  if (!(opts.step > 0.0) || !(opts.b_lo > 0.0) || !(opts.b_hi >= opts.b_lo)) {
    throw DomainError("b_max scan needs 0 < b_lo <= b_hi and a positive step");
  }
  const auto member = [&](double b) { return in_b_set(pp, pc, a, b, w, opts.covariance_grid); };
  const auto n = static_cast<std::size_t>(std::floor((opts.b_hi - opts.b_lo) / opts.step + 1e-9)) + 1;

  // Scanning down from b_hi and stopping at the first member gives the
  // largest member without assuming the set is an interval.
  BMaxResult out;
  std::optional<std::size_t> last;
  for (std::size_t k = n; k-- > 0;) {
    ++out.scanned;
    if (member(opts.b_lo + opts.step * static_cast<double>(k))) {
      last = k;
      break;
    }
  }
  if (!last) throw EmptySet("no b on the scan grid makes full relaying optimal");
  double lo = opts.b_lo + opts.step * static_cast<double>(*last);
  if (*last + 1 == n) {
    out.b_max = lo;
    out.hit_upper = true;
    return out;
  }
  double hi = lo + opts.step;
  while (hi - lo > opts.resolution) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? lo : hi) = mid;
  }
  out.b_max = lo;
  return out;
}

BoundaryReport boundary_point_high(const StandardChannel& ch, PowerSplit alpha, const BMaxOptions& opts) {
  BoundaryReport r;
  r.rates = rates_high(ch, alpha);
  r.threshold = a_threshold(ch.b, ch.pp, ch.pc, alpha);
  r.threshold_ok = r.threshold.vacuous || ch.a >= r.threshold.a_min;

  // The left derivative does not exist at alpha = 0.
  if (alpha.value() > 0.0) {
    r.mu = mu_of_alpha(ch, alpha);
    r.mu_ok = *r.mu <= 1.0;
  }

  if (r.mu_ok) {
    if (ch.b == 0.0) {
      r.b_ok = true;
    } else {
      try {
        r.b_max = b_max(ch.pp, ch.pc, ch.a, Weight(std::max(0.0, *r.mu)), opts).b_max;
        r.b_ok = ch.b <= *r.b_max;
      } catch (const EmptySet&) {
        r.b_ok = false;
      }
    }
  }
  r.on_boundary = r.threshold_ok && r.mu_ok && r.b_ok;
  return r;
}

RegionCurve frontier_high(const StandardChannel& ch, std::size_t n_points, const BMaxOptions& opts) {
  if (n_points < 2) throw DomainError("frontier needs at least two points");
  RegionCurve curve;
  curve.regime = Regime::kHigh;
  curve.points.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double al = i + 1 == n_points ? 1.0 : static_cast<double>(i) / static_cast<double>(n_points - 1);
    const PowerSplit split(al);
    FrontierPoint pt;
    pt.alpha = al;
    try {
      const BoundaryReport rep = boundary_point_high(ch, split, opts);
      pt.rates = rep.rates;
      pt.a_min = rep.threshold.a_min;
      pt.on_boundary = rep.on_boundary;
    } catch (const DegenerateSlope&) {
      pt.rates = rates_high(ch, split);
      pt.a_min = a_threshold(ch.b, ch.pp, ch.pc, split).a_min;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace cogcap
