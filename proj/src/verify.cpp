#include "cogcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cogcap/mimo_bc.hpp"
#include "cogcap/random.hpp"
#include "cogcap/rates_high.hpp"
#include "cogcap/rates_low.hpp"
#include "cogcap/region.hpp"

namespace cogcap::verify {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

CheckResult check_alpha_star_root(std::uint64_t seed, int draws) {
  Rng rng(seed);
  double worst_residual = 0.0;
  double worst_closed = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto ch = StandardChannel::make(rng.uniform(0.0, 1.0), 0.0, 100.0 * rng.uniform(), 100.0 * rng.uniform());
    const double al = alpha_star(ch).value();
    worst_residual = std::max(worst_residual, std::abs(rp_low(ch, PowerSplit(al)) - primary_target_rate(ch)));
    worst_closed = std::max(worst_closed, std::abs(alpha_star_closed_form(ch) - al));
  }
  return {"alpha* root and closed form", worst_residual < 1e-9 && worst_closed < 1e-9,
          "max residual " + fmt(worst_residual) + ", max |closed - bisection| " + fmt(worst_closed)};
}

CheckResult check_capacity_spot_values() {
  const auto ch = StandardChannel::make(1.0, 0.0, 1.0, 1.0);
  const double al = alpha_star(ch).value();
  const RatePair cap = cognitive_capacity(ch);
  // At Pp = Pc = a = 1 the root is ((sqrt(3) - 1) / 2)^2.
  const double root = std::pow((std::sqrt(3.0) - 1.0) / 2.0, 2);
  const double rc = 0.5 * std::log(2.0 - root);
  const bool ok = std::abs(al - 0.133975) < 1e-6 && std::abs(al - root) < 1e-9 && std::abs(cap.rc - rc) < 1e-5;
  return {"capacity spot values (Pp=Pc=a=1)", ok, "alpha* " + fmt(al) + ", Rc* " + fmt(cap.rc)};
}

CheckResult check_sum_capacity(std::uint64_t seed, int draws) {
  Rng rng(seed);
  double worst = 0.0;
  bool at_one = true;
  for (int i = 0; i < draws; ++i) {
    const auto ch = StandardChannel::make(rng.uniform(1.0, 10.0), 0.0, 10.0 * rng.uniform(), 10.0 * rng.uniform());
    const double mu = rng.uniform(1.0, 5.0);
    const WeightedMax m = maximize_weighted(ch, Weight(mu));
    at_one = at_one && m.alpha == 1.0;
    worst = std::max(worst, std::abs(m.value - mu * sum_capacity(ch)));
  }
  return {"weighted sum-rate maximized at alpha = 1 for a >= 1, mu >= 1", at_one && worst < 1e-8,
          "max |grid max - mu C_sum| " + fmt(worst)};
}

CheckResult check_convexity(std::uint64_t seed, int channels, int trials) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < channels; ++i) {
    const auto ch = StandardChannel::make(rng.uniform(), 0.0, 20.0 * rng.uniform(), 20.0 * rng.uniform());
    const auto rep = convexity_check(frontier_low(ch), static_cast<std::size_t>(trials), rng.derive(i).uniform() * 1e9);
    worst = std::min(worst, rep.worst_slack);
  }
  return {"low-interference region convexity", worst >= -kDominationTol, "worst slack " + fmt(worst)};
}

CheckResult check_threshold(std::uint64_t seed, int draws) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double pp = 10.0 * rng.uniform();
    const double pc = 10.0 * rng.uniform();
    const double b = 3.0 * rng.uniform();
    const PowerSplit al(0.999 * rng.uniform());
    const double root = a_threshold(b, pp, pc, al).a_min;
    worst = std::max(worst, std::abs(root - a_threshold_bisection(b, pp, pc, al)));
  }
  return {"decode-order threshold: quadratic root vs bisection", worst < 1e-8, "max diff " + fmt(worst)};
}

CheckResult check_covariance_reduction(std::uint64_t seed, int draws) {
  Rng rng(seed);
  double worst_reduction = 0.0;
  bool b0_ok = true;
  for (int i = 0; i < draws; ++i) {
    const double pp = 5.0 * rng.uniform();
    const double pc = 5.0 * rng.uniform();
    const double a = rng.uniform(1.0, 6.0);
    const double b = 2.0 * rng.uniform();
    const double al = rng.uniform();
    const auto ch = StandardChannel::make(a, b, pp, pc);
    const RatePair ref = rates_high(ch, PowerSplit(al));
    const double kp = std::sqrt(al * pp * pc);
    worst_reduction = std::max({worst_reduction, std::abs(rp_high_cov(ch, 1.0, al, kp) - ref.rp),
                                std::abs(rc_high_cov(ch, 1.0, al, kp, 0.0) - ref.rc)});
    if (i < 10) {
      const auto ch0 = StandardChannel::make(a, 0.0, pp, pc);
      b0_ok = b0_ok && full_relay_optimal(ch0, weighted_covariance_max(ch0, Weight(rng.uniform(0.05, 1.0)), 41));
    }
  }
  return {"covariance form reduces to the decode-first rates; b = 0 optimum", worst_reduction < 1e-12 && b0_ok,
          "max reduction error " + fmt(worst_reduction) + (b0_ok ? ", b=0 optimum at beta=1" : ", b=0 optimum moved")};
}

CheckResult check_mimo_limits(std::uint64_t seed, int draws) {
  Rng rng(seed);
  double worst_dev = 0.0;
  double worst_opt = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double pp = 5.0 * rng.uniform();
    const double pc = 5.0 * rng.uniform();
    const double a = rng.uniform(0.05, 1.0);
    const double beta = rng.uniform();
    const double al = rng.uniform();
    const double kp = rng.uniform(-1.0, 1.0) * std::sqrt(al * beta * pp * pc);
    const double kc = rng.uniform(-1.0, 1.0) * std::sqrt((1.0 - al) * (1.0 - beta) * pp * pc);
    const auto ch = StandardChannel::make(a, 0.0, pp, pc);
    const auto cov = CovariancePair::make(beta, al, kp, kc, pp, pc);
    const RatePair lim = limit_rates(ch, cov);
    const RatePair got = adbc_rates(AlignedChannel::make(a, 1e-6, 1e6), cov);
    worst_dev = std::max({worst_dev, std::abs(got.rp - lim.rp), std::abs(got.rc - lim.rc)});
    const RatePair opt = limit_rates(ch, CovariancePair::optimal(al, pp, pc));
    worst_opt = std::max({worst_opt, std::abs(opt.rp - rp_low(ch, PowerSplit(al))),
                          std::abs(opt.rc - rc_low(ch, PowerSplit(al)))});
  }
  return {"aligned MIMO rates converge to the scalar low-interference rates", worst_dev < 1e-3 && worst_opt < 1e-6,
          "max deviation at eps=1e-6, M=1e6: " + fmt(worst_dev) + ", optimal-signature mismatch " + fmt(worst_opt)};
}

std::vector<CheckResult> discrepancy_report() {
  std::vector<CheckResult> out;
  {
    const auto ch = StandardChannel::make(1.0, 0.0, 1.0, 1.0);
    const double root = alpha_star(ch).value();
    const double squared = alpha_star_closed_form(ch);
    const double printed = alpha_star_printed_form(ch);
    out.push_back({"alpha* exponent (Pp=Pc=a=1)", std::abs(squared - root) < 1e-9 && std::abs(printed - root) > 1e-3,
                   "bisection " + fmt(root) + ", squared bracket " + fmt(squared) + ", bracket^(1/2) " + fmt(printed)});
  }
  {
    const PowerSplit al(0.0);
    const double root = a_threshold(1.0, 1.0, 1.0, al).a_min;
    const double direct = a_threshold_bisection(1.0, 1.0, 1.0, al);
    const double printed = a_threshold_printed(1.0, 1.0, 1.0, al);
    out.push_back({"decode-order threshold grouping (b=1, Pp=1, alpha=0)",
                   std::abs(root - direct) < 1e-9 && std::abs(printed - direct) > 1e-3,
                   "quadratic root " + fmt(root) + ", direct inequality " + fmt(direct) + ", typeset form " +
                       fmt(printed)});
  }
  {
    const double a = 0.7;
    const auto cov = CovariancePair::make(0.4, 0.3, 0.2, 0.3, 2.0, 1.0);
    const Mat2 derived = limit_covariance_terms(a, cov).interference_inverse;
    const Mat2 printed = interference_inverse_printed(a, cov);
    // Numerical limit of (I + Sz^-1 Hp Sc Hp^T)^-1 at large M.
    const AlignedChannel ach = AlignedChannel::make(a, 1e-9, 1e9);
    const Mat2 numeric =
        (Mat2::identity() + ach.sigma_z().inverse() * ach.hp() * cov.sigma_c() * ach.hp().transpose()).inverse();
    out.push_back({"interference-inverse limit off-diagonal ((1-beta)Pp vs (1-beta)Pc)",
                   numeric.max_abs_diff(derived) < 1e-6 && numeric.max_abs_diff(printed) > 1e-3,
                   "numeric m01 " + fmt(numeric.m01) + ", with (1-beta)Pp " + fmt(derived.m01) + ", with (1-beta)Pc " +
                       fmt(printed.m01)});
  }
  return out;
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> out{check_alpha_star_root(seed),         check_capacity_spot_values(),
                               check_sum_capacity(seed + 1),        check_convexity(seed + 2),
                               check_threshold(seed + 3),           check_covariance_reduction(seed + 4),
                               check_mimo_limits(seed + 5)};
  for (auto& d : discrepancy_report()) out.push_back(std::move(d));
  return out;
}

}  // namespace cogcap::verify
