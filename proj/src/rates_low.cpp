#include "cogcap/rates_low.hpp"

#include <cmath>
#include <string>

#include "cogcap/error.hpp"
#include "cogcap/numeric.hpp"

namespace cogcap {

namespace {

constexpr double kRootTol = 1e-12;
constexpr int kRootMaxIter = 200;
constexpr double kResidualBound = 1e-10;

void require_low_regime(const StandardChannel& ch) {
  if (ch.a > 1.0) {
    throw RegimeError("cross gain a = " + std::to_string(ch.a) +
                      " exceeds 1; cognitive capacity is only characterized for a <= 1");
  }
}

}  // namespace

PowerSplit::PowerSplit(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("power split alpha = " + std::to_string(alpha) + " is outside [0, 1]");
  }
}

double rp_low(const StandardChannel& ch, PowerSplit alpha) {
  const double al = alpha.value();
  const double coherent = std::sqrt(ch.pp) + ch.a * std::sqrt(al * ch.pc);
  return 0.5 * std::log1p(coherent * coherent / (1.0 + ch.a * ch.a * alpha.complement() * ch.pc));
}

double rc_low(const StandardChannel& ch, PowerSplit alpha) {
  return 0.5 * std::log1p(alpha.complement() * ch.pc);
}

double primary_target_rate(const StandardChannel& ch) { return 0.5 * std::log1p(ch.pp); }

AlphaStar solve_alpha_star(const StandardChannel& ch) {
  require_low_regime(ch);
  if (ch.a == 0.0 || ch.pc == 0.0) return {PowerSplit(0.0), 0.0, 0};

  const double target = primary_target_rate(ch);
  const auto gap = [&](double al) { return rp_low(ch, PowerSplit(al)) - target; };
  // gap(0) <= 0 (pure interference) and gap(1) >= 0 (pure relaying).
  const auto res = numeric::bisect(gap, 0.0, 1.0, kRootTol, kRootMaxIter);
  if (std::abs(res.residual) > kResidualBound) {
    throw ToleranceError("alpha* residual " + std::to_string(res.residual) + " after " +
                         std::to_string(res.iterations) + " bisection steps");
  }
  return {PowerSplit(res.root), res.residual, res.iterations};
}

PowerSplit alpha_star(const StandardChannel& ch) { return solve_alpha_star(ch).alpha; }

double alpha_star_closed_form(const StandardChannel& ch) {
  if (ch.a == 0.0 || ch.pc == 0.0) return 0.0;
  const double x = std::sqrt(ch.pp) * (std::sqrt(1.0 + ch.a * ch.a * ch.pc * (1.0 + ch.pp)) - 1.0) /
                   (ch.a * std::sqrt(ch.pc) * (1.0 + ch.pp));
  return x * x;
}

double alpha_star_printed_form(const StandardChannel& ch) {
  return std::sqrt(std::sqrt(alpha_star_closed_form(ch)));
}

RatePair cognitive_capacity(const StandardChannel& ch) {
  const PowerSplit al = alpha_star(ch);
  return {primary_target_rate(ch), rc_low(ch, al)};
}

RatePair rates_complex(const CognitiveChannel& ch, PowerSplit alpha) {
  ch.validate();
  const double al = alpha.value();
  const double coherent = std::abs(ch.p) * std::sqrt(ch.pp_tilde) + std::abs(ch.f) * std::sqrt(al * ch.pc_tilde);
  const double rp = std::log1p(coherent * coherent / (ch.np + std::norm(ch.f) * alpha.complement() * ch.pc_tilde));
  const double rc = std::log1p(std::norm(ch.c) * alpha.complement() * ch.pc_tilde / ch.ns);
  return {rp, rc};
}

PowerSplit alpha_diversity_from_snr(double snr) {
  if (!(snr >= 0.0)) throw DomainError("received SNR must be nonnegative");
  if (std::isinf(snr)) return PowerSplit(1.0);
  return PowerSplit(snr / (1.0 + snr));
}

PowerSplit alpha_diversity(const CognitiveChannel& ch) {
  if (!(ch.np > 0.0)) throw NonpositiveNoise("noise variance Np must be positive");
  return alpha_diversity_from_snr(std::norm(ch.p) * ch.pp_tilde / ch.np);
}

RatePair rates_two_tap(const CognitiveChannel& ch, PowerSplit alpha) {
  ch.validate();
  const double al = alpha.value();
  const double rp = std::log1p((std::norm(ch.p) * ch.pp_tilde + std::norm(ch.f) * al * ch.pc_tilde) /
                               (ch.np + std::norm(ch.f) * alpha.complement() * ch.pc_tilde));
  const double rc = std::log1p(std::norm(ch.c) * alpha.complement() * ch.pc_tilde / ch.ns);
  return {rp, rc};
}

double snr_from_rate(double rp) {
  if (!(rp >= 0.0)) throw DomainError("rate must be nonnegative");
  return std::expm1(rp);
}

}  // namespace cogcap
