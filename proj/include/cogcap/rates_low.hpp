#pragma once

#include "cogcap/channel.hpp"

namespace cogcap {

// Fraction of the cognitive power spent relaying the primary codeword.
class PowerSplit {
 public:
  constexpr PowerSplit() = default;
  // Throws DomainError outside [0, 1].
  explicit PowerSplit(double alpha);

  [[nodiscard]] constexpr double value() const { return alpha_; }
  [[nodiscard]] constexpr double complement() const { return 1.0 - alpha_; }

 private:
  double alpha_ = 0.0;
};

// Rates in nats per channel use.
struct RatePair {
  double rp = 0.0;
  double rc = 0.0;
};

// Low-interference achievable rates for the superposition + dirty-paper scheme.
double rp_low(const StandardChannel& ch, PowerSplit alpha);
double rc_low(const StandardChannel& ch, PowerSplit alpha);

// Interference-free primary rate 0.5 ln(1 + Pp).
double primary_target_rate(const StandardChannel& ch);

struct AlphaStar {
  PowerSplit alpha;
  double residual = 0.0;  // rp_low(alpha) - 0.5 ln(1 + Pp)
  int iterations = 0;
};

// Unique power split in [0, 1] at which the primary keeps its
// interference-free rate, found by bisection. Requires a <= 1.
AlphaStar solve_alpha_star(const StandardChannel& ch);
PowerSplit alpha_star(const StandardChannel& ch);

// Positive root of the no-interference quadratic in sqrt(alpha); its square is
// the power split. Returns 0 when a = 0 or Pc = 0.
double alpha_star_closed_form(const StandardChannel& ch);

// Same bracket with the outer square root as typeset in the original
// derivation; retained for the discrepancy report only.
double alpha_star_printed_form(const StandardChannel& ch);

// (R*_p, R*_c) for a <= 1.
RatePair cognitive_capacity(const StandardChannel& ch);

// Complex-baseband rates with coherent beamforming (no 1/2 prefactor).
RatePair rates_complex(const CognitiveChannel& ch, PowerSplit alpha);

// Split used by the feedback-free delayed-relay scheme: S / (1 + S) with
// S = |p|^2 Pp / Np.
PowerSplit alpha_diversity(const CognitiveChannel& ch);
PowerSplit alpha_diversity_from_snr(double snr);

// Rates of the delayed-relay (two-tap) scheme after combining.
RatePair rates_two_tap(const CognitiveChannel& ch, PowerSplit alpha);

// Received SNR implied by a capacity-achieving code at rate rp nats.
double snr_from_rate(double rp);

}  // namespace cogcap
