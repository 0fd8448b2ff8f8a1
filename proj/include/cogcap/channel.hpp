#pragma once

#include <complex>

namespace cogcap {

using cplx = std::complex<double>;

// Physical two-user channel
//   Y_p = p X_p + f X_c + Z_p,   Z_p ~ N(0, Np)
//   Y_s = g X_p + c X_c + Z_s,   Z_s ~ N(0, Ns)
// In the real variant every gain has zero imaginary part; the complex variant
// (is_complex = true) uses circularly-symmetric noise and carries phases.
struct CognitiveChannel {
  cplx p{1.0, 0.0};
  cplx f{0.0, 0.0};
  cplx g{0.0, 0.0};
  cplx c{1.0, 0.0};
  double pp_tilde = 1.0;  // primary average power
  double pc_tilde = 1.0;  // cognitive average power
  double np = 1.0;        // noise variance at the primary receiver
  double ns = 1.0;        // noise variance at the secondary receiver
  bool is_complex = false;

  static CognitiveChannel real(double p, double f, double g, double c, double pp, double pc, double np,
                               double ns);
  static CognitiveChannel polar(double mag_p, double phase_p, double mag_f, double phase_f, double mag_g,
                                double phase_g, double mag_c, double phase_c, double pp, double pc, double np,
                                double ns);

  // Throws NonpositiveNoise / DomainError on invariant violations.
  void validate() const;
};

// Normalized (1, a, b, 1) channel with unit noise at both receivers.
// a and b are magnitudes; a_sign/b_sign keep the sign of the real-valued
// cross gains so simulations can reproduce the original channel exactly.
struct StandardChannel {
  double a = 0.0;
  double b = 0.0;
  double pp = 1.0;
  double pc = 1.0;
  int a_sign = 1;
  int b_sign = 1;

  static StandardChannel make(double a, double b, double pp, double pc);

  [[nodiscard]] bool low_interference() const { return a <= 1.0; }
  void validate() const;
};

struct ReceivedSnrs {
  double snr_p = 0.0;
  double snr_s = 0.0;
  double inr_p = 0.0;
  double inr_s = 0.0;
};

StandardChannel to_standard(const CognitiveChannel& ch);
// Real channel with p = c = 1 and unit noise whose standard form is `s`.
CognitiveChannel from_standard(const StandardChannel& s);
ReceivedSnrs received_snrs(const CognitiveChannel& ch);

}  // namespace cogcap
