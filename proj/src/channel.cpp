#include "cogcap/channel.hpp"

#include <cmath>

#include "cogcap/error.hpp"

namespace cogcap {

namespace {

int sign_of(double x) { return x < 0.0 ? -1 : 1; }

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

CognitiveChannel CognitiveChannel::real(double p, double f, double g, double c, double pp, double pc, double np,
                                        double ns) {
  CognitiveChannel ch;
  ch.p = p;
  ch.f = f;
  ch.g = g;
  ch.c = c;
  ch.pp_tilde = pp;
  ch.pc_tilde = pc;
  ch.np = np;
  ch.ns = ns;
  ch.is_complex = false;
  return ch;
}

CognitiveChannel CognitiveChannel::polar(double mag_p, double phase_p, double mag_f, double phase_f, double mag_g,
                                         double phase_g, double mag_c, double phase_c, double pp, double pc,
                                         double np, double ns) {
  CognitiveChannel ch;
  ch.p = std::polar(mag_p, phase_p);
  ch.f = std::polar(mag_f, phase_f);
  ch.g = std::polar(mag_g, phase_g);
  ch.c = std::polar(mag_c, phase_c);
  ch.pp_tilde = pp;
  ch.pc_tilde = pc;
  ch.np = np;
  ch.ns = ns;
  ch.is_complex = true;
  return ch;
}

void CognitiveChannel::validate() const {
  if (!(np > 0.0) || !(ns > 0.0)) throw NonpositiveNoise("noise variances must be positive");
  if (!(pp_tilde >= 0.0) || !(pc_tilde >= 0.0) || !std::isfinite(pp_tilde) || !std::isfinite(pc_tilde)) {
    throw DomainError("power constraints must be finite and nonnegative");
  }
  if (!finite(p) || !finite(f) || !finite(g) || !finite(c)) throw DomainError("channel gains must be finite");
  if (!is_complex && (p.imag() != 0.0 || f.imag() != 0.0 || g.imag() != 0.0 || c.imag() != 0.0)) {
    throw DomainError("real channel variant carries a complex gain");
  }
}

StandardChannel StandardChannel::make(double a, double b, double pp, double pc) {
  StandardChannel s;
  s.a = std::abs(a);
  s.b = std::abs(b);
  s.a_sign = sign_of(a);
  s.b_sign = sign_of(b);
  s.pp = pp;
  s.pc = pc;
  s.validate();
  return s;
}

void StandardChannel::validate() const {
  if (!(pp >= 0.0) || !(pc >= 0.0) || !std::isfinite(pp) || !std::isfinite(pc)) {
    throw DomainError("standard-form powers must be finite and nonnegative");
  }
  if (!(a >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("standard-form cross gain a must be finite and nonnegative");
  }
}

StandardChannel to_standard(const CognitiveChannel& ch) {
  if (!(ch.np > 0.0) || !(ch.ns > 0.0)) throw NonpositiveNoise("noise variances must be positive");
  ch.validate();
  if (std::abs(ch.p) == 0.0) throw ZeroGain("direct primary gain p is zero; standard form is not invertible");
  if (std::abs(ch.c) == 0.0) throw ZeroGain("direct cognitive gain c is zero; standard form is not invertible");

  const double sp = std::sqrt(ch.np);
  const double ss = std::sqrt(ch.ns);
  StandardChannel s;
  s.a = std::abs(ch.f) * ss / (std::abs(ch.c) * sp);
  s.b = std::abs(ch.g) * sp / (std::abs(ch.p) * ss);
  s.pp = std::norm(ch.p) * ch.pp_tilde / ch.np;
  s.pc = std::norm(ch.c) * ch.pc_tilde / ch.ns;
  if (!ch.is_complex) {
    // The direct gains' signs are absorbed into the codewords, so the sign
    // of the normalized cross gain is sign(f)/sign(c) (resp. sign(g)/sign(p)).
    s.a_sign = sign_of(ch.f.real()) * sign_of(ch.c.real());
    s.b_sign = sign_of(ch.g.real()) * sign_of(ch.p.real());
    if (s.a == 0.0) s.a_sign = 1;
    if (s.b == 0.0) s.b_sign = 1;
  }
  return s;
}

CognitiveChannel from_standard(const StandardChannel& s) {
  s.validate();
  return CognitiveChannel::real(1.0, s.a_sign * s.a, s.b_sign * s.b, 1.0, s.pp, s.pc, 1.0, 1.0);
}

ReceivedSnrs received_snrs(const CognitiveChannel& ch) {
  if (!(ch.np > 0.0) || !(ch.ns > 0.0)) throw NonpositiveNoise("noise variances must be positive");
  return {std::norm(ch.p) * ch.pp_tilde / ch.np, std::norm(ch.c) * ch.pc_tilde / ch.ns,
          std::norm(ch.f) * ch.pc_tilde / ch.np, std::norm(ch.g) * ch.pp_tilde / ch.ns};
}

}  // namespace cogcap
