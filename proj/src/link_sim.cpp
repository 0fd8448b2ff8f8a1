#include "cogcap/link_sim.hpp"

#include <algorithm>
#include <cmath>

#include "cogcap/error.hpp"
#include "cogcap/numeric.hpp"
#include "cogcap/random.hpp"

namespace cogcap {

namespace {

// Independent streams for each random component of a run.
enum Stream : std::uint64_t { kPrimary = 0, kCognitive = 1, kNoiseP = 2, kNoiseS = 3 };

cplx draw(Rng& rng, double variance, bool complex) {
  return complex ? rng.complex_gaussian(variance) : cplx(rng.gaussian(variance), 0.0);
}

// i.i.d. Gaussian codeword, each block of `block` symbols rescaled so that
// its empirical average power equals `power`.
std::vector<cplx> codeword(Rng& rng, std::size_t n, double power, std::size_t block, bool complex) {
  std::vector<cplx> x(n);
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t end = std::min(n, start + block);
    numeric::CompensatedSum energy;
    for (std::size_t i = start; i < end; ++i) {
      x[i] = draw(rng, 1.0, complex);
      energy.add(std::norm(x[i]));
    }
    const double scale = energy.value() > 0.0
                             ? std::sqrt(power * static_cast<double>(end - start) / energy.value())
                             : 0.0;
    for (std::size_t i = start; i < end; ++i) x[i] *= scale;
  }
  return x;
}

std::vector<cplx> noise(Rng& rng, std::size_t n, double variance, bool complex) {
  std::vector<cplx> z(n);
  for (auto& v : z) v = draw(rng, variance, complex);
  return z;
}

double mean_power(const std::vector<cplx>& x, std::size_t start, std::size_t end) {
  numeric::CompensatedSum s;
  for (std::size_t i = start; i < end; ++i) s.add(std::norm(x[i]));
  return end > start ? s.value() / static_cast<double>(end - start) : 0.0;
}

double normalized_corr(const std::vector<cplx>& x, const std::vector<cplx>& y, std::size_t start,
                       std::size_t end) {
  numeric::CompensatedSum re;
  numeric::CompensatedSum im;
  numeric::CompensatedSum ex;
  numeric::CompensatedSum ey;
  for (std::size_t i = start; i < end; ++i) {
    const cplx v = x[i] * std::conj(y[i]);
    re.add(v.real());
    im.add(v.imag());
    ex.add(std::norm(x[i]));
    ey.add(std::norm(y[i]));
  }
  const double denom = std::sqrt(ex.value() * ey.value());
  return denom > 0.0 ? std::hypot(re.value(), im.value()) / denom : 0.0;
}

// Fills the codeword statistics shared by every scheme.
void codeword_moments(SimTrace& t, const std::vector<cplx>& xp, const std::vector<cplx>& xc_hat,
                      const std::vector<cplx>& xc, std::size_t n, std::size_t block) {
  t.power_xp = mean_power(xp, 0, n);
  t.power_xc_hat = mean_power(xc_hat, 0, n);
  t.power_xc = mean_power(xc, 0, n);
  t.corr_xp_xc_hat = normalized_corr(xc_hat, xp, 0, n);
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t end = std::min(n, start + block);
    t.blocks.push_back({start, end - start, mean_power(xp, start, end), mean_power(xc_hat, start, end),
                        mean_power(xc, start, end), normalized_corr(xc_hat, xp, start, end)});
  }
}

double rate_of(double sinr, bool complex) { return complex ? std::log1p(sinr) : 0.5 * std::log1p(sinr); }

// Sum of |x|^2 and the ratio of two such sums, the empirical SINR.
struct PowerRatio {
  numeric::CompensatedSum signal;
  numeric::CompensatedSum noise;
  void add(cplx s, cplx z) {
    signal.add(std::norm(s));
    noise.add(std::norm(z));
  }
};

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::kSuperposition:
      return "superposition";
    case Scheme::kBeamformingComplex:
      return "beamforming-complex";
    case Scheme::kTwoTapIsi:
      return "two-tap-isi";
    case Scheme::kAafProbe:
      return "aaf-probe";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::kSuperposition, Scheme::kBeamformingComplex, Scheme::kTwoTapIsi, Scheme::kAafProbe}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

void SimConfig::validate() const {
  if (n_symbols < 1) throw DomainError("simulation needs at least one symbol");
  if (block_length < 1) throw DomainError("codeword block length must be positive");
  channel.validate();
  if (scheme == Scheme::kTwoTapIsi && l_c < 1) throw DomainError("two-tap scheme needs a listening delay l_c >= 1");
}

double SimTrace::rel_err() const {
  const auto rel = [](double got, double want) {
    return want != 0.0 ? std::abs(got - want) / std::abs(want) : std::abs(got - want);
  };
  return std::max(rel(implied_rp, target_rp), rel(implied_rc, target_rc));
}

SimTrace simulate(const SimConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::kSuperposition:
      return simulate_superposition(cfg);
    case Scheme::kBeamformingComplex:
      return simulate_beamforming_complex(cfg);
    case Scheme::kTwoTapIsi:
      return simulate_two_tap(cfg);
    case Scheme::kAafProbe:
      return simulate_aaf_probe(cfg);
  }
  throw DomainError("unknown scheme");
}

SimTrace simulate_superposition(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.channel.is_complex) throw DomainError("superposition scheme runs on a real channel");
  const StandardChannel ch = to_standard(cfg.channel);
  const std::size_t n = cfg.n_symbols;
  const double al = cfg.alpha.value();
  const Rng root(cfg.seed);
  Rng rp_rng = root.derive(kPrimary);
  Rng rc_rng = root.derive(kCognitive);
  Rng zp_rng = root.derive(kNoiseP);
  Rng zs_rng = root.derive(kNoiseS);

  const auto xp = codeword(rp_rng, n, ch.pp, cfg.block_length, false);
  const auto xc_hat = codeword(rc_rng, n, (1.0 - al) * ch.pc, cfg.block_length, false);
  const auto zp = noise(zp_rng, n, 1.0, false);
  const auto zs = noise(zs_rng, n, 1.0, false);

  // Relay polarity follows the sign of a so the relayed copy adds coherently.
  const double a = ch.a_sign * ch.a;
  const double b = ch.b_sign * ch.b;
  const double relay = ch.pp > 0.0 ? ch.a_sign * std::sqrt(al * ch.pc / ch.pp) : 0.0;

  std::vector<cplx> xc(n);
  PowerRatio prim;
  PowerRatio sec;
  numeric::CompensatedSum yp_power;
  numeric::CompensatedSum yp_xp;
  for (std::size_t i = 0; i < n; ++i) {
    xc[i] = xc_hat[i] + relay * xp[i];
    const cplx yp = xp[i] + a * xc[i] + zp[i];
    const cplx ys = b * xp[i] + xc[i] + zs[i];
    prim.add((1.0 + a * relay) * xp[i], a * xc_hat[i] + zp[i]);
    // Genie subtraction of the interference known at the cognitive encoder.
    const cplx residual = ys - (b + relay) * xp[i];
    sec.add(xc_hat[i], residual - xc_hat[i]);
    yp_power.add(std::norm(yp));
    yp_xp.add((yp * std::conj(xp[i])).real());
  }

  SimTrace t;
  t.scheme = cfg.scheme;
  t.n_symbols = n;
  t.seed = cfg.seed;
  t.alpha = al;
  codeword_moments(t, xp, xc_hat, xc, n, cfg.block_length);
  const double nn = static_cast<double>(n);
  t.signal_power_p = prim.signal.value() / nn;
  t.noise_power_p = prim.noise.value() / nn;
  t.sinr_p = prim.signal.value() / prim.noise.value();
  t.received_power_p = yp_power.value() / nn;
  t.coherent_amplitude = t.power_xp > 0.0 ? std::abs(yp_xp.value() / nn) / std::sqrt(t.power_xp) : 0.0;
  t.signal_power_s = sec.signal.value() / nn;
  t.noise_power_s = sec.noise.value() / nn;
  t.sinr_s = sec.signal.value() / sec.noise.value();
  t.implied_rp = rate_of(t.sinr_p, false);
  t.implied_rc = rate_of(t.sinr_s, false);
  t.target_rp = rp_low(ch, cfg.alpha);
  t.target_rc = rc_low(ch, cfg.alpha);
  return t;
}

SimTrace simulate_beamforming_complex(const SimConfig& cfg) {
  cfg.validate();
  const CognitiveChannel& ch = cfg.channel;
  const std::size_t n = cfg.n_symbols;
  SimTrace t;
  t.scheme = cfg.scheme;
  t.n_symbols = n;
  t.seed = cfg.seed;

  PowerSplit split = cfg.alpha;
  if (std::abs(ch.f) == 0.0 && split.value() > 0.0) {
    // No beamforming direction exists; relaying through a zero gain only
    // wastes cognitive power.
    split = PowerSplit(0.0);
    t.alpha_forced_zero = true;
  }
  const double al = split.value();
  t.alpha = al;

  const Rng root(cfg.seed);
  Rng rp_rng = root.derive(kPrimary);
  Rng rc_rng = root.derive(kCognitive);
  Rng zp_rng = root.derive(kNoiseP);
  Rng zs_rng = root.derive(kNoiseS);
  const auto xp = codeword(rp_rng, n, ch.pp_tilde, cfg.block_length, true);
  const auto xc_hat = codeword(rc_rng, n, (1.0 - al) * ch.pc_tilde, cfg.block_length, true);
  const auto zp = noise(zp_rng, n, ch.np, true);
  const auto zs = noise(zs_rng, n, ch.ns, true);

  const double scale = ch.pp_tilde > 0.0 ? std::sqrt(al * ch.pc_tilde / ch.pp_tilde) : 0.0;
  cplx relay = scale;
  if (cfg.align_phase && std::abs(ch.f) > 0.0) {
    relay = std::conj(ch.f) / std::abs(ch.f) * std::polar(1.0, std::arg(ch.p)) * scale;
  }
  const cplx h_eff = ch.p + ch.f * relay;

  std::vector<cplx> xc(n);
  PowerRatio prim;
  PowerRatio sec;
  numeric::CompensatedSum yp_power;
  numeric::CompensatedSum proj_re;
  numeric::CompensatedSum proj_im;
  for (std::size_t i = 0; i < n; ++i) {
    xc[i] = xc_hat[i] + relay * xp[i];
    const cplx yp = ch.p * xp[i] + ch.f * xc[i] + zp[i];
    const cplx ys = ch.g * xp[i] + ch.c * xc[i] + zs[i];
    prim.add(h_eff * xp[i], ch.f * xc_hat[i] + zp[i]);
    const cplx residual = ys - (ch.g + ch.c * relay) * xp[i];
    sec.add(ch.c * xc_hat[i], residual - ch.c * xc_hat[i]);
    yp_power.add(std::norm(yp));
    const cplx proj = yp * std::conj(xp[i]);
    proj_re.add(proj.real());
    proj_im.add(proj.imag());
  }

  codeword_moments(t, xp, xc_hat, xc, n, cfg.block_length);
  const double nn = static_cast<double>(n);
  t.signal_power_p = prim.signal.value() / nn;
  t.noise_power_p = prim.noise.value() / nn;
  t.sinr_p = prim.signal.value() / prim.noise.value();
  t.received_power_p = yp_power.value() / nn;
  // Least-squares gain of the X_p direction times the primary amplitude.
  const double xp_energy = t.power_xp * nn;
  t.coherent_amplitude =
      xp_energy > 0.0 ? std::hypot(proj_re.value(), proj_im.value()) / xp_energy * std::sqrt(ch.pp_tilde) : 0.0;
  t.signal_power_s = sec.signal.value() / nn;
  t.noise_power_s = sec.noise.value() / nn;
  t.sinr_s = sec.signal.value() / sec.noise.value();
  t.implied_rp = rate_of(t.sinr_p, true);
  t.implied_rc = rate_of(t.sinr_s, true);
  if (cfg.align_phase || al == 0.0) {
    const RatePair target = rates_complex(ch, split);
    t.target_rp = target.rp;
    t.target_rc = target.rc;
  } else {
    t.target_rp = std::log1p(std::norm(h_eff) * ch.pp_tilde / (ch.np + std::norm(ch.f) * (1.0 - al) * ch.pc_tilde));
    t.target_rc = std::log1p(std::norm(ch.c) * (1.0 - al) * ch.pc_tilde / ch.ns);
  }
  return t;
}

SimTrace simulate_two_tap(const SimConfig& cfg) {
  cfg.validate();
  const CognitiveChannel& ch = cfg.channel;
  const bool complex = ch.is_complex;
  const std::size_t n = cfg.n_symbols;
  const std::size_t lc = cfg.l_c;
  const double al = cfg.alpha.value();
  // Symbols [lc, lc + n) are scored; the stream carries lc extra symbols on
  // both sides so each scored symbol sees both taps in steady state.
  const std::size_t total = n + 2 * lc;

  const Rng root(cfg.seed);
  Rng rp_rng = root.derive(kPrimary);
  Rng rc_rng = root.derive(kCognitive);
  Rng zp_rng = root.derive(kNoiseP);
  Rng zs_rng = root.derive(kNoiseS);
  const auto xp = codeword(rp_rng, total, ch.pp_tilde, cfg.block_length, complex);
  const auto xc_hat = codeword(rc_rng, total, (1.0 - al) * ch.pc_tilde, cfg.block_length, complex);
  const auto zp = noise(zp_rng, total, ch.np, complex);
  const auto zs = noise(zs_rng, total, ch.ns, complex);

  const double relay = ch.pp_tilde > 0.0 ? std::sqrt(al * ch.pc_tilde / ch.pp_tilde) : 0.0;
  // The cognitive transmitter emits, lc symbols late, its own codeword plus
  // the scaled primary codeword it has just decoded.
  std::vector<cplx> xc(total, cplx{});
  for (std::size_t m = lc; m < total; ++m) xc[m] = xc_hat[m - lc] + relay * xp[m - lc];
  std::vector<cplx> yp(total);
  for (std::size_t m = 0; m < total; ++m) yp[m] = ch.p * xp[m] + ch.f * xc[m] + zp[m];

  const cplx h0 = ch.p;
  const cplx h1 = ch.f * relay;
  PowerRatio mrc;
  PowerRatio sec;
  for (std::size_t m = lc; m < lc + n; ++m) {
    // Resolved taps with the neighbouring symbols' contributions removed, as
    // a Rake finger or an OFDM tone would see them.
    const cplx tap0 = yp[m] - h1 * xp[m - lc];
    const cplx tap1 = yp[m + lc] - h0 * xp[m + lc];
    const cplx n0 = tap0 - h0 * xp[m];
    const cplx n1 = tap1 - h1 * xp[m];
    const cplx signal = (std::norm(h0) + std::norm(h1)) * xp[m];
    mrc.add(signal, std::conj(h0) * n0 + std::conj(h1) * n1);

    // Secondary receiver after removing the known primary interference.
    const cplx ys = ch.g * xp[m + lc] + ch.c * xc[m + lc] + zs[m + lc];
    const cplx residual = ys - ch.g * xp[m + lc] - ch.c * relay * xp[m];
    sec.add(ch.c * xc_hat[m], residual - ch.c * xc_hat[m]);
  }

  SimTrace t;
  t.scheme = cfg.scheme;
  t.n_symbols = n;
  t.seed = cfg.seed;
  t.alpha = al;
  codeword_moments(t, xp, xc_hat, xc, total, cfg.block_length);
  const double nn = static_cast<double>(n);
  t.signal_power_p = mrc.signal.value() / nn;
  t.noise_power_p = mrc.noise.value() / nn;
  t.sinr_p = mrc.signal.value() / mrc.noise.value();
  t.received_power_p = mean_power(yp, lc, lc + n);
  t.coherent_amplitude = std::sqrt(std::norm(h0) + std::norm(h1)) * std::sqrt(ch.pp_tilde);
  t.signal_power_s = sec.signal.value() / nn;
  t.noise_power_s = sec.noise.value() / nn;
  t.sinr_s = sec.signal.value() / sec.noise.value();
  t.implied_rp = rate_of(t.sinr_p, complex);
  t.implied_rc = rate_of(t.sinr_s, complex);
  const RatePair target = rates_two_tap(ch, cfg.alpha);
  t.target_rp = complex ? target.rp : 0.5 * target.rp;
  t.target_rc = complex ? target.rc : 0.5 * target.rc;
  return t;
}

SimTrace simulate_aaf_probe(const SimConfig& cfg) {
  cfg.validate();
  const CognitiveChannel& ch = cfg.channel;
  if (!(ch.pp_tilde > 0.0)) throw ZeroPower("amplify-and-forward probe needs Pp > 0");
  const bool complex = ch.is_complex;
  const std::size_t n = cfg.n_symbols;
  const Rng root(cfg.seed);
  Rng rp_rng = root.derive(kPrimary);
  Rng zp_rng = root.derive(kNoiseP);
  const auto xp = codeword(rp_rng, n, ch.pp_tilde, cfg.block_length, complex);
  const auto zp = noise(zp_rng, n, ch.np, complex);
  const double relay = std::sqrt(ch.pc_tilde / ch.pp_tilde);
  const cplx h = ch.p + ch.f * relay;

  std::vector<cplx> xc(n);
  const std::vector<cplx> none(n, cplx{});
  PowerRatio prim;
  numeric::CompensatedSum yp_power;
  numeric::CompensatedSum proj_re;
  numeric::CompensatedSum proj_im;
  for (std::size_t i = 0; i < n; ++i) {
    xc[i] = relay * xp[i];
    const cplx yp = ch.p * xp[i] + ch.f * xc[i] + zp[i];
    prim.add(h * xp[i], zp[i]);
    yp_power.add(std::norm(yp));
    const cplx proj = yp * std::conj(xp[i]);
    proj_re.add(proj.real());
    proj_im.add(proj.imag());
  }

  SimTrace t;
  t.scheme = cfg.scheme;
  t.n_symbols = n;
  t.seed = cfg.seed;
  t.alpha = 1.0;
  codeword_moments(t, xp, none, xc, n, cfg.block_length);
  const double nn = static_cast<double>(n);
  t.signal_power_p = prim.signal.value() / nn;
  t.noise_power_p = prim.noise.value() / nn;
  t.sinr_p = prim.signal.value() / prim.noise.value();
  t.received_power_p = yp_power.value() / nn;
  t.coherent_amplitude = std::hypot(proj_re.value(), proj_im.value()) / (t.power_xp * nn) * std::sqrt(ch.pp_tilde);
  t.implied_rp = rate_of(t.sinr_p, complex);
  t.target_rp = rate_of(std::norm(h) * ch.pp_tilde / ch.np, complex);
  return t;
}

}  // namespace cogcap
