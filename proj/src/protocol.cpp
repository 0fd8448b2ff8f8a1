#include "cogcap/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cogcap/error.hpp"
#include "cogcap/random.hpp"

namespace cogcap {

namespace {

constexpr double kArqTol = 1e-9;

ProtocolEvent event(std::size_t t, EventKind k, std::vector<std::pair<std::string, double>> payload = {}) {
  return {t, k, std::move(payload)};
}

std::vector<std::pair<std::string, double>> complex_payload(const std::string& name, cplx z) {
  return {{name + "_re", z.real()}, {name + "_im", z.imag()}};
}

// Least-squares gain estimate sum(y x*) / sum(|x|^2) over `n` symbols of
// y = gain * x + z.
cplx ls_estimate(Rng& rng, cplx gain, double power, double noise_var, std::size_t n, bool complex, bool noiseless) {
  cplx num{};
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx x = complex ? rng.complex_gaussian(power) : cplx(rng.gaussian(power), 0.0);
    cplx z{};
    if (!noiseless) z = complex ? rng.complex_gaussian(noise_var) : cplx(rng.gaussian(noise_var), 0.0);
    const cplx y = gain * x + z;
    num += y * std::conj(x);
    den += std::norm(x);
  }
  return num / den;
}

}  // namespace

const char* to_string(Phase p) {
  switch (p) {
    case Phase::kSilent:
      return "Silent";
    case Phase::kAafProbe:
      return "AafProbe";
    case Phase::kWaitEstimate:
      return "WaitEstimate";
    case Phase::kComputeF:
      return "ComputeF";
    case Phase::kTransmit:
      return "Transmit";
  }
  return "unknown";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::kBroadcastPHat:
      return "Broadcast_p_hat";
    case EventKind::kProbeStart:
      return "ProbeStart";
    case EventKind::kEstimateReady:
      return "EstimateReady";
    case EventKind::kBroadcastHHat:
      return "Broadcast_h_hat";
    case EventKind::kFComputed:
      return "F_Computed";
    case EventKind::kArq:
      return "ARQ";
    case EventKind::kRateOk:
      return "RateOk";
    case EventKind::kPowerStep:
      return "PowerStep";
  }
  return "unknown";
}

double quantize(double x, int bits, double range) {
  if (bits < 1) throw DomainError("quantizer needs at least one bit");
  if (!(range > 0.0)) throw DomainError("quantizer range must be positive");
  const double levels = std::ldexp(1.0, bits);
  const double step = 2.0 * range / levels;
  const double idx = std::clamp(std::floor((x + range) / step), 0.0, levels - 1.0);
  return -range + (idx + 0.5) * step;
}

CsiResult run_csi_acquisition(const CognitiveChannel& ch, const CsiConfig& cfg) {
  ch.validate();
  if (cfg.n_probe < 1) throw DomainError("probe needs at least one symbol");
  if (std::abs(ch.p) == 0.0) throw ZeroGain("primary gain p is zero");
  if (!(ch.pc_tilde > 0.0)) throw ZeroPower("cognitive power is zero; f cannot be observed");
  if (!(ch.pp_tilde > 0.0)) throw ZeroPower("primary power is zero; nothing to relay");

  const bool complex = ch.is_complex;
  const std::size_t n_pilot = cfg.n_pilot == 0 ? cfg.n_probe : cfg.n_pilot;
  const Rng root(cfg.seed);
  Rng pilot_rng = root.derive(0);
  Rng probe_rng = root.derive(1);
  const double relay = std::sqrt(ch.pc_tilde / ch.pp_tilde);

  CsiResult r;
  ProtocolState& st = r.state;
  st.phase = Phase::kSilent;
  st.pc_current = 0.0;
  st.alpha_current = 1.0;

  // Step 1: cognitive radio silent, base station tracks p.
  st.p_hat = ls_estimate(pilot_rng, ch.p, ch.pp_tilde, ch.np, n_pilot, complex, cfg.noiseless);
  std::size_t t = n_pilot;
  r.events.push_back(event(t, EventKind::kBroadcastPHat, complex_payload("p_hat", st.p_hat)));

  // Steps 2-3: amplify-and-forward relaying of the primary codeword.
  st.phase = Phase::kAafProbe;
  st.pc_current = ch.pc_tilde;
  r.events.push_back(event(t, EventKind::kProbeStart, {{"pc", ch.pc_tilde}}));
  const cplx composite = ch.p + ch.f * relay;
  st.h_hat = ls_estimate(probe_rng, composite, ch.pp_tilde, ch.np, cfg.n_probe, complex, cfg.noiseless);
  t += cfg.n_probe;
  st.phase = Phase::kWaitEstimate;
  r.events.push_back(event(t, EventKind::kEstimateReady, complex_payload("h_hat", st.h_hat)));

  // The relayed copy combined destructively: the primary could not support
  // its rate during the probe.
  if (std::abs(composite) < std::abs(ch.p)) {
    r.arq = true;
    ++st.arq_count;
    r.events.push_back(event(t, EventKind::kArq, {{"gain", std::abs(composite)}, {"direct_gain", std::abs(ch.p)}}));
  }

  // Step 4: quantized broadcast.
  cplx h_b = st.h_hat;
  if (cfg.quantizer_bits) {
    const double range = cfg.quantizer_range.value_or(4.0 * std::abs(st.p_hat));
    h_b = {quantize(h_b.real(), *cfg.quantizer_bits, range), quantize(h_b.imag(), *cfg.quantizer_bits, range)};
  }
  r.h_hat_broadcast = h_b;
  r.events.push_back(event(t, EventKind::kBroadcastHHat, complex_payload("h_hat", h_b)));

  // Steps 5-6.
  st.phase = Phase::kComputeF;
  st.f_hat = (h_b - st.p_hat) / relay;
  r.events.push_back(event(t, EventKind::kFComputed, complex_payload("f_hat", st.f_hat)));
  st.phase = Phase::kTransmit;

  r.p_hat = st.p_hat;
  r.h_hat = st.h_hat;
  r.f_hat = st.f_hat;
  return r;
}

bool arq_oracle(const StandardChannel& ch, PowerSplit alpha) {
  return rp_low(ch, alpha) < primary_target_rate(ch) - kArqTol;
}

RampResult run_ramping_controller(const CognitiveChannel& ch, const RampConfig& cfg) {
  ch.validate();
  const double pc_max = ch.pc_tilde;
  const double d_pc = cfg.d_pc > 0.0 ? cfg.d_pc : pc_max / 100.0;
  const double d_alpha = cfg.d_alpha > 0.0 ? cfg.d_alpha : 0.01;
  if (!(d_pc > 0.0)) throw DomainError("power step must be positive (is the cognitive power zero?)");
  if (!(d_alpha > 0.0)) throw DomainError("split step must be positive");

  // The environment knows the true gains; the controller only sees ARQs.
  const StandardChannel full = to_standard(ch);
  const auto at_power = [&](double pc) {
    StandardChannel s = full;
    s.pc = std::norm(ch.c) * pc / ch.ns;
    return s;
  };

  RampResult out;
  out.d_pc = d_pc;
  out.d_alpha = d_alpha;
  out.target_rp = primary_target_rate(full);
  ProtocolState& st = out.state;
  st.phase = Phase::kTransmit;
  st.pc_current = 0.0;
  st.alpha_current = 1.0;

  bool previous_arq = false;
  for (std::size_t epoch = 0;; ++epoch) {
    if (epoch >= cfg.max_epochs) {
      throw NonConvergence("ramping controller did not settle within " + std::to_string(cfg.max_epochs) + " epochs");
    }
    const StandardChannel now = at_power(st.pc_current);
    const PowerSplit split(st.alpha_current);
    const double rp = rp_low(now, split);
    const bool arq = arq_oracle(now, split);
    out.trajectory.push_back({epoch, st.pc_current, st.alpha_current, rp, arq});

    if (arq) {
      ++st.arq_count;
      out.events.push_back(event(epoch, EventKind::kArq, {{"pc", st.pc_current}, {"alpha", st.alpha_current}, {"rp", rp}}));
      if (cfg.policy == BackoffPolicy::kIncreaseAlpha && st.alpha_current < 1.0) {
        st.alpha_current = std::min(1.0, st.alpha_current + d_alpha);
      } else {
        st.pc_current = std::max(0.0, st.pc_current - d_pc);
      }
      previous_arq = true;
      continue;
    }

    out.events.push_back(event(epoch, EventKind::kRateOk, {{"pc", st.pc_current}, {"alpha", st.alpha_current}, {"rp", rp}}));
    const bool full_power = st.pc_current >= pc_max;
    if (previous_arq && (full_power || cfg.policy == BackoffPolicy::kDecreasePower)) break;
    if (full_power && st.alpha_current <= 0.0) break;

    st.pc_current = std::min(pc_max, st.pc_current + d_pc);
    st.alpha_current = std::max(0.0, st.alpha_current - d_alpha);
    out.events.push_back(event(epoch, EventKind::kPowerStep, {{"pc", st.pc_current}, {"alpha", st.alpha_current}}));
    previous_arq = false;
  }
  out.arq_pending = out.trajectory.back().arq;
  return out;
}

}  // namespace cogcap
