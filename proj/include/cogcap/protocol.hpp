#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogcap/channel.hpp"
#include "cogcap/rates_low.hpp"

namespace cogcap {

enum class Phase { kSilent, kAafProbe, kWaitEstimate, kComputeF, kTransmit };

enum class EventKind { kBroadcastPHat, kProbeStart, kEstimateReady, kBroadcastHHat, kFComputed, kArq, kRateOk, kPowerStep };

const char* to_string(Phase p);
const char* to_string(EventKind k);

struct ProtocolEvent {
  std::size_t time = 0;  // symbol index (CSI) or control epoch (ramping)
  EventKind kind = EventKind::kRateOk;
  std::vector<std::pair<std::string, double>> payload;

  bool operator==(const ProtocolEvent&) const = default;
};

struct ProtocolState {
  Phase phase = Phase::kSilent;
  cplx p_hat{};
  cplx h_hat{};
  cplx f_hat{};
  double pc_current = 0.0;
  double alpha_current = 1.0;
  std::size_t arq_count = 0;

  bool operator==(const ProtocolState&) const = default;
};

// ---- channel-state acquisition -------------------------------------------

struct CsiConfig {
  std::size_t n_probe = 1000;
  // Pilot symbols used by the base station to track p; 0 means n_probe.
  std::size_t n_pilot = 0;
  // Bits per real dimension for the broadcast of h_hat; nullopt = unquantized.
  std::optional<int> quantizer_bits;
  // Quantizer covers [-range, range] per dimension; nullopt = 4 |p_hat|.
  std::optional<double> quantizer_range;
  std::uint64_t seed = 0;
  // Suppress receiver noise during pilot and probe phases.
  bool noiseless = false;
};

struct CsiResult {
  cplx f_hat{};
  cplx p_hat{};
  cplx h_hat{};            // least-squares estimate of p + f sqrt(Pc/Pp)
  cplx h_hat_broadcast{};  // after quantization
  bool arq = false;
  ProtocolState state;
  std::vector<ProtocolEvent> events;
};

// Base station tracks p over pilots and broadcasts p_hat; the cognitive radio
// relays X_c = sqrt(Pc/Pp) X_p; the base station estimates the composite gain,
// broadcasts it quantized, and the cognitive radio forms
// f_hat = (h_hat - p_hat) sqrt(Pp/Pc). An ARQ is logged when the relayed
// composite gain is weaker than p alone.
CsiResult run_csi_acquisition(const CognitiveChannel& ch, const CsiConfig& cfg);

// Uniform mid-rise quantizer with 2^bits levels on [-range, range].
double quantize(double x, int bits, double range);

// ---- ARQ-driven power ramping --------------------------------------------

enum class BackoffPolicy { kIncreaseAlpha, kDecreasePower };

struct RampConfig {
  // Zero means the defaults Pc/100 and 0.01.
  double d_pc = 0.0;
  double d_alpha = 0.0;
  BackoffPolicy policy = BackoffPolicy::kIncreaseAlpha;
  std::size_t max_epochs = 100'000;
  std::uint64_t seed = 0;
};

struct RampStep {
  std::size_t epoch = 0;
  double pc = 0.0;     // physical cognitive power in use
  double alpha = 1.0;
  double rp = 0.0;     // primary rate the environment evaluates
  bool arq = false;

  bool operator==(const RampStep&) const = default;
};

struct RampResult {
  std::vector<RampStep> trajectory;
  std::vector<ProtocolEvent> events;
  ProtocolState state;
  double target_rp = 0.0;
  double d_pc = 0.0;
  double d_alpha = 0.0;
  bool arq_pending = false;
};

// ARQ fires iff rp_low(alpha) < 0.5 ln(1 + Pp) - 1e-9.
bool arq_oracle(const StandardChannel& ch, PowerSplit alpha);

// Starts silent with alpha = 1, ramps Pc up and alpha down while the primary
// stays ARQ-free, backs off on ARQ, and stops at full power on the first
// ARQ-free epoch following an ARQ (or at alpha = 0). Throws NonConvergence
// after max_epochs.
RampResult run_ramping_controller(const CognitiveChannel& ch, const RampConfig& cfg);

}  // namespace cogcap
