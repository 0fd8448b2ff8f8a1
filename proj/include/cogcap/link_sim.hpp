#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cogcap/channel.hpp"
#include "cogcap/rates_low.hpp"

namespace cogcap {

enum class Scheme { kSuperposition, kBeamformingComplex, kTwoTapIsi, kAafProbe };

const char* to_string(Scheme s);
// Accepts superposition, beamforming-complex, two-tap-isi, aaf-probe.
std::optional<Scheme> parse_scheme(const std::string& name);

struct SimConfig {
  Scheme scheme = Scheme::kSuperposition;
  std::size_t n_symbols = 1'000'000;
  std::uint64_t seed = 0;
  CognitiveChannel channel;
  PowerSplit alpha;
  // Listening delay of the cognitive relay, in symbols (two-tap scheme).
  std::size_t l_c = 1;
  // Codeword length. Each independent codeword is scaled to meet its average
  // power constraint with equality.
  std::size_t block_length = 10'000;
  // Beamforming scheme only: false drops the phase-alignment factor.
  bool align_phase = true;

  void validate() const;
};

struct BlockMoments {
  std::size_t start = 0;
  std::size_t length = 0;
  double power_xp = 0.0;
  double power_xc_hat = 0.0;
  double power_xc = 0.0;
  double corr_xp_xc_hat = 0.0;

  bool operator==(const BlockMoments&) const = default;
};

// Empirical moments of one run. Powers are per-symbol averages. For complex
// schemes, implied rates are ln(1 + SINR); for real ones 0.5 ln(1 + SINR).
struct SimTrace {
  Scheme scheme = Scheme::kSuperposition;
  std::size_t n_symbols = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  bool alpha_forced_zero = false;

  double power_xp = 0.0;
  double power_xc_hat = 0.0;
  double power_xc = 0.0;
  double corr_xp_xc_hat = 0.0;  // normalized |<x_c_hat, x_p>| / (|x_c_hat| |x_p|)

  double signal_power_p = 0.0;
  double noise_power_p = 0.0;
  double sinr_p = 0.0;
  double received_power_p = 0.0;
  double coherent_amplitude = 0.0;  // |projection of Y_p on X_p| * sqrt(Pp)

  double signal_power_s = 0.0;
  double noise_power_s = 0.0;
  double sinr_s = 0.0;

  double implied_rp = 0.0;
  double implied_rc = 0.0;
  double target_rp = 0.0;
  double target_rc = 0.0;

  std::vector<BlockMoments> blocks;

  [[nodiscard]] double rel_err() const;
  bool operator==(const SimTrace&) const = default;
};

SimTrace simulate(const SimConfig& cfg);

// Real standard-form superposition with genie subtraction of the known
// interference at the secondary receiver.
SimTrace simulate_superposition(const SimConfig& cfg);

// Complex baseband with the phase-aligned relay term; with align_phase off
// the relay is added without the beamforming rotation (control run).
SimTrace simulate_beamforming_complex(const SimConfig& cfg);

// Delayed relay forming a two-tap channel at the primary receiver, combined
// by maximal-ratio combining of the two resolved taps.
SimTrace simulate_two_tap(const SimConfig& cfg);

// Amplify-and-forward probe X_c = sqrt(Pc/Pp) X_p; coherent_amplitude holds
// |p + f sqrt(Pc/Pp)| sqrt(Pp).
SimTrace simulate_aaf_probe(const SimConfig& cfg);

}  // namespace cogcap
