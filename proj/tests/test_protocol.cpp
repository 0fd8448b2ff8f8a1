#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "cogcap/error.hpp"
#include "cogcap/protocol.hpp"
#include "oracles.hpp"

using namespace cogcap;

namespace {

double rms_f_error(const CognitiveChannel& ch, std::size_t n_probe, int trials) {
  double acc = 0;
  for (int i = 0; i < trials; ++i) {
    CsiConfig cfg;
    cfg.n_probe = n_probe;
    cfg.seed = 1000 + static_cast<std::uint64_t>(i);
    acc += std::norm(run_csi_acquisition(ch, cfg).f_hat - ch.f);
  }
  return std::sqrt(acc / trials);
}

std::size_t count(const std::vector<ProtocolEvent>& ev, EventKind k) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](const ProtocolEvent& e) { return e.kind == k; }));
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("event kind names") {
    CHECK(std::string(to_string(EventKind::kBroadcastPHat)) == "Broadcast_p_hat");
    CHECK(std::string(to_string(EventKind::kFComputed)) == "F_Computed");
    CHECK(std::string(to_string(EventKind::kArq)) == "ARQ");
    CHECK(std::string(to_string(Phase::kAafProbe)) == "AafProbe");
  }

  TEST_CASE("noiseless probe recovers f exactly") {
    const auto ch = CognitiveChannel::polar(1.3, 0.4, 0.7, -2.0, 0.2, 0, 1, 0, 2, 1.5, 1, 1);
    CsiConfig cfg;
    cfg.noiseless = true;
    const CsiResult r = run_csi_acquisition(ch, cfg);
    CHECK(std::abs(r.f_hat - ch.f) < 1e-12);
    CHECK(r.state.phase == Phase::kTransmit);
  }

  TEST_CASE("event order follows the six steps") {
    const auto ch = CognitiveChannel::polar(1, 0.4, 0.7, 0.1, 0.2, 0, 1, 0, 2, 1.5, 1, 1);
    const CsiResult r = run_csi_acquisition(ch, CsiConfig{});
    REQUIRE(r.events.size() == 5);
    CHECK(r.events[0].kind == EventKind::kBroadcastPHat);
    CHECK(r.events[1].kind == EventKind::kProbeStart);
    CHECK(r.events[2].kind == EventKind::kEstimateReady);
    CHECK(r.events[3].kind == EventKind::kBroadcastHHat);
    CHECK(r.events[4].kind == EventKind::kFComputed);
    for (std::size_t i = 1; i < r.events.size(); ++i) CHECK(r.events[i].time >= r.events[i - 1].time);
  }

  TEST_CASE("destructive relaying raises exactly one ARQ before F_Computed") {
    const auto ch = CognitiveChannel::real(1, -0.5, 0, 1, 1, 1, 1, 1);
    const CsiResult r = run_csi_acquisition(ch, CsiConfig{});
    CHECK(r.arq);
    CHECK(count(r.events, EventKind::kArq) == 1);
    const auto arq = std::find_if(r.events.begin(), r.events.end(), [](const auto& e) { return e.kind == EventKind::kArq; });
    const auto fc =
        std::find_if(r.events.begin(), r.events.end(), [](const auto& e) { return e.kind == EventKind::kFComputed; });
    CHECK(arq < fc);
    CHECK(count(run_csi_acquisition(CognitiveChannel::real(1, 0.5, 0, 1, 1, 1, 1, 1), CsiConfig{}).events,
                EventKind::kArq) == 0);
  }

  TEST_CASE("noisy probe error shrinks as one over root n") {
    const auto ch = CognitiveChannel::polar(1, 0.3, 0.6, 1.2, 0, 0, 1, 0, 1, 1, 1, 1);
    const double e2 = rms_f_error(ch, 100, 300);
    const double e3 = rms_f_error(ch, 1000, 300);
    const double e4 = rms_f_error(ch, 10000, 300);
    const double r10 = std::sqrt(10.0);
    CHECK(e2 / e3 > r10 / 1.5);
    CHECK(e2 / e3 < r10 * 1.5);
    CHECK(e3 / e4 > r10 / 1.5);
    CHECK(e3 / e4 < r10 * 1.5);
  }

  TEST_CASE("least-squares error matches its variance") {
    // Real channel: p_hat and h_hat each carry variance Np / (n Pp), so
    // Var(f_hat) = 2 Np / (n Pp) * Pp / Pc.
    const auto ch = CognitiveChannel::real(1, 0.6, 0, 1, 1, 2, 1, 1);
    const double e = rms_f_error(ch, 1000, 400);
    const double ref = std::sqrt(2.0 / 1000 / 2.0);
    CHECK(e == doctest::Approx(ref).epsilon(0.15));
  }

  TEST_CASE("quantizer") {
    CHECK(quantize(0.0, 1, 1.0) == doctest::Approx(0.5));
    CHECK(quantize(-0.1, 1, 1.0) == doctest::Approx(-0.5));
    CHECK(quantize(5.0, 3, 1.0) == doctest::Approx(0.875));
    CHECK(quantize(-5.0, 3, 1.0) == doctest::Approx(-0.875));
    for (int bits : {2, 6, 12}) {
      const double step = 2.0 / std::ldexp(1.0, bits);
      for (double x = -0.99; x < 0.99; x += 0.0137) CHECK(std::abs(quantize(x, bits, 1.0) - x) <= step / 2 + 1e-15);
    }
  }

  TEST_CASE("finer quantization improves the estimate") {
    const auto ch = CognitiveChannel::polar(1, 0.3, 0.6, 1.2, 0, 0, 1, 0, 1, 1, 1, 1);
    double prev = 1e9;
    for (int bits : {2, 4, 8, 16}) {
      CsiConfig cfg;
      cfg.noiseless = true;
      cfg.quantizer_bits = bits;
      const double err = std::abs(run_csi_acquisition(ch, cfg).f_hat - ch.f);
      CHECK(err <= prev);
      prev = err;
    }
    CHECK(prev < 1e-3);
  }

  TEST_CASE("csi errors") {
    CHECK_THROWS_AS(run_csi_acquisition(CognitiveChannel::real(1, 0.5, 0, 1, 1, 0, 1, 1), CsiConfig{}), ZeroPower);
    CHECK_THROWS_AS(run_csi_acquisition(CognitiveChannel::real(0, 0.5, 0, 1, 1, 1, 1, 1), CsiConfig{}), ZeroGain);
    CsiConfig zero;
    zero.n_probe = 0;
    CHECK_THROWS_AS(run_csi_acquisition(CognitiveChannel::real(1, 0.5, 0, 1, 1, 1, 1, 1), zero), DomainError);
  }

  TEST_CASE("event log determinism") {
    const auto ch = CognitiveChannel::polar(1, 0.3, 0.6, 1.2, 0, 0, 1, 0, 1, 1, 1, 1);
    CsiConfig cfg;
    cfg.seed = 5;
    cfg.quantizer_bits = 6;
    CHECK(run_csi_acquisition(ch, cfg).events == run_csi_acquisition(ch, cfg).events);
    const auto rc = CognitiveChannel::real(1, 0.8, 0, 1, 1, 1, 1, 1);
    CHECK(run_ramping_controller(rc, RampConfig{}).events == run_ramping_controller(rc, RampConfig{}).events);
  }

  TEST_CASE("ARQ oracle") {
    for (double a : {0.0, 0.3, 1.0, 2.5}) CHECK_FALSE(arq_oracle(StandardChannel::make(a, 0, 1.5, 2), PowerSplit(1.0)));
    CHECK(arq_oracle(StandardChannel::make(0.3, 0, 1.5, 2), PowerSplit(0.0)));
    for (double al : {0.0, 0.5, 1.0}) CHECK_FALSE(arq_oracle(StandardChannel::make(0, 0, 1.5, 2), PowerSplit(al)));
  }

  TEST_CASE("ramping settles near alpha* at full power") {
    const auto ch = CognitiveChannel::real(1, 0.8, 0, 1, 2, 3, 1, 1);
    const RampResult r = run_ramping_controller(ch, RampConfig{});
    const double target = static_cast<double>(oracle::alpha_star(0.8, 2, 3));
    CHECK(r.state.pc_current == 3.0);
    CHECK(std::abs(r.state.alpha_current - target) <= 2 * r.d_alpha);
    CHECK_FALSE(r.arq_pending);
    CHECK_FALSE(arq_oracle(to_standard(ch), PowerSplit(r.state.alpha_current)));
  }

  TEST_CASE("ramping with a = 0 never raises an ARQ") {
    const RampResult r = run_ramping_controller(CognitiveChannel::real(1, 0, 0, 1, 2, 3, 1, 1), RampConfig{});
    CHECK(r.state.arq_count == 0);
    CHECK(r.state.pc_current == 3.0);
    CHECK(r.state.alpha_current == 0.0);
  }

  TEST_CASE("one oversized power step costs at most one ARQ") {
    RampConfig cfg;
    cfg.d_pc = 10.0;
    const RampResult r = run_ramping_controller(CognitiveChannel::real(1, 0.1, 0, 1, 2, 3, 1, 1), cfg);
    CHECK(r.state.arq_count <= 1);
    CHECK_FALSE(r.arq_pending);
  }

  TEST_CASE("power-decrease policy") {
    RampConfig cfg;
    cfg.policy = BackoffPolicy::kDecreasePower;
    const auto ch = CognitiveChannel::real(1, 0.8, 0, 1, 2, 3, 1, 1);
    const RampResult r = run_ramping_controller(ch, cfg);
    CHECK_FALSE(r.arq_pending);
    CHECK_FALSE(r.trajectory.back().arq);
  }

  TEST_CASE("property: the controller never advances while an ARQ is pending") {
    for (double f : {0.2, 0.5, 0.9, 1.0}) {
      for (auto policy : {BackoffPolicy::kIncreaseAlpha, BackoffPolicy::kDecreasePower}) {
        RampConfig cfg;
        cfg.policy = policy;
        const RampResult r = run_ramping_controller(CognitiveChannel::real(1, f, 0, 1, 1.5, 2, 1, 1), cfg);
        for (std::size_t k = 0; k + 1 < r.trajectory.size(); ++k) {
          if (!r.trajectory[k].arq) continue;
          CHECK(r.trajectory[k + 1].pc <= r.trajectory[k].pc);
          CHECK(r.trajectory[k + 1].alpha >= r.trajectory[k].alpha);
        }
        for (const auto& s : r.trajectory) {
          CHECK(s.pc >= 0.0);
          CHECK(s.pc <= 2.0);
          CHECK(s.alpha >= 0.0);
          CHECK(s.alpha <= 1.0);
        }
      }
    }
  }

  TEST_CASE("property: smaller split steps land closer to alpha*") {
    const auto ch = CognitiveChannel::real(1, 0.7, 0, 1, 2, 3, 1, 1);
    const double target = static_cast<double>(oracle::alpha_star(0.7, 2, 3));
    double prev = 1e9;
    for (double d : {0.1, 0.01, 0.001}) {
      RampConfig cfg;
      cfg.d_alpha = d;
      const RampResult r = run_ramping_controller(ch, cfg);
      CHECK(r.state.pc_current == 3.0);
      const double gap = std::abs(r.state.alpha_current - target);
      CHECK(gap <= 2 * d);
      CHECK(gap < prev);
      prev = gap;
    }
  }

  TEST_CASE("epoch cap") {
    RampConfig cfg;
    cfg.max_epochs = 5;
    CHECK_THROWS_AS(run_ramping_controller(CognitiveChannel::real(1, 0.7, 0, 1, 2, 3, 1, 1), cfg), NonConvergence);
  }
}
