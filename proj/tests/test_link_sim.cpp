#include <cmath>

#include "doctest.h"

#include "cogcap/error.hpp"
#include "cogcap/link_sim.hpp"
#include "oracles.hpp"

using namespace cogcap;

namespace {

SimConfig config(Scheme s, const CognitiveChannel& ch, double alpha, std::size_t n, std::uint64_t seed = 1) {
  SimConfig cfg;
  cfg.scheme = s;
  cfg.channel = ch;
  cfg.alpha = PowerSplit(alpha);
  cfg.n_symbols = n;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("link_sim") {
  TEST_CASE("scheme names round-trip") {
    for (Scheme s : {Scheme::kSuperposition, Scheme::kBeamformingComplex, Scheme::kTwoTapIsi, Scheme::kAafProbe}) {
      REQUIRE(parse_scheme(to_string(s)).has_value());
      CHECK(*parse_scheme(to_string(s)) == s);
    }
    CHECK_FALSE(parse_scheme("dpc").has_value());
  }

  TEST_CASE("config validation") {
    auto cfg = config(Scheme::kSuperposition, CognitiveChannel::real(1, 1, 0, 1, 1, 1, 1, 1), 0.5, 0);
    CHECK_THROWS_AS(simulate(cfg), DomainError);
    cfg.n_symbols = 10;
    cfg.scheme = Scheme::kTwoTapIsi;
    cfg.l_c = 0;
    CHECK_THROWS_AS(simulate(cfg), DomainError);
  }

  TEST_CASE("superposition at alpha* protects the primary") {
    const auto ch = CognitiveChannel::real(1, 1, 0.4, 1, 1, 1, 1, 1);
    const double al = static_cast<double>(oracle::alpha_star(1, 1, 1));
    const SimTrace t = simulate(config(Scheme::kSuperposition, ch, al, 1'000'000, 5));
    CHECK(std::abs(t.implied_rp - 0.5 * std::log(2.0)) < 0.01 * 0.5 * std::log(2.0));
    CHECK(std::abs(t.sinr_s - (1 - al)) < 0.01 * (1 - al));
  }

  TEST_CASE("superposition without interference") {
    const auto ch = CognitiveChannel::real(1, 0, 0, 1, 3, 2, 1, 1);
    const SimTrace t = simulate(config(Scheme::kSuperposition, ch, 0.0, 200'000));
    CHECK(t.sinr_p == doctest::Approx(3.0).epsilon(0.02));
    CHECK(t.sinr_s == doctest::Approx(2.0).epsilon(0.02));
  }

  TEST_CASE("superposition with a silent cognitive user matches the primary-only channel") {
    const auto ch = CognitiveChannel::real(1, 0.8, 0, 1, 2, 0, 1, 1);
    const std::size_t n = 1'000'000;
    const SimTrace t = simulate(config(Scheme::kSuperposition, ch, 0.3, n));
    // Var(Y_p) = Pp + 1; the sample variance has standard deviation var sqrt(2/n).
    CHECK(std::abs(t.received_power_p - 3.0) < 3 * 3.0 * std::sqrt(2.0 / n));
  }

  TEST_CASE("negative cross gains still combine coherently") {
    const auto ch = CognitiveChannel::real(1, -0.7, 0.3, 1, 2, 1.5, 1, 1);
    const SimTrace t = simulate(config(Scheme::kSuperposition, ch, 0.4, 400'000));
    CHECK(std::abs(t.implied_rp - t.target_rp) < 0.01 * t.target_rp);
    CHECK(std::abs(t.implied_rc - t.target_rc) < 0.01 * t.target_rc);
  }

  TEST_CASE("property: codewords meet their power constraints and stay independent") {
    const auto ch = CognitiveChannel::real(1, 0.5, 0.2, 1, 2, 3, 1, 1);
    for (std::size_t n : {10'000u, 100'000u}) {
      const SimTrace t = simulate(config(Scheme::kSuperposition, ch, 0.3, n, 9));
      CHECK(std::abs(t.power_xp - 2.0) < 1e-2 * 2.0);
      CHECK(std::abs(t.power_xc_hat - 0.7 * 3.0) < 1e-2 * 2.1);
      CHECK(std::abs(t.power_xc - 3.0) < 5e-2 * 3.0);
      CHECK(t.corr_xp_xc_hat < 4 / std::sqrt(static_cast<double>(n)));
      for (const auto& b : t.blocks) {
        CHECK(std::abs(b.power_xp - 2.0) < 1e-6 * 2.0);
        CHECK(std::abs(b.power_xc_hat - 2.1) < 1e-6 * 2.1);
      }
    }
  }

  TEST_CASE("property: implied rates converge as n grows") {
    const auto ch = CognitiveChannel::real(1, 0.6, 0.2, 1, 2, 3, 1, 1);
    double prev = 1e9;
    int decreasing = 0;
    for (std::size_t n : {10'000u, 100'000u, 1'000'000u}) {
      // Average over seeds so the trend is not masked by one lucky draw.
      double err = 0;
      for (std::uint64_t s = 0; s < 8; ++s) err += simulate(config(Scheme::kSuperposition, ch, 0.4, n, 100 + s)).rel_err();
      err /= 8;
      if (err < prev) ++decreasing;
      prev = err;
    }
    CHECK(decreasing == 3);
  }

  TEST_CASE("determinism") {
    const auto ch = CognitiveChannel::polar(1, 0.3, 0.8, -1, 0.2, 0.5, 1, 0, 1, 2, 1, 1);
    for (Scheme s : {Scheme::kSuperposition, Scheme::kBeamformingComplex, Scheme::kTwoTapIsi, Scheme::kAafProbe}) {
      SimConfig cfg = config(s, s == Scheme::kSuperposition ? CognitiveChannel::real(1, 0.8, 0.2, 1, 1, 2, 1, 1) : ch,
                             0.4, 20'000, 77);
      CHECK(simulate(cfg) == simulate(cfg));
      SimConfig other = cfg;
      other.seed = 78;
      CHECK_FALSE(simulate(cfg) == simulate(other));
    }
  }

  TEST_CASE("beamforming with zero phases reduces to the real scheme") {
    const auto cx = CognitiveChannel::polar(1, 0, 0.7, 0, 0.2, 0, 1, 0, 2, 1.5, 1, 1);
    const auto re = CognitiveChannel::real(1, 0.7, 0.2, 1, 2, 1.5, 1, 1);
    const SimTrace tc = simulate(config(Scheme::kBeamformingComplex, cx, 0.4, 400'000));
    const SimTrace tr = simulate(config(Scheme::kSuperposition, re, 0.4, 400'000));
    CHECK(tc.sinr_p == doctest::Approx(tr.sinr_p).epsilon(0.01));
    CHECK(tc.implied_rp == doctest::Approx(2 * tr.target_rp).epsilon(0.01));
  }

  TEST_CASE("beamforming combines coherently for random phases") {
    const double mp = 1.2, mf = 0.8, pp = 1.5, pc = 2, np = 0.7, al = 0.5;
    const auto ch = CognitiveChannel::polar(mp, 2.1, mf, -0.9, 0.3, 1.0, 1, 0.4, pp, pc, np, 1);
    const SimTrace t = simulate(config(Scheme::kBeamformingComplex, ch, al, 1'000'000));
    const double coh = mp * std::sqrt(pp) + mf * std::sqrt(al * pc);
    const double expect = coh * coh + mf * mf * (1 - al) * pc + np;
    CHECK(std::abs(t.received_power_p - expect) < 0.01 * expect);
    CHECK(std::abs(t.coherent_amplitude - coh) < 0.01 * coh);
  }

  TEST_CASE("misaligned control run loses coherent amplitude") {
    const auto ch = CognitiveChannel::polar(1, 1.0, 0.8, -2.0, 0, 0, 1, 0, 1, 2, 1, 1);
    SimConfig cfg = config(Scheme::kBeamformingComplex, ch, 0.5, 200'000);
    const SimTrace aligned = simulate(cfg);
    cfg.align_phase = false;
    const SimTrace control = simulate(cfg);
    CHECK(control.coherent_amplitude < aligned.coherent_amplitude - 0.05);
    // Cosine-loss oracle: |p| sqrt(Pp) e^{j th_p} + |f| sqrt(a Pc) e^{j th_f}.
    const std::complex<double> ref = std::polar(1.0, 1.0) + std::polar(0.8 * std::sqrt(1.0), -2.0);
    CHECK(control.coherent_amplitude == doctest::Approx(std::abs(ref)).epsilon(0.01));
  }

  TEST_CASE("beamforming with f = 0 forces alpha to zero") {
    const auto ch = CognitiveChannel::polar(1, 0.3, 0, 0, 0.2, 0, 1, 0, 1, 2, 1, 1);
    const SimTrace t = simulate(config(Scheme::kBeamformingComplex, ch, 0.5, 10'000));
    CHECK(t.alpha_forced_zero);
    CHECK(t.alpha == 0.0);
  }

  TEST_CASE("two-tap scheme at the diversity split") {
    // S = |p|^2 Pp / Np = 1.
    const auto ch = CognitiveChannel::polar(1, 0.5, 0.9, -1.3, 0, 0, 1, 0, 1, 2, 1, 1);
    const SimTrace t = simulate(config(Scheme::kTwoTapIsi, ch, alpha_diversity(ch).value(), 1'000'000));
    CHECK(std::abs(t.sinr_p - 1.0) < 0.01);
  }

  TEST_CASE("two-tap scheme with f = 0 keeps the direct SNR") {
    const auto ch = CognitiveChannel::real(1.5, 0, 0, 1, 2, 1, 1, 1);
    const SimTrace t = simulate(config(Scheme::kTwoTapIsi, ch, 0.6, 400'000));
    CHECK(t.sinr_p == doctest::Approx(4.5).epsilon(0.01));
  }

  TEST_CASE("two-tap scheme with full relaying") {
    const auto ch = CognitiveChannel::polar(1, 0.2, 0.9, 1.1, 0, 0, 1, 0, 1, 2, 1, 1);
    SimConfig cfg = config(Scheme::kTwoTapIsi, ch, 1.0, 400'000);
    cfg.l_c = 3;
    const SimTrace t = simulate(cfg);
    const double expect = 1 + 0.81 * 2;
    CHECK(t.sinr_p == doctest::Approx(expect).epsilon(0.01));
    CHECK(t.sinr_p >= 1.0);
  }

  TEST_CASE("amplify-and-forward probe amplitude") {
    const auto ch = CognitiveChannel::polar(1, 0.0, 0.5, 2.5, 0, 0, 1, 0, 2, 1, 1, 1);
    const SimTrace t = simulate(config(Scheme::kAafProbe, ch, 1.0, 200'000));
    const double ref = std::abs(ch.p + ch.f * std::sqrt(0.5)) * std::sqrt(2.0);
    CHECK(t.coherent_amplitude == doctest::Approx(ref).epsilon(0.01));
    const auto nopp = CognitiveChannel::real(1, 0.5, 0, 1, 0, 1, 1, 1);
    CHECK_THROWS_AS(simulate(config(Scheme::kAafProbe, nopp, 1.0, 100)), ZeroPower);
  }
}
