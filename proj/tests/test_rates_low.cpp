#include <cmath>

#include "doctest.h"

#include "cogcap/error.hpp"
#include "cogcap/random.hpp"
#include "cogcap/rates_low.hpp"
#include "oracles.hpp"

using namespace cogcap;

namespace {

StandardChannel std_ch(double a, double pp, double pc) { return StandardChannel::make(a, 0.0, pp, pc); }

}  // namespace

TEST_SUITE("rates_low") {
  TEST_CASE("power split domain") {
    CHECK_THROWS_AS(PowerSplit(-0.01), DomainError);
    CHECK_THROWS_AS(PowerSplit(1.01), DomainError);
    CHECK_THROWS_AS(PowerSplit(NAN), DomainError);
    CHECK(PowerSplit(0.25).complement() == 0.75);
  }

  TEST_CASE("rp_low spot values") {
    CHECK(rp_low(std_ch(1, 1, 1), PowerSplit(1.0)) == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-15));
    CHECK(rp_low(std_ch(1, 1, 1), PowerSplit(0.0)) == doctest::Approx(0.5 * std::log(1.5)).epsilon(1e-15));
    CHECK(rp_low(std_ch(1, 1, 1), PowerSplit(0.0)) == doctest::Approx(0.202733).epsilon(1e-6));
    for (double al : {0.0, 0.3, 1.0}) {
      CHECK(rp_low(std_ch(0, 3, 2), PowerSplit(al)) == doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-15));
    }
  }

  TEST_CASE("rc_low spot values") {
    CHECK(rc_low(std_ch(1, 1, 1), PowerSplit(1.0)) == 0.0);
    CHECK(rc_low(std_ch(1, 1, 3), PowerSplit(0.0)) == doctest::Approx(0.5 * std::log(4.0)));
    const double root = static_cast<double>(oracle::alpha_star(1, 1, 1));
    CHECK(rc_low(std_ch(1, 1, 1), PowerSplit(root)) == doctest::Approx(0.5 * std::log(1.866025)).epsilon(1e-6));
  }

  TEST_CASE("alpha* spot values against an independent bisection") {
    const double root = static_cast<double>(oracle::alpha_star(1, 1, 1));
    CHECK(std::abs(root - std::pow((std::sqrt(3.0) - 1) / 2, 2)) < 1e-12);
    CHECK(std::abs(alpha_star(std_ch(1, 1, 1)).value() - root) < 1e-11);
    CHECK(std::abs(alpha_star(std_ch(1, 1, 1)).value() - 0.133975) < 1e-6);

    const double r2 = static_cast<double>(oracle::alpha_star(0.5, 10, 5));
    CHECK(std::abs(alpha_star(std_ch(0.5, 10, 5)).value() - r2) < 1e-11);
    CHECK(std::abs(r2 - 0.533475) < 1e-5);
  }

  TEST_CASE("alpha* edge cases") {
    CHECK(alpha_star(std_ch(0, 3, 4)).value() == 0.0);
    CHECK(alpha_star(std_ch(0.7, 3, 0)).value() == 0.0);
    CHECK_THROWS_AS(alpha_star(std_ch(1.0001, 1, 1)), RegimeError);
    const AlphaStar as = solve_alpha_star(std_ch(0.8, 2, 3));
    CHECK(std::abs(as.residual) < 1e-10);
    CHECK(as.iterations <= 200);
  }

  TEST_CASE("alpha* closed form is the square of the bracket, not its square root") {
    const auto ch = std_ch(1, 1, 1);
    CHECK(std::abs(alpha_star_closed_form(ch) - alpha_star(ch).value()) < 1e-12);
    CHECK(std::abs(alpha_star_printed_form(ch) - alpha_star(ch).value()) > 0.4);
  }

  TEST_CASE("cognitive capacity") {
    const RatePair cap = cognitive_capacity(std_ch(1, 1, 1));
    CHECK(cap.rp == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    const double root = static_cast<double>(oracle::alpha_star(1, 1, 1));
    CHECK(std::abs(cap.rc - 0.5 * std::log1p(1 - root)) < 1e-11);

    const RatePair indep = cognitive_capacity(std_ch(0, 2, 5));
    CHECK(indep.rp == doctest::Approx(0.5 * std::log(3.0)));
    CHECK(indep.rc == doctest::Approx(0.5 * std::log(6.0)));

    const RatePair silent = cognitive_capacity(std_ch(0.5, 2, 0));
    CHECK(silent.rp == doctest::Approx(0.5 * std::log(3.0)));
    CHECK(silent.rc == 0.0);
    CHECK_THROWS_AS(cognitive_capacity(std_ch(2, 1, 1)), RegimeError);
  }

  TEST_CASE("complex rates") {
    // Unit magnitudes and noises map to Pp = Pc = a = 1; complex signalling
    // doubles the real rates.
    const auto ch = CognitiveChannel::polar(1, 0.4, 1, -2.1, 0, 0, 1, 1.3, 1, 1, 1, 1);
    const double root = static_cast<double>(oracle::alpha_star(1, 1, 1));
    const RatePair r = rates_complex(ch, PowerSplit(root));
    CHECK(r.rc == doctest::Approx(2 * 0.5 * std::log1p(1 - root)).epsilon(1e-14));
    CHECK(r.rp == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(rates_complex(ch, PowerSplit(1.0)).rc == 0.0);

    const auto nof = CognitiveChannel::polar(1.5, 0.2, 0, 0, 0.3, 0, 1, 0, 2, 3, 0.5, 1);
    for (double al : {0.0, 0.5, 1.0}) {
      CHECK(rates_complex(nof, PowerSplit(al)).rp == doctest::Approx(std::log(1 + 2.25 * 2 / 0.5)).epsilon(1e-14));
    }
  }

  TEST_CASE("diversity split") {
    CHECK(alpha_diversity_from_snr(1.0).value() == 0.5);
    CHECK(alpha_diversity_from_snr(0.0).value() == 0.0);
    CHECK(alpha_diversity_from_snr(1e12).value() > 1 - 1e-11);
    CHECK(alpha_diversity_from_snr(INFINITY).value() == 1.0);
    CHECK_THROWS_AS(alpha_diversity_from_snr(-1), DomainError);
    const auto ch = CognitiveChannel::real(2, 1, 0, 1, 0.5, 1, 4, 1);
    CHECK(alpha_diversity(ch).value() == doctest::Approx(0.5 / 1.5));
  }

  TEST_CASE("two-tap rate meets the primary's own rate at the diversity split") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
      const auto ch = CognitiveChannel::polar(rng.uniform(0.1, 3), rng.uniform(-3, 3), rng.uniform(0, 3),
                                              rng.uniform(-3, 3), 0, 0, 1, 0, rng.uniform(0.1, 10),
                                              rng.uniform(0.1, 10), rng.uniform(0.1, 3), 1);
      const double s = std::norm(ch.p) * ch.pp_tilde / ch.np;
      CHECK(rates_two_tap(ch, alpha_diversity(ch)).rp == doctest::Approx(std::log1p(s)).epsilon(1e-12));
    }
  }

  TEST_CASE("snr from rate") {
    CHECK(snr_from_rate(0.0) == 0.0);
    CHECK(snr_from_rate(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(snr_from_rate(1.0) == doctest::Approx(1.718282).epsilon(1e-6));
    CHECK_THROWS_AS(snr_from_rate(-0.1), DomainError);
  }

  TEST_CASE("property: rates agree with the long-double reference") {
    Rng rng(32);
    for (int i = 0; i < 1000; ++i) {
      const double a = rng.uniform(0, 1), pp = rng.uniform(0, 100), pc = rng.uniform(0, 100), al = rng.uniform();
      const auto ch = std_ch(a, pp, pc);
      CHECK(std::abs(rp_low(ch, PowerSplit(al)) - static_cast<double>(oracle::rp_low(a, pp, pc, al))) < 1e-13);
      CHECK(std::abs(rc_low(ch, PowerSplit(al)) - static_cast<double>(oracle::rc_low(pc, al))) < 1e-13);
    }
  }

  TEST_CASE("property: rp_low increases and rc_low decreases in alpha") {
    Rng rng(33);
    for (int i = 0; i < 300; ++i) {
      const auto ch = std_ch(rng.uniform(0.01, 1), rng.uniform(0, 20), rng.uniform(0.01, 20));
      double prev_rp = -1, prev_rc = 1e9;
      for (int k = 0; k <= 50; ++k) {
        const PowerSplit al(k / 50.0);
        CHECK(rp_low(ch, al) >= prev_rp);
        CHECK(rc_low(ch, al) <= prev_rc);
        prev_rp = rp_low(ch, al);
        prev_rc = rc_low(ch, al);
      }
    }
  }

  TEST_CASE("property: alpha* is the smallest split that protects the primary") {
    Rng rng(34);
    for (int i = 0; i < 300; ++i) {
      const auto ch = std_ch(rng.uniform(0.01, 1), rng.uniform(0.01, 50), rng.uniform(0.01, 50));
      const double al = alpha_star(ch).value();
      CHECK(rp_low(ch, PowerSplit(al)) >= primary_target_rate(ch) - 1e-10);
      if (al > 1e-6) CHECK(rp_low(ch, PowerSplit(al - 1e-6)) < primary_target_rate(ch));
    }
  }
}
