#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cogcap::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Oracle suite behind the `verify` subcommand: every closed form is compared
// with an independent numerical route on randomized parameters.
std::vector<CheckResult> run_all(std::uint64_t seed);

CheckResult check_alpha_star_root(std::uint64_t seed, int draws = 1000);
CheckResult check_capacity_spot_values();
CheckResult check_sum_capacity(std::uint64_t seed, int draws = 100);
CheckResult check_convexity(std::uint64_t seed, int channels = 20, int trials = 10000);
CheckResult check_threshold(std::uint64_t seed, int draws = 1000);
CheckResult check_covariance_reduction(std::uint64_t seed, int draws = 50);
CheckResult check_mimo_limits(std::uint64_t seed, int draws = 100);

// Values of the original typeset forms next to the re-derived ones.
std::vector<CheckResult> discrepancy_report();

}  // namespace cogcap::verify
