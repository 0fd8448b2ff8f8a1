// cogcap: command-line front end.
//
// Exit status: 0 on success, 2 on usage or configuration errors, 3 on
// domain or regime errors. The primary payload goes to stdout (or --out),
// diagnostics to stderr.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cogcap/channel.hpp"
#include "cogcap/error.hpp"
#include "cogcap/io.hpp"
#include "cogcap/link_sim.hpp"
#include "cogcap/mimo_bc.hpp"
#include "cogcap/protocol.hpp"
#include "cogcap/rates_high.hpp"
#include "cogcap/rates_low.hpp"
#include "cogcap/region.hpp"
#include "cogcap/verify.hpp"

namespace {

using nlohmann::json;
using namespace cogcap;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct Common {
  std::string channel_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

struct Loaded {
  CognitiveChannel channel;
  std::uint64_t seed = 0;
};

Loaded load(const Common& c) {
  Loaded l;
  io::KeyValues kv;
  if (!c.channel_path.empty()) kv = io::read_key_values(c.channel_path);
  std::optional<double> cfg_seed = io::get_number(kv, "seed");
  l.channel = io::channel_from_config(kv);
  if (c.seed) {
    l.seed = *c.seed;
  } else if (cfg_seed) {
    if (*cfg_seed < 0 || *cfg_seed != static_cast<double>(static_cast<std::uint64_t>(*cfg_seed))) {
      throw ConfigError("seed must be a nonnegative integer");
    }
    l.seed = static_cast<std::uint64_t>(*cfg_seed);
  }
  return l;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ConfigError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void print_json(const json& j, std::ostream& os) { os << j.dump(2) << '\n'; }

int run_capacity(const Common& c) {
  const Loaded l = load(c);
  const StandardChannel s = to_standard(l.channel);
  if (!s.low_interference()) {
    throw RegimeError("capacity is characterized only for a <= 1 (this channel has a = " + io::format_number(s.a) +
                      "); use `region --regime high`");
  }
  const AlphaStar as = solve_alpha_star(s);
  const RatePair cap = cognitive_capacity(s);
  Sink sink(c.out_path);
  print_json(json{{"alpha_star", as.alpha.value()},
              {"rp_star", cap.rp},
              {"rc_star", cap.rc},
              {"regime", to_string(Regime::kLow)},
              {"channel", io::to_json(l.channel)},
              {"standard", io::to_json(s)}},
             sink.stream());
  return 0;
}

struct RegionOpts {
  std::string regime = "low";
  std::size_t points = 0;
  std::string summary_path;
  double mu = -1.0;
};

int run_region(const Common& c, const RegionOpts& o) {
  const Loaded l = load(c);
  const StandardChannel s = to_standard(l.channel);
  json summary;
  RegionCurve curve;
  if (o.regime == "low") {
    if (!s.low_interference()) {
      throw RegimeError("the low-interference region needs a <= 1 (a = " + io::format_number(s.a) + ")");
    }
    curve = frontier_low(s, o.points ? o.points : kDefaultFrontierPoints);
    summary["regime"] = to_string(Regime::kLow);
    summary["alpha_star"] = solve_alpha_star(s).alpha.value();
    if (s.a == 1.0) summary["sum_capacity"] = sum_capacity(s);
  } else {
    if (s.low_interference() && s.a < 1.0) {
      throw RegimeError("the high-interference region needs a > 1 (a = " + io::format_number(s.a) + ")");
    }
    curve = frontier_high(s, o.points ? o.points : 21);
    summary["regime"] = to_string(Regime::kHigh);
    double mu_lo = std::numeric_limits<double>::infinity();
    double mu_hi = -std::numeric_limits<double>::infinity();
    for (const auto& pt : curve.points) {
      if (pt.alpha <= 0.0) continue;
      try {
        const double mu = mu_of_alpha(s, PowerSplit(pt.alpha));
        mu_lo = std::min(mu_lo, mu);
        mu_hi = std::max(mu_hi, mu);
      } catch (const DegenerateSlope&) {
      }
    }
    summary["mu_range"] = json::array();
    for (const double m : {mu_lo, mu_hi}) {
      if (std::isfinite(m)) {
        summary["mu_range"].push_back(m);
      } else {
        summary["mu_range"].push_back(nullptr);
      }
    }
    const double mu = o.mu >= 0.0 ? o.mu : std::min(1.0, std::isfinite(mu_hi) ? mu_hi : 1.0);
    summary["b_max_mu"] = mu;
    try {
      const BMaxResult bm = b_max(s.pp, s.pc, s.a, Weight(mu));
      summary["b_max"] = bm.b_max;
      summary["b_max_hit_upper"] = bm.hit_upper;
    } catch (const EmptySet&) {
      summary["b_max"] = nullptr;
    }
    if (s.a >= 1.0) summary["sum_capacity"] = sum_capacity(s);
    std::size_t on = 0;
    for (const auto& pt : curve.points) on += pt.on_boundary ? 1 : 0;
    summary["boundary_points"] = on;
  }
  summary["points"] = curve.points.size();
  {
    Sink sink(c.out_path);
    io::write_region_csv(curve, sink.stream());
  }
  if (!o.summary_path.empty()) {
    Sink sink(o.summary_path);
    print_json(summary, sink.stream());
  } else {
    std::cerr << summary.dump() << '\n';
  }
  return 0;
}

struct MimoOpts {
  double beta = 1.0;
  std::optional<double> alpha;
  std::optional<double> k_p;
  std::optional<double> k_c;
  int steps = 6;
};

int run_mimo_limit(const Common& c, const MimoOpts& o) {
  const Loaded l = load(c);
  const StandardChannel s = to_standard(l.channel);
  if (!s.low_interference()) throw RegimeError("the aligned MIMO construction needs a <= 1");
  const double al = o.alpha.value_or(solve_alpha_star(s).alpha.value());
  CovariancePair cov;
  if (!o.k_p && !o.k_c && o.beta == 1.0) {
    cov = CovariancePair::optimal(al, s.pp, s.pc);
  } else {
    const double kp = o.k_p.value_or(std::sqrt(al * o.beta * s.pp * s.pc));
    const double kc = o.k_c.value_or(std::sqrt((1.0 - al) * (1.0 - o.beta) * s.pp * s.pc));
    cov = CovariancePair::make(o.beta, al, kp, kc, s.pp, s.pc);
  }
  std::vector<double> eps;
  std::vector<double> ms;
  for (int i = 1; i <= o.steps; ++i) {
    eps.push_back(std::pow(10.0, -i));
    ms.push_back(std::pow(10.0, i));
  }
  const SweepTable t = convergence_sweep(s, cov, eps, ms);
  Sink sink(c.out_path);
  io::write_sweep_csv(t, sink.stream());
  std::cerr << json{{"max_deviation", t.max_deviation},
                    {"final_deviation", t.final_deviation},
                    {"trending_down", t.trending_down}}
                   .dump()
            << '\n';
  return 0;
}

struct SimOpts {
  std::string scheme = "superposition";
  std::size_t n = 1'000'000;
  std::string alpha = "auto";
  std::size_t l_c = 1;
  std::size_t block_length = 10'000;
  bool no_align = false;
  std::string blocks_path;
};

int run_simulate(const Common& c, const SimOpts& o) {
  const Loaded l = load(c);
  SimConfig cfg;
  const auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw ConfigError("unknown scheme '" + o.scheme + "'");
  cfg.scheme = *scheme;
  cfg.n_symbols = o.n;
  cfg.seed = l.seed;
  cfg.channel = l.channel;
  cfg.l_c = o.l_c;
  cfg.block_length = o.block_length;
  cfg.align_phase = !o.no_align;
  if (o.alpha == "auto") {
    if (cfg.scheme == Scheme::kTwoTapIsi) {
      cfg.alpha = alpha_diversity(l.channel);
    } else if (cfg.scheme == Scheme::kAafProbe) {
      cfg.alpha = PowerSplit(1.0);
    } else {
      cfg.alpha = alpha_star(to_standard(l.channel));
    }
  } else {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(o.alpha, &used);
      if (used != o.alpha.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ConfigError("--alpha expects a number in [0, 1] or 'auto'");
    }
    cfg.alpha = PowerSplit(v);
  }
  const SimTrace t = simulate(cfg);
  Sink sink(c.out_path);
  print_json(io::to_json(t), sink.stream());
  if (!o.blocks_path.empty()) {
    Sink blocks(o.blocks_path);
    io::write_block_csv(t, blocks.stream());
  }
  return 0;
}

struct ProtoOpts {
  std::string mode = "csi";
  std::size_t n_probe = 1000;
  std::optional<int> bits;
  double dpc = 0.0;
  double dalpha = 0.0;
  std::string policy = "alpha";
};

int run_protocol(const Common& c, const ProtoOpts& o) {
  const Loaded l = load(c);
  json out;
  if (o.mode == "csi") {
    CsiConfig cfg;
    cfg.n_probe = o.n_probe;
    cfg.quantizer_bits = o.bits;
    cfg.seed = l.seed;
    const CsiResult r = run_csi_acquisition(l.channel, cfg);
    out["events"] = io::to_json(r.events);
    out["final_state"] = io::to_json(r.state);
    out["f_hat"] = {r.f_hat.real(), r.f_hat.imag()};
    out["f_error"] = std::abs(r.f_hat - l.channel.f);
    out["arq"] = r.arq;
  } else {
    RampConfig cfg;
    cfg.d_pc = o.dpc;
    cfg.d_alpha = o.dalpha;
    cfg.policy = o.policy == "power" ? BackoffPolicy::kDecreasePower : BackoffPolicy::kIncreaseAlpha;
    cfg.seed = l.seed;
    const RampResult r = run_ramping_controller(l.channel, cfg);
    out["events"] = io::to_json(r.events);
    out["final_state"] = io::to_json(r.state);
    out["target_rp"] = r.target_rp;
    out["epochs"] = r.trajectory.size();
    out["arq_pending"] = r.arq_pending;
  }
  Sink sink(c.out_path);
  print_json(out, sink.stream());
  return 0;
}

int run_verify(const Common& c) {
  const std::uint64_t seed = c.seed.value_or(0);
  const auto results = verify::run_all(seed);
  Sink sink(c.out_path);
  std::ostream& os = sink.stream();
  bool all = true;
  for (const auto& r : results) {
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
    all = all && r.pass;
  }
  os << (all ? "all checks passed\n" : "some checks failed\n");
  return all ? 0 : 1;
}

void add_common(CLI::App* sub, Common& c, bool channel = true) {
  if (channel) sub->add_option("--channel", c.channel_path, "Channel config file (key = value)")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out_path, "Write the primary output here instead of stdout");
  sub->add_option("--seed", c.seed, "RNG seed (overrides the config's seed)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity and link-level tools for a cognitive radio channel"};
  app.require_subcommand(1);

  Common common;
  RegionOpts region;
  MimoOpts mimo;
  SimOpts sim;
  ProtoOpts proto;

  auto* capacity = app.add_subcommand("capacity", "Cognitive capacity point for a <= 1 (JSON)");
  add_common(capacity, common);

  auto* reg = app.add_subcommand("region", "Rate region frontier (CSV) with a JSON summary");
  add_common(reg, common);
  reg->add_option("--regime", region.regime, "low or high")->check(CLI::IsMember({"low", "high"}));
  reg->add_option("--points", region.points, "Number of alpha grid points (default 1001 low, 21 high)")->check(CLI::Range(2, 1000001));
  reg->add_option("--summary", region.summary_path, "Write the JSON summary here (default: stderr)");
  reg->add_option("--mu", region.mu, "Weight used for the reported b_max (high regime)")->check(CLI::Range(0.0, 1.0));

  auto* ml = app.add_subcommand("mimo-limit", "Aligned MIMO rates versus their scalar limit (CSV)");
  add_common(ml, common);
  ml->add_option("--beta", mimo.beta, "Primary power fraction kept by the primary antenna")->check(CLI::Range(0.0, 1.0));
  ml->add_option("--alpha", mimo.alpha, "Relay power fraction (default alpha*)")->check(CLI::Range(0.0, 1.0));
  ml->add_option("--kp", mimo.k_p, "Cross term k_p");
  ml->add_option("--kc", mimo.k_c, "Cross term k_c");
  ml->add_option("--steps", mimo.steps, "Decades in the eps/M sweep")->check(CLI::Range(1, 12));

  auto* simc = app.add_subcommand("simulate", "Link-level Monte Carlo (JSON)");
  add_common(simc, common);
  simc->add_option("--scheme", sim.scheme, "superposition, beamforming-complex, two-tap-isi, aaf-probe")
      ->check(CLI::IsMember({"superposition", "beamforming-complex", "two-tap-isi", "aaf-probe"}));
  simc->add_option("--n", sim.n, "Number of symbols")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
  simc->add_option("--alpha", sim.alpha, "Relay power fraction in [0, 1] or 'auto'");
  simc->add_option("--lc", sim.l_c, "Relay listening delay in symbols (two-tap-isi)")->check(CLI::PositiveNumber);
  simc->add_option("--block", sim.block_length, "Codeword length")->check(CLI::PositiveNumber);
  simc->add_flag("--no-align", sim.no_align, "Drop the beamforming phase alignment (control run)");
  simc->add_option("--blocks-csv", sim.blocks_path, "Write per-block moments as CSV");

  auto* pr = app.add_subcommand("protocol", "Channel acquisition or ARQ power ramping (JSON event log)");
  add_common(pr, common);
  pr->add_option("--mode", proto.mode, "csi or ramp")->check(CLI::IsMember({"csi", "ramp"}));
  pr->add_option("--n-probe", proto.n_probe, "Probe length in symbols")->check(CLI::PositiveNumber);
  pr->add_option("--bits", proto.bits, "Quantizer bits per real dimension")->check(CLI::Range(1, 30));
  pr->add_option("--dpc", proto.dpc, "Power step (default Pc/100)")->check(CLI::NonNegativeNumber);
  pr->add_option("--dalpha", proto.dalpha, "Alpha step (default 0.01)")->check(CLI::Range(0.0, 1.0));
  pr->add_option("--policy", proto.policy, "Back-off on ARQ: alpha or power")->check(CLI::IsMember({"alpha", "power"}));

  auto* ver = app.add_subcommand("verify", "Run the oracle suite and print a pass/fail table");
  add_common(ver, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*capacity) return run_capacity(common);
    if (*reg) return run_region(common, region);
    if (*ml) return run_mimo_limit(common, mimo);
    if (*simc) return run_simulate(common, sim);
    if (*pr) return run_protocol(common, proto);
    if (*ver) return run_verify(common);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
