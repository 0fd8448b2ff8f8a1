#include "cogcap/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cogcap/error.hpp"

namespace cogcap::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char ch : k) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') return false;
  }
  return true;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError("cannot parse " + what + " value '" + text + "' as a number");
  return v;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& origin) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!kv.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

std::optional<double> get_number(const KeyValues& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) return std::nullopt;
  return parse_double(it->second, key);
}

CognitiveChannel channel_from_config(const KeyValues& kv) {
  static const char* const kKnown[] = {"p",  "f",  "g",       "c",       "pp",      "pc",      "np",
                                       "ns", "seed", "phase_p", "phase_f", "phase_g", "phase_c"};
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw ConfigError("unknown channel key '" + key + "'");
  }
  const auto num = [&](const char* key, double fallback) { return get_number(kv, key).value_or(fallback); };
  const bool complex = kv.count("phase_p") || kv.count("phase_f") || kv.count("phase_g") || kv.count("phase_c");
  CognitiveChannel ch;
  if (complex) {
    ch = CognitiveChannel::polar(num("p", 1.0), num("phase_p", 0.0), num("f", 0.0), num("phase_f", 0.0),
                                 num("g", 0.0), num("phase_g", 0.0), num("c", 1.0), num("phase_c", 0.0),
                                 num("pp", 1.0), num("pc", 1.0), num("np", 1.0), num("ns", 1.0));
  } else {
    ch = CognitiveChannel::real(num("p", 1.0), num("f", 0.0), num("g", 0.0), num("c", 1.0), num("pp", 1.0),
                                num("pc", 1.0), num("np", 1.0), num("ns", 1.0));
  }
  ch.validate();
  return ch;
}

std::string format_number(double x) {
  char buf[64];
  // %g honours the C locale only; the CLI never changes LC_NUMERIC.
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_region_csv(const RegionCurve& curve, std::ostream& out) {
  const bool high = curve.regime == Regime::kHigh;
  out << (high ? "alpha,rp,rc,a_min,on_boundary\n" : "alpha,rp,rc\n");
  for (const auto& pt : curve.points) {
    out << format_number(pt.alpha) << ',' << format_number(pt.rates.rp) << ',' << format_number(pt.rates.rc);
    if (high) out << ',' << format_number(pt.a_min) << ',' << (pt.on_boundary ? 1 : 0);
    out << '\n';
  }
}

void emit_region_csv(const RegionCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_region_csv(curve, out);
  out.flush();
  if (!out) throw ConfigError("failed while writing '" + path + "'");
}

RegionCurve parse_region_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("region CSV is empty");
  RegionCurve curve;
  if (line == "alpha,rp,rc") {
    curve.regime = Regime::kLow;
  } else if (line == "alpha,rp,rc,a_min,on_boundary") {
    curve.regime = Regime::kHigh;
  } else {
    throw ConfigError("unrecognized region CSV header '" + line + "'");
  }
  const std::size_t width = curve.regime == Regime::kLow ? 3 : 5;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != width) throw ConfigError("region CSV row has the wrong number of fields");
    FrontierPoint pt;
    pt.alpha = parse_double(fields[0], "alpha");
    pt.rates.rp = parse_double(fields[1], "rp");
    pt.rates.rc = parse_double(fields[2], "rc");
    if (width == 5) {
      pt.a_min = parse_double(fields[3], "a_min");
      pt.on_boundary = fields[4] == "1";
    }
    curve.points.push_back(pt);
  }
  return curve;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
  out << "eps,M,rp,rc,rp_limit,rc_limit,dev\n";
  for (const auto& r : table.rows) {
    out << format_number(r.eps) << ',' << format_number(r.big_m) << ',' << format_number(r.rates.rp) << ','
        << format_number(r.rates.rc) << ',' << format_number(r.limit.rp) << ',' << format_number(r.limit.rc) << ','
        << format_number(r.deviation) << '\n';
  }
}

void write_block_csv(const SimTrace& trace, std::ostream& out) {
  out << "start,length,power_xp,power_xc_hat,power_xc,corr_xp_xc_hat\n";
  for (const auto& b : trace.blocks) {
    out << b.start << ',' << b.length << ',' << format_number(b.power_xp) << ',' << format_number(b.power_xc_hat)
        << ',' << format_number(b.power_xc) << ',' << format_number(b.corr_xp_xc_hat) << '\n';
  }
}

nlohmann::json to_json(const CognitiveChannel& ch) {
  nlohmann::json j;
  j["complex"] = ch.is_complex;
  const auto gain = [&](const char* name, cplx z) {
    if (ch.is_complex) {
      j[name] = std::abs(z);
      j[std::string("phase_") + name] = std::arg(z);
    } else {
      j[name] = z.real();
    }
  };
  gain("p", ch.p);
  gain("f", ch.f);
  gain("g", ch.g);
  gain("c", ch.c);
  j["pp"] = ch.pp_tilde;
  j["pc"] = ch.pc_tilde;
  j["np"] = ch.np;
  j["ns"] = ch.ns;
  return j;
}

nlohmann::json to_json(const StandardChannel& ch) {
  return {{"a", ch.a}, {"b", ch.b}, {"pp", ch.pp}, {"pc", ch.pc}, {"a_sign", ch.a_sign}, {"b_sign", ch.b_sign}};
}

nlohmann::json to_json(const SimTrace& t) {
  return {{"scheme", to_string(t.scheme)},
          {"n", t.n_symbols},
          {"seed", t.seed},
          {"alpha", t.alpha},
          {"alpha_forced_zero", t.alpha_forced_zero},
          {"empirical_sinr_p", t.sinr_p},
          {"empirical_sinr_s", t.sinr_s},
          {"implied_rp", t.implied_rp},
          {"implied_rc", t.implied_rc},
          {"target_rp", t.target_rp},
          {"target_rc", t.target_rc},
          {"rel_err", t.rel_err()},
          {"power_xp", t.power_xp},
          {"power_xc", t.power_xc},
          {"power_xc_hat", t.power_xc_hat},
          {"corr_xp_xc_hat", t.corr_xp_xc_hat},
          {"received_power_p", t.received_power_p},
          {"coherent_amplitude", t.coherent_amplitude}};
}

nlohmann::json to_json(const ProtocolEvent& e) {
  nlohmann::json payload = nlohmann::json::object();
  for (const auto& [k, v] : e.payload) payload[k] = v;
  return {{"t", e.time}, {"kind", to_string(e.kind)}, {"payload", payload}};
}

nlohmann::json to_json(const std::vector<ProtocolEvent>& events) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : events) arr.push_back(to_json(e));
  return arr;
}

nlohmann::json to_json(const ProtocolState& s) {
  return {{"phase", to_string(s.phase)},
          {"p_hat", {s.p_hat.real(), s.p_hat.imag()}},
          {"h_hat", {s.h_hat.real(), s.h_hat.imag()}},
          {"f_hat", {s.f_hat.real(), s.f_hat.imag()}},
          {"pc_current", s.pc_current},
          {"alpha_current", s.alpha_current},
          {"arq_count", s.arq_count}};
}

}  // namespace cogcap::io
