#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cogcap/channel.hpp"
#include "cogcap/link_sim.hpp"
#include "cogcap/mimo_bc.hpp"
#include "cogcap/protocol.hpp"
#include "cogcap/region.hpp"

namespace cogcap::io {

// Flat key/value configuration:
//
//   # comment
//   key = value
//
// Keys are case-sensitive identifiers, values are the rest of the line with
// surrounding whitespace and an optional pair of double quotes stripped.
// Duplicate keys are an error.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in, const std::string& origin = "<stream>");
KeyValues read_key_values(const std::string& path);

// Channel keys: p, f, g, c, pp, pc, np, ns (all optional, defaults are the
// identity channel with unit powers). Any of phase_p, phase_f, phase_g,
// phase_c (radians) makes the channel complex with the gains as magnitudes.
CognitiveChannel channel_from_config(const KeyValues& kv);

std::optional<double> get_number(const KeyValues& kv, const std::string& key);

// --- CSV ------------------------------------------------------------------

// "%.12g" with '.' as the decimal point regardless of locale.
std::string format_number(double x);

// Header `alpha,rp,rc` for low-regime curves and
// `alpha,rp,rc,a_min,on_boundary` for high-regime ones; '\n' line endings.
void write_region_csv(const RegionCurve& curve, std::ostream& out);
void emit_region_csv(const RegionCurve& curve, const std::string& path);
RegionCurve parse_region_csv(std::istream& in);

void write_sweep_csv(const SweepTable& table, std::ostream& out);
void write_block_csv(const SimTrace& trace, std::ostream& out);

// --- JSON -----------------------------------------------------------------

nlohmann::json to_json(const CognitiveChannel& ch);
nlohmann::json to_json(const StandardChannel& ch);
nlohmann::json to_json(const SimTrace& t);
nlohmann::json to_json(const ProtocolEvent& e);
nlohmann::json to_json(const std::vector<ProtocolEvent>& events);
nlohmann::json to_json(const ProtocolState& s);

}  // namespace cogcap::io
