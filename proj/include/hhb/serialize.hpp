#pragma once

#include <string>

#include <json.hpp>

#include "hhb/expansion.hpp"
#include "hhb/spaces.hpp"

namespace hhb {

using Json = nlohmann::ordered_json;

/// {"n", "blocks": [{"m", "terms": [{"a", "pole"}], "scale"?, "poly"?}]}. Doubles
/// round-trip bit for bit.
Json to_json(const HHarmonicFunction& f);
HHarmonicFunction function_from_json(const Json& j);

std::string to_json_string(const HHarmonicFunction& f);
HHarmonicFunction function_from_json_string(const std::string& text);

/// 17 significant digits, dot decimal.
std::string format_number(double v);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

/// Columns function_id, spec_i, spec_j, ratio.
std::string report_csv(const EquivalenceReport& rep);
/// [{"pair": [label_i, label_j], "min", "max", "spread"}].
Json report_summary_json(const EquivalenceReport& rep);

}  // namespace hhb
