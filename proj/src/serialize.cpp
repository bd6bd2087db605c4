#include "hhb/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "hhb/errors.hpp"

namespace hhb {

Json to_json(const HHarmonicFunction& f) {
  Json blocks = Json::array();
  for (const auto& [m, b] : f.blocks()) {
    Json jb;
    jb["m"] = m;
    Json terms = Json::array();
    for (const auto& t : b.terms) {
      const auto c = t.pole.coords();
      terms.push_back({{"a", t.a}, {"pole", std::vector<double>(c.begin(), c.end())}});
    }
    jb["terms"] = std::move(terms);
    if (b.scale != 1.0) jb["scale"] = b.scale;
    if (!b.poly.is_zero()) {
      Json poly = Json::array();
      for (const auto& [e, c] : b.poly.terms()) {
        std::vector<int> ex(e.begin(), e.begin() + f.dim());
        poly.push_back({{"e", ex}, {"c", c}});
      }
      jb["poly"] = std::move(poly);
    }
    blocks.push_back(std::move(jb));
  }
  Json j;
  j["n"] = f.dim();
  j["blocks"] = std::move(blocks);
  return j;
}

HHarmonicFunction function_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    HHarmonicFunction f(n);
    for (const auto& jb : j.at("blocks")) {
      const int m = jb.at("m").get<int>();
      for (const auto& jt : jb.at("terms")) {
        auto pole = jt.at("pole").get<std::vector<double>>();
        if (static_cast<int>(pole.size()) != n) throw ParameterError("pole dimension mismatch");
        f.add_term(m, jt.at("a").get<double>(), SpherePoint::exact(std::move(pole)));
      }
      if (jb.contains("poly")) {
        Polynomial p(n);
        for (const auto& jt : jb.at("poly")) {
          const auto ex = jt.at("e").get<std::vector<int>>();
          if (static_cast<int>(ex.size()) != n) throw ParameterError("exponent length mismatch");
          Polynomial::Exponents e{};
          for (int i = 0; i < n; ++i) {
            const int v = ex[static_cast<std::size_t>(i)];
            if (v < 0 || v > 255) throw ParameterError("exponent out of range");
            e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
          }
          p.add_term(e, jt.at("c").get<double>());
        }
        f.add_polynomial(m, p);
      }
      if (jb.contains("scale")) f.scale_block(m, jb.at("scale").get<double>());
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed function JSON: ") + e.what());
  }
}

std::string to_json_string(const HHarmonicFunction& f) { return to_json(f).dump(); }

HHarmonicFunction function_from_json_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed function JSON: ") + e.what());
  }
  return function_from_json(j);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string report_csv(const EquivalenceReport& rep) {
  std::string out = "function_id,spec_i,spec_j,ratio\r\n";
  for (const auto& r : rep.rows) {
    out += std::to_string(r.function_id) + "," +
           csv_field(rep.spec_labels[static_cast<std::size_t>(r.i)]) + "," +
           csv_field(rep.spec_labels[static_cast<std::size_t>(r.j)]) + "," +
           format_number(r.ratio) + "\r\n";
  }
  return out;
}

Json report_summary_json(const EquivalenceReport& rep) {
  Json out = Json::array();
  for (const auto& s : rep.summary) {
    Json row;
    row["pair"] = {rep.spec_labels[static_cast<std::size_t>(s.i)],
                   rep.spec_labels[static_cast<std::size_t>(s.j)]};
    row["min"] = s.min;
    row["max"] = s.max;
    row["spread"] = s.spread;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace hhb
