#include <cstring>

#include "helpers.hpp"
#include "hhb/errors.hpp"
#include "hhb/kernels.hpp"
#include "hhb/serialize.hpp"
#include "hhb/spaces.hpp"

using namespace hhb;

namespace {

bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("function JSON round-trip is bit-exact") {
  auto f = random_hharmonic(4, 6, 80);
  f = apply_Dst(0.3, 1.1, f);
  HHarmonicFunction t = tangential(random_hharmonic(4, 3, 81), 0, 2);
  f += t;
  const std::string text = to_json_string(f);
  const auto g = function_from_json_string(text);
  CHECK(to_json_string(g) == text);
  REQUIRE(g.blocks().size() == f.blocks().size());
  for (const auto& [m, b] : f.blocks()) {
    const auto& c = g.blocks().at(m);
    CHECK(bits_equal(b.scale, c.scale));
    REQUIRE(b.terms.size() == c.terms.size());
    for (std::size_t i = 0; i < b.terms.size(); ++i) {
      CHECK(bits_equal(b.terms[i].a, c.terms[i].a));
      for (int k = 0; k < 4; ++k) CHECK(bits_equal(b.terms[i].pole[k], c.terms[i].pole[k]));
    }
    CHECK(b.poly == c.poly);
  }
  for (const auto& x : testutil::random_points(4, 5, 0.9, 82)) CHECK(bits_equal(f(x), g(x)));
}

TEST_CASE("function JSON shape") {
  HHarmonicFunction f(3);
  f.add_term(2, 0.5, SpherePoint::axis(3, 1));
  const Json j = to_json(f);
  CHECK(j["n"] == 3);
  CHECK(j["blocks"][0]["m"] == 2);
  CHECK(j["blocks"][0]["terms"][0]["a"] == 0.5);
  CHECK(j["blocks"][0]["terms"][0]["pole"].size() == 3);
  CHECK(!j["blocks"][0].contains("scale"));
  const auto g = function_from_json(Json::parse(R"({"n": 2, "blocks": [{"m": 1, "terms": [{"a": 2.0, "pole": [0.0, 1.0]}]}]})"));
  CHECK(g(std::vector<double>{0.0, 0.5}) == doctest::Approx(2.0 * 2 * 0.5));
  CHECK_THROWS_AS(function_from_json_string("{\"n\": 3}"), ParameterError);
  CHECK_THROWS_AS(function_from_json_string("not json"), ParameterError);
  CHECK_THROWS_AS(function_from_json_string(R"({"n": 3, "blocks": [{"m": 1, "terms": [{"a": 1, "pole": [1, 0]}]}]})"),
                  ParameterError);
}

TEST_CASE("number and CSV formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1.5e-300) == "-1.5000000000000001e-300");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("report export") {
  const std::vector<HHarmonicFunction> fam{HHarmonicFunction::constant(3, 1.0)};
  const auto rep = equivalence_report(fam, {NormSpec::direct(2.0, 0.0), NormSpec::normal(2.0, 0.0, 1)});
  const std::string csv = report_csv(rep);
  CHECK(csv.rfind("function_id,spec_i,spec_j,ratio\r\n", 0) == 0);
  CHECK(csv.find("\"direct(p=2,alpha=0)\"") != std::string::npos);
  const Json s = report_summary_json(rep);
  CHECK(s[0]["pair"][1] == "normal(p=2,alpha=0,k=1)");
  CHECK(s[0].contains("spread"));
}
