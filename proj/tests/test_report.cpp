#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "tcmp/error.hpp"
#include "tcmp/report.hpp"

using namespace tcmp;

namespace {

const std::string kDataDir = TCMP_DATA_DIR;

Error parse_error(const std::string& text) {
  try {
    (void)parse_input(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(ErrorCode::InvalidArgument, "");
}

std::string document(const std::string& extra_moment = "", const std::string& tolerances = "") {
  std::string s = R"({"n": 3, "moments": [)";
  bool first = true;
  for (const auto& m : graded_monomials(6)) {
    if (m.i > m.j) continue;
    const Complex g = testing::example1()(m.i, m.j);
    std::ostringstream row;
    row.precision(17);
    row << (first ? "" : ",\n") << R"({"i": )" << m.i << R"(, "j": )" << m.j << R"(, "re": )" << g.real()
        << R"(, "im": )" << g.imag() << "}";
    s += row.str();
    first = false;
  }
  s += extra_moment + "]" + tolerances + "}";
  return s;
}

}  // namespace

TEST_CASE("the data files parse to the worked examples") {
  const InputDocument d1 = load_input(kDataDir + "/example1.json");
  const InputDocument d2 = load_input(kDataDir + "/example2.json");
  CHECK(d1.n == 3);
  CHECK(d1.moments.order() == 6);
  for (std::size_t k = 0; k < 28; ++k) {
    CHECK(std::abs(d1.moments.graded_values()[k] - testing::example1().graded_values()[k]) < 1e-15);
    CHECK(std::abs(d2.moments.graded_values()[k] - testing::example2().graded_values()[k]) < 1e-15);
  }
  CHECK(d1.tolerances.rank == 1e-10);
  CHECK(d1.tolerances.consistency == 1e-9);
}

TEST_CASE("generated document round trip") {
  const InputDocument d = parse_input(document());
  CHECK(d.moments.graded_values() == testing::example1().graded_values());
  CHECK(d.tolerances.rank == Tolerances{}.rank);
}

TEST_CASE("tolerance overrides") {
  const InputDocument d = parse_input(document("", R"(, "tolerances": {"rank": 1e-8, "consistency": 1e-6})"));
  CHECK(d.tolerances.rank == 1e-8);
  CHECK(d.tolerances.consistency == 1e-6);
  const Error e = parse_error(document("", R"(, "tolerances": {"rank": -1.0})"));
  CHECK(e.code() == ErrorCode::ParseError);
}

TEST_CASE("input errors") {
  // Duplicate entry.
  const Error dup = parse_error(document(R"(, {"i": 0, "j": 0, "re": 1.0, "im": 0.0})"));
  CHECK(dup.code() == ErrorCode::ParseError);

  // Missing gamma33 names the index.
  std::string text = document();
  const auto pos = text.find(R"({"i": 3, "j": 3)");
  REQUIRE(pos != std::string::npos);
  const auto begin = text.rfind(",\n", pos);
  text.erase(begin, text.find('}', pos) + 1 - begin);
  const Error missing = parse_error(text);
  CHECK(missing.code() == ErrorCode::MissingMoment);
  CHECK(std::string(missing.what()).find("(3,3)") != std::string::npos);

  // Syntax error reports a line.
  const Error syntax = parse_error("{\n\"n\": 3,\n\"moments\": [}\n");
  CHECK(syntax.code() == ErrorCode::ParseError);
  CHECK(std::string(syntax.what()).find("line 3") != std::string::npos);

  // Wrong field type reports the path.
  const Error field = parse_error(R"({"n": 3, "moments": [{"i": 0, "j": 0, "re": "one", "im": 0.0}]})");
  CHECK(field.code() == ErrorCode::ParseError);
  CHECK(std::string(field.what()).find("$.moments[0].re") != std::string::npos);

  CHECK(parse_error(R"({"n": 3})").code() == ErrorCode::ParseError);
  CHECK(parse_error(document(R"(, {"i": 3, "j": 4, "re": 0.0, "im": 0.0})")).code() == ErrorCode::DegreeOverflow);
}

TEST_CASE("report content and stability") {
  const AnalysisReport r = decide(testing::example1());
  const std::string a = serialize_report(r, 7);
  const std::string b = serialize_report(decide(testing::example1()), 7);
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j["seed"] == 7);
  CHECK(j["rank"] == 7);
  CHECK(j["psd"] == true);
  CHECK(j["failure_reason"].is_null());
  CHECK(j["tolerances"]["rank"].get<double>() == r.tolerances.rank);
  CHECK(j["tolerances"]["consistency"].get<double>() == r.tolerances.consistency);
  CHECK(j["cubic"]["u"].get<double>() == r.cubic->u);
  CHECK(j["cubic"]["t"].get<double>() == r.cubic->t);
  REQUIRE(j["measure"]["densities"].size() == 7);
  for (std::size_t s = 0; s < 7; ++s)
    CHECK(j["measure"]["densities"][s].get<double>() == r.measure->densities[s]);
  CHECK(j["singular_values"].size() == 10);

  const auto j2 = report_to_json(decide(testing::example2()));
  CHECK(j2["failure_reason"] == "VarietyConditionFails");
  CHECK(j2["measure"].is_null());
  CHECK(j2["rank"] == 8);
  CHECK_FALSE(j2.contains("seed"));
  CHECK(j2["equivalence"]["agree"] == true);
}

TEST_CASE("polynomial json") {
  const auto j = polynomial_to_json(q7_polynomial(1.25, 2.0));
  CHECK(j["text"] == "Z^3 - 1.25*Zb - 2i*Z");
  CHECK(j["terms"].size() == 3);
}
