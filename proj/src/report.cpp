#include "tcmp/report.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tcmp/error.hpp"

namespace tcmp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_index(const json& v, const std::string& path) {
  if (!v.is_number_integer()) field_error(path, "expected an integer");
  const auto k = v.get<long long>();
  if (k < 0 || k > 1000) field_error(path, "index out of range");
  return static_cast<int>(k);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  return v.get<double>();
}

double as_tolerance(const json& v, const std::string& path) {
  const double x = as_number(v, path);
  if (!(x > 0.0)) field_error(path, "tolerance must be positive");
  return x;
}

ordered_json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json points_to_json(const std::vector<Complex>& pts) {
  ordered_json arr = ordered_json::array();
  for (const auto& z : pts) arr.push_back(complex_to_json(z));
  return arr;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!root.is_object()) field_error("$", "expected an object");

  InputDocument doc;
  const json& n = require(root, "n", "$");
  if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 50)
    field_error("$.n", "expected a positive integer");
  doc.n = n.get<int>();

  const json& moments = require(root, "moments", "$");
  if (!moments.is_array()) field_error("$.moments", "expected an array");
  MomentSequence::Entries entries;
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const std::string path = "$.moments[" + std::to_string(k) + "]";
    const json& rec = moments[k];
    if (!rec.is_object()) field_error(path, "expected an object");
    const int i = as_index(require(rec, "i", path), path + ".i");
    const int j = as_index(require(rec, "j", path), path + ".j");
    const double re = as_number(require(rec, "re", path), path + ".re");
    const double im = as_number(require(rec, "im", path), path + ".im");
    if (!seen.insert({i, j}).second)
      field_error(path, "duplicate moment (" + std::to_string(i) + "," + std::to_string(j) + ")");
    entries[{i, j}] = Complex(re, im);
  }

  if (const auto it = root.find("tolerances"); it != root.end()) {
    if (!it->is_object()) field_error("$.tolerances", "expected an object");
    if (const auto r = it->find("rank"); r != it->end()) doc.tolerances.rank = as_tolerance(*r, "$.tolerances.rank");
    if (const auto c = it->find("consistency"); c != it->end())
      doc.tolerances.consistency = as_tolerance(*c, "$.tolerances.consistency");
    if (const auto p = it->find("pattern"); p != it->end())
      doc.tolerances.pattern = as_tolerance(*p, "$.tolerances.pattern");
  }
  doc.moments = MomentSequence::from_entries(2 * doc.n, entries);
  return doc;
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

ordered_json polynomial_to_json(const BivarPolynomial& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"i", m.i}, {"j", m.j}, {"re", c.real()}, {"im", c.imag()}});
  return {{"text", p.to_string()}, {"terms", terms}};
}

ordered_json report_to_json(const AnalysisReport& report, std::optional<std::uint64_t> seed) {
  ordered_json out;
  out["tolerances"] = {{"rank", report.tolerances.rank},
                       {"consistency", report.tolerances.consistency},
                       {"pattern", report.tolerances.pattern}};
  if (seed) out["seed"] = *seed;
  out["psd"] = report.psd;
  out["m2_positive_definite"] = report.m2_positive_definite;
  out["rank"] = report.rank;
  out["singular_values"] = report.singular_values;

  ordered_json relations = ordered_json::array();
  for (const auto& p : report.relations) relations.push_back(polynomial_to_json(p));
  out["relations"] = relations;

  if (report.cubic) {
    const auto& c = *report.cubic;
    out["cubic"] = {{"u", c.u},
                    {"t", c.t},
                    {"form", c.form == CubicForm::Standard ? "standard" : "real_coefficient"},
                    {"shift", complex_to_json(c.shift)},
                    {"normalized", polynomial_to_json(q7_polynomial(c.u, c.t))},
                    {"source", polynomial_to_json(c.source)}};
  } else {
    out["cubic"] = nullptr;
  }

  out["variety"] = points_to_json(report.variety.points());
  out["conditions"] = {{"positivity", report.conditions.positivity},
                       {"consistency", report.conditions.consistency},
                       {"variety_condition", report.conditions.variety_condition},
                       {"extremal", report.conditions.extremal},
                       {"recursively_generated", report.conditions.recursively_generated}};

  if (report.equivalence) {
    const auto& e = *report.equivalence;
    out["equivalence"] = {{"lambda_conditions", e.q7.holds},
                          {"moment_conditions", e.q7.moment_form_holds},
                          {"kernel_condition", e.kernel_condition},
                          {"agree", e.agree},
                          {"lambda_q_lc", complex_to_json(e.q7.lambda_q_lc)},
                          {"lambda_z_q_lc", complex_to_json(e.q7.lambda_z_q_lc)},
                          {"moment_residuals", {e.q7.moment_residual_first, e.q7.moment_residual_second}},
                          {"kernel_residual", e.kernel_residual}};
  } else {
    out["equivalence"] = nullptr;
  }

  if (report.measure) {
    out["measure"] = {{"atoms", points_to_json(report.measure->atoms)},
                      {"densities", report.measure->densities},
                      {"mass", report.measure->mass()}};
  } else {
    out["measure"] = nullptr;
  }
  if (report.failure_reason)
    out["failure_reason"] = std::string(to_string(*report.failure_reason));
  else
    out["failure_reason"] = nullptr;
  out["failure_detail"] = report.failure_detail;
  return out;
}

std::string serialize_report(const AnalysisReport& report, std::optional<std::uint64_t> seed) {
  return report_to_json(report, seed).dump(2) + "\n";
}

}  // namespace tcmp
