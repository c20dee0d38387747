#ifndef TCMP_REPORT_HPP
#define TCMP_REPORT_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "tcmp/moments.hpp"
#include "tcmp/solver.hpp"

namespace tcmp {

/// {"n": 3, "moments": [{"i":0,"j":0,"re":1.0,"im":0.0}, ...],
///  "tolerances": {"rank": 1e-10, "consistency": 1e-9}}
struct InputDocument {
  int n = 3;
  MomentSequence moments = MomentSequence::from_graded(0, {Complex(0.0)});
  Tolerances tolerances;
};

/// Throws ParseError (with line and column, or the offending field path),
/// MissingMoment, AsymmetricData or DegreeOverflow.
InputDocument parse_input(const std::string& text);
InputDocument load_input(const std::string& path);

nlohmann::ordered_json polynomial_to_json(const BivarPolynomial& p);
nlohmann::ordered_json report_to_json(const AnalysisReport& report,
                                      std::optional<std::uint64_t> seed = std::nullopt);

/// Pretty-printed report; identical input gives identical bytes.
std::string serialize_report(const AnalysisReport& report,
                             std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace tcmp

#endif  // TCMP_REPORT_HPP
