// tcmp: analyze sextic moment data, list q7 varieties, audit the
// representation maps.
//
//   tcmp analyze data/example1.json [--tol 1e-9] [--rank-tol 1e-10] [--report out.json]
//   tcmp variety 1.25 2
//   tcmp variety --sweep 0.5:2:16,0.5:4:32
//   tcmp audit 1.25 2
//
// analyze exits 0 when a measure exists, 2 when the data has none, 3 when the
// data falls outside what the criterion decides, 1 on errors.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tcmp/error.hpp"
#include "tcmp/report.hpp"
#include "tcmp/solver.hpp"
#include "tcmp/variety.hpp"

namespace {

constexpr int kExitMeasure = 0;
constexpr int kExitError = 1;
constexpr int kExitNoMeasure = 2;
constexpr int kExitUndecided = 3;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  double at(int k) const { return steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1); }
};

Range parse_range(const std::string& text) {
  Range r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.steps) || c1 != ':' || c2 != ':' || r.steps < 1 ||
      !(in >> std::ws).eof())
    throw tcmp::Error(tcmp::ErrorCode::InvalidArgument, "bad range \"" + text + "\", expected lo:hi:steps");
  return r;
}

int exit_code_for(const tcmp::AnalysisReport& report) {
  if (report.measure) return kExitMeasure;
  switch (*report.failure_reason) {
    case tcmp::FailureReason::NotPSD:
    case tcmp::FailureReason::VarietyConditionFails:
    case tcmp::FailureReason::ConsistencyFails:
      return kExitNoMeasure;
    default:
      return kExitUndecided;
  }
}

int run_analyze(const std::string& input, std::optional<double> tol, std::optional<double> rank_tol,
                const std::string& report_path, std::optional<std::uint64_t> seed) {
  tcmp::InputDocument doc = tcmp::load_input(input);
  if (doc.n != 3)
    throw tcmp::Error(tcmp::ErrorCode::InvalidArgument, "analysis needs n = 3, got " + std::to_string(doc.n));
  if (tol) doc.tolerances.consistency = *tol;
  if (rank_tol) doc.tolerances.rank = *rank_tol;
  const tcmp::AnalysisReport report = tcmp::decide(doc.moments, doc.tolerances);
  const std::string text = tcmp::serialize_report(report, seed);
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path);
    if (!out) throw tcmp::Error(tcmp::ErrorCode::InvalidArgument, "cannot write " + report_path);
    out << text;
  }
  if (report.measure)
    std::cerr << "measure: " << report.measure->atoms.size() << " atoms, rank " << report.rank << "\n";
  else
    std::cerr << "no measure: " << tcmp::to_string(*report.failure_reason) << " (" << report.failure_detail
              << ")\n";
  return exit_code_for(report);
}

int run_variety(double u, double t) {
  const tcmp::ConeParams params = tcmp::cone_params(u, t);
  const tcmp::VarietySet v = tcmp::variety_q7(params);
  std::cout << std::setprecision(17);
  std::cout << "# u " << u << " t " << t << "\n";
  std::cout << "# circle radius " << std::sqrt(std::abs(u)) << "\n";
  std::cout << "# line y = x\n";
  std::cout << "# count " << v.size() << "\n";
  std::cout << "x y\n";
  for (const auto& z : v.points()) std::cout << z.real() << " " << z.imag() << "\n";
  return 0;
}

int run_sweep(const std::string& ranges) {
  const auto comma = ranges.find(',');
  if (comma == std::string::npos)
    throw tcmp::Error(tcmp::ErrorCode::InvalidArgument, "sweep needs u0:u1:steps,t0:t1:steps");
  const Range ur = parse_range(ranges.substr(0, comma));
  const Range tr = parse_range(ranges.substr(comma + 1));
  std::cout << std::setprecision(17) << "u t in_cone count\n";
  for (int a = 0; a < ur.steps; ++a) {
    for (int b = 0; b < tr.steps; ++b) {
      const double u = ur.at(a), t = tr.at(b);
      std::cout << u << " " << t << " ";
      if (!tcmp::in_open_cone(u, t)) {
        std::cout << "0 -\n";
        continue;
      }
      const tcmp::BivarPolynomial rel[] = {tcmp::q7_polynomial(u, t)};
      std::cout << "1 " << tcmp::variety_from_relations(rel).size() << "\n";
    }
  }
  return 0;
}

int run_audit(double u, double t) {
  const tcmp::RepresentationAudit a = tcmp::representation_audit(u, t);
  std::cout << "dim ker T = " << a.dim_ker_T << "\n"
            << "rank T = " << a.rank_T << "\n"
            << "dim P6 = " << a.dim_P6 << "\n"
            << "rank S = " << a.rank_S << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated complex moment problem with a cubic column relation"};
  app.require_subcommand(1);

  std::string input, report_path;
  std::optional<double> tol, rank_tol;
  std::optional<std::uint64_t> seed;
  auto* analyze = app.add_subcommand("analyze", "Decide existence of a representing measure");
  analyze->add_option("input", input, "Input document (JSON)")->required();
  analyze->add_option("--tol", tol, "Consistency tolerance");
  analyze->add_option("--rank-tol", rank_tol, "Relative rank and positivity tolerance");
  analyze->add_option("--report", report_path, "Write the report here instead of stdout");
  analyze->add_option("--seed", seed, "Seed echoed into the report");

  double u = 0.0, t = 0.0;
  std::string sweep;
  auto* variety = app.add_subcommand("variety", "Zero set of z^3 - i t z - u zbar");
  variety->add_option("u", u, "Parameter u");
  variety->add_option("t", t, "Parameter t");
  variety->add_option("--sweep", sweep, "Grid u0:u1:steps,t0:t1:steps");
  variety->add_option("--seed", seed, "Unused; accepted for uniform batch invocation");

  double au = 0.0, at = 0.0;
  auto* audit = app.add_subcommand("audit", "Ranks of the representation maps T and S");
  audit->add_option("u", au, "Parameter u")->required();
  audit->add_option("t", at, "Parameter t")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*analyze) return run_analyze(input, tol, rank_tol, report_path, seed);
    if (*variety) {
      if (!sweep.empty()) return run_sweep(sweep);
      if (variety->count("u") == 0 || variety->count("t") == 0) {
        std::cerr << "usage error: variety needs u and t, or --sweep\n";
        return kExitError;
      }
      return run_variety(u, t);
    }
    if (*audit) return run_audit(au, at);
  } catch (const tcmp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
