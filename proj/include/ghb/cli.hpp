#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghb/convexity.hpp"

namespace ghb::cli {

enum class Command { Constants, Scan, Margins, Curvature, Stability, Geodesics, Counterexample };
enum class Format { Csv, Json };
enum class Expectation { Positive, Negative };

/// Fully resolved invocation. Every report embeds it.
struct RunSpec {
  Command command = Command::Constants;
  std::string config_path;
  nlohmann::json surface;  ///< resolved surface document (scan only)
  int k = 1;
  Sampling sampling;
  bool trace = false;  ///< scan: one CSV row per sample
  std::string out_path;  ///< empty = stdout
  Format format = Format::Csv;
  std::optional<Expectation> expect;

  std::string margin_kind = "sphere";
  std::optional<double> from;  ///< margins: parameter range, default around the threshold
  std::optional<double> to;
  std::size_t steps = 50;
  std::size_t directions = 2000;

  std::size_t first = 0;  ///< curvature / stability endpoints
  std::size_t second = 1;
  std::size_t samples = 200;

  std::size_t random_seeds = 1000;  ///< geodesics

  double a = 1.0;  ///< counterexample
  double eps = 0.1;
  double m = 0.0;
};

std::string_view to_string(Command c);
nlohmann::json to_json(const RunSpec& spec);

struct HelpRequested {
  std::string text;
};

/// Parses argv into a RunSpec. Throws HelpRequested for --help, CLI::ParseError
/// on usage errors and ghb::Error on invalid values.
RunSpec parse(int argc, const char* const* argv);

/// Executes a RunSpec: 0 on success, 1 when the expectation is not met,
/// 2 on validation errors. Reports go to spec.out_path or `out`; the seed and
/// diagnostics go to `err`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse + run with usage errors mapped to exit code 2.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ghb::cli
