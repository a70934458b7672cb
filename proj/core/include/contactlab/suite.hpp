#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contactlab/manifold.hpp"
#include "contactlab/soliton.hpp"

namespace contactlab {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunOptions {
  std::size_t points = 20;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  int order = 3;
  std::vector<std::string> checks;  // empty: every applicable check
};

// One check evaluated over all sampled points.  A check is asserted when
// the manifold's data claims it (structure axioms, soliton equation) or
// when the hypotheses of the result it encodes hold at every point;
// otherwise it is only reported.
struct CheckRecord {
  std::string name;
  std::string tag;
  std::size_t points = 0;
  std::vector<double> residuals;  // per point
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool asserted = true;
  bool pass = false;  // max_residual <= tolerance
};

struct SkippedCheck {
  std::string name;
  std::string reason;
};

struct SuiteResult {
  std::string manifold;
  std::string digest;
  RunOptions options;
  std::vector<CheckRecord> checks;
  std::vector<SkippedCheck> skipped;
  std::optional<ClassificationReport> classification;

  // "no-checks", "pass" or "fail"
  std::string verdict() const;
  // 0 when every asserted check passes, 2 otherwise.
  int exit_code() const;
  const CheckRecord* find(std::string_view name) const;
};

// Names of every check the suite knows, in report order.
std::vector<std::string> check_names();

// Samples options.points points from the domain and runs the suite.
// Throws ConfigError for an unknown name in options.checks and propagates
// evaluation errors.
SuiteResult run_suite(const ManifoldSpec& m, const RunOptions& options);

// FNV-1a 64-bit hash of the text, as 16 lowercase hex digits.
std::string config_digest(std::string_view text);

// JSON report: keys sorted, doubles with 17 significant digits, non-finite
// values as null.  Identical results give identical bytes.
std::string report_json(const SuiteResult& result);

// Human-readable summary, one line per check.
std::string summary_text(const SuiteResult& result);

}  // namespace contactlab
