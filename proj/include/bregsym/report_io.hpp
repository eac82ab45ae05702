#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bregsym/search.hpp"

namespace bregsym {

// JSON wire format, schema version 1. Serialization and parsing are exact
// inverses on every value a run can produce; unbounded ratios drop the
// numeric field instead of emitting a non-representable infinity.
nlohmann::json to_json(const Functional& f);
nlohmann::json to_json(const DomainSpec& dom);
nlohmann::json to_json(const RatioWitness& w);
nlohmann::json to_json(const TheoreticalBound& b);
nlohmann::json to_json(const SymmetryReport& rep);

// Parsers reject unknown fields, missing required fields, and out-of-range
// values. CustomScalar functionals carry code, not data, and do not parse.
Functional functional_from_json(const nlohmann::json& j);
DomainSpec domain_from_json(const nlohmann::json& j);
RatioWitness witness_from_json(const nlohmann::json& j);
TheoreticalBound bound_from_json(const nlohmann::json& j);
SymmetryReport report_from_json(const nlohmann::json& j);

Verdict verdict_from_name(const std::string& name);
DomainSpec::Kind domain_kind_from_name(const std::string& name);

// Full description of one CLI invocation, loadable from --config FILE.
struct RunConfig {
  std::string command;  // verify | bounds | ratio-curve | counterexample

  bool has_functional = false;
  Functional functional;
  bool has_domain = false;
  DomainSpec domain;
  std::uint64_t samples = 10000;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::string out;  // empty = stdout only
  bool json_output = false;
  unsigned threads = 1;
  bool expect_unbounded = false;
  double ratio_slack = 1e-9;

  bool has_p = false;
  double p = 0.0;  // bounds / ratio-curve

  double r_min = 1e-3;  // ratio-curve grid
  double r_max = 1e3;
  std::size_t points = 200;
  double theta = 0.0;

  std::string kind;  // counterexample: abs | huber
  double x = 2.0;
  double eps = 0.01;
};

// Strict parse: every field must be one the named command understands.
RunConfig run_config_from_json(const nlohmann::json& j);

// Shortest decimal form that parses back to the same double; always uses
// '.' regardless of locale.
std::string format_double(double v);

// n log-spaced values from lo to hi inclusive (n >= 2, 0 < lo < hi).
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

// CSV rows "r,theta,f,g,ratio" for the two ray functions at fixed theta.
void write_ratio_curve_csv(std::ostream& os, double p,
                           const std::vector<double>& r_values, double theta);

}  // namespace bregsym
