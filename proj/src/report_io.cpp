#include "bregsym/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>

namespace bregsym {

namespace {

using nlohmann::json;

std::string field_error(const char* ctx, const std::string& what) {
  return std::string(ctx) + ": " + what;
}

// Strict object shape: all of `required`, nothing outside required+optional.
void check_keys(const json& j, const char* ctx,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  if (!j.is_object())
    throw std::invalid_argument(field_error(ctx, "expected an object"));
  for (const char* k : required)
    if (!j.contains(k))
      throw std::invalid_argument(
          field_error(ctx, std::string("missing field '") + k + "'"));
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known)
      throw std::invalid_argument(
          field_error(ctx, "unknown field '" + it.key() + "'"));
  }
}

double get_double(const json& j, const char* key, const char* ctx) {
  const json& v = j.at(key);
  if (!v.is_number())
    throw std::invalid_argument(
        field_error(ctx, std::string("field '") + key + "' must be a number"));
  return v.get<double>();
}

std::uint64_t get_u64(const json& j, const char* key, const char* ctx) {
  const json& v = j.at(key);
  // in-memory construction stores small literals as signed integers
  bool ok = v.is_number_unsigned() ||
            (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  if (!ok)
    throw std::invalid_argument(field_error(
        ctx, std::string("field '") + key + "' must be a nonnegative integer"));
  return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, const char* ctx) {
  const json& v = j.at(key);
  if (!v.is_boolean())
    throw std::invalid_argument(
        field_error(ctx, std::string("field '") + key + "' must be a boolean"));
  return v.get<bool>();
}

std::string get_string(const json& j, const char* key, const char* ctx) {
  const json& v = j.at(key);
  if (!v.is_string())
    throw std::invalid_argument(
        field_error(ctx, std::string("field '") + key + "' must be a string"));
  return v.get<std::string>();
}

std::vector<double> get_double_array(const json& j, const char* key,
                                     const char* ctx) {
  const json& v = j.at(key);
  if (!v.is_array())
    throw std::invalid_argument(
        field_error(ctx, std::string("field '") + key + "' must be an array"));
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number())
      throw std::invalid_argument(field_error(
          ctx, std::string("field '") + key + "' must hold numbers only"));
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const Functional& f) {
  json params = json::object();
  switch (f.family) {
    case Family::PPower:
      params["p"] = f.p;
      if (!f.weights.empty()) params["weights"] = f.weights;
      break;
    case Family::SqrtSmoothed:
      params["eps"] = f.eps;
      break;
    default:
      break;
  }
  return json{{"family", family_name(f.family)}, {"params", params}};
}

Functional functional_from_json(const nlohmann::json& j) {
  check_keys(j, "functional", {"family", "params"}, {});
  std::string fam = get_string(j, "family", "functional");
  const json& params = j.at("params");
  if (fam == "ppower") {
    check_keys(params, "functional.params", {"p"}, {"weights"});
    double p = get_double(params, "p", "functional.params");
    if (params.contains("weights"))
      return Functional::ppower(
          p, get_double_array(params, "weights", "functional.params"));
    return Functional::ppower(p);
  }
  if (fam == "hilbert") {
    check_keys(params, "functional.params", {}, {});
    return Functional::hilbert();
  }
  if (fam == "abs") {
    check_keys(params, "functional.params", {}, {});
    return Functional::absolute();
  }
  if (fam == "huber") {
    check_keys(params, "functional.params", {}, {});
    return Functional::huber();
  }
  if (fam == "sqrt-smoothed") {
    check_keys(params, "functional.params", {"eps"}, {});
    return Functional::sqrt_smoothed(get_double(params, "eps", "functional.params"));
  }
  if (fam == "custom-scalar")
    throw std::invalid_argument(
        "functional: custom-scalar carries code and cannot be parsed");
  throw std::invalid_argument("functional: unknown family '" + fam + "'");
}

nlohmann::json to_json(const DomainSpec& dom) {
  switch (dom.kind) {
    case DomainSpec::Kind::Box:
    case DomainSpec::Kind::PairBall:
      return json{{"kind", domain_kind_name(dom.kind)},
                  {"dimension", dom.dimension},
                  {"radius", dom.radius}};
    case DomainSpec::Kind::Ray:
      return json{{"kind", "ray"},
                  {"dimension", dom.dimension},
                  {"r_min", dom.r_min},
                  {"r_max", dom.r_max},
                  {"thetas", dom.thetas}};
    case DomainSpec::Kind::Interval:
      return json{{"kind", "interval"}, {"a", dom.a}, {"b", dom.b}};
  }
  return json::object();
}

DomainSpec::Kind domain_kind_from_name(const std::string& name) {
  if (name == "box") return DomainSpec::Kind::Box;
  if (name == "pair-ball") return DomainSpec::Kind::PairBall;
  if (name == "ray") return DomainSpec::Kind::Ray;
  if (name == "interval") return DomainSpec::Kind::Interval;
  throw std::invalid_argument("domain: unknown kind '" + name + "'");
}

DomainSpec domain_from_json(const nlohmann::json& j) {
  check_keys(j, "domain", {"kind"},
             {"dimension", "radius", "r_min", "r_max", "thetas", "a", "b"});
  DomainSpec::Kind kind = domain_kind_from_name(get_string(j, "kind", "domain"));
  switch (kind) {
    case DomainSpec::Kind::Box:
    case DomainSpec::Kind::PairBall: {
      check_keys(j, "domain", {"kind", "dimension", "radius"}, {});
      std::size_t dim = std::size_t(get_u64(j, "dimension", "domain"));
      double R = get_double(j, "radius", "domain");
      return kind == DomainSpec::Kind::Box ? DomainSpec::box(dim, R)
                                           : DomainSpec::pair_ball(dim, R);
    }
    case DomainSpec::Kind::Ray: {
      check_keys(j, "domain", {"kind", "dimension", "r_min", "r_max", "thetas"},
                 {});
      return DomainSpec::ray(get_double(j, "r_min", "domain"),
                             get_double(j, "r_max", "domain"),
                             get_double_array(j, "thetas", "domain"),
                             std::size_t(get_u64(j, "dimension", "domain")));
    }
    case DomainSpec::Kind::Interval: {
      check_keys(j, "domain", {"kind", "a", "b"}, {});
      return DomainSpec::interval(get_double(j, "a", "domain"),
                                  get_double(j, "b", "domain"));
    }
  }
  throw std::invalid_argument("domain: unknown kind");
}

nlohmann::json to_json(const RatioWitness& w) {
  json ratio;
  ratio["unbounded"] = w.ratio.is_unbounded;
  if (!w.ratio.is_unbounded) ratio["value"] = w.ratio.value;
  json out{{"x", w.x.coords},
           {"y", w.y.coords},
           {"d_xy", w.d_xy},
           {"d_yx", w.d_yx},
           {"ratio", ratio}};
  if (w.x.weighted()) out["x_weights"] = w.x.weights;
  if (w.y.weighted()) out["y_weights"] = w.y.weights;
  return out;
}

RatioWitness witness_from_json(const nlohmann::json& j) {
  check_keys(j, "witness", {"x", "y", "d_xy", "d_yx", "ratio"},
             {"x_weights", "y_weights"});
  RatioWitness w;
  w.x.coords = get_double_array(j, "x", "witness");
  w.y.coords = get_double_array(j, "y", "witness");
  if (j.contains("x_weights"))
    w.x.weights = get_double_array(j, "x_weights", "witness");
  if (j.contains("y_weights"))
    w.y.weights = get_double_array(j, "y_weights", "witness");
  w.d_xy = get_double(j, "d_xy", "witness");
  w.d_yx = get_double(j, "d_yx", "witness");
  const json& ratio = j.at("ratio");
  bool unbounded = get_bool(ratio, "unbounded", "witness.ratio");
  if (unbounded) {
    check_keys(ratio, "witness.ratio", {"unbounded"}, {});
    w.ratio = {std::numeric_limits<double>::infinity(), true};
  } else {
    check_keys(ratio, "witness.ratio", {"unbounded", "value"}, {});
    w.ratio = {get_double(ratio, "value", "witness.ratio"), false};
  }
  return w;
}

nlohmann::json to_json(const TheoreticalBound& b) {
  if (!b.present) return json{{"kind", "none"}};
  json out{{"kind", b.kind}, {"value", b.value}};
  if (b.has_bundle)
    out["bundle"] = json{{"cp", b.bundle.cp},
                         {"refined_lower", b.bundle.refined_lower},
                         {"refined_upper", b.bundle.refined_upper},
                         {"eta", b.bundle.eta}};
  return out;
}

TheoreticalBound bound_from_json(const nlohmann::json& j) {
  TheoreticalBound b;
  std::string kind = get_string(j, "kind", "bound");
  if (kind == "none") {
    check_keys(j, "bound", {"kind"}, {});
    return b;
  }
  check_keys(j, "bound", {"kind", "value"}, {"bundle"});
  b.present = true;
  b.kind = kind;
  b.value = get_double(j, "value", "bound");
  if (j.contains("bundle")) {
    const json& bundle = j.at("bundle");
    check_keys(bundle, "bound.bundle",
               {"cp", "refined_lower", "refined_upper", "eta"}, {});
    b.has_bundle = true;
    b.bundle.cp = get_double(bundle, "cp", "bound.bundle");
    b.bundle.refined_lower = get_double(bundle, "refined_lower", "bound.bundle");
    b.bundle.refined_upper = get_double(bundle, "refined_upper", "bound.bundle");
    b.bundle.eta = get_double(bundle, "eta", "bound.bundle");
  }
  return b;
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "bounded-within-theory") return Verdict::BoundedWithinTheory;
  if (name == "exceeds-theory") return Verdict::ExceedsTheory;
  if (name == "unbounded-detected") return Verdict::UnboundedDetected;
  throw std::invalid_argument("report: unknown verdict '" + name + "'");
}

nlohmann::json to_json(const SymmetryReport& rep) {
  return json{{"schema", 1},
              {"functional", to_json(rep.functional)},
              {"domain", to_json(rep.domain)},
              {"samples", rep.samples},
              {"samples_evaluated", rep.samples_evaluated},
              {"seed", rep.seed},
              {"ratio_slack", rep.ratio_slack},
              {"empirical_sup", to_json(rep.best)},
              {"bound", to_json(rep.bound)},
              {"verdict", verdict_name(rep.verdict)}};
}

SymmetryReport report_from_json(const nlohmann::json& j) {
  check_keys(j, "report",
             {"schema", "functional", "domain", "samples", "samples_evaluated",
              "seed", "ratio_slack", "empirical_sup", "bound", "verdict"},
             {});
  if (get_u64(j, "schema", "report") != 1)
    throw std::invalid_argument("report: unsupported schema version");
  SymmetryReport rep;
  rep.functional = functional_from_json(j.at("functional"));
  rep.domain = domain_from_json(j.at("domain"));
  rep.samples = get_u64(j, "samples", "report");
  rep.samples_evaluated = get_u64(j, "samples_evaluated", "report");
  rep.seed = get_u64(j, "seed", "report");
  rep.ratio_slack = get_double(j, "ratio_slack", "report");
  rep.best = witness_from_json(j.at("empirical_sup"));
  rep.bound = bound_from_json(j.at("bound"));
  rep.verdict = verdict_from_name(get_string(j, "verdict", "report"));
  return rep;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("command"))
    throw std::invalid_argument("config: missing field 'command'");
  RunConfig c;
  c.command = get_string(j, "command", "config");
  if (c.command == "verify") {
    check_keys(j, "config", {"command", "functional"},
               {"domain", "samples", "seed", "out", "json", "threads",
                "expect_unbounded", "tolerance_overrides"});
    c.functional = functional_from_json(j.at("functional"));
    c.has_functional = true;
    if (j.contains("domain")) {
      c.domain = domain_from_json(j.at("domain"));
      c.has_domain = true;
    }
    if (j.contains("samples")) {
      c.samples = get_u64(j, "samples", "config");
      if (c.samples < 1)
        throw std::invalid_argument("config: samples must be >= 1");
    }
    if (j.contains("seed")) {
      c.seed = get_u64(j, "seed", "config");
      c.has_seed = true;
    }
    if (j.contains("out")) c.out = get_string(j, "out", "config");
    if (j.contains("json")) c.json_output = get_bool(j, "json", "config");
    if (j.contains("threads")) {
      std::uint64_t t = get_u64(j, "threads", "config");
      if (t < 1 || t > 1024)
        throw std::invalid_argument("config: threads must be in [1, 1024]");
      c.threads = unsigned(t);
    }
    if (j.contains("expect_unbounded"))
      c.expect_unbounded = get_bool(j, "expect_unbounded", "config");
    if (j.contains("tolerance_overrides")) {
      const json& tol = j.at("tolerance_overrides");
      check_keys(tol, "config.tolerance_overrides", {}, {"ratio_slack"});
      if (tol.contains("ratio_slack")) {
        c.ratio_slack = get_double(tol, "ratio_slack", "config.tolerance_overrides");
        if (!(c.ratio_slack >= 0.0))
          throw std::invalid_argument(
              "config: ratio_slack must be nonnegative");
      }
    }
  } else if (c.command == "bounds") {
    check_keys(j, "config", {"command", "p"}, {"out", "json"});
    c.p = get_double(j, "p", "config");
    c.has_p = true;
    if (j.contains("out")) c.out = get_string(j, "out", "config");
    if (j.contains("json")) c.json_output = get_bool(j, "json", "config");
  } else if (c.command == "ratio-curve") {
    check_keys(j, "config", {"command", "p"},
               {"r_min", "r_max", "points", "theta", "out"});
    c.p = get_double(j, "p", "config");
    c.has_p = true;
    if (j.contains("r_min")) c.r_min = get_double(j, "r_min", "config");
    if (j.contains("r_max")) c.r_max = get_double(j, "r_max", "config");
    if (j.contains("points")) {
      c.points = std::size_t(get_u64(j, "points", "config"));
      if (c.points < 1)
        throw std::invalid_argument("config: points must be >= 1");
    }
    if (j.contains("theta")) c.theta = get_double(j, "theta", "config");
  } else if (c.command == "counterexample") {
    check_keys(j, "config", {"command", "kind"}, {"x", "eps", "out", "json"});
    c.kind = get_string(j, "kind", "config");
    if (c.kind != "abs" && c.kind != "huber")
      throw std::invalid_argument("config: kind must be 'abs' or 'huber'");
    if (j.contains("x")) c.x = get_double(j, "x", "config");
    if (j.contains("eps")) c.eps = get_double(j, "eps", "config");
    if (j.contains("out")) c.out = get_string(j, "out", "config");
    if (j.contains("json")) c.json_output = get_bool(j, "json", "config");
  } else {
    throw std::invalid_argument("config: unknown command '" + c.command + "'");
  }
  return c;
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw std::invalid_argument("log grid needs 0 < lo < hi < inf");
  if (n < 2) throw std::invalid_argument("log grid needs at least 2 points");
  std::vector<double> out(n);
  double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
  out.front() = lo;  // endpoints exact, untouched by the exp/log round trip
  out.back() = hi;
  return out;
}

void write_ratio_curve_csv(std::ostream& os, double p,
                           const std::vector<double>& r_values, double theta) {
  os << "r,theta,f,g,ratio\n";
  for (double r : r_values) {
    RatioFunctionParams params{p, r, theta};
    auto [fv, gv] = fg_value(params);
    os << format_double(r) << ',' << format_double(theta) << ','
       << format_double(fv) << ',' << format_double(gv) << ','
       << format_double(fg_ratio(params)) << '\n';
  }
}

}  // namespace bregsym
