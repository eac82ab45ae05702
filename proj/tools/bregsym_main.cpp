#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bregsym/report_io.hpp"

namespace {

using namespace bregsym;
using nlohmann::json;

// --seed beats BREGSYM_SEED beats 0.
std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.has_seed) return cfg.seed;
  if (const char* env = std::getenv("BREGSYM_SEED")) {
    std::string s(env);
    if (s.empty()) return 0;
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw std::invalid_argument("BREGSYM_SEED must be a nonnegative integer");
    return v;
  }
  return 0;
}

Functional make_functional(const std::string& name, double p, double eps,
                           bool has_p, bool has_eps) {
  if (name == "ppower") {
    if (!has_p) throw std::invalid_argument("--functional ppower requires --p");
    return Functional::ppower(p);
  }
  if (name == "hilbert") return Functional::hilbert();
  if (name == "abs") return Functional::absolute();
  if (name == "huber") return Functional::huber();
  if (name == "sqrt-smoothed") {
    if (!has_eps)
      throw std::invalid_argument("--functional sqrt-smoothed requires --eps");
    return Functional::sqrt_smoothed(eps);
  }
  throw std::invalid_argument("unknown functional '" + name + "'");
}

std::string describe(const Functional& f) {
  std::string s = family_name(f.family);
  if (f.family == Family::PPower) {
    s += " (p=" + format_double(f.p);
    if (!f.weights.empty()) s += ", weighted";
    s += ")";
  } else if (f.family == Family::SqrtSmoothed) {
    s += " (eps=" + format_double(f.eps) + ")";
  }
  return s;
}

std::string describe(const DomainSpec& dom) {
  std::ostringstream os;
  os << domain_kind_name(dom.kind);
  switch (dom.kind) {
    case DomainSpec::Kind::Box:
    case DomainSpec::Kind::PairBall:
      os << " dim=" << dom.dimension << " radius=" << format_double(dom.radius);
      break;
    case DomainSpec::Kind::Ray:
      os << " r in [" << format_double(dom.r_min) << ", "
         << format_double(dom.r_max) << "], " << dom.thetas.size() << " thetas";
      break;
    case DomainSpec::Kind::Interval:
      os << " [" << format_double(dom.a) << ", " << format_double(dom.b) << "]";
      break;
  }
  return os.str();
}

std::string coords_str(const Point& pt) {
  std::string s = "[";
  for (std::size_t i = 0; i < pt.dim(); ++i) {
    if (i) s += ", ";
    s += format_double(pt.coords[i]);
  }
  return s + "]";
}

int write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return 1;
  }
  out << text;
  out.flush();
  if (!out.good()) {
    std::cerr << "error: failed writing '" << path << "'\n";
    return 1;
  }
  return 0;
}

// Emits to --out when given, stdout otherwise.
int emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.out.empty()) return write_file(cfg.out, text);
  std::cout << text;
  return 0;
}

int run_verify(const RunConfig& cfg) {
  DomainSpec dom = cfg.has_domain ? cfg.domain : DomainSpec::box(1, 1.0);
  SymmetryReport rep = sample_sup_ratio(cfg.functional, dom, cfg.samples,
                                        resolve_seed(cfg), cfg.threads,
                                        cfg.ratio_slack);
  std::string doc = to_json(rep).dump(2) + "\n";
  if (!cfg.out.empty()) {
    // the machine-readable report always lands in --out, regardless of --json
    int rc = write_file(cfg.out, doc);
    if (rc != 0) return rc;
  }
  if (cfg.json_output) {
    std::cout << doc;
  } else {
    std::ostringstream os;
    os << "functional     " << describe(rep.functional) << "\n"
       << "domain         " << describe(rep.domain) << "\n"
       << "samples        " << rep.samples << " (" << rep.samples_evaluated
       << " in domain)\n"
       << "seed           " << rep.seed << "\n";
    if (rep.best.ratio.is_unbounded)
      os << "empirical sup  unbounded (denominator below 1e-14)\n";
    else
      os << "empirical sup  " << format_double(rep.best.ratio.value) << "\n";
    os << "  at x         " << coords_str(rep.best.x) << "\n"
       << "     y         " << coords_str(rep.best.y) << "\n"
       << "  d_xy, d_yx   " << format_double(rep.best.d_xy) << ", "
       << format_double(rep.best.d_yx) << "\n";
    if (rep.bound.present)
      os << "bound          " << format_double(rep.bound.value) << " ("
         << rep.bound.kind << ")\n";
    else
      os << "bound          none\n";
    os << "verdict        " << verdict_name(rep.verdict) << "\n";
    std::cout << os.str();
  }
  switch (rep.verdict) {
    case Verdict::BoundedWithinTheory:
      return 0;
    case Verdict::UnboundedDetected:
      return cfg.expect_unbounded ? 0 : 2;
    case Verdict::ExceedsTheory:
      return 2;
  }
  return 2;
}

int run_bounds(const RunConfig& cfg) {
  BoundBundle b = bound_bundle(cfg.p);
  std::string text;
  if (cfg.json_output) {
    json j{{"schema", 1},
           {"p", cfg.p},
           {"cp", b.cp},
           {"refined_lower", b.refined_lower},
           {"refined_upper", b.refined_upper},
           {"eta", b.eta}};
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "p              " << format_double(cfg.p) << "\n"
       << "C_p            " << format_double(b.cp) << "\n"
       << "refined lower  " << format_double(b.refined_lower) << "\n"
       << "refined upper  " << format_double(b.refined_upper) << "\n"
       << "eta            " << format_double(b.eta) << "\n";
    text = os.str();
  }
  return emit(cfg, text);
}

int run_ratio_curve(const RunConfig& cfg) {
  std::vector<double> rs;
  if (cfg.points == 1)
    rs = {cfg.r_min};  // single-row grids admit r = 0
  else
    rs = log_spaced(cfg.r_min, cfg.r_max, cfg.points);
  std::ostringstream os;
  write_ratio_curve_csv(os, cfg.p, rs, cfg.theta);
  return emit(cfg, os.str());
}

int run_counterexample(const RunConfig& cfg) {
  CounterexampleTriple t = cfg.kind == "abs"
                               ? counterexample_abs(cfg.x, cfg.eps)
                               : counterexample_huber(cfg.x, cfg.eps);
  json j{{"schema", 1}, {"kind", cfg.kind},         {"x", cfg.x},
         {"eps", cfg.eps}, {"d_switch", t.d_switch}, {"d_orig", t.d_orig},
         {"ratio", t.ratio}};
  return emit(cfg, j.dump(2) + "\n");
}

int run_command(const RunConfig& cfg) {
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "bounds") return run_bounds(cfg);
  if (cfg.command == "ratio-curve") return run_ratio_curve(cfg);
  if (cfg.command == "counterexample") return run_counterexample(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman distance symmetry toolkit"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON run configuration (replaces subcommand flags)");

  std::string fam, domain_kind = "box", out, kind;
  double p = 1.5, eps = 0.01, radius = 1.0, ratio_slack = 1e-9;
  double r_min = 1e-3, r_max = 1e3, theta = 0.0, x = 2.0;
  std::size_t dim = 1, points = 200;
  std::uint64_t samples = 10000, seed = 0;
  unsigned threads = 1;
  bool expect_unbounded = false, json_flag = false;

  CLI::App* verify = app.add_subcommand(
      "verify", "Estimate sup D(x,y)/D(y,x) and compare against theory");
  verify->add_option("--functional", fam,
                     "ppower|hilbert|abs|huber|sqrt-smoothed")
      ->required();
  verify->add_option("--p", p, "exponent for ppower (> 1)");
  verify->add_option("--eps", eps, "smoothing parameter for sqrt-smoothed (> 0)");
  verify->add_option("--dim", dim, "ambient dimension")->check(CLI::PositiveNumber);
  verify->add_option("--radius", radius, "domain radius (> 0)");
  verify->add_option("--domain", domain_kind, "box|pair-ball (default box)")
      ->check(CLI::IsMember({"box", "pair-ball"}));
  verify->add_option("--samples", samples, "sample count (default 10000)");
  verify->add_option("--seed", seed, "RNG seed (default: BREGSYM_SEED or 0)");
  verify->add_option("--threads", threads, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--ratio-slack", ratio_slack,
                     "relative slack before exceeds-theory (default 1e-9)");
  verify->add_flag("--expect-unbounded", expect_unbounded,
                   "treat verdict unbounded-detected as success");
  verify->add_flag("--json", json_flag, "print the JSON report to stdout");
  verify->add_option("--out", out, "write the JSON report to FILE");

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "Print theoretical constants for one exponent");
  bounds_cmd->add_option("--p", p, "exponent (> 1)")->required();
  bounds_cmd->add_flag("--json", json_flag, "JSON instead of the table");
  bounds_cmd->add_option("--out", out, "write output to FILE");

  CLI::App* curve = app.add_subcommand(
      "ratio-curve", "CSV of the ray ratio functions f, g and f/g");
  curve->add_option("--p", p, "exponent in (1, 2)")->required();
  curve->add_option("--r-min", r_min, "grid start (default 1e-3)");
  curve->add_option("--r-max", r_max, "grid end (default 1e3)");
  curve->add_option("--points", points, "grid size (default 200)")
      ->check(CLI::PositiveNumber);
  curve->add_option("--theta", theta, "direction cosine in [-1, 1]");
  curve->add_option("--out", out, "write CSV to FILE");

  CLI::App* counter = app.add_subcommand(
      "counterexample", "Closed-form divergence pairs for abs and huber");
  counter->add_option("--kind", kind, "abs|huber")
      ->required()
      ->check(CLI::IsMember({"abs", "huber"}));
  counter->add_option("--x", x, "first point of the pair");
  counter->add_option("--eps", eps, "distance to the kink/break");
  counter->add_flag("--json", json_flag, "accepted for symmetry; output is JSON");
  counter->add_option("--out", out, "write JSON to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit 0; any usage error is 1
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        std::cerr << "error: --config replaces subcommand usage\n";
        return 1;
      }
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 1;
      }
      cfg = run_config_from_json(json::parse(in));
    } else if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 1;
    } else if (verify->parsed()) {
      cfg.command = "verify";
      cfg.functional = make_functional(fam, p, eps, verify->count("--p") > 0,
                                       verify->count("--eps") > 0);
      cfg.has_functional = true;
      cfg.domain = domain_kind == "box" ? DomainSpec::box(dim, radius)
                                        : DomainSpec::pair_ball(dim, radius);
      cfg.has_domain = true;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.has_seed = verify->count("--seed") > 0;
      cfg.threads = threads;
      cfg.ratio_slack = ratio_slack;
      cfg.expect_unbounded = expect_unbounded;
      cfg.json_output = json_flag;
      cfg.out = out;
    } else if (bounds_cmd->parsed()) {
      cfg.command = "bounds";
      cfg.p = p;
      cfg.has_p = true;
      cfg.json_output = json_flag;
      cfg.out = out;
    } else if (curve->parsed()) {
      cfg.command = "ratio-curve";
      cfg.p = p;
      cfg.has_p = true;
      cfg.r_min = r_min;
      cfg.r_max = r_max;
      cfg.points = points;
      cfg.theta = theta;
      cfg.out = out;
    } else {
      cfg.command = "counterexample";
      cfg.kind = kind;
      cfg.x = x;
      cfg.eps = eps;
      cfg.json_output = json_flag;
      cfg.out = out;
    }
    return run_command(cfg);
  } catch (const json::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
