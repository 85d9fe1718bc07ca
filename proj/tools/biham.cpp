#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "biham/errors.hpp"
#include "biham/hierarchy.hpp"
#include "biham/json_io.hpp"
#include "biham/reduction.hpp"
#include "biham/verify.hpp"

using biham::json_io::json;

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// flag > BIHAM_<KEY> environment variable > config file key > default
class Resolver {
 public:
  void load(const std::optional<std::string>& flag_path) {
    std::optional<std::string> path = flag_path;
    if (!path)
      if (const char* env = std::getenv("BIHAM_CONFIG")) path = env;
    if (!path) return;
    try {
      file_ = biham::json_io::read_file(*path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (!file_.is_object()) throw ConfigError("config file must hold a JSON object");
  }

  template <class T>
  T get(const CLI::Option* opt, const T& flag_value, const std::string& key, const T& fallback) const {
    if (opt && opt->count() > 0) return flag_value;
    if (auto env = env_value(key)) return parse<T>(*env, key);
    for (const std::string& k : {key, underscored(key)}) {
      if (file_.is_object() && file_.contains(k)) {
        try {
          const json& j = file_.at(k);
          if constexpr (std::is_same_v<T, std::string>) {
            return j.is_string() ? j.get<std::string>() : j.dump();
          } else {
            return j.get<T>();
          }
        } catch (const json::exception&) {
          throw ConfigError("config file: bad value for " + k);
        }
      }
    }
    return fallback;
  }

  bool has(const CLI::Option* opt, const std::string& key) const {
    if (opt && opt->count() > 0) return true;
    if (env_value(key)) return true;
    return file_.is_object() && (file_.contains(key) || file_.contains(underscored(key)));
  }

 private:
  static std::string underscored(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
  }

  static std::optional<std::string> env_value(const std::string& key) {
    std::string name = "BIHAM_" + underscored(key);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  }

  template <class T>
  static T parse(const std::string& text, const std::string& key) {
    if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else {
      std::istringstream in(text);
      T value{};
      in >> value;
      if (!in || !(in >> std::ws).eof()) throw ConfigError("environment: bad value for " + key + ": " + text);
      return value;
    }
  }

  json file_;
};

biham::Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw ConfigError("expected RE,IM but got '" + text + "'");
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

struct Flags {
  std::size_t n = 3;
  std::uint64_t seed = 0;
  int trials = 100;
  double tol = 0.0;
  double tol_reg = 1e-8;
  double fd_step = 0.0;
  std::string suite = "all";
  std::string slice = "both";
  double radius = 0.2;
  int steps = 2000;
  unsigned threads = 0;
  std::string certificate;
  std::string format = "json";
  std::string out;
  std::string config;
  int m = 1;
  std::string z_end = "0.5,0";
  std::string initial;
  std::string point;
};

int cmd_verify(const Resolver& r, const Flags& f, CLI::App& sub) {
  biham::verify::Config c;
  c.n = r.get(sub.get_option("--n"), f.n, "n", c.n);
  c.seed = r.get(sub.get_option("--seed"), f.seed, "seed", c.seed);
  c.trials = r.get(sub.get_option("--trials"), f.trials, "trials", c.trials);
  if (r.has(sub.get_option("--tol"), "tol")) c.tol = r.get(sub.get_option("--tol"), f.tol, "tol", 0.0);
  c.tol_reg = r.get(sub.get_option("--tol-reg"), f.tol_reg, "tol-reg", c.tol_reg);
  if (r.has(sub.get_option("--fd-step"), "fd-step"))
    c.fd_step = r.get(sub.get_option("--fd-step"), f.fd_step, "fd-step", 0.0);
  c.suite = r.get(sub.get_option("--suite"), f.suite, "suite", c.suite);
  c.slice = r.get(sub.get_option("--slice"), f.slice, "slice", c.slice);
  c.radius = r.get(sub.get_option("--radius"), f.radius, "radius", c.radius);
  c.steps = r.get(sub.get_option("--steps"), f.steps, "steps", c.steps);
  c.threads = r.get(sub.get_option("--threads"), f.threads, "threads", c.threads);
  const std::string cert = r.get(sub.get_option("--certificate"), f.certificate, "certificate", std::string());
  if (!cert.empty()) c.certificate = cert;
  const std::string format = r.get(sub.get_option("--format"), f.format, "format", std::string("json"));
  if (format != "json" && format != "text") throw ConfigError("format must be json or text");
  try {
    biham::verify::validate(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const biham::verify::Report report = biham::verify::run(c);
  Output out(r.get(sub.get_option("--out"), f.out, "out", std::string()));
  if (format == "json") {
    out.stream() << biham::verify::dump(report);
  } else {
    for (const auto& e : report.entries)
      out.stream() << (e.pass ? "PASS " : "FAIL ") << e.tag << " max_residual=" << e.max_residual
                   << " tolerance=" << e.tolerance << " trials=" << e.trials << '\n';
  }
  return report.pass() ? 0 : 1;
}

int cmd_evolve(const Resolver& r, const Flags& f, CLI::App& sub) {
  const int m = r.get(sub.get_option("--m"), f.m, "m", 1);
  const int steps = r.get(sub.get_option("--steps"), f.steps, "steps", 2000);
  const double tol_reg = r.get(sub.get_option("--tol-reg"), f.tol_reg, "tol-reg", 1e-8);
  const biham::Complex z_end = parse_complex(r.get(sub.get_option("--z-end"), f.z_end, "z-end", f.z_end));
  const std::string initial = r.get(sub.get_option("--initial"), f.initial, "initial", std::string());
  if (m < 1) throw ConfigError("m must be >= 1");
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (initial.empty()) throw ConfigError("evolve needs --initial FILE");

  biham::ReducedPoint start;
  try {
    start = biham::json_io::reduced_point_from_json(biham::json_io::read_file(initial), tol_reg);
  } catch (const biham::NotRegular&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial point: ") + e.what());
  }

  const biham::Trajectory traj = biham::integrate_reduced(start, m, z_end, steps, tol_reg);
  Output out(r.get(sub.get_option("--out"), f.out, "out", std::string()));
  const bool hermitian = (start.L - start.L.adjoint()).norm() <= 1e-14 * (1.0 + start.L.norm());
  double inv_drift = 0.0, herm_drift = 0.0;
  const auto& inv0 = traj.samples.front().invariants;
  for (const auto& s : traj.samples) {
    json line;
    line["z"] = biham::json_io::complex_to_json(s.z);
    json q = json::array();
    for (Eigen::Index i = 0; i < s.point.Q.rows(); ++i) q.push_back(biham::json_io::complex_to_json(s.point.Q(i, i)));
    line["Q"] = std::move(q);
    line["L"] = biham::json_io::matrix_entries(s.point.L);
    json inv = json::array();
    for (std::size_t k = 0; k < s.invariants.size(); ++k) {
      inv.push_back(biham::json_io::complex_to_json(s.invariants[k]));
      inv_drift = std::max(inv_drift, std::abs(s.invariants[k] - inv0[k]));
    }
    line["invariants"] = std::move(inv);
    herm_drift = std::max(herm_drift, (s.point.L - s.point.L.adjoint()).norm());
    out.stream() << line.dump() << '\n';
  }
  json summary;
  summary["samples"] = traj.samples.size();
  summary["z_end"] = biham::json_io::complex_to_json(z_end);
  summary["invariant_drift"] = inv_drift;
  summary["hermiticity_drift"] = hermitian ? json(herm_drift) : json(nullptr);
  (out.to_file() ? std::cout : std::cerr) << summary.dump() << '\n';
  return 0;
}

int cmd_reduce(const Resolver& r, const Flags& f, CLI::App& sub) {
  const std::string path = r.get(sub.get_option("--point"), f.point, "point", std::string());
  const double tol_reg = r.get(sub.get_option("--tol-reg"), f.tol_reg, "tol-reg", 1e-8);
  if (path.empty()) throw ConfigError("reduce needs --point FILE");
  biham::PhasePoint p;
  try {
    json doc = biham::json_io::read_file(path);
    if (!doc.contains("g") && doc.contains("Q")) doc["g"] = doc["Q"];
    p = biham::json_io::phase_point_from_json(doc);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("point: ") + e.what());
  }
  const biham::Projection pr = biham::project(p, tol_reg);
  Output out(r.get(sub.get_option("--out"), f.out, "out", std::string()));
  json j;
  j["Q"] = biham::json_io::matrix_to_json(pr.point.Q);
  j["L"] = biham::json_io::matrix_to_json(pr.point.L);
  j["eta"] = biham::json_io::matrix_to_json(pr.eta);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-Hamiltonian spin Sutherland verification toolkit"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "run identity suites and print a JSON report");
  verify->add_option("--n", f.n, "matrix size");
  verify->add_option("--seed", f.seed, "random seed");
  verify->add_option("--trials", f.trials, "random points per identity");
  verify->add_option("--tol", f.tol, "override every floating-point tolerance");
  verify->add_option("--tol-reg", f.tol_reg, "eigenvalue separation threshold");
  verify->add_option("--fd-step", f.fd_step, "finite-difference step");
  verify->add_option("--suite", f.suite, "jacobi|brackets|reduction|hierarchy|realforms|heisenberg|all");
  verify->add_option("--slice", f.slice, "hyp|trig|both");
  verify->add_option("--radius", f.radius, "sampling radius around the identity on the double");
  verify->add_option("--steps", f.steps, "integrator steps for flow checks");
  verify->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  verify->add_option("--certificate", f.certificate, "write the Jacobi certificate here");
  verify->add_option("--format", f.format, "json|text");
  verify->add_option("--out", f.out, "report file (default stdout)");
  verify->add_option("--config", f.config, "JSON config file");

  auto* evolve = app.add_subcommand("evolve", "integrate a reduced flow, one JSON record per line");
  evolve->add_option("--m", f.m, "flow index");
  evolve->add_option("--z-end", f.z_end, "end of the flow ray, RE,IM");
  evolve->add_option("--steps", f.steps, "integrator steps");
  evolve->add_option("--initial", f.initial, "initial point file {Q, L} or {g, L}");
  evolve->add_option("--out", f.out, "trajectory file (default stdout)");
  evolve->add_option("--tol-reg", f.tol_reg, "eigenvalue separation threshold");
  evolve->add_option("--config", f.config, "JSON config file");

  auto* reduce = app.add_subcommand("reduce", "project a point {g, L} to diagonal g");
  reduce->add_option("--point", f.point, "point file {g, L}");
  reduce->add_option("--out", f.out, "output file (default stdout)");
  reduce->add_option("--tol-reg", f.tol_reg, "eigenvalue separation threshold");
  reduce->add_option("--config", f.config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Resolver r;
    for (auto* sub : {verify, evolve, reduce}) {
      if (!sub->parsed()) continue;
      const auto* opt = sub->get_option("--config");
      r.load(opt->count() ? std::optional<std::string>(f.config) : std::nullopt);
      if (sub == verify) return cmd_verify(r, f, *sub);
      if (sub == evolve) return cmd_evolve(r, f, *sub);
      return cmd_reduce(r, f, *sub);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const biham::NotRegular& e) {
    std::cerr << "not regular: " << e.what() << '\n';
    return 1;
  } catch (const biham::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
