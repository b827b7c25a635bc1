#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <belltol/errors.hpp>
#include <belltol/local_polytope.hpp>
#include <belltol/quantum_value.hpp>
#include <belltol/serialization.hpp>
#include <belltol/states.hpp>
#include <belltol/tolerance_bounds.hpp>
#include <belltol/version.hpp>

namespace belltol::cli {

namespace {

struct StateArgs {
  std::string family = "ghz";
  std::size_t d = 2;
  std::size_t n = 2;
  std::size_t k = 1;
  std::string file;
};

struct SeesawArgs {
  std::uint64_t seed = 1;
  std::size_t restarts = 20;
  double sweep_tol = 1e-10;
  std::size_t threads = 1;
};

struct Options {
  std::string format = "json";
  std::string out;

  // bounds
  std::string family = "generic";
  std::string d_range = "2";
  std::string n_range = "2";
  std::string s_range = "2";
  std::string k_range;
  std::string meas = "projective";

  StateArgs state;
  SeesawArgs seesaw;
  std::string functional = "library";
  std::string functional_file;
  std::string noise = "white";
  std::string noise_file;
  std::string measurements = "seesaw";
  std::string measurements_file;
  std::string meas_out;
  std::string trace_out;
  double lp_tol = 1e-9;
};

std::size_t max_dimension() {
  const char* env = std::getenv("BELLTOL_MAX_DIM");
  if (!env || !*env) return kDefaultMaxDimension;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw ValidationError(std::string("BELLTOL_MAX_DIM: not a positive integer: ") + env);
  return static_cast<std::size_t>(v);
}

std::size_t parse_count(const std::string& text) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || text.front() == '-') throw ValidationError("not a non-negative integer: '" + text + "'");
  return static_cast<std::size_t>(v);
}

// "2", "2..5", "2,4", "inf" and combinations like "2..3,inf". nullopt = inf.
std::vector<std::optional<std::size_t>> parse_values(const std::string& text, bool allow_inf) {
  std::vector<std::optional<std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf") {
      if (!allow_inf) throw ValidationError("'inf' is only allowed for --s");
      out.emplace_back();
    } else if (const auto dots = item.find(".."); dots != std::string::npos) {
      const std::size_t a = parse_count(item.substr(0, dots)), b = parse_count(item.substr(dots + 2));
      if (b < a) throw ValidationError("empty range '" + item + "'");
      for (std::size_t v = a; v <= b; ++v) out.emplace_back(v);
    } else {
      out.emplace_back(parse_count(item));
    }
  }
  if (out.empty()) throw ValidationError("empty value list '" + text + "'");
  return out;
}

std::vector<std::size_t> parse_finite(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& v : parse_values(text, false)) out.push_back(*v);
  return out;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json state_config(const StateArgs& s) {
  if (!s.file.empty()) return {{"file", s.file}};
  json j{{"family", s.family}, {"d", s.d}, {"n", s.n}};
  if (s.family == "dicke") j["k"] = s.k;
  return j;
}

json seesaw_config(const SeesawArgs& s) {
  return {{"seed", s.seed}, {"restarts", s.restarts}, {"sweep_tol", s.sweep_tol}, {"threads", s.threads}};
}

DensityMatrix make_state(const StateArgs& s, std::size_t max_dim) {
  if (!s.file.empty()) return state_from_json(parse_json_file(s.file));
  if (s.family == "ghz") return ghz(s.d, s.n, max_dim);
  if (s.family == "dicke") return dicke(s.n, s.k, max_dim);
  if (s.family == "w") return w_state(s.n, max_dim);
  if (s.family == "white") return white_noise(s.d, s.n, max_dim);
  if (s.family == "product") return product_zero(s.d, s.n, max_dim);
  throw ValidationError("unknown state family '" + s.family + "' (expected ghz, dicke, w, white, product)");
}

std::vector<BellFunctional> make_functionals(const Options& o, std::size_t parties) {
  if (!o.functional_file.empty()) return {functional_from_json(parse_json_file(o.functional_file))};
  if (o.functional == "library") return default_functional_library(parties);
  if (o.functional == "chsh") return {parties == 2 ? chsh() : chsh_on_pair(parties, 0, 1)};
  if (o.functional == "mermin") return {mermin(parties)};
  throw ValidationError("unknown functional '" + o.functional + "' (expected library, chsh, mermin)");
}

SeesawConfig to_config(const SeesawArgs& s) {
  SeesawConfig c;
  c.seed = s.seed;
  c.restarts = s.restarts;
  c.sweep_tol = s.sweep_tol;
  c.threads = std::max<std::size_t>(1, s.threads);
  return c;
}

json envelope(const std::string& command, json config) {
  config["subcommand"] = command;
  return {{"version", kVersion}, {"config", std::move(config)}, {"timestamp", timestamp()}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text;
}

// Flat key,value listing of the scalar fields of a report.
std::string flat_csv(const json& j) {
  std::ostringstream os;
  os << "# belltol " << kVersion << "\n# config: " << j.at("config").dump() << "\n# timestamp: "
     << j.at("timestamp").get<std::string>() << "\nkey,value\n";
  std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix, const json& v) {
    if (v.is_object()) {
      for (const auto& [k, x] : v.items())
        if (k != "config" && k != "timestamp" && k != "version") walk(prefix.empty() ? k : prefix + "." + k, x);
    } else if (!v.is_array()) {
      os << prefix << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  };
  walk("", j);
  return os.str();
}

void emit(const Options& o, const json& report, std::ostream& out) {
  const std::string text = o.format == "csv" ? flat_csv(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_text(o.out, text);
  }
}

// ---- bounds ---------------------------------------------------------------

int cmd_bounds(const Options& o, std::ostream& out) {
  std::vector<ToleranceReport> rows;
  std::vector<MeasType> metas;
  if (o.meas == "both") {
    metas = {MeasType::projective, MeasType::generalized};
  } else {
    metas = {parse_meas_type(o.meas)};
  }
  const auto ns = parse_finite(o.n_range);
  if (o.family == "generic" || o.family == "ghz") {
    const auto ds = parse_finite(o.d_range);
    const auto ss = parse_values(o.s_range, true);
    for (auto d : ds)
      for (auto n : ns)
        for (const auto& s : ss) {
          const SettingRegime regime = s ? SettingRegime::per_site(*s) : SettingRegime::all();
          // The overall bounds hold for both measurement types; one row suffices.
          for (std::size_t m = 0; m < (regime.overall ? 1 : metas.size()); ++m)
            rows.push_back(o.family == "ghz" ? ghz_noise_bounds(d, n, regime, metas[m])
                                             : generic_noise_bounds(d, n, regime, metas[m]));
        }
  } else if (o.family == "ghz-qubit") {
    for (auto n : ns) {
      auto r = ghz_qubit_exact(n);
      rows.push_back(std::move(r.two_setting));
      rows.push_back(std::move(r.overall));
    }
  } else if (o.family == "dicke") {
    for (auto n : ns) {
      std::vector<std::size_t> ks;
      if (o.k_range.empty()) {
        for (std::size_t k = 1; k < n; ++k) ks.push_back(k);
      } else {
        ks = parse_finite(o.k_range);
      }
      for (auto k : ks) rows.push_back(dicke_bounds(n, k));
    }
  } else if (o.family == "w") {
    for (auto n : ns) rows.push_back(w_bounds(n));
  } else {
    throw ValidationError("unknown bound family '" + o.family + "' (expected generic, ghz, ghz-qubit, dicke, w)");
  }

  json config{{"family", o.family}, {"d", o.d_range}, {"n", o.n_range}, {"s", o.s_range}, {"meas", o.meas}};
  if (!o.k_range.empty()) config["k"] = o.k_range;
  json report = envelope("bounds", config);
  if (o.format == "csv") {
    std::ostringstream os;
    os << "# belltol " << kVersion << "\n# config: " << report.at("config").dump() << "\n# timestamp: "
       << report.at("timestamp").get<std::string>() << '\n';
    write_bounds_csv(os, rows);
    if (o.out.empty()) {
      out << os.str();
    } else {
      write_text(o.out, os.str());
    }
    return kOk;
  }
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(report_to_json(r));
  report["rows"] = std::move(arr);
  emit(o, report, out);
  return kOk;
}

// ---- violation ------------------------------------------------------------

json seesaw_json(const UpsilonLowerBound& ub, const BellFunctional& f) {
  const auto lhv = lhv_bounds(f);
  std::size_t sweeps = ub.best.trace.empty() ? 0 : ub.best.trace.size() - 1;
  return {{"upsilon_lower", round_reported(ub.value)},
          {"functional", ub.functional_name},
          {"quantum_value", round_reported(ub.best.quantum_value)},
          {"lhv", {{"sup", round_reported(lhv.sup)}, {"inf", round_reported(lhv.inf)}, {"b_lhv", round_reported(lhv.b_lhv)}}},
          {"restarts", ub.best.restarts_used},
          {"best_restart", ub.best.best_restart},
          {"sweeps", sweeps}};
}

void write_side_outputs(const Options& o, const SeesawResult& r, json& report) {
  if (!o.meas_out.empty()) {
    write_text(o.meas_out, measurements_to_json(r.assignment).dump(2) + "\n");
    report["measurements_file"] = o.meas_out;
  }
  if (!o.trace_out.empty()) {
    std::ofstream f(o.trace_out);
    if (!f) throw ValidationError("cannot write '" + o.trace_out + "'");
    write_seesaw_trace_csv(f, r);
    report["trace_file"] = o.trace_out;
  }
}

json solver_config(const Options& o) {
  json c{{"state", state_config(o.state)}, {"seesaw", seesaw_config(o.seesaw)}};
  c["functional"] = o.functional_file.empty() ? json(o.functional) : json{{"file", o.functional_file}};
  return c;
}

int cmd_violation(const Options& o, std::ostream& out) {
  const auto rho = make_state(o.state, max_dimension());
  const auto lib = make_functionals(o, rho.sites());
  const auto ub = upsilon_lower_bound(rho, lib, to_config(o.seesaw));
  json report = envelope("violation", solver_config(o));
  report["result"] = seesaw_json(ub, lib[ub.functional_index]);
  write_side_outputs(o, ub.best, report);
  emit(o, report, out);
  return kOk;
}

// ---- visibility -----------------------------------------------------------

NoiseSpec make_noise(const Options& o) {
  if (!o.noise_file.empty()) return NoiseSpec::explicit_noise(state_from_json(parse_json_file(o.noise_file)));
  if (o.noise == "white") return NoiseSpec::white();
  throw ValidationError("unknown noise '" + o.noise + "' (expected white, or use --noise-file)");
}

int cmd_visibility(const Options& o, std::ostream& out) {
  const auto rho = make_state(o.state, max_dimension());
  const NoiseSpec noise = make_noise(o);
  json config = solver_config(o);
  config["noise"] = o.noise_file.empty() ? json(o.noise) : json{{"file", o.noise_file}};
  config["lp_tol"] = o.lp_tol;
  json report;
  MeasurementAssignment meas;
  json source;
  if (!o.measurements_file.empty()) {
    config["measurements"] = {{"file", o.measurements_file}};
    report = envelope("visibility", config);
    meas = measurements_from_json(parse_json_file(o.measurements_file));
    source = {{"kind", "file"}};
  } else if (o.measurements == "seesaw") {
    config["measurements"] = "seesaw";
    report = envelope("visibility", config);
    const auto lib = make_functionals(o, rho.sites());
    const auto ub = upsilon_lower_bound(rho, lib, to_config(o.seesaw));
    meas = ub.best.assignment;
    source = {{"kind", "seesaw"}, {"seesaw", seesaw_json(ub, lib[ub.functional_index])}};
    write_side_outputs(o, ub.best, report);
  } else {
    throw ValidationError("unknown measurements '" + o.measurements + "' (expected seesaw, or use --measurements-file)");
  }
  PolytopeOptions popt;
  popt.tol = o.lp_tol;
  const auto vis = critical_visibility(rho, noise, meas, popt);
  report["result"] = visibility_to_json(vis);
  report["result"]["measurements"] = source;
  emit(o, report, out);
  return kOk;
}

// ---- tolerance ------------------------------------------------------------

struct Candidate {
  double value;
  std::string provenance;
};

int cmd_tolerance(const Options& o, std::ostream& out, std::ostream& err) {
  const auto rho = make_state(o.state, max_dimension());
  const auto lib = make_functionals(o, rho.sites());
  const auto ub = upsilon_lower_bound(rho, lib, to_config(o.seesaw));
  const double ups_hat = std::max(1.0, ub.value);

  json report = envelope("tolerance", solver_config(o));
  json result;
  result["seesaw"] = seesaw_json(ub, lib[ub.functional_index]);
  result["upsilon_seesaw"] = round_reported(ups_hat);

  std::vector<Candidate> lowers;
  std::vector<Candidate> uppers{{tolerance_from_violation(ups_hat), "seesaw " + ub.functional_name + ": 2/(1+Y) with Y = seesaw value"}};
  json formula = json::array();
  const bool recognized = o.state.file.empty() &&
                          (o.state.family == "ghz" || o.state.family == "dicke" || o.state.family == "w");
  if (recognized) {
    const auto all = SettingRegime::all();
    std::vector<ToleranceReport> reports{generic_noise_bounds(rho.dim_per_site(), rho.sites(), all, MeasType::projective)};
    if (o.state.family == "ghz") reports.push_back(ghz_noise_bounds(rho.dim_per_site(), rho.sites(), all, MeasType::projective));
    if (o.state.family == "dicke") reports.push_back(dicke_bounds(rho.sites(), o.state.k));
    if (o.state.family == "w") reports.push_back(w_bounds(rho.sites()));
    for (const auto& r : reports) {
      lowers.push_back({r.tolerance.lower, r.family + " formula: 2/(1+Y) with Y = " + r.tolerance.active_term});
      if (r.tolerance.upper < 1.0)
        uppers.push_back({r.tolerance.upper, r.family + " formula: 2/(1+Y) at the lower endpoint of Y"});
      formula.push_back(report_to_json(r));
    }
  } else {
    const std::string msg = "no closed-form bounds for this state; formula side omitted";
    err << "warning: " << msg << '\n';
    result["warning"] = msg;
  }
  result["formula"] = formula;

  // Keep every candidate attaining the extreme, so ties show all provenances.
  auto pick = [](const std::vector<Candidate>& c, bool want_max) {
    double best = c.front().value;
    for (const auto& x : c) best = want_max ? std::max(best, x.value) : std::min(best, x.value);
    json prov = json::array();
    for (const auto& x : c)
      if (std::abs(x.value - best) <= 1e-12) prov.push_back(x.provenance);
    return std::pair{best, prov};
  };
  json interval;
  if (!lowers.empty()) {
    const auto [lo, lo_prov] = pick(lowers, true);
    interval["lower"] = round_reported(lo);
    interval["lower_provenance"] = lo_prov;
  }
  const auto [hi, hi_prov] = pick(uppers, false);
  interval["upper"] = round_reported(hi);
  interval["upper_provenance"] = hi_prov;
  interval["max_noise_upper"] = lowers.empty() ? json() : json(round_reported(1.0 - pick(lowers, true).first));
  interval["max_noise_lower"] = round_reported(1.0 - hi);
  result["tolerance"] = interval;
  report["result"] = result;
  write_side_outputs(o, ub.best, report);
  emit(o, report, out);
  return kOk;
}

void add_state_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--state", o.state.family, "State family: ghz, dicke, w, white, product")->capture_default_str();
  cmd->add_option("--d", o.state.d, "Local dimension")->capture_default_str();
  cmd->add_option("--n", o.state.n, "Number of sites")->capture_default_str();
  cmd->add_option("--k", o.state.k, "Dicke excitations")->capture_default_str();
  cmd->add_option("--state-file", o.state.file, "State JSON {d, n, re, im}");
}

void add_seesaw_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--functional", o.functional, "library, chsh or mermin")->capture_default_str();
  cmd->add_option("--functional-file", o.functional_file, "Functional JSON");
  cmd->add_option("--seed", o.seesaw.seed, "Seesaw seed")->capture_default_str();
  cmd->add_option("--restarts", o.seesaw.restarts, "Seesaw restarts")->capture_default_str();
  cmd->add_option("--sweep-tol", o.seesaw.sweep_tol, "Seesaw sweep improvement threshold")->capture_default_str();
  cmd->add_option("--threads", o.seesaw.threads, "Worker threads for restarts")->capture_default_str();
  cmd->add_option("--meas-out", o.meas_out, "Write best measurements as JSON");
  cmd->add_option("--trace-out", o.trace_out, "Write seesaw sweep trace as CSV");
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bell-nonlocality noise tolerance bounds and computations", "belltol"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "Closed-form tolerance and noise bounds");
  bounds->add_option("--family", o.family, "generic, ghz, ghz-qubit, dicke, w")->capture_default_str();
  bounds->add_option("--d", o.d_range, "Local dimension(s), e.g. 2..4")->capture_default_str();
  bounds->add_option("--n", o.n_range, "Number(s) of sites")->capture_default_str();
  bounds->add_option("--s", o.s_range, "Settings per site, or inf")->capture_default_str();
  bounds->add_option("--k", o.k_range, "Dicke excitation number(s); default all");
  bounds->add_option("--meas", o.meas, "projective, generalized or both")->capture_default_str();
  add_output_options(bounds, o);

  auto* violation = app.add_subcommand("violation", "Seesaw lower bound on the maximal violation");
  add_state_options(violation, o);
  add_seesaw_options(violation, o);
  add_output_options(violation, o);

  auto* visibility = app.add_subcommand("visibility", "Critical visibility for fixed measurements");
  add_state_options(visibility, o);
  add_seesaw_options(visibility, o);
  visibility->add_option("--noise", o.noise, "white")->capture_default_str();
  visibility->add_option("--noise-file", o.noise_file, "Noise state JSON (assumed local)");
  visibility->add_option("--measurements", o.measurements, "seesaw")->capture_default_str();
  visibility->add_option("--measurements-file", o.measurements_file, "Measurement assignment JSON");
  visibility->add_option("--lp-tol", o.lp_tol, "Simplex tolerance")->capture_default_str();
  add_output_options(visibility, o);

  auto* tolerance = app.add_subcommand("tolerance", "Bracket the noise tolerance of a state");
  add_state_options(tolerance, o);
  add_seesaw_options(tolerance, o);
  add_output_options(tolerance, o);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomain;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (violation->parsed()) return cmd_violation(o, out);
    if (visibility->parsed()) return cmd_visibility(o, out);
    if (tolerance->parsed()) return cmd_tolerance(o, out, err);
  } catch (const UnsupportedFunctionalError& e) {
    err << "unsupported functional: " << e.what() << '\n';
    return kUnsupported;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace belltol::cli
