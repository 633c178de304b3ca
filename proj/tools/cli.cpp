#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ptspec/analysis.hpp"
#include "ptspec/serialize.hpp"
#include "ptspec/shooting.hpp"

namespace ptspec::cli {

namespace {

struct Settings {
  std::string command_key;
  std::string family;
  std::map<std::string, double> params;  // flag name -> value
  std::map<std::string, CLI::Option*> param_opts;

  std::string domain;
  double L = 0.0;
  int n = 0;
  double eps = 0.0;

  std::string stencil = "5pt";
  bool richardson = false;
  bool box_check = true;
  bool refine = false;
  bool cutoff_scan = true;
  std::string path = "auto";
  int dense_cap = 4000;
  int max_refine = 32;
  int levels = 8;
  double tau_raw = 1e-4;
  double tau_refined = 1e-7;
  double boundary_mass = 0.1;
  double box_factor = 1.25;
  double drift_factor = 100.0;
  double energy_cap = std::numeric_limits<double>::infinity();

  double energy_re = 0.0;
  double energy_im = 0.0;
  bool scan = false;
  double re_min = 0.0;
  double re_max = 10.0;
  double im_min = 0.0;
  double im_max = 0.0;
  int nre = 41;
  int nim = 1;
  int matching_node = -1;

  double dt = 1e-3;
  int steps = 1000;
  double x0 = 0.0;
  double k0 = 0.0;
  double width = 1.0;

  std::string w;
  std::string minus;
  std::string plus;

  std::string param;
  double from = 0.0;
  double to = 1.0;
  int count = 11;

  std::string out;
};

// Flag name <-> parameter name.
const std::vector<std::pair<std::string, std::string>> kParamFlags = {
    {"lambda", "lambda"}, {"mu", "mu"},       {"lambdatilde", "lambdatilde"},
    {"g", "g"},           {"a", "a"},         {"beta", "beta"},
    {"c", "c"},           {"delta", "delta"}, {"imag-sign", "imag_sign"},
    {"omega", "omega"}};

std::string flag_for(const std::string& param) {
  for (const auto& [flag, name] : kParamFlags) {
    if (name == param) return flag;
  }
  return param;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Family family_or_throw(const std::string& name) {
  if (name.empty()) {
    std::vector<std::string> names;
    for (Family f : builtin_families()) names.emplace_back(family_name(f));
    throw ConfigError("--family is required; valid families: " + join(names));
  }
  const auto f = parse_family(name);
  if (!f || *f == Family::Custom) {
    std::vector<std::string> names;
    for (Family x : builtin_families()) names.emplace_back(family_name(x));
    throw ConfigError("unknown family '" + name + "'; valid families: " + join(names));
  }
  return *f;
}

ParamMap given_params(const Settings& s, const std::string& override_name = {},
                      std::optional<double> override_value = {}) {
  ParamMap p;
  for (const auto& [flag, name] : kParamFlags) {
    const auto it = s.param_opts.find(flag);
    if (it != s.param_opts.end() && it->second->count() > 0) p[name] = s.params.at(flag);
  }
  if (override_value) {
    p[override_name] = *override_value;
    if (override_name == "lambda") p.erase("lambdatilde");
    if (override_name == "lambdatilde") p.erase("lambda");
  }
  return p;
}

void add_potential_header(Header& h, const Potential& v) {
  h.emplace_back("family", std::string(family_name(v.family())));
  for (const auto& [name, value] : v.params()) h.emplace_back(flag_for(name), format_double(value));
}

// Grid from flags on top of `defaults`.
Grid resolve_grid(Settings& s, const CLI::App& app, DomainSpec defaults) {
  const bool eps_given = app.count("--eps") > 0;
  std::string domain = s.domain;
  if (domain.empty()) domain = (defaults.cutoff || eps_given) ? "half" : "full";
  if (domain == "half") {
    if (!eps_given) s.eps = defaults.cutoff.value_or(1e-2);
    if (app.count("--L") == 0) s.L = defaults.cutoff ? defaults.x_max : 10.0;
    if (app.count("--n") == 0) s.n = defaults.cutoff ? defaults.n : 1001;
    s.domain = "half";
    return Grid::half_line(s.eps, s.L, s.n);
  }
  if (eps_given) throw ConfigError("--eps applies to the half-line domain only");
  if (app.count("--L") == 0) s.L = defaults.cutoff ? 10.0 : defaults.x_max;
  if (app.count("--n") == 0) s.n = defaults.cutoff ? 1001 : defaults.n;
  s.domain = "full";
  return Grid::full_line(s.L, s.n);
}

void add_grid_header(Header& h, const Settings& s) {
  h.emplace_back("domain", s.domain);
  h.emplace_back("L", format_double(s.L));
  if (s.domain == "half") h.emplace_back("eps", format_double(s.eps));
  h.emplace_back("n", std::to_string(s.n));
}

// Boolean flag: user value when given, else the command default.
bool flag_value(const CLI::App& app, const char* name, bool value, bool fallback) {
  return app.count(name) > 0 ? value : fallback;
}

SolverOptions resolve_solver(Settings& s, const CLI::App& app, SolverOptions base) {
  s.richardson = flag_value(app, "--richardson", s.richardson, base.richardson);
  s.box_check = flag_value(app, "--box-check", s.box_check, base.box_check);
  s.refine = flag_value(app, "--refine", s.refine, base.refine);
  if (app.count("--max-refine") == 0) s.max_refine = base.max_refine;
  base.stencil = s.stencil == "3pt" ? Stencil::ThreePoint : Stencil::FivePoint;
  base.richardson = s.richardson;
  base.box_check = s.box_check;
  base.refine = s.refine;
  base.max_refine = s.max_refine;
  base.energy_cap = s.energy_cap;
  base.dense.path = s.path == "general" ? EigenPath::General : EigenPath::Auto;
  base.dense.dense_cap = s.dense_cap;
  base.classify.tau_raw = s.tau_raw;
  base.classify.tau_refined = s.tau_refined;
  base.classify.boundary_mass_threshold = s.boundary_mass;
  base.classify.box_factor = s.box_factor;
  base.classify.drift_factor = s.drift_factor;
  base.shooting.matching_node = s.matching_node;
  return base;
}

void add_solver_header(Header& h, const Settings& s) {
  h.emplace_back("stencil", s.stencil);
  h.emplace_back("richardson", bool_text(s.richardson));
  h.emplace_back("box-check", bool_text(s.box_check));
  h.emplace_back("refine", bool_text(s.refine));
  h.emplace_back("max-refine", std::to_string(s.max_refine));
  h.emplace_back("energy-cap", format_double(s.energy_cap));
  h.emplace_back("path", s.path);
  h.emplace_back("dense-cap", std::to_string(s.dense_cap));
  h.emplace_back("tau-raw", format_double(s.tau_raw));
  h.emplace_back("tau-refined", format_double(s.tau_refined));
  h.emplace_back("boundary-mass", format_double(s.boundary_mass));
  h.emplace_back("box-factor", format_double(s.box_factor));
  h.emplace_back("drift-factor", format_double(s.drift_factor));
  h.emplace_back("matching-node", std::to_string(s.matching_node));
}

std::string counts_text(const SpectrumReport& r) {
  std::ostringstream os;
  os << r.entries.size() << " eigenvalues (real " << r.count(EigenClass::Real) << ", conjugate-pair "
     << r.count(EigenClass::ConjugatePair) << ", complex " << r.count(EigenClass::Complex)
     << ", spurious " << r.count(EigenClass::Spurious) << ")";
  return os.str();
}

std::string short_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Result {
  std::string body;
  std::string summary;
};

Result cmd_spectrum(Settings& s, const CLI::App& app) {
  const Family f = family_or_throw(s.family);
  const Potential v = Potential::make(f, given_params(s));
  const Grid g = resolve_grid(s, app, default_domain(f));
  SolverOptions base;
  base.richardson = false;
  base.refine = false;
  const SolverOptions opts = resolve_solver(s, app, base);
  Header h{{"command", "spectrum"}};
  add_potential_header(h, v);
  add_grid_header(h, s);
  add_solver_header(h, s);
  const SpectrumReport rep = analyze_spectrum(v, g, opts);
  return {spectrum_csv(rep, h), "spectrum " + v.label() + ": " + counts_text(rep)};
}

Result cmd_shoot(Settings& s, const CLI::App& app) {
  const Family f = family_or_throw(s.family);
  const Potential v = Potential::make(f, given_params(s));
  const Grid g = resolve_grid(s, app, default_domain(f));
  SolverOptions base;
  const SolverOptions opts = resolve_solver(s, app, base);
  Header h{{"command", "shoot"}};
  add_potential_header(h, v);
  add_grid_header(h, s);
  const Shooter shooter(v, g, opts.shooting);

  std::string body;
  std::string summary;
  if (s.scan) {
    if (app.count("--im-max") == 0) s.im_max = s.im_min;
    h.emplace_back("matching-node", std::to_string(s.matching_node));
    h.emplace_back("scan", "true");
    h.emplace_back("re-min", format_double(s.re_min));
    h.emplace_back("re-max", format_double(s.re_max));
    h.emplace_back("im-min", format_double(s.im_min));
    h.emplace_back("im-max", format_double(s.im_max));
    h.emplace_back("nre", std::to_string(s.nre));
    h.emplace_back("nim", std::to_string(s.nim));
    const auto roots = rectangle_scan(v, g, {s.re_min, s.im_min}, {s.re_max, s.im_max}, s.nre, s.nim,
                                      opts.shooting);
    body = csv_header(h) + "k,re_E,im_E,residual_abs\n";
    for (std::size_t k = 0; k < roots.size(); ++k) {
      body += std::to_string(k) + ',' + format_double(roots[k].real()) + ',' +
              format_double(roots[k].imag()) + ',' + format_double(std::abs(shooter.residual(roots[k]))) +
              '\n';
    }
    summary = "shoot " + v.label() + ": " + std::to_string(roots.size()) + " roots in the scan rectangle";
  } else if (app.count("--energy-re") > 0 || app.count("--energy-im") > 0) {
    h.emplace_back("matching-node", std::to_string(s.matching_node));
    h.emplace_back("energy-re", format_double(s.energy_re));
    h.emplace_back("energy-im", format_double(s.energy_im));
    const cplx seed{s.energy_re, s.energy_im};
    const RefineResult r = shooter.refine(seed);
    body = csv_header(h) + "k,seed_re,seed_im,re_E,im_E,residual_abs,iterations,status\n";
    body += "0," + format_double(seed.real()) + ',' + format_double(seed.imag()) + ',' +
            format_double(r.energy.real()) + ',' + format_double(r.energy.imag()) + ',' +
            format_double(std::abs(r.residual)) + ',' + std::to_string(r.iterations) + ",converged\n";
    summary = "shoot " + v.label() + ": E = " + short_double(r.energy.real()) + " + " +
              short_double(r.energy.imag()) + "i";
  } else {
    SolverOptions seed_opts = opts;
    seed_opts.refine = false;
    add_solver_header(h, s);
    h.emplace_back("levels", std::to_string(s.levels));
    const SpectrumReport rep = analyze_spectrum(v, g, seed_opts);
    body = csv_header(h) + "k,seed_re,seed_im,re_E,im_E,residual_abs,iterations,status\n";
    int k = 0;
    int ok = 0;
    for (const auto& e : rep.entries) {
      if (k >= s.levels) break;
      if (e.cls == EigenClass::Spurious) continue;
      body += std::to_string(k) + ',' + format_double(e.energy.real()) + ',' +
              format_double(e.energy.imag()) + ',';
      try {
        const RefineResult r = shooter.refine(e.energy);
        body += format_double(r.energy.real()) + ',' + format_double(r.energy.imag()) + ',' +
                format_double(std::abs(r.residual)) + ',' + std::to_string(r.iterations) + ",converged\n";
        ++ok;
      } catch (const SolverError&) {
        body += "nan,nan,nan,0,failed\n";
      }
      ++k;
    }
    summary = "shoot " + v.label() + ": refined " + std::to_string(ok) + " of " + std::to_string(k) +
              " matrix seeds";
  }
  return {body, summary};
}

Result cmd_propagate(Settings& s, const CLI::App& app) {
  const Family f = family_or_throw(s.family);
  const Potential v = Potential::make(f, given_params(s));
  const Grid g = resolve_grid(s, app, default_domain(f));
  Header h{{"command", "propagate"}};
  add_potential_header(h, v);
  add_grid_header(h, s);
  h.emplace_back("dt", format_double(s.dt));
  h.emplace_back("steps", std::to_string(s.steps));
  h.emplace_back("x0", format_double(s.x0));
  h.emplace_back("k0", format_double(s.k0));
  h.emplace_back("width", format_double(s.width));
  const WaveState psi0 = gaussian_packet(g, s.x0, s.k0, s.width);
  const TimeSeries ts = crank_nicolson_propagate(v, g, psi0, s.dt, s.steps);
  std::string summary = "propagate " + v.label() + ": " + std::to_string(s.steps) + " steps, N " +
                        short_double(ts.samples.front().norm) + " -> " +
                        short_double(ts.samples.back().norm);
  if (ts.samples.size() >= 3) summary += ", continuity defect " + short_double(continuity_defect(ts));
  return {timeseries_csv(ts, h), summary};
}

Result cmd_check(Settings& s, const CLI::App& app) {
  const Family f = family_or_throw(s.family);
  const Potential v = Potential::make(f, given_params(s));
  const Grid g = resolve_grid(s, app, default_domain(f));
  ClaimOptions opts;
  opts.solver = resolve_solver(s, app, default_claim_solver());
  opts.levels = s.levels;
  opts.cutoff_scan = s.cutoff_scan;
  Header h{{"command", "check"}};
  add_potential_header(h, v);
  add_grid_header(h, s);
  add_solver_header(h, s);
  h.emplace_back("levels", std::to_string(s.levels));
  h.emplace_back("cutoff-scan", bool_text(s.cutoff_scan));
  const ClaimReport rep = claim_check(v, g, opts);
  std::string summary = "check " + v.label() + ": reality_verdict " + bool_text(rep.reality_verdict) +
                        ", " + std::to_string(rep.full_bound.size()) + " bound levels, max |Im E| " +
                        short_double(rep.max_bound_imag);
  return {claim_json(rep, h), summary};
}

DomainSpec superpotential_domain(SuperpotentialKind k) {
  switch (k) {
    case SuperpotentialKind::InversePowerPlus:
    case SuperpotentialKind::InversePowerMinus: return default_domain(Family::InversePower1);
    case SuperpotentialKind::ShiftedCubic1:
    case SuperpotentialKind::ShiftedCubic2: return default_domain(Family::ShiftedQuartic1);
    case SuperpotentialKind::Scarf: return default_domain(Family::PoeschlTeller1);
    default: return default_domain(Family::CubicOsc);
  }
}

Result cmd_susy(Settings& s, const CLI::App& app) {
  Header h{{"command", "susy"}};
  std::optional<std::pair<Potential, Potential>> pair;
  DomainSpec defaults;
  if (!s.w.empty()) {
    if (!s.minus.empty() || !s.plus.empty()) throw ConfigError("give either --w or --minus/--plus");
    const auto kind = parse_superpotential(s.w);
    if (!kind || *kind == SuperpotentialKind::Sampled || *kind == SuperpotentialKind::Callable) {
      std::vector<std::string> names;
      for (auto k : builtin_superpotentials()) names.emplace_back(superpotential_name(k));
      throw ConfigError("unknown superpotential '" + s.w + "'; valid: " + join(names));
    }
    const Superpotential w = Superpotential::make(*kind, given_params(s));
    pair = susy_partner_pair(w);
    defaults = superpotential_domain(*kind);
    h.emplace_back("w", s.w);
    for (const auto& [name, value] : w.params()) h.emplace_back(flag_for(name), format_double(value));
  } else {
    if (s.minus.empty() || s.plus.empty()) {
      throw ConfigError("susy needs --w NAME or both --minus and --plus families");
    }
    const Family fm = family_or_throw(s.minus);
    const Family fp = family_or_throw(s.plus);
    pair.emplace(Potential::make(fm, given_params(s)), Potential::make(fp, given_params(s)));
    defaults = default_domain(fm);
    h.emplace_back("minus", s.minus);
    h.emplace_back("plus", s.plus);
    for (const auto& [name, value] : pair->first.params()) {
      h.emplace_back(flag_for(name), format_double(value));
    }
  }
  const Grid g = resolve_grid(s, app, defaults);
  PartnerOptions opts;
  opts.solver = resolve_solver(s, app, default_claim_solver());
  if (app.count("--levels") > 0) opts.levels = s.levels;
  s.levels = opts.levels;
  add_grid_header(h, s);
  add_solver_header(h, s);
  h.emplace_back("levels", std::to_string(s.levels));
  const PartnerReport rep = partner_isospectrality(pair->first, pair->second, g, opts);
  std::string summary = "susy: " + std::to_string(rep.matches.size()) + " matched levels, unpaired " +
                        std::to_string(rep.unpaired_minus.size()) + " minus / " +
                        std::to_string(rep.unpaired_plus.size()) + " plus, max mismatch " +
                        short_double(rep.max_mismatch);
  return {partner_json(rep, h), summary};
}

int thread_count() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PTSPEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError(std::string("PTSPEC_THREADS must be a positive integer, got '") + env + "'");
    }
    hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return static_cast<int>(hw);
}

Result cmd_sweep(Settings& s, const CLI::App& app) {
  const Family f = family_or_throw(s.family);
  if (s.param.empty()) throw ConfigError("sweep needs --param NAME");
  const auto names = family_parameters(f);
  if (std::find(names.begin(), names.end(), s.param) == names.end()) {
    throw ConfigError("family " + std::string(family_name(f)) + " has no parameter '" + s.param +
                      "'; valid: " + join(names));
  }
  if (s.count < 1) throw ConfigError("--count must be >= 1");
  const Grid g = resolve_grid(s, app, default_domain(f));
  SolverOptions base;
  const SolverOptions opts = resolve_solver(s, app, base);

  std::vector<double> values(static_cast<std::size_t>(s.count));
  for (int k = 0; k < s.count; ++k) {
    values[static_cast<std::size_t>(k)] =
        s.count == 1 ? s.from : s.from + (s.to - s.from) * static_cast<double>(k) / (s.count - 1);
  }
  // Validate every point before any work starts.
  std::vector<Potential> pots;
  for (double x : values) pots.push_back(Potential::make(f, given_params(s, s.param, x)));

  std::vector<std::string> blocks(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::vector<int> counts(values.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < values.size(); k = next++) {
      try {
        const SpectrumReport rep = analyze_spectrum(pots[k], g, opts);
        const std::string rows = spectrum_csv_rows(rep);
        std::istringstream in(rows);
        std::string line;
        std::getline(in, line);
        std::string block;
        const std::string prefix = format_double(values[k]) + ',';
        while (std::getline(in, line)) block += prefix + line + '\n';
        blocks[k] = std::move(block);
        counts[k] = rep.count(EigenClass::ConjugatePair) + rep.count(EigenClass::Complex);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(thread_count(), static_cast<int>(values.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Header h{{"command", "sweep"}};
  add_potential_header(h, pots.front());
  // The swept value varies per block; lambdatilde also fixes lambda.
  h.erase(std::remove_if(h.begin(), h.end(),
                         [&](const auto& kv) {
                           return kv.first == flag_for(s.param) ||
                                  (s.param == "lambdatilde" && kv.first == "lambda");
                         }),
          h.end());
  h.emplace_back("param", s.param);
  h.emplace_back("from", format_double(s.from));
  h.emplace_back("to", format_double(s.to));
  h.emplace_back("count", std::to_string(s.count));
  add_grid_header(h, s);
  add_solver_header(h, s);
  std::string body = csv_header(h) + s.param +
                     ",k,re_E,im_E,raw_re,raw_im,class,partner,boundary_mass,box_stability,condition,refined\n";
  int first_complex = -1;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    body += blocks[k];
    if (first_complex < 0 && counts[k] > 0) first_complex = static_cast<int>(k);
  }
  std::string summary = "sweep " + std::string(family_name(f)) + " over " + s.param + ": " +
                        std::to_string(s.count) + " points";
  summary += first_complex < 0 ? ", no complex levels"
                               : ", first complex levels at " + s.param + " = " +
                                     short_double(values[static_cast<std::size_t>(first_complex)]);
  return {body, summary};
}

Result cmd_plotdata(Settings& s, const CLI::App& app) {
  const Family f = family_or_throw(s.family);
  const Potential v = Potential::make(f, given_params(s));
  const Grid g = resolve_grid(s, app, default_domain(f));
  Header h{{"command", "plotdata"}};
  add_potential_header(h, v);
  add_grid_header(h, s);
  return {profile_csv(v, g, h), "plotdata " + v.label() + ": " + std::to_string(g.size()) + " nodes"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Spectra of 1D Schroedinger operators with complex PT-symmetric potentials", "ptspec"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "Read options from a file of key = value lines");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.option_defaults()->always_capture_default();

  app.add_option("--command", s.command_key, "Command name (for config files)");
  app.add_option("--family", s.family, "Potential family");
  for (const auto& [flag, name] : kParamFlags) {
    s.params[flag] = 0.0;
    s.param_opts[flag] = app.add_option("--" + flag, s.params[flag], "Parameter " + name);
  }
  app.add_option("--domain", s.domain, "full or half")->check(CLI::IsMember({"full", "half"}));
  app.add_option("--L", s.L, "Box half-width, or x_max on a half line")->check(CLI::PositiveNumber);
  app.add_option("--n", s.n, "Number of grid nodes")->check(CLI::Range(3, 1000000));
  app.add_option("--eps", s.eps, "Half-line cutoff")->check(CLI::PositiveNumber);
  app.add_option("--stencil", s.stencil, "3pt or 5pt")->check(CLI::IsMember({"3pt", "5pt"}));
  app.add_flag("--richardson,!--no-richardson", s.richardson, "Richardson extrapolation");
  app.add_flag("--box-check,!--no-box-check", s.box_check, "Enlarged-box comparison");
  app.add_flag("--refine,!--no-refine", s.refine, "Shooting refinement");
  app.add_flag("--cutoff-scan,!--no-cutoff-scan", s.cutoff_scan, "Cutoff scan in check");
  app.add_option("--path", s.path, "auto or general")->check(CLI::IsMember({"auto", "general"}));
  app.add_option("--dense-cap", s.dense_cap, "Largest dense matrix order")->check(CLI::PositiveNumber);
  app.add_option("--max-refine", s.max_refine, "Most shooting refinements")->check(CLI::NonNegativeNumber);
  app.add_option("--levels", s.levels, "Bound levels considered")->check(CLI::PositiveNumber);
  app.add_option("--tau-raw", s.tau_raw, "Reality tolerance, matrix values");
  app.add_option("--tau-refined", s.tau_refined, "Reality tolerance, refined values");
  app.add_option("--boundary-mass", s.boundary_mass, "Boundary mass threshold");
  app.add_option("--box-factor", s.box_factor, "Enlarged box factor");
  app.add_option("--drift-factor", s.drift_factor, "Drift threshold factor");
  app.add_option("--energy-cap", s.energy_cap, "Refine only |E| below this");
  app.add_option("--energy-re", s.energy_re, "Shooting seed, real part");
  app.add_option("--energy-im", s.energy_im, "Shooting seed, imaginary part");
  app.add_flag("--scan", s.scan, "Rectangle scan instead of seeded refinement");
  app.add_option("--re-min", s.re_min, "Scan rectangle");
  app.add_option("--re-max", s.re_max, "Scan rectangle");
  app.add_option("--im-min", s.im_min, "Scan rectangle");
  app.add_option("--im-max", s.im_max, "Scan rectangle");
  app.add_option("--nre", s.nre, "Scan lattice points along Re E");
  app.add_option("--nim", s.nim, "Scan lattice points along Im E");
  app.add_option("--matching-node", s.matching_node, "Shooting matching node (-1 automatic)");
  app.add_option("--dt", s.dt, "Time step")->check(CLI::PositiveNumber);
  app.add_option("--steps", s.steps, "Number of time steps")->check(CLI::NonNegativeNumber);
  app.add_option("--x0", s.x0, "Packet centre");
  app.add_option("--k0", s.k0, "Packet momentum");
  app.add_option("--width", s.width, "Packet width")->check(CLI::PositiveNumber);
  app.add_option("--w", s.w, "Superpotential for susy");
  app.add_option("--minus", s.minus, "Family used as V- in susy");
  app.add_option("--plus", s.plus, "Family used as V+ in susy");
  app.add_option("--param", s.param, "Swept parameter");
  app.add_option("--from", s.from, "Sweep start");
  app.add_option("--to", s.to, "Sweep end");
  app.add_option("--count", s.count, "Sweep points");
  app.add_option("--out", s.out, "Output file (default stdout)");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "Classified matrix spectrum as CSV"},
      {"shoot", "Shooting refinement or rectangle scan as CSV"},
      {"propagate", "Crank-Nicolson run with continuity diagnostics as CSV"},
      {"check", "Claim report as JSON"},
      {"susy", "Partner isospectrality report as JSON"},
      {"sweep", "Spectra over a linear parameter sweep as CSV"},
      {"plotdata", "Potential profile (x, Re V, Im V) as CSV"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  if (!s.command_key.empty()) {
    if (!command.empty() && command != s.command_key) {
      err << "error: command '" << command << "' conflicts with command = " << s.command_key << "\n";
      return kUsageError;
    }
    command = s.command_key;
  }
  if (command.empty()) {
    err << app.help();
    return kUsageError;
  }

  try {
    Result r;
    if (command == "spectrum") r = cmd_spectrum(s, app);
    else if (command == "shoot") r = cmd_shoot(s, app);
    else if (command == "propagate") r = cmd_propagate(s, app);
    else if (command == "check") r = cmd_check(s, app);
    else if (command == "susy") r = cmd_susy(s, app);
    else if (command == "sweep") r = cmd_sweep(s, app);
    else if (command == "plotdata") r = cmd_plotdata(s, app);
    else throw ConfigError("unknown command '" + command + "'");

    if (s.out.empty()) {
      out << r.body;
      err << r.summary << "\n";
    } else {
      std::ofstream f(s.out, std::ios::binary);
      f << r.body;
      f.close();
      if (!f) {
        err << "error: cannot write " << s.out << "\n";
        return kRunError;
      }
      out << r.summary << "\n";
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kRunError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kRunError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRunError;
  }
}

}  // namespace ptspec::cli
