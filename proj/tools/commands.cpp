#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <optional>
#include <sstream>

#include "levytype/empirical.hpp"
#include "levytype/feller_symbols.hpp"
#include "levytype/levy_core.hpp"
#include "levytype/parallel.hpp"
#include "levytype/process.hpp"
#include "levytype/rom_integral.hpp"
#include "levytype/samplers.hpp"
#include "levytype/semigroup_ops.hpp"
#include "levytype/svg_plot.hpp"

#ifndef LEVYTYPE_VERSION
#define LEVYTYPE_VERSION "0.0.0"
#endif

namespace levytype::cli {

namespace fs = std::filesystem;

Json RunConfig::echo() const {
  Json j;
  j["command"] = command;
  j["seed"] = seed;
  j["format"] = format;
  j["plot"] = plot;
  j["params"] = params;
  return j;
}

std::string error_payload(const std::string& code, const std::string& message) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  return j.dump();
}

namespace {

// --- parameter access --------------------------------------------------------

double get_double(const Json& p, const char* key, double def) {
  if (!p.contains(key)) {
    return def;
  }
  if (!p[key].is_number()) {
    throw SchemaError(std::string("'") + key + "' must be a number");
  }
  return p[key].get<double>();
}

std::size_t get_size(const Json& p, const char* key, std::size_t def) {
  if (!p.contains(key)) {
    return def;
  }
  const Json& v = p[key];
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
    return v.get<std::size_t>();
  }
  if (v.is_number_float() && v.get<double>() >= 0 && std::floor(v.get<double>()) == v.get<double>()) {
    return static_cast<std::size_t>(v.get<double>());
  }
  throw SchemaError(std::string("'") + key + "' must be a non-negative integer");
}

std::string get_string(const Json& p, const char* key, const std::string& def) {
  if (!p.contains(key)) {
    return def;
  }
  if (!p[key].is_string()) {
    throw SchemaError(std::string("'") + key + "' must be a string");
  }
  return p[key].get<std::string>();
}

std::vector<double> get_list(const Json& p, const char* key, std::vector<double> def) {
  if (!p.contains(key)) {
    return def;
  }
  Vec v = vec_from_json(p[key], key);
  return {v.data(), v.data() + v.size()};
}

Vec get_point(const Json& p, const char* key, int dim, double def = 0.0) {
  if (!p.contains(key)) {
    return Vec::Constant(dim, def);
  }
  if (p[key].is_number()) {
    return Vec::Constant(dim, p[key].get<double>());
  }
  Vec v = vec_from_json(p[key], key);
  require_same_dim(v.size(), dim, key);
  return v;
}

// --- model construction ------------------------------------------------------

LevyTriplet preset_triplet(const Json& p) {
  const std::string name = get_string(p, "preset", "");
  if (name == "brownian") {
    return catalog::brownian(static_cast<int>(get_size(p, "d", 1)), get_double(p, "sigma", 1.0),
                             get_double(p, "drift", 0.0));
  }
  if (name == "poisson") {
    return catalog::poisson(get_double(p, "lambda", 1.0));
  }
  if (name == "cpp_gaussian") {
    return catalog::compound_poisson_gaussian(get_double(p, "lambda", 1.0), get_double(p, "s", 1.0));
  }
  if (name == "stable") {
    return catalog::symmetric_stable_density(get_double(p, "alpha", 1.5), get_double(p, "c", 1.0));
  }
  if (name == "stable_scale") {
    return catalog::symmetric_stable(get_double(p, "alpha", 1.5), get_double(p, "scale", 1.0));
  }
  if (name == "gamma") {
    return catalog::gamma_process();
  }
  throw SchemaError("unknown triplet preset '" + name + "'");
}

LevyTriplet triplet_param(const Json& p, const char* key, std::optional<LevyTriplet> def = std::nullopt) {
  if (!p.contains(key)) {
    if (def) {
      return *def;
    }
    throw SchemaError(std::string("missing field '") + key + "'");
  }
  const Json& t = p[key];
  if (t.is_string()) {
    return triplet_from_json(read_json(t.get<std::string>()));
  }
  if (t.is_object() && t.contains("preset")) {
    return preset_triplet(t);
  }
  return triplet_from_json(t);
}

LevyTriplet brownian1() { return catalog::brownian(1); }

SdeSpec sde_param(const Json& p) {
  if (!p.contains("phi") || !p["phi"].is_object()) {
    throw SchemaError("missing object 'phi'");
  }
  const Json& ph = p["phi"];
  SdeSpec spec;
  spec.driver = triplet_param(p, "driver", brownian1());
  const int n = spec.driver.dim();
  spec.state_dim = static_cast<int>(get_size(ph, "state_dim", 1));
  const int d = spec.state_dim;
  const std::string kind = get_string(ph, "kind", "");
  const double a = get_double(ph, "a", 1.0);
  const double b = get_double(ph, "b", 0.0);
  auto scalar_field = [d, n](std::function<double(double)> g) {
    return [d, n, g](const Vec& x) { return Mat(g(x(0)) * Mat::Identity(d, n)); };
  };
  if (kind == "constant") {
    Mat c = ph.contains("value") ? mat_from_json(ph["value"], "value") : Mat(a * Mat::Identity(d, n));
    if (c.rows() != d || c.cols() != n) {
      throw DimensionMismatch("phi.value must be state_dim x driver dim");
    }
    spec.phi = [c](const Vec&) { return c; };
    spec.lipschitz = 0.0;
  } else if (kind == "affine") {
    spec.phi = scalar_field([a, b](double x) { return a + b * x; });
    spec.lipschitz = std::abs(b);
  } else if (kind == "sine") {
    spec.phi = scalar_field([a, b](double x) { return a + b * std::sin(x); });
    spec.lipschitz = std::abs(b);
  } else if (kind == "inverse_sqrt") {
    spec.phi = scalar_field([](double x) { return 1.0 / std::sqrt(1.0 + x * x); });
    spec.lipschitz = 0.3849001794597505; // max |d/dx (1+x^2)^(-1/2)| = 2/(3 sqrt 3)
  } else if (kind == "sqrt_abs") {
    spec.phi = scalar_field([](double x) { return std::sqrt(std::abs(x)); });
    spec.lipschitz = 1.0;
  } else {
    throw SchemaError("unknown phi.kind '" + kind + "'");
  }
  spec.lipschitz = get_double(ph, "lipschitz", spec.lipschitz);
  spec.x0 = get_point(p, "x0", d);
  return spec;
}

JumpLaw law_param(const Json& p) {
  if (!p.contains("law")) {
    return JumpLaw::normal(0.0, 1.0);
  }
  const Json& l = p["law"];
  const std::string kind = get_string(l, "kind", "normal");
  if (kind == "normal") {
    return JumpLaw::normal(get_double(l, "mean", 0.0), get_double(l, "sd", 1.0));
  }
  if (kind == "rademacher") {
    return JumpLaw::rademacher();
  }
  if (kind == "dirac") {
    return JumpLaw::dirac(get_point(l, "point", 1, 1.0));
  }
  throw SchemaError("unknown law.kind '" + kind + "'");
}

StateSymbol symbol_param(const Json& p) {
  const std::string kind = get_string(p, "symbol", "levy");
  if (kind == "levy") {
    return StateSymbol::from_triplet(triplet_param(p, "triplet", brownian1()));
  }
  if (kind == "sde") {
    return sde_state_symbol(sde_param(p));
  }
  if (kind == "stable_like") {
    if (p.contains("alpha") && p["alpha"].is_string()) {
      if (p["alpha"].get<std::string>() != "sine") {
        throw SchemaError("alpha must be a number or \"sine\"");
      }
      return StateSymbol::stable_like_sine();
    }
    const double a = get_double(p, "alpha", 1.5);
    return StateSymbol::stable_like([a](const Vec&) { return a; });
  }
  throw SchemaError("unknown symbol kind '" + kind + "'");
}

std::unique_ptr<ProcessSampler> sampler_param(const Json& p, double default_eps, double default_dt) {
  const double eps = get_double(p, "eps", default_eps);
  const double dt = get_double(p, "dt", default_dt);
  if (get_string(p, "symbol", "levy") == "sde" || p.contains("phi")) {
    return std::make_unique<SdeSampler>(sde_param(p), eps, dt);
  }
  return std::make_unique<LevySampler>(triplet_param(p, "triplet", brownian1()), eps, dt);
}

// --- output ------------------------------------------------------------------

struct Run {
  const RunConfig& cfg;
  fs::path dir;
  Json manifest;

  explicit Run(const RunConfig& c) : cfg(c), dir(c.out) {
    fs::create_directories(dir);
    manifest["version"] = LEVYTYPE_VERSION;
    manifest["config"] = c.echo();
    manifest["streams"] = Json::array();
    manifest["outputs"] = Json::array();
  }

  void streams(const std::string& role, std::uint64_t first, std::uint64_t count) {
    manifest["streams"].push_back({{"role", role}, {"seed", cfg.seed}, {"first", first}, {"count", count}});
  }

  void table(const std::string& stem, const CsvTable& t) {
    std::string name;
    if (cfg.format == "json") {
      name = stem + ".json";
      Json doc;
      doc["columns"] = t.header();
      doc["rows"] = t.data();
      write_json((dir / name).string(), doc);
    } else {
      name = stem + ".csv";
      t.write((dir / name).string());
    }
    manifest["outputs"].push_back(name);
  }

  void json(const std::string& stem, const Json& doc) {
    write_json((dir / (stem + ".json")).string(), doc);
    manifest["outputs"].push_back(stem + ".json");
  }

  void plot(const std::string& stem, const std::vector<PlotSeries>& s, const PlotOptions& o) {
    if (!cfg.plot) {
      return;
    }
    write_svg((dir / (stem + ".svg")).string(), s, o);
    manifest["outputs"].push_back(stem + ".svg");
  }

  void finish(int code) {
    manifest["exit_code"] = code;
    write_json((dir / "manifest.json").string(), manifest);
    // wall-clock details live apart from the replayable outputs
    Json info;
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    info["timestamp"] = buf;
    info["threads"] = worker_count();
    write_json((dir / "run_info.json").string(), info);
  }
};

std::string index_name(const std::string& stem, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04zu", k);
  return stem + buf;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

// --- exponent ----------------------------------------------------------------

int cmd_exponent(Run& run) {
  const Json& p = run.cfg.params;
  LevyTriplet triplet = triplet_param(p, "triplet");
  const int d = triplet.dim();
  const double xi_max = get_double(p, "xi_max", 3.0);
  const std::size_t points = get_size(p, "points", 61);
  if (points < 2 || !(xi_max > 0.0)) {
    throw InvalidArgument("InvalidArgument", "need points >= 2 and xi_max > 0");
  }
  Vec dir = get_point(p, "direction", d, 0.0);
  if (!p.contains("direction")) {
    dir(0) = 1.0;
  }
  if (!(dir.norm() > 0.0)) {
    throw InvalidArgument("InvalidArgument", "direction must be non-zero");
  }
  dir /= dir.norm();
  std::vector<std::string> header;
  for (int i = 0; i < d; ++i) {
    header.push_back(d == 1 ? "xi" : "xi_" + std::to_string(i + 1));
  }
  header.push_back("re_psi");
  header.push_back("im_psi");
  CsvTable table(header);
  PlotSeries re{"Re psi", {}, {}}, im{"Im psi", {}, {}};
  for (std::size_t k = 0; k < points; ++k) {
    double s = -xi_max + 2.0 * xi_max * static_cast<double>(k) / static_cast<double>(points - 1);
    Vec xi = s * dir;
    Complex v = eval_exponent(triplet, xi);
    std::vector<double> row(xi.data(), xi.data() + d);
    row.push_back(v.real());
    row.push_back(v.imag());
    table.add_row(row);
    re.x.push_back(s), re.y.push_back(v.real());
    im.x.push_back(s), im.y.push_back(v.imag());
  }
  run.manifest["triplet"] = triplet_to_json(triplet);
  run.table("exponent", table);
  run.plot("exponent", {re, im}, {"characteristic exponent", "xi", "psi", 720, 440, false, false});
  return kPass;
}

// --- simulate ----------------------------------------------------------------

int cmd_simulate(Run& run) {
  const Json& p = run.cfg.params;
  const std::string method = get_string(p, "method", "");
  const std::size_t n_paths = get_size(p, "n_paths", 1);
  if (n_paths == 0) {
    throw EmptyEnsemble("n_paths must be >= 1");
  }
  const double T = get_double(p, "T", 1.0);
  const std::uint64_t seed = run.cfg.seed;
  Json certs = Json::object();
  std::vector<CadlagPath> paths(n_paths);
  std::function<CadlagPath(RandomSource&)> draw;

  std::optional<LevyItoSampler> ito;
  std::optional<SdeSpec> sde;
  SeriesSpec series;
  std::vector<double> gamma_last(n_paths, 0.0);
  double truncation = 0.0;

  if (method == "poisson") {
    const double lambda = get_double(p, "lambda", 1.0);
    draw = [=](RandomSource& rng) { return sample_poisson_process(lambda, T, rng); };
  } else if (method == "cpp") {
    const double lambda = get_double(p, "lambda", 1.0);
    JumpLaw law = law_param(p);
    draw = [=](RandomSource& rng) { return sample_compound_poisson(lambda, law, T, rng); };
  } else if (method == "bm-levy") {
    const int levels = static_cast<int>(get_size(p, "levels", 10));
    draw = [=](RandomSource& rng) { return sample_brownian_levy(levels, rng); };
  } else if (method == "levy-ito") {
    const double eps = get_double(p, "eps", 1e-2);
    const double dt = get_double(p, "dt", 1e-2);
    ito.emplace(triplet_param(p, "triplet", brownian1()), eps);
    certs["eps"] = eps;
    certs["small_jump_second_moment"] = ito->small_jump_second_moment();
    certs["truncation_bound"] = T * ito->small_jump_second_moment();
    certs["jump_rate"] = ito->jump_rate();
    certs["dropped_tail_mass"] = ito->dropped_tail_mass();
    run.manifest["triplet"] = triplet_to_json(ito->triplet());
    const LevyItoSampler* s = &*ito;
    draw = [=](RandomSource& rng) { return s->sample(T, dt, rng).path; };
  } else if (method == "series") {
    const std::string h = get_string(p, "H", "symmetric_stable");
    if (h != "symmetric_stable") {
      throw SchemaError("series H must be \"symmetric_stable\"");
    }
    const double alpha = get_double(p, "alpha", 1.5);
    const double c = get_double(p, "c", 1.0);
    if (!(alpha > 0.0 && alpha < 2.0) || !(c > 0.0)) {
      throw InvalidAlpha("series needs alpha in (0, 2) and c > 0");
    }
    // nu(|y| > s) = (2c / alpha) s^-alpha, inverted at the Poisson arrival r
    series.dim = 1;
    series.H = [=](double r, const Vec& v) { return Vec(v * std::pow(alpha * r / (2.0 * c), -1.0 / alpha)); };
    series.sample_v = [](RandomSource& rng) { return Vec::Constant(1, rng.uniform() < 0.5 ? -1.0 : 1.0); };
    series.resolution_radius = get_double(p, "resolution_radius", 0.0);
    const std::size_t terms = get_size(p, "n_terms", 1000);
    certs["n_terms"] = terms;
    certs["alpha"] = alpha;
    draw = [&series, terms, &gamma_last](RandomSource& rng) {
      SeriesPath sp = sample_series(series, terms, rng);
      gamma_last[static_cast<std::size_t>(rng.stream())] = sp.gamma_last;
      return sp.path;
    };
  } else if (method == "sde") {
    sde.emplace(sde_param(p));
    sde->validate();
    const double eps = get_double(p, "eps", 1e-2);
    const double dt = get_double(p, "dt", 1e-2);
    LevyItoSampler drv(sde->driver, eps);
    truncation = T * drv.small_jump_second_moment();
    certs["eps"] = eps;
    certs["driver_truncation_bound"] = truncation;
    certs["lipschitz"] = sde->lipschitz;
    const SdeSpec* s = &*sde;
    draw = [=](RandomSource& rng) { return sde_euler(*s, eps, dt, T, rng); };
  } else {
    throw SchemaError("--method must be one of poisson, cpp, bm-levy, levy-ito, series, sde");
  }

  parallel_for(n_paths, [&](std::size_t k) {
    RandomSource rng(seed, k);
    paths[k] = draw(rng);
  });
  run.streams("paths", 0, n_paths);
  if (method == "series") {
    certs["gamma_last_min"] = *std::min_element(gamma_last.begin(), gamma_last.end());
  }
  run.manifest["certificates"] = certs;
  PlotSeries first{"path 0", {}, {}};
  for (std::size_t k = 0; k < n_paths; ++k) {
    run.table(index_name("path", k), path_table(paths[k]));
    run.json(index_name("jumps", k), jump_ledger(paths[k]));
  }
  for (std::size_t i = 0; i < paths[0].size(); ++i) {
    first.x.push_back(paths[0].times()[i]);
    first.y.push_back(paths[0].values()(0, static_cast<Eigen::Index>(i)));
  }
  run.plot("path_0000", {first}, {method + " sample path", "t", "X_t", 720, 440, false, false});
  return kPass;
}

// --- validate ----------------------------------------------------------------

int suite_cf(Run& run) {
  const Json& p = run.cfg.params;
  LevyTriplet triplet = triplet_param(p, "triplet", brownian1());
  const double eps = get_double(p, "eps", 0.05);
  const double T = get_double(p, "T", 1.0);
  const std::size_t n = get_size(p, "n", 100000);
  const double xi_max = get_double(p, "xi_max", 3.0);
  const std::size_t points = get_size(p, "points", 25);
  const double required = get_double(p, "required_fraction", 0.95);
  if (n == 0) {
    throw EmptyEnsemble("n must be >= 1");
  }
  if (triplet.dim() != 1) {
    throw DimensionMismatch("cf suite runs in d = 1");
  }
  LevySampler sampler(triplet, eps, get_double(p, "dt", T));
  Mat endpoints(1, static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(run.cfg.seed, k);
    endpoints.col(static_cast<Eigen::Index>(k)) = sampler.sample_endpoint(Vec::Zero(1), T, rng);
  });
  run.streams("endpoints", 0, n);
  std::vector<Vec> grid;
  for (std::size_t k = 0; k < points; ++k) {
    grid.push_back(Vec::Constant(1, -xi_max + 2.0 * xi_max * static_cast<double>(k) / static_cast<double>(points - 1)));
  }
  CfEstimate cf = empirical_cf(endpoints, grid);
  CsvTable t({"xi", "re", "im", "se", "re_ref", "im_ref", "z"});
  std::size_t ok = 0;
  PlotSeries emp{"empirical Re", {}, {}}, ref{"exp(-T psi_eps) Re", {}, {}};
  for (std::size_t k = 0; k < points; ++k) {
    Complex target = std::exp(-T * sampler.driver().truncated_exponent(grid[k]));
    double se = cf.se[k];
    double z = se > 0 ? std::abs(cf.phi[k] - target) / se : (std::abs(cf.phi[k] - target) < 1e-12 ? 0.0 : INFINITY);
    ok += z <= 3.0;
    t.add_row({grid[k](0), cf.phi[k].real(), cf.phi[k].imag(), se, target.real(), target.imag(), z});
    emp.x.push_back(grid[k](0)), emp.y.push_back(cf.phi[k].real());
    ref.x.push_back(grid[k](0)), ref.y.push_back(target.real());
  }
  double frac = static_cast<double>(ok) / static_cast<double>(points);
  bool pass = frac >= required;
  run.table("cf", t);
  run.json("report", {{"suite", "cf"}, {"fraction_within_3se", frac}, {"required", required}, {"n", n}, {"pass", pass}});
  run.plot("cf", {emp, ref}, {"characteristic function", "xi", "Re phi", 720, 440, false, false});
  return pass ? kPass : kCheckFailed;
}

int suite_campbell(Run& run) {
  const Json& p = run.cfg.params;
  StepFunction f{get_list(p, "breaks", {0.0, 0.5, 1.0}), get_list(p, "values", {1.0, -0.5})};
  const std::size_t n = get_size(p, "n", 100000);
  CheckReport r = campbell_check(get_double(p, "lambda", 2.0), law_param(p), f, n, run.cfg.seed);
  run.streams("paths", 0, n);
  run.json("report", {{"suite", "campbell"},
                      {"lhs", complex_json(r.lhs)},
                      {"rhs", complex_json(r.rhs)},
                      {"se", r.se},
                      {"pass", r.pass},
                      {"n", r.n}});
  return r.pass ? kPass : kCheckFailed;
}

int suite_isometry(Run& run) {
  const Json& p = run.cfg.params;
  const std::string backend = get_string(p, "backend", "all");
  const std::size_t n = get_size(p, "n", 100000);
  if (n == 0) {
    throw EmptyEnsemble("n must be >= 1");
  }
  Json reports = Json::array();
  bool pass = true;
  std::uint64_t stream = 0;
  auto add = [&](const IsometryReport& r) {
    bool in_band = r.ratio() >= 0.98 && r.ratio() <= 1.02;
    pass = pass && r.pass && in_band;
    reports.push_back({{"functional", r.functional},
                       {"mc_moment", r.mc_moment},
                       {"control_integral", r.control_integral},
                       {"ratio", r.ratio()},
                       {"se", r.se},
                       {"pass", r.pass && in_band},
                       {"n", r.n}});
    run.streams(r.functional, stream, n);
    stream += n;
  };
  L2Integrand ramp;
  ramp.f = [](double s, const Vec&) { return s; };
  bool any = false;
  if (backend == "all" || backend == "wn") {
    auto wn = RandomOrthogonalMeasure::white_noise(1.0);
    add(isometry_check(ramp, wn, static_cast<int>(get_size(p, "level", 6)), n, run.cfg.seed, stream,
                       "white_noise f(s)=s"));
    any = true;
  }
  if (backend == "all" || backend == "mn") {
    auto mn = RandomOrthogonalMeasure::martingale_noise(
        MartingaleDriver::compensated_poisson(get_double(p, "lambda", 2.0)), 1.0);
    add(isometry_check(ramp, mn, static_cast<int>(get_size(p, "level", 6)), n, run.cfg.seed, stream,
                       "compensated_poisson_martingale f(s)=s"));
    any = true;
  }
  if (backend == "all" || backend == "cp") {
    const double alpha = get_double(p, "alpha", 1.5);
    auto nu = catalog::symmetric_stable_density(alpha, get_double(p, "c", 1.0)).nu();
    auto cp = RandomOrthogonalMeasure::compensated_poisson(nu, 0.5, 1.0);
    L2Integrand g;
    g.f = [](double, const Vec& y) { return y(0); };
    g.space = SpaceCell{0.5, 1.0, std::nullopt};
    add(isometry_check(g, cp, static_cast<int>(get_size(p, "space_level", 4)), n, run.cfg.seed, stream,
                       "poisson_random_measure f(s,y)=y on 0.5<=|y|<1"));
    any = true;
  }
  if (!any) {
    throw SchemaError("backend must be one of wn, mn, cp, all");
  }
  run.json("report", {{"suite", "isometry"}, {"reports", reports}, {"pass", pass}});
  return pass ? kPass : kCheckFailed;
}

//! A f on a grid over [x - r, x + r] for 1-d Gaussian test functions; the
//! running integral only evaluates inside the ball.
std::function<double(const Vec&)> tabulated_generator(const LevyTriplet& triplet, const TestFunction& f,
                                                      double centre, double r) {
  constexpr std::size_t kNodes = 2001;
  const double lo = centre - r;
  const double h = 2.0 * r / (kNodes - 1);
  auto table = std::make_shared<std::vector<double>>(kNodes);
  parallel_for(kNodes, [&](std::size_t k) {
    (*table)[k] = generator_integro(triplet, f, Vec::Constant(1, lo + h * static_cast<double>(k))).value;
  });
  return [table, lo, h](const Vec& y) {
    double u = std::clamp((y(0) - lo) / h, 0.0, static_cast<double>(kNodes - 1));
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), kNodes - 2);
    double w = u - static_cast<double>(i);
    return (1.0 - w) * (*table)[i] + w * (*table)[i + 1];
  };
}

int suite_dynkin(Run& run) {
  const Json& p = run.cfg.params;
  LevyTriplet triplet = triplet_param(p, "triplet", brownian1());
  if (triplet.dim() != 1) {
    throw DimensionMismatch("dynkin suite runs in d = 1");
  }
  const std::size_t n = get_size(p, "n", 20000);
  const double r = get_double(p, "r", 1.0);
  const double x0 = get_double(p, "x", 0.0);
  const double cap = get_double(p, "time_cap", 100.0);
  LevySampler sampler(triplet, get_double(p, "eps", 1e-2), get_double(p, "dt", 1e-3));
  const std::string fname = get_string(p, "f", "x2");
  DynkinReport rep;
  if (fname == "x2") {
    if (!triplet.nu().is_zero()) {
      throw InvalidArgument("InvalidArgument", "f = x^2 is supported for continuous triplets only");
    }
    const double l = triplet.drift()(0);
    const double q = triplet.diffusion()(0, 0);
    std::function<double(const Vec&)> f = [](const Vec& y) { return y(0) * y(0); };
    std::function<double(const Vec&)> af = [l, q](const Vec& y) { return 2.0 * l * y(0) + q; };
    rep = dynkin_check(sampler, f, af, Vec::Constant(1, x0), r, n, cap, run.cfg.seed);
  } else if (fname == "gaussian") {
    TestFunction f = TestFunction::gaussian(1, get_double(p, "a", 0.5), Vec::Constant(1, get_double(p, "center", 0.0)));
    auto af = tabulated_generator(triplet, f, x0, r);
    rep = dynkin_check(sampler, f, af, Vec::Constant(1, x0), r, n, cap, run.cfg.seed);
  } else {
    throw SchemaError("f must be \"x2\" or \"gaussian\"");
  }
  run.streams("paths", 0, n);
  run.json("report", {{"suite", "dynkin"},
                      {"lhs", rep.lhs},
                      {"rhs", rep.rhs},
                      {"se", rep.se},
                      {"lhs_se", rep.lhs_se},
                      {"rhs_se", rep.rhs_se},
                      {"mean_exit", rep.mean_exit},
                      {"censored_fraction", rep.censored_fraction},
                      {"pass", rep.pass},
                      {"n", rep.n}});
  return rep.pass ? kPass : kCheckFailed;
}

int suite_martingale(Run& run) {
  const Json& p = run.cfg.params;
  LevyTriplet triplet = triplet_param(p, "triplet", brownian1());
  LevySampler sampler(triplet, get_double(p, "eps", 0.05), get_double(p, "dt", 1e-2));
  const std::size_t n = get_size(p, "n", 20000);
  MartingaleReport r = exponential_martingale_check(sampler, get_point(p, "xi", triplet.dim(), 1.0),
                                                    get_list(p, "partition", {0.0, 0.25, 0.5, 0.75, 1.0}),
                                                    n, run.cfg.seed);
  run.streams("paths", 0, n);
  run.json("report", {{"suite", "martingale"}, {"max_score", r.max_score}, {"tests", r.tests}, {"pass", r.pass}, {"n", r.n}});
  return r.pass ? kPass : kCheckFailed;
}

int suite_ck(Run& run) {
  const Json& p = run.cfg.params;
  LevyTriplet triplet = triplet_param(p, "triplet", brownian1());
  const int d = triplet.dim();
  LevySampler sampler(triplet, get_double(p, "eps", 0.05), get_double(p, "dt", 1e-2));
  TestFunction f = TestFunction::gaussian(d, get_double(p, "a", 0.5), get_point(p, "center", d));
  const std::size_t outer = get_size(p, "outer", 2000);
  const std::size_t inner = get_size(p, "inner", 20);
  ChapmanKolmogorovReport r = chapman_kolmogorov_check(sampler, f, get_point(p, "x", d), get_double(p, "s", 0.5),
                                                       get_double(p, "t", 0.5), outer, inner, run.cfg.seed);
  run.streams("direct", 0, outer * inner);
  run.json("report", {{"suite", "ck"}, {"lhs", r.direct}, {"rhs", r.nested}, {"se", r.se}, {"pass", r.pass}});
  return r.pass ? kPass : kCheckFailed;
}

int cmd_validate(Run& run) {
  const std::string suite = get_string(run.cfg.params, "suite", "");
  if (suite == "cf") {
    return suite_cf(run);
  }
  if (suite == "campbell") {
    return suite_campbell(run);
  }
  if (suite == "isometry") {
    return suite_isometry(run);
  }
  if (suite == "dynkin") {
    return suite_dynkin(run);
  }
  if (suite == "martingale") {
    return suite_martingale(run);
  }
  if (suite == "ck") {
    return suite_ck(run);
  }
  throw SchemaError("--suite must be one of cf, campbell, isometry, dynkin, martingale, ck");
}

// --- symbol / indices --------------------------------------------------------

std::vector<std::pair<Vec, Vec>> probe_pairs(const Json& p, int d) {
  std::vector<std::pair<Vec, Vec>> out;
  if (p.contains("pairs")) {
    if (!p["pairs"].is_array()) {
      throw SchemaError("pairs must be an array of [x, xi]");
    }
    for (const auto& pr : p["pairs"]) {
      if (!pr.is_array() || pr.size() != 2) {
        throw SchemaError("pairs must be an array of [x, xi]");
      }
      Json wrap = {{"x", pr[0]}, {"xi", pr[1]}};
      out.emplace_back(get_point(wrap, "x", d), get_point(wrap, "xi", d));
    }
    return out;
  }
  for (double x : get_list(p, "x", {0.0})) {
    for (double xi : get_list(p, "xi", {1.0, 2.0})) {
      out.emplace_back(Vec::Constant(d, x), Vec::Constant(d, xi));
    }
  }
  return out;
}

int cmd_symbol(Run& run) {
  const Json& p = run.cfg.params;
  StateSymbol q = symbol_param(p);
  const int d = q.dim;
  const bool estimate = get_string(p, "symbol", "levy") != "stable_like" && get_size(p, "n", 100000) > 0;
  std::unique_ptr<ProcessSampler> sampler;
  if (estimate) {
    sampler = sampler_param(p, 1e-2, 1e-3);
  }
  const std::size_t n = get_size(p, "n", 100000);
  std::vector<double> t_grid = get_list(p, "t_grid", {0.04, 0.02, 0.01});
  const double r = get_double(p, "r", 1.0);
  std::vector<std::string> header;
  for (int i = 0; i < d; ++i) {
    header.push_back(d == 1 ? "x" : "x_" + std::to_string(i + 1));
  }
  for (int i = 0; i < d; ++i) {
    header.push_back(d == 1 ? "xi" : "xi_" + std::to_string(i + 1));
  }
  for (const char* h : {"re_q", "im_q"}) {
    header.push_back(h);
  }
  if (estimate) {
    for (const char* h : {"re_q_hat", "im_q_hat", "se", "rel_err"}) {
      header.push_back(h);
    }
  }
  // small jumps below eps are not simulated; show what the sampler targets
  std::optional<CharacteristicExponent> simulated;
  if (sampler) {
    simulated = sampler->exponent();
  }
  if (simulated) {
    for (const char* h : {"re_q_eps", "im_q_eps", "rel_err_eps"}) {
      header.push_back(h);
    }
  }
  CsvTable t(header);
  auto pairs = probe_pairs(p, d);
  Json diag = Json::array();
  std::uint64_t stream = 0;
  for (const auto& [x, xi] : pairs) {
    Complex v = eval_symbol(q, x, xi);
    std::vector<double> row(x.data(), x.data() + d);
    row.insert(row.end(), xi.data(), xi.data() + d);
    row.push_back(v.real());
    row.push_back(v.imag());
    if (estimate) {
      SymbolEstimate e = estimate_symbol(*sampler, x, xi, t_grid, r, n, run.cfg.seed, stream);
      run.streams("symbol", stream, n);
      stream += n;
      row.push_back(e.q_hat.real());
      row.push_back(e.q_hat.imag());
      row.push_back(e.se);
      row.push_back(std::abs(v) > 0 ? std::abs(e.q_hat - v) / std::abs(v) : std::abs(e.q_hat));
      if (simulated) {
        Complex ve = (*simulated)(xi);
        row.push_back(ve.real());
        row.push_back(ve.imag());
        row.push_back(std::abs(ve) > 0 ? std::abs(e.q_hat - ve) / std::abs(ve) : std::abs(e.q_hat));
      }
      Json pts = Json::array();
      for (const auto& sp : e.points) {
        pts.push_back({{"t", sp.t}, {"value", complex_json(sp.value)}, {"se", sp.se}, {"exit_fraction", sp.exit_fraction}});
      }
      diag.push_back({{"x", to_json(x)}, {"xi", to_json(xi)}, {"slope", complex_json(e.slope)}, {"t_grid", pts}});
    }
    t.add_row(row);
  }
  run.table("symbol", t);
  Json report = {{"t_grid", t_grid}, {"r", r}, {"n", estimate ? n : 0}, {"estimates", diag}};
  if (estimate) {
    report["eps"] = get_double(p, "eps", 1e-2);
    report["dt"] = get_double(p, "dt", 1e-3);
  }

  if (p.contains("exit_time")) {
    const Json& e = p["exit_time"];
    if (!sampler) {
      throw InvalidArgument("InvalidArgument", "exit_time needs a samplable symbol");
    }
    const std::size_t ne = get_size(e, "n", 20000);
    ExitTimeReport ex = mean_exit_time(*sampler, q, get_point(e, "x", d), get_double(e, "r", 1.0), ne,
                                       get_double(e, "time_cap", 100.0), run.cfg.seed, stream);
    run.streams("exit_time", stream, ne);
    stream += ne;
    report["exit_time"] = {{"mean_tau", ex.mean_tau}, {"se", ex.se}, {"lower", ex.lower},
                           {"upper", ex.upper}, {"kappa", ex.kappa}, {"censored_fraction", ex.censored_fraction}};
  }
  if (p.contains("maximal")) {
    const Json& m = p["maximal"];
    if (!sampler) {
      throw InvalidArgument("InvalidArgument", "maximal needs a samplable symbol");
    }
    const std::size_t nm = get_size(m, "n", 20000);
    ExceedanceReport ex = maximal_check(*sampler, q, get_point(m, "x", d), get_double(m, "r", 1.0),
                                        get_double(m, "t", 0.1), nm, run.cfg.seed, stream);
    run.streams("maximal", stream, nm);
    report["maximal"] = {{"frequency", ex.frequency}, {"se", ex.se}, {"bound", ex.bound}, {"pass", ex.pass}};
    run.json("report", report);
    return ex.pass ? kPass : kCheckFailed;
  }
  run.json("report", report);
  return kPass;
}

int cmd_indices(Run& run) {
  const Json& p = run.cfg.params;
  StateSymbol q = symbol_param(p);
  const double xi_max = get_double(p, "xi_max", 1e6);
  const double xi_min = get_double(p, "xi_min", 100.0);
  const int points = static_cast<int>(get_size(p, "points", 25));
  CsvTable t({"x", "beta", "delta", "beta_residual", "delta_residual", "alpha_x"});
  PlotSeries hs{"H(R)", {}, {}}, ls{"h(R)", {}, {}};
  for (double x : get_list(p, "x", {0.0})) {
    Vec xv = Vec::Constant(q.dim, x);
    IndexEstimate e = indices_at_infinity(q, xv, xi_max, points, xi_min);
    double a = q.stable_alpha ? q.stable_alpha(xv) : NAN;
    t.add_row({x, e.beta, e.delta, e.beta_residual, e.delta_residual, a});
    if (hs.x.empty()) {
      hs.x = e.radii, hs.y = e.sup_values;
      ls.x = e.radii, ls.y = e.inf_values;
    }
  }
  run.table("indices", t);
  run.plot("indices", {hs, ls}, {"symbol growth", "R", "|q|", 720, 440, true, true});
  return kPass;
}

} // namespace

int run(const RunConfig& config) {
  if (config.format != "csv" && config.format != "json") {
    throw SchemaError("--format must be csv or json");
  }
  Run r(config);
  int code = kInvalidInput;
  try {
    if (config.command == "exponent") {
      code = cmd_exponent(r);
    } else if (config.command == "simulate") {
      code = cmd_simulate(r);
    } else if (config.command == "validate") {
      code = cmd_validate(r);
    } else if (config.command == "symbol") {
      code = cmd_symbol(r);
    } else if (config.command == "indices") {
      code = cmd_indices(r);
    } else {
      throw SchemaError("unknown command '" + config.command + "'");
    }
  } catch (const Error& e) {
    r.manifest["error"] = {{"code", e.code()}, {"message", e.what()}};
    r.finish(dynamic_cast<const PreconditionFailed*>(&e) ? kPrecondition : kInvalidInput);
    throw;
  }
  r.finish(code);
  return code;
}

} // namespace levytype::cli
