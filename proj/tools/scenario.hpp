#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockbell/fockbell.hpp"

namespace fockbell::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kValidation = 3, kExpectationMismatch = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_config for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  /// Inclusive, evenly spaced; a single step yields `start`.
  std::vector<double> points() const {
    std::vector<double> out;
    for (int k = 0; k < steps; ++k)
      out.push_back(steps == 1 ? start : start + (stop - start) * k / (steps - 1));
    return out;
  }
};

inline ScanRange parse_scan(const std::string& flag, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  ScanRange r;
  try {
    if (parts.size() != 3) throw std::invalid_argument("shape");
    r.start = std::stod(parts[0]);
    r.stop = std::stod(parts[1]);
    r.steps = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("scan-" + flag + ": expected start:stop:steps, got '" + text + "'");
  }
  if (r.steps < 1) throw UsageError("scan-" + flag + ": steps must be >= 1");
  return r;
}

struct ScenarioConfig {
  std::string scenario;
  std::vector<long long> n;  ///< particle totals; bchsh accepts a list
  std::optional<int> n_alpha, n_beta, n_gamma;
  std::optional<double> zeta, theta, chi;
  std::map<std::string, ScanRange> scans;  ///< keys: zeta, theta, chi, xi
  std::optional<int> m_measured;
  std::optional<int> quad_nodes;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string output = "-";
  std::string format = "csv";
  std::optional<bool> expect_violation;
  std::uint64_t max_outcomes = 10'000'000;
  std::string network_file;
};

inline constexpr std::uint64_t kDefaultMaxOutcomes = 10'000'000;

inline void validate(const ScenarioConfig& c) {
  static const std::vector<std::string> names{"dist", "bchsh", "ghz", "hardy", "compare"};
  if (c.scenario.empty())
    throw UsageError("scenario: missing (one of dist, bchsh, ghz, hardy, compare)");
  if (std::find(names.begin(), names.end(), c.scenario) == names.end())
    throw UsageError("scenario: unknown value '" + c.scenario + "'");
  if (!(c.tol > 0.0)) throw UsageError("tol: must be positive");
  if (c.format != "csv" && c.format != "tree") throw UsageError("format: must be csv or tree");
  if (c.quad_nodes && *c.quad_nodes < 1) throw UsageError("quad-nodes: must be >= 1");
  if (c.n_alpha && *c.n_alpha < 0) throw UsageError("n-alpha: must be non-negative");
  if (c.n_beta && *c.n_beta < 0) throw UsageError("n-beta: must be non-negative");
  if (c.n_gamma && *c.n_gamma < 0) throw UsageError("n-gamma: must be non-negative");
  for (long long v : c.n)
    if (v < 0) throw UsageError("n: must be non-negative");
  if (c.n.size() > 1 && c.scenario != "bchsh") throw UsageError("n: lists are accepted by bchsh only");
  if (c.m_measured && *c.m_measured < 0) throw UsageError("m-measured: must be non-negative");
  if (c.scenario == "ghz" && c.n_alpha && c.n_beta && c.n_gamma &&
      !(*c.n_alpha == *c.n_beta && *c.n_beta == *c.n_gamma))
    throw UsageError("n-alpha/n-beta/n-gamma: ghz requires three equal populations");
  if (c.scans.contains("xi") && c.scenario != "bchsh")
    throw UsageError("scan-xi: only meaningful for bchsh");
}

/// Flags override values read from the --config file (TOML/INI, keys are the
/// long flag names). The scenario may be given positionally or as --scenario.
inline ScenarioConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Fock-state condensate interferometry: distributions and nonlocality certificates",
               "fockbell"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags take precedence");
  app.allow_config_extras(false);

  ScenarioConfig c;
  std::string positional, scenario_flag;
  std::string angles, scan_zeta, scan_theta, scan_chi, scan_xi, expect;
  int n_alpha = 0, n_beta = 0, n_gamma = 0, m_measured = 0, quad_nodes = 0;
  double zeta = 0, theta = 0, chi = 0;

  app.add_option("scenario_pos", positional, "dist | bchsh | ghz | hardy | compare");
  auto* o_scenario = app.add_option("--scenario", scenario_flag, "Scenario to run");
  app.add_option("--n", c.n, "Total particle number (bchsh accepts a comma list)")->delimiter(',');
  auto* o_na = app.add_option("--n-alpha", n_alpha, "Population of source alpha");
  auto* o_nb = app.add_option("--n-beta", n_beta, "Population of source beta");
  auto* o_ng = app.add_option("--n-gamma", n_gamma, "Population of source gamma");
  auto* o_z = app.add_option("--zeta", zeta, "Alice's shifter angle (radians)");
  auto* o_t = app.add_option("--theta", theta, "Bob's shifter angle (radians)");
  auto* o_c = app.add_option("--chi", chi, "Carole's shifter angle (radians)");
  auto* o_angles = app.add_option("--angles", angles, "zeta,theta[,chi] in one flag");
  auto* o_sz = app.add_option("--scan-zeta", scan_zeta, "start:stop:steps");
  auto* o_st = app.add_option("--scan-theta", scan_theta, "start:stop:steps");
  auto* o_sc = app.add_option("--scan-chi", scan_chi, "start:stop:steps");
  auto* o_sx = app.add_option("--scan-xi", scan_xi, "start:stop:steps (bchsh Q curve)");
  auto* o_m = app.add_option("--m-measured", m_measured, "Particles detected (partial measurement)");
  auto* o_q = app.add_option("--quad-nodes", quad_nodes, "Quadrature nodes per phase variable (default 4N+4)");
  app.add_option("--tol", c.tol, "Certificate tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
  app.add_option("--samples", c.samples, "Number of simulated runs to draw (dist)")->capture_default_str();
  app.add_option("--output", c.output, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", c.format, "csv | tree")->capture_default_str();
  auto* o_expect = app.add_option("--expect-violation", expect, "true|false; exit 4 on mismatch");
  app.add_option("--max-outcomes", c.max_outcomes, "Refuse enumerations larger than this")
      ->capture_default_str();
  app.add_option("--network", c.network_file, "Network description (JSON) for dist");

  std::vector<const char*> argv{"fockbell"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!positional.empty() && o_scenario->count() && positional != scenario_flag)
    throw UsageError("scenario: positional '" + positional + "' conflicts with --scenario '" +
                     scenario_flag + "'");
  c.scenario = positional.empty() ? scenario_flag : positional;

  if (o_na->count()) c.n_alpha = n_alpha;
  if (o_nb->count()) c.n_beta = n_beta;
  if (o_ng->count()) c.n_gamma = n_gamma;
  if (o_m->count()) c.m_measured = m_measured;
  if (o_q->count()) c.quad_nodes = quad_nodes;
  if (o_z->count()) c.zeta = zeta;
  if (o_t->count()) c.theta = theta;
  if (o_c->count()) c.chi = chi;

  if (o_angles->count()) {
    if (o_z->count() || o_t->count() || o_c->count())
      throw UsageError("angles: conflicts with --zeta/--theta/--chi");
    std::vector<double> v;
    std::stringstream ss(angles);
    try {
      for (std::string item; std::getline(ss, item, ',');) v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("angles: expected comma-separated numbers, got '" + angles + "'");
    }
    if (v.size() < 2 || v.size() > 3) throw UsageError("angles: expected two or three values");
    c.zeta = v[0];
    c.theta = v[1];
    if (v.size() == 3) c.chi = v[2];
  }

  auto scan = [&](CLI::Option* opt, const std::string& name, const std::string& text,
                  const std::optional<double>& point) {
    if (!opt->count()) return;
    if (point) throw UsageError("scan-" + name + ": conflicts with a point value for " + name);
    c.scans[name] = parse_scan(name, text);
  };
  scan(o_sz, "zeta", scan_zeta, c.zeta);
  scan(o_st, "theta", scan_theta, c.theta);
  scan(o_sc, "chi", scan_chi, c.chi);
  scan(o_sx, "xi", scan_xi, std::nullopt);

  if (o_expect->count()) {
    std::string e = expect;
    std::transform(e.begin(), e.end(), e.begin(), ::tolower);
    if (e == "true" || e == "1" || e == "yes") c.expect_violation = true;
    else if (e == "false" || e == "0" || e == "no") c.expect_violation = false;
    else throw UsageError("expect-violation: expected true or false, got '" + expect + "'");
  }

  validate(c);
  return c;
}

struct ResultRecord {
  Json record;      ///< full tree: echo, resolved inputs, outputs, version, duration
  std::string csv;  ///< numeric payload as CSV
  int exit_code = kSuccess;
};

namespace detail {

struct AnglePoint {
  double zeta = 0.0, theta = 0.0, chi = 0.0;
};

inline std::vector<AnglePoint> angle_points(const ScenarioConfig& c) {
  std::vector<double> zs{c.zeta.value_or(0.0)}, ts{c.theta.value_or(0.0)}, cs{c.chi.value_or(0.0)};
  if (auto it = c.scans.find("zeta"); it != c.scans.end()) zs = it->second.points();
  if (auto it = c.scans.find("theta"); it != c.scans.end()) ts = it->second.points();
  if (auto it = c.scans.find("chi"); it != c.scans.end()) cs = it->second.points();
  std::vector<AnglePoint> out;
  for (double z : zs)
    for (double t : ts)
      for (double x : cs) out.push_back({z, t, x});
  return out;
}

inline bool scanning(const ScenarioConfig& c) {
  return c.scans.contains("zeta") || c.scans.contains("theta") || c.scans.contains("chi");
}

inline void check_cost(const ScenarioConfig& c, int detectors, long long n) {
  const std::uint64_t count = composition_count(detectors, static_cast<int>(n));
  if (count > c.max_outcomes)
    throw ValidationError("refusing to enumerate " + std::to_string(count) + " outcomes (" +
                          std::to_string(detectors) + " detectors, N=" + std::to_string(n) +
                          "); raise --max-outcomes above this estimate to proceed");
}

inline Json inputs_json(const ScenarioConfig& c) {
  Json j;
  j["scenario"] = c.scenario;
  j["n"] = c.n;
  j["n_alpha"] = c.n_alpha ? Json(*c.n_alpha) : Json(nullptr);
  j["n_beta"] = c.n_beta ? Json(*c.n_beta) : Json(nullptr);
  j["n_gamma"] = c.n_gamma ? Json(*c.n_gamma) : Json(nullptr);
  j["zeta"] = c.zeta.value_or(0.0);
  j["theta"] = c.theta.value_or(0.0);
  j["chi"] = c.chi.value_or(0.0);
  Json scans = Json::object();
  for (const auto& [k, r] : c.scans) scans[k] = {{"start", r.start}, {"stop", r.stop}, {"steps", r.steps}};
  j["scans"] = scans;
  j["m_measured"] = c.m_measured ? Json(*c.m_measured) : Json(nullptr);
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["format"] = c.format;
  j["output"] = c.output;
  j["expect_violation"] = c.expect_violation ? Json(*c.expect_violation) : Json(nullptr);
  j["max_outcomes"] = c.max_outcomes;
  j["network"] = c.network_file;
  return j;
}

inline int expectation_exit(const ScenarioConfig& c, bool verdict) {
  return c.expect_violation && *c.expect_violation != verdict ? kExpectationMismatch : kSuccess;
}

inline std::pair<int, int> two_populations(const ScenarioConfig& c, int default_each) {
  if (c.n_alpha || c.n_beta) return {c.n_alpha.value_or(0), c.n_beta.value_or(0)};
  if (!c.n.empty()) {
    if (c.n.front() % 2 != 0) throw ValidationError("n: must be even to split equally between two sources");
    return {static_cast<int>(c.n.front() / 2), static_cast<int>(c.n.front() / 2)};
  }
  return {default_each, default_each};
}

inline void run_dist(const ScenarioConfig& c, ResultRecord& r, Json& in) {
  std::ostringstream csv;
  Json outputs = Json::array();
  std::optional<NetworkDescription> custom;
  if (!c.network_file.empty()) {
    std::ifstream f(c.network_file);
    if (!f) throw ValidationError("network: cannot open '" + c.network_file + "'");
    Json j;
    try {
      j = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("network: ") + e.what());
    }
    custom = network_from_json(j);
  }
  const bool three = !custom && c.n_gamma.has_value();
  SourceSpec s;
  if (custom) {
    if (!c.n_alpha && !c.n_beta && !c.n_gamma)
      throw ValidationError("n-alpha: populations are required with --network");
    s.populations = {c.n_alpha.value_or(0), c.n_beta.value_or(0)};
    if (c.n_gamma) s.populations.push_back(*c.n_gamma);
    s.populations.resize(custom->sources.size(), 0);
  } else if (three) {
    s.populations = {c.n_alpha.value_or(0), c.n_beta.value_or(0), *c.n_gamma};
  } else {
    auto [a, b] = two_populations(c, 1);
    s.populations = {a, b};
  }
  const int detectors = custom ? static_cast<int>(custom->detectors.size()) : (three ? 6 : 4);
  check_cost(c, detectors, s.total());
  in["populations"] = s.populations;

  const auto points = angle_points(c);
  const bool scan = scanning(c);
  bool header = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    const TransferMatrix u = custom ? compose_network(*custom)
                             : three ? three_source_ring(p.zeta, p.theta, p.chi)
                                     : two_source_interferometer(p.zeta, p.theta);
    const auto dist = distribution(u, s);
    Json point{{"index", k}, {"zeta", p.zeta}, {"theta", p.theta}};
    if (three) point["chi"] = p.chi;
    point["distribution"] = to_json(dist);
    if (!custom && !three) {
      point["parity_correlation"] = parity_expectation(dist, two_station_parity()).value;
    } else if (three && s.populations[0] == s.populations[1] &&
               s.populations[1] == s.populations[2]) {
      const int n = s.populations[0];
      const auto e = parity_expectation(dist, three_station_parity(), StationCondition{{n, n, n}});
      point["conditioned_parity_correlation"] = e.degenerate ? Json(nullptr) : Json(e.value);
    }
    std::vector<OccupationVector> draws;
    if (c.samples > 0) {
      draws = sample_outcomes(dist, c.samples, c.seed);
      point["samples"] = draws;
    }
    outputs.push_back(point);

    if (header) {
      if (scan) csv << "scan_index,zeta,theta," << (three ? "chi," : "");
      if (c.samples > 0) csv << "sample,";
      for (std::size_t i = 0; i < u.rows(); ++i) csv << "m" << i + 1 << (i + 1 < u.rows() || c.samples == 0 ? "," : "");
      csv << (c.samples > 0 ? "\n" : "probability\n");
      header = false;
    }
    auto prefix = [&]() {
      if (!scan) return std::string{};
      std::string s0 = std::to_string(k) + "," + format_number(p.zeta) + "," + format_number(p.theta) + ",";
      if (three) s0 += format_number(p.chi) + ",";
      return s0;
    };
    if (c.samples > 0) {
      for (std::size_t d = 0; d < draws.size(); ++d) {
        csv << prefix() << d;
        for (int m : draws[d]) csv << "," << m;
        csv << "\n";
      }
    } else {
      for (std::size_t j = 0; j < dist.size(); ++j) {
        csv << prefix();
        for (int m : dist.outcomes()[j]) csv << m << ",";
        csv << format_number(dist.probabilities()[j]) << "\n";
      }
    }
  }
  r.record["outputs"] = outputs;
  r.csv = csv.str();
}

inline void run_compare(const ScenarioConfig& c, ResultRecord& r, Json& in) {
  auto [a, b] = two_populations(c, 1);
  const SourceSpec s{{a, b}};
  check_cost(c, 4, s.total());
  const QuadratureGrid grid = c.quad_nodes ? QuadratureGrid{*c.quad_nodes, *c.quad_nodes}
                                           : QuadratureGrid::for_particles(s.total());
  in["populations"] = s.populations;
  in["quad_nodes"] = grid.n_lambda;
  std::ostringstream csv;
  const bool scan = scanning(c);
  csv << (scan ? "scan_index,zeta,theta," : "") << "m1,m2,m3,m4,p_quantum,p_classical,divergence\n";
  Json outputs = Json::array();
  const auto points = angle_points(c);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const AngleSettings angles{points[k].zeta, points[k].theta, {}};
    const auto qd = quadrature_distribution(s, angles, grid);
    if (qd.normalization_drift > kNormalizationDriftTolerance)
      throw ValidationError("quad-nodes: grid too coarse, normalization drift " +
                            format_number(qd.normalization_drift));
    const auto report = compare_models(s, angles, grid);
    Json point{{"index", k}, {"zeta", angles.zeta}, {"theta", angles.theta},
               {"comparison", to_json(report)},
               {"normalization_drift", qd.normalization_drift}};
    if (c.m_measured) point["correlation_partial"] = correlation_partial(s, *c.m_measured, angles, grid);
    outputs.push_back(point);
    for (const auto& row : report.rows) {
      if (scan) csv << k << "," << format_number(angles.zeta) << "," << format_number(angles.theta) << ",";
      for (int m : row.outcome) csv << m << ",";
      csv << format_number(row.p_quantum) << "," << format_number(row.p_classical) << ","
          << format_number(row.divergence) << "\n";
    }
  }
  r.record["outputs"] = outputs;
  r.csv = csv.str();
}

inline void run_bchsh(const ScenarioConfig& c, ResultRecord& r, Json& in) {
  std::vector<long long> ns = c.n;
  if (ns.empty()) {
    if (c.n_alpha || c.n_beta) ns.push_back(c.n_alpha.value_or(0) + c.n_beta.value_or(0));
    else ns.push_back(2);
  }
  in["n"] = ns;
  std::ostringstream csv;
  Json outputs = Json::array();
  bool all_violate = true;

  if (c.m_measured) {
    // Partial detection: maximize the CHSH combination over all four angles.
    csv << "n,m_measured,q_max,zeta,zeta_prime,theta,theta_prime,violation\n";
    for (long long n : ns) {
      if (n % 2 != 0) throw ValidationError("n: partial-measurement CHSH needs an even total");
      if (*c.m_measured > n) throw ValidationError("m-measured: exceeds n");
      const SourceSpec s{{static_cast<int>(n / 2), static_cast<int>(n / 2)}};
      const QuadratureGrid grid = c.quad_nodes ? QuadratureGrid{*c.quad_nodes, *c.quad_nodes}
                                               : QuadratureGrid::for_particles(static_cast<int>(n));
      const auto opt = maximize_chsh_partial(s, *c.m_measured, grid);
      const bool v = opt.q_max > 2.0;
      all_violate = all_violate && v;
      outputs.push_back({{"n", n}, {"m_measured", *c.m_measured}, {"q_max", opt.q_max},
                         {"angles", {opt.zeta, opt.zeta_prime, opt.theta, opt.theta_prime}},
                         {"violation", v}});
      csv << n << "," << *c.m_measured << "," << format_number(opt.q_max) << ","
          << format_number(opt.zeta) << "," << format_number(opt.zeta_prime) << ","
          << format_number(opt.theta) << "," << format_number(opt.theta_prime) << ","
          << (v ? "true" : "false") << "\n";
    }
  } else if (auto it = c.scans.find("xi"); it != c.scans.end()) {
    csv << "n,xi,q\n";
    for (long long n : ns) {
      Json curve = Json::array();
      for (double xi : it->second.points()) {
        const double q = bchsh_q(n, xi);
        curve.push_back({{"xi", xi}, {"q", q}});
        csv << n << "," << format_number(xi) << "," << format_number(q) << "\n";
      }
      const auto opt = maximize_bchsh(n);
      all_violate = all_violate && opt.violation();
      outputs.push_back({{"n", n}, {"curve", curve}, {"optimum", to_json(opt)}});
    }
  } else {
    csv << "n,xi_star,q_max,violation\n";
    for (long long n : ns) {
      const auto opt = maximize_bchsh(n);
      all_violate = all_violate && opt.violation();
      Json o = to_json(opt);
      o["report"] = to_json(to_violation_report(opt));
      outputs.push_back(o);
      csv << n << "," << format_number(opt.xi_star) << "," << format_number(opt.q_max) << ","
          << (opt.violation() ? "true" : "false") << "\n";
    }
  }
  r.record["outputs"] = outputs;
  r.record["verdict"] = all_violate;
  r.csv = csv.str();
  r.exit_code = expectation_exit(c, all_violate);
}

inline void run_ghz(const ScenarioConfig& c, ResultRecord& r, Json& in) {
  long long n = 3;
  if (!c.n.empty()) n = c.n.front();
  else if (c.n_alpha || c.n_beta || c.n_gamma)
    n = 3LL * c.n_alpha.value_or(c.n_beta.value_or(c.n_gamma.value_or(0)));
  if (n <= 0 || n % 3 != 0) throw ValidationError("n: ghz needs a positive multiple of 3");
  check_cost(c, 6, n);
  in["n"] = {n};
  const int total = static_cast<int>(n);

  std::ostringstream csv;
  csv << (scanning(c) ? "scan_index," : "") << "zeta,theta,chi,exact,closed_form\n";
  Json outputs = Json::array();
  const auto points = angle_points(c);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    const auto exact = ghz_correlation_exact(total, p.zeta, p.theta, p.chi);
    const double closed = ghz_correlation_closed_form(total, p.zeta, p.theta, p.chi);
    outputs.push_back({{"index", k}, {"zeta", p.zeta}, {"theta", p.theta}, {"chi", p.chi},
                       {"exact", exact.degenerate ? Json(nullptr) : Json(exact.value)},
                       {"conditioning_mass", exact.mass},
                       {"closed_form", closed}});
    if (scanning(c)) csv << k << ",";
    csv << format_number(p.zeta) << "," << format_number(p.theta) << "," << format_number(p.chi)
        << "," << (exact.degenerate ? std::string("degenerate") : format_number(exact.value))
        << "," << format_number(closed) << "\n";
  }
  const auto cert = ghz_contradiction_certificate(total, c.tol);
  r.record["outputs"] = outputs;
  r.record["certificate"] = to_json(cert);
  r.record["report"] = to_json(to_violation_report(cert));
  r.record["verdict"] = cert.contradiction;
  r.csv = csv.str();
  r.exit_code = expectation_exit(c, cert.contradiction);
}

inline void run_hardy(const ScenarioConfig& c, ResultRecord& r, Json& in) {
  long long n = 6;
  if (!c.n.empty()) n = c.n.front();
  else if (c.n_alpha || c.n_beta) n = c.n_alpha.value_or(0) + c.n_beta.value_or(0);
  if (n < 0 || n % 2 != 0) throw ValidationError("n: hardy needs an even total (N/2 per source)");
  check_cost(c, 4, n);
  in["n"] = {n};
  const int total = static_cast<int>(n);
  const auto net = build_hardy_network();
  std::ostringstream csv;
  bool header = true;
  for (auto config : kHardyConfigurations) {
    write_csv(csv, hardy_amplitudes(net, total, config), header);
    header = false;
  }
  const auto cert = impossibility_certificate(net, total);
  r.record["certificate"] = to_json(cert);
  r.record["report"] = to_json(to_violation_report(cert));
  r.record["verdict"] = cert.verdict;
  r.csv = csv.str();
  r.exit_code = expectation_exit(c, cert.verdict);
}

}  // namespace detail

/// Dispatches the scenario. Validation problems (bad sizes, infeasible
/// enumerations, coarse grids) surface as ValidationError.
inline ResultRecord run(const ScenarioConfig& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  ResultRecord r;
  Json in = detail::inputs_json(c);
  if (c.scenario == "dist") detail::run_dist(c, r, in);
  else if (c.scenario == "compare") detail::run_compare(c, r, in);
  else if (c.scenario == "bchsh") detail::run_bchsh(c, r, in);
  else if (c.scenario == "ghz") detail::run_ghz(c, r, in);
  else detail::run_hardy(c, r, in);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json record;
  record["scenario"] = c.scenario;
  record["inputs"] = in;
  for (auto& [key, value] : r.record.items()) record[key] = value;
  record["engine_version"] = kVersion;
  record["duration_seconds"] = seconds;
  r.record = std::move(record);
  return r;
}

inline std::string render(const ScenarioConfig& c, const ResultRecord& r) {
  return c.format == "tree" ? r.record.dump(2) + "\n" : r.csv;
}

}  // namespace fockbell::cli
