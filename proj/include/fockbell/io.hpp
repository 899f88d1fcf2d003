#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fockbell/fock.hpp"
#include "fockbell/hardy.hpp"
#include "fockbell/nonlocality.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/phase_oracle.hpp"

namespace fockbell {

using Json = nlohmann::ordered_json;

/// 17 significant digits: round-trips every double.
inline std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// --- networks ---------------------------------------------------------------

inline ElementKind parse_element_kind(const std::string& s) {
  if (s == "beamsplitter") return ElementKind::beamsplitter;
  if (s == "phase-shifter") return ElementKind::phase_shifter;
  if (s == "mirror") return ElementKind::mirror;
  throw ValidationError("unknown element kind '" + s + "'");
}

inline Json to_json(const ModeId& m) { return {{"index", m.index}, {"label", m.label}}; }

inline ModeId mode_from_json(const Json& j) {
  return {j.at("index").get<int>(), j.value("label", std::string{})};
}

/// Canonical form: every element carries kind, modes, r, t and phase.
inline Json to_json(const NetworkDescription& net) {
  Json elements = Json::array();
  for (const auto& e : net.elements) {
    Json modes = Json::array();
    for (const auto& m : e.modes) modes.push_back(to_json(m));
    elements.push_back({{"kind", to_string(e.kind)},
                        {"modes", modes},
                        {"r", e.reflection},
                        {"t", e.transmission},
                        {"phase", e.phase}});
  }
  Json sources = Json::array(), detectors = Json::array();
  for (const auto& m : net.sources) sources.push_back(to_json(m));
  for (const auto& m : net.detectors) detectors.push_back(to_json(m));
  return {{"elements", elements}, {"sources", sources}, {"detectors", detectors}};
}

inline NetworkDescription network_from_json(const Json& j) {
  NetworkDescription net;
  try {
    for (const auto& je : j.at("elements")) {
      OpticalElement e;
      e.kind = parse_element_kind(je.at("kind").get<std::string>());
      for (const auto& jm : je.at("modes")) e.modes.push_back(mode_from_json(jm));
      switch (e.kind) {
        case ElementKind::beamsplitter:
          e.reflection = je.at("r").get<double>();
          e.transmission = je.at("t").get<double>();
          e.phase = je.value("phase", 0.0);
          break;
        case ElementKind::phase_shifter:
          e.reflection = 0.0;
          e.transmission = 1.0;
          e.phase = je.at("phase").get<double>();
          break;
        case ElementKind::mirror:
          e.reflection = 1.0;
          e.transmission = 0.0;
          break;
      }
      validate_element(e);
      net.elements.push_back(std::move(e));
    }
    for (const auto& jm : j.at("sources")) net.sources.push_back(mode_from_json(jm));
    for (const auto& jm : j.at("detectors")) net.detectors.push_back(mode_from_json(jm));
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed network description: ") + ex.what());
  }
  return net;
}

inline Json to_json(const TransferMatrix& u) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t g = 0; g < u.cols(); ++g) row.push_back({u(i, g).real(), u(i, g).imag()});
    rows.push_back(row);
  }
  return {{"detectors", u.detector_labels()}, {"sources", u.source_labels()}, {"entries", rows}};
}

// --- distributions ----------------------------------------------------------

inline void write_csv(std::ostream& os, const OutcomeDistribution& d) {
  for (std::size_t i = 0; i < d.detectors(); ++i) os << "m" << i + 1 << ",";
  os << "probability\n";
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (int c : d.outcomes()[k]) os << c << ",";
    os << format_number(d.probabilities()[k]) << "\n";
  }
}

inline Json to_json(const OutcomeDistribution& d) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < d.size(); ++k)
    rows.push_back({{"m", d.outcomes()[k]}, {"p", d.probabilities()[k]}});
  return {{"total_particles", d.total_particles()}, {"outcomes", rows}};
}

inline OutcomeDistribution distribution_from_json(const Json& j) {
  std::vector<OccupationVector> outcomes;
  std::vector<double> probs;
  for (const auto& row : j.at("outcomes")) {
    outcomes.push_back(row.at("m").get<OccupationVector>());
    probs.push_back(row.at("p").get<double>());
  }
  return {j.at("total_particles").get<int>(), std::move(outcomes), std::move(probs)};
}

inline void write_csv(std::ostream& os, const ComparisonReport& r) {
  os << "m1,m2,m3,m4,p_quantum,p_classical,divergence\n";
  for (const auto& row : r.rows) {
    for (int c : row.outcome) os << c << ",";
    os << format_number(row.p_quantum) << "," << format_number(row.p_classical) << ","
       << format_number(row.divergence) << "\n";
  }
}

inline Json to_json(const ComparisonReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"m", row.outcome},
                    {"p_quantum", row.p_quantum},
                    {"p_classical", row.p_classical},
                    {"divergence", row.divergence}});
  return {{"rows", rows}, {"total_variation", r.total_variation}};
}

// --- certificates -----------------------------------------------------------

inline Json to_json(const ViolationReport& v) {
  Json evidence = Json::object(), tol = Json::object();
  for (const auto& [k, x] : v.evidence) evidence[k] = x;
  for (const auto& [k, x] : v.tolerances) tol[k] = x;
  return {{"kind", to_string(v.kind)}, {"verdict", v.verdict}, {"evidence", evidence},
          {"tolerances", tol}};
}

inline Json to_json(const BchshOptimum& o) {
  return {{"n_particles", o.n_particles},
          {"xi_star", o.xi_star},
          {"q_max", o.q_max},
          {"violation", o.violation()},
          {"gaussian_limit", o.gaussian_limit},
          {"settings",
           {{"phi_a", o.settings.phi_a},
            {"phi_a_prime", o.settings.phi_a_prime},
            {"phi_b", o.settings.phi_b},
            {"phi_b_prime", o.settings.phi_b_prime}}}};
}

inline Json to_json(const GhzReport& r) {
  Json coeffs = Json::array();
  for (const auto& h : r.correlation_coefficients)
    coeffs.push_back({{"harmonic", h.harmonic}, {"amplitude", h.amplitude}});
  Json evidence = Json::array();
  for (const auto& e : r.evidence)
    evidence.push_back({{"angles", e.angles}, {"exact", e.exact}, {"closed_form", e.closed_form}});
  return {{"n_particles", r.n_particles},
          {"correlation_coefficients", coeffs},
          {"contradiction", r.contradiction},
          {"evidence", evidence},
          {"tolerance", r.tolerance}};
}

inline Json to_json(const ConditionalProbability& p) {
  return {{"value", p.value}, {"mass", p.mass}, {"degenerate", p.degenerate}};
}

inline Json to_json(const HardyCertificate& c) {
  return {{"n_particles", c.n_particles},
          {"nonzero_event_probability", c.nonzero_event_probability},
          {"certainty_bob_given_alice", to_json(c.certainties.bob_given_alice)},
          {"certainty_alice_given_bob", to_json(c.certainties.alice_given_bob)},
          {"forbidden_event_amplitude", c.forbidden_event_amplitude},
          {"exact_mode", c.exact_mode},
          {"nonzero_event_exact", c.nonzero_event_exact},
          {"forbidden_event_exact_zero", c.forbidden_event_exact_zero},
          {"verdict", c.verdict},
          {"tolerances", {{"zero", c.zero_tolerance}, {"certainty", c.certainty_tolerance}}}};
}

/// Rows: config, m1..m4, Re C, Im C, |C|².
inline void write_csv(std::ostream& os, const HardyAmplitudeTable& t, bool header = true) {
  if (header) os << "config,m1,m2,m3,m4,re,im,abs2\n";
  for (std::size_t k = 0; k < t.outcomes.size(); ++k) {
    os << to_string(t.configuration);
    for (int c : t.outcomes[k]) os << "," << c;
    const Complex a = t.amplitudes[k];
    os << "," << format_number(a.real()) << "," << format_number(a.imag()) << ","
       << format_number(std::norm(a)) << "\n";
  }
}

}  // namespace fockbell
