#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fockbell/errors.hpp"
#include "fockbell/exact.hpp"
#include "fockbell/fock.hpp"
#include "fockbell/nonlocality.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/optimize.hpp"

namespace fockbell {

/// Which side of each detection splitter is measured: unprimed detectors sit
/// after the splitter, primed ones before it. The first letter is Alice's.
enum class HardyConfiguration { DD, DDp, DpD, DpDp };

inline constexpr std::array<HardyConfiguration, 4> kHardyConfigurations{
    HardyConfiguration::DD, HardyConfiguration::DDp, HardyConfiguration::DpD,
    HardyConfiguration::DpDp};

inline const char* to_string(HardyConfiguration c) {
  switch (c) {
    case HardyConfiguration::DD: return "DD";
    case HardyConfiguration::DDp: return "DD'";
    case HardyConfiguration::DpD: return "D'D";
    case HardyConfiguration::DpDp: return "D'D'";
  }
  return "?";
}

inline bool alice_unprimed(HardyConfiguration c) {
  return c == HardyConfiguration::DD || c == HardyConfiguration::DDp;
}
inline bool bob_unprimed(HardyConfiguration c) {
  return c == HardyConfiguration::DD || c == HardyConfiguration::DpD;
}

/// Splitter probabilities and residual path phases of the interferometer.
/// The defaults are the reference solution: 50-50 source and central
/// splitters, detection splitters transmitting 1/3, no residual phases.
struct HardyParameters {
  double source_reflectivity = 0.5;
  double central_reflectivity = 0.5;
  double detection_transmission = 1.0 / 3.0;
  std::optional<double> alice_phase;  ///< solved when absent
  std::optional<double> bob_phase;

  bool is_reference() const {
    return source_reflectivity == 0.5 && central_reflectivity == 0.5 &&
           detection_transmission == 1.0 / 3.0 && alice_phase.value_or(0.0) == 0.0 &&
           bob_phase.value_or(0.0) == 0.0;
  }
};

struct HardyNetwork {
  HardyParameters parameters;
  double alice_phase = 0.0;
  double bob_phase = 0.0;
  std::array<TransferMatrix, 4> transfer;
  /// Exact counterpart, present for the reference solution only.
  std::optional<std::array<ExactTransferMatrix, 4>> exact;

  const TransferMatrix& operator[](HardyConfiguration c) const {
    return transfer[static_cast<std::size_t>(c)];
  }
};

namespace detail {

// Rails: c = outer arm of α, w = inner arm of α, x = inner arm of β,
// d = outer arm of β. After the central splitter rail x carries e (toward
// Alice) and rail w carries f (toward Bob).
inline const ModeId kRailC{0, "c"}, kRailW{1, "w"}, kRailX{2, "x"}, kRailD{3, "d"};

template <class Real>
BasicNetworkDescription<Real> hardy_description(HardyConfiguration config, const Real& source_r,
                                                const Real& source_t, const Real& central_r,
                                                const Real& central_t, const Real& detect_r,
                                                const Real& detect_t, double alice_phase,
                                                double bob_phase) {
  using Element = BasicOpticalElement<Real>;
  auto splitter = [](const Real& r, const Real& t, ModeId a, ModeId b) {
    return Element{ElementKind::beamsplitter, {std::move(a), std::move(b)}, r, t, 0.0};
  };
  auto shifter = [](double phase, ModeId a) {
    return Element{ElementKind::phase_shifter, {std::move(a)}, Real{0}, Real{1}, phase};
  };
  BasicNetworkDescription<Real> net;
  net.sources = {kRailW, kRailX};
  net.elements.push_back(splitter(source_r, source_t, kRailW, kRailC));
  net.elements.push_back(splitter(source_r, source_t, kRailX, kRailD));
  net.elements.push_back(splitter(central_r, central_t, kRailX, kRailW));
  if (alice_unprimed(config)) {
    if (alice_phase != 0.0) net.elements.push_back(shifter(alice_phase, kRailX));
    net.elements.push_back(splitter(detect_r, detect_t, kRailX, kRailC));
  }
  if (bob_unprimed(config)) {
    if (bob_phase != 0.0) net.elements.push_back(shifter(bob_phase, kRailW));
    net.elements.push_back(splitter(detect_r, detect_t, kRailW, kRailD));
  }
  // D1/D1' = c, D2/D2' = x, D3/D3' = w, D4/D4' = d
  net.detectors = {kRailC, kRailX, kRailW, kRailD};
  return net;
}

template <class S>
BasicTransferMatrix<S> relabel_hardy(const BasicTransferMatrix<S>& u, HardyConfiguration config) {
  const std::string a = alice_unprimed(config) ? "" : "'";
  const std::string b = bob_unprimed(config) ? "" : "'";
  return {u.rows(), u.cols(), u.entries(), {"D1" + a, "D2" + a, "D3" + b, "D4" + b},
          {"alpha", "beta"}};
}

}  // namespace detail

/// Zero-tolerance for the destructive-interference constraints and anchors.
inline constexpr double kHardyZeroTolerance = 1e-14;

/// Builds the four measurement configurations. Residual path phases not
/// given in `params` are solved so that α never reaches D2 and β never
/// reaches D3; any constraint that cannot be met aborts with its name.
inline HardyNetwork build_hardy_network(const HardyParameters& params = {}) {
  auto check_prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError(std::string(name) + " must be a probability in [0, 1]");
  };
  check_prob(params.source_reflectivity, "source reflectivity");
  check_prob(params.central_reflectivity, "central reflectivity");
  check_prob(params.detection_transmission, "detection transmission");

  const double sr = std::sqrt(params.source_reflectivity), st = std::sqrt(1.0 - params.source_reflectivity);
  const double cr = std::sqrt(params.central_reflectivity), ct = std::sqrt(1.0 - params.central_reflectivity);
  const double dt = std::sqrt(params.detection_transmission), dr = std::sqrt(1.0 - params.detection_transmission);

  auto build = [&](HardyConfiguration c, double pa, double pb) {
    return detail::relabel_hardy(
        compose_network(detail::hardy_description<double>(c, sr, st, cr, ct, dr, dt, pa, pb)), c);
  };

  HardyNetwork net;
  net.parameters = params;
  if (params.is_reference()) {
    net.alice_phase = net.bob_phase = 0.0;
  } else {
    // One-dimensional solve per constraint: the phase on the inner arm that
    // minimizes the leaking amplitude.
    auto solve = [&](bool alice) {
      auto leak = [&](double phase) {
        const auto u = build(HardyConfiguration::DD, alice ? phase : 0.0, alice ? 0.0 : phase);
        return -std::norm(alice ? u(1, 0) : u(2, 1));
      };
      const auto coarse = grid_then_golden_max(leak, -std::numbers::pi, std::numbers::pi, 720, 1e-13);
      return coarse.x;
    };
    net.alice_phase = params.alice_phase ? *params.alice_phase : solve(true);
    net.bob_phase = params.bob_phase ? *params.bob_phase : solve(false);
  }

  for (auto c : kHardyConfigurations)
    net.transfer[static_cast<std::size_t>(c)] = build(c, net.alice_phase, net.bob_phase);

  const auto& dd = net[HardyConfiguration::DD];
  if (std::abs(dd(1, 0)) > 1e-12)
    throw ConstructionError("constraint violated: source alpha reaches D2 (|u| = " +
                            std::to_string(std::abs(dd(1, 0))) + ")");
  if (std::abs(dd(2, 1)) > 1e-12)
    throw ConstructionError("constraint violated: source beta reaches D3 (|u| = " +
                            std::to_string(std::abs(dd(2, 1))) + ")");

  if (params.is_reference()) {
    const Surd half_root2{0, Rational(1, 2), 0, 0};       // 1/√2
    const Surd inv_root3{0, 0, Rational(1, 3), 0};        // 1/√3
    const Surd root_two_thirds{0, 0, 0, Rational(1, 3)};  // √(2/3)
    std::array<ExactTransferMatrix, 4> exact;
    for (auto c : kHardyConfigurations) {
      auto desc = detail::hardy_description<Surd>(c, half_root2, half_root2, half_root2, half_root2,
                                                  root_two_thirds, inv_root3, 0.0, 0.0);
      auto u = compose_network(desc);
      if (!check_isometry_exact(u))
        throw ConstructionError("constraint violated: exact configuration is not an isometry");
      exact[static_cast<std::size_t>(c)] = detail::relabel_hardy(u, c);
    }
    net.exact = std::move(exact);

    const auto& ex_dd = (*net.exact)[0];
    if (!ex_dd(1, 0).is_zero() || !ex_dd(2, 1).is_zero())
      throw ConstructionError("constraint violated: exact destructive-interference zeros");
    const Surd p = exact_probability(ex_dd, SourceSpec{{3, 3}}, Counts{0, 3, 3, 0});
    if (!(p == Surd{Rational(1, 216 * 216)}))
      throw ConstructionError("constraint violated: |C_DD(0,3;3,0)| != 1/216");
  }
  return net;
}

struct HardyAmplitudeTable {
  HardyConfiguration configuration = HardyConfiguration::DD;
  int n_particles = 0;
  std::vector<OccupationVector> outcomes;
  std::vector<Complex> amplitudes;

  Complex at(std::span<const int> m) const {
    OccupationVector key(m.begin(), m.end());
    auto it = std::lower_bound(outcomes.begin(), outcomes.end(), key);
    if (it == outcomes.end() || *it != key) throw ValidationError("outcome not in table");
    return amplitudes[static_cast<std::size_t>(it - outcomes.begin())];
  }
};

namespace detail {
inline SourceSpec hardy_sources(int n) {
  if (n < 0 || n % 2 != 0)
    throw ValidationError("Hardy interferometer needs an even N (N/2 per source), got " +
                          std::to_string(n));
  return SourceSpec{{n / 2, n / 2}};
}
}  // namespace detail

inline HardyAmplitudeTable hardy_amplitudes(const HardyNetwork& net, int n,
                                            HardyConfiguration config) {
  const SourceSpec s = detail::hardy_sources(n);
  HardyAmplitudeTable table{config, n, enumerate_outcomes(4, n), {}};
  table.amplitudes.reserve(table.outcomes.size());
  for (const auto& m : table.outcomes) table.amplitudes.push_back(amplitude(net[config], s, m));
  return table;
}

inline Complex hardy_amplitude(const HardyNetwork& net, int n, HardyConfiguration config,
                               std::span<const int> m) {
  return amplitude(net[config], detail::hardy_sources(n), m);
}

/// Exact |C_XY(m)|² in Q(√2, √3); reference network only.
inline Surd hardy_exact_probability(const HardyNetwork& net, int n, HardyConfiguration config,
                                    std::span<const int> m) {
  if (!net.exact) throw ValidationError("exact amplitudes exist only for the reference network");
  return exact_probability((*net.exact)[static_cast<std::size_t>(config)],
                           detail::hardy_sources(n), m);
}

struct ConditionalProbability {
  double value = 0.0;
  double mass = 0.0;
  bool degenerate = false;
};

struct CertaintyPair {
  /// P(Bob sees N/2 at D3' | Alice sees N/2 at D2), configuration DD'.
  ConditionalProbability bob_given_alice;
  /// P(Alice sees N/2 at D2' | Bob sees N/2 at D3), configuration D'D.
  ConditionalProbability alice_given_bob;
};

inline CertaintyPair certainty_check(const HardyNetwork& net, int n) {
  const SourceSpec s = detail::hardy_sources(n);
  const int h = n / 2;
  auto conditional = [&](HardyConfiguration config, bool fix_alice) {
    double mass = 0.0, hit = 0.0;
    for (int k = 0; k <= h; ++k) {
      const Counts m = fix_alice ? Counts{0, h, k, h - k} : Counts{k, h - k, h, 0};
      const double p = std::norm(amplitude(net[config], s, m));
      mass += p;
      if (k == (fix_alice ? h : 0)) hit = p;
    }
    if (!(mass > 0.0)) return ConditionalProbability{0.0, mass, true};
    return ConditionalProbability{hit / mass, mass, false};
  };
  return {conditional(HardyConfiguration::DDp, true), conditional(HardyConfiguration::DpD, false)};
}

inline constexpr double kCertaintyTolerance = 1e-10;
inline constexpr int kHardyExactLimit = 30;

struct HardyCertificate {
  int n_particles = 0;
  double nonzero_event_probability = 0.0;  ///< |C_DD(0,N/2;N/2,0)|²
  CertaintyPair certainties;
  double forbidden_event_amplitude = 0.0;  ///< |C_D'D'(0,N/2;N/2,0)|
  bool exact_mode = false;
  bool nonzero_event_exact = false;  ///< exact arithmetic says the event is possible
  bool forbidden_event_exact_zero = false;
  bool verdict = false;
  double zero_tolerance = kHardyZeroTolerance;
  double certainty_tolerance = kCertaintyTolerance;
};

/// Hardy's chain: D2 = N/2 and D3 = N/2 happens in DD; each certainty then
/// forces the primed result on the other side; local realism would make
/// D2' = D3' = N/2 possible in D'D', whose amplitude is zero. The verdict uses
/// exact arithmetic on the reference network for N ≤ 30.
inline HardyCertificate impossibility_certificate(const HardyNetwork& net, int n) {
  const SourceSpec s = detail::hardy_sources(n);
  const int h = n / 2;
  const Counts event{0, h, h, 0};
  HardyCertificate cert;
  cert.n_particles = n;
  cert.nonzero_event_probability = std::norm(amplitude(net[HardyConfiguration::DD], s, event));
  cert.forbidden_event_amplitude = std::abs(amplitude(net[HardyConfiguration::DpDp], s, event));
  cert.certainties = certainty_check(net, n);

  auto certain = [&](const ConditionalProbability& p) {
    return !p.degenerate && std::abs(p.value - 1.0) <= cert.certainty_tolerance;
  };
  bool possible = cert.nonzero_event_probability > cert.zero_tolerance * cert.zero_tolerance;
  bool forbidden = cert.forbidden_event_amplitude < cert.zero_tolerance;
  if (net.exact && n <= kHardyExactLimit) {
    cert.exact_mode = true;
    cert.nonzero_event_exact = !hardy_exact_probability(net, n, HardyConfiguration::DD, event).is_zero();
    cert.forbidden_event_exact_zero =
        hardy_exact_probability(net, n, HardyConfiguration::DpDp, event).is_zero();
    possible = cert.nonzero_event_exact;
    forbidden = cert.forbidden_event_exact_zero;
  }
  cert.verdict = possible && certain(cert.certainties.bob_given_alice) &&
                 certain(cert.certainties.alice_given_bob) && forbidden;
  return cert;
}

inline ViolationReport to_violation_report(const HardyCertificate& c) {
  return {ViolationKind::hardy,
          c.verdict,
          {{"n_particles", static_cast<double>(c.n_particles)},
           {"nonzero_event_probability", c.nonzero_event_probability},
           {"certainty_bob_given_alice", c.certainties.bob_given_alice.value},
           {"certainty_alice_given_bob", c.certainties.alice_given_bob.value},
           {"forbidden_event_amplitude", c.forbidden_event_amplitude}},
          {{"zero", c.zero_tolerance}, {"certainty", c.certainty_tolerance}}};
}

/// n particles on each input of a 50-50 splitter; output counts (k, 2n − k).
inline OutcomeDistribution central_bs_parity_distribution(int n) {
  if (n < 0) throw ValidationError("particle number must be non-negative");
  const double h = std::numbers::sqrt2 / 2.0;
  const TransferMatrix u(2, 2, {Complex{0.0, h}, Complex{h, 0.0}, Complex{h, 0.0}, Complex{0.0, h}},
                         {"left", "right"}, {"in1", "in2"});
  return distribution(u, SourceSpec{{n, n}});
}

}  // namespace fockbell
