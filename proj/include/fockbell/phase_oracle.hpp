#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fockbell/combinatorics.hpp"
#include "fockbell/errors.hpp"
#include "fockbell/fock.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/optimize.hpp"

// Phase-integral representation of the two-condensate interferometer.
// Detector i carries a local factor cos Λ + η_i cos(λ − φ_i) with
// η = (+1, −1, +1, −1) and φ = (−ζ, −ζ, θ, θ); the populations enter only
// through the weight cos((N_α − N_β) Λ). Both integrands are trigonometric
// polynomials, so the uniform periodic trapezoid is exact once the node count
// exceeds their degree.

namespace fockbell {

/// Uniform periodic trapezoid over (−π, π] in each of the two phase variables.
struct QuadratureGrid {
  int n_lambda = 0;  ///< nodes for the relative phase λ
  int n_Lambda = 0;  ///< nodes for the conjugate variable Λ

  static QuadratureGrid for_particles(int n) { return {4 * n + 4, 4 * n + 4}; }

  void validate() const {
    if (n_lambda < 1 || n_Lambda < 1) throw ValidationError("quadrature grid needs at least one node");
  }

  static std::vector<double> nodes(int n) {
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[k] = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 1) / n;
    return x;
  }
  static std::vector<double> weights(int n) {
    return std::vector<double>(n, 2.0 * std::numbers::pi / n);
  }
};

/// Default threshold on |Σ explicit-prefactor probabilities − 1|.
inline constexpr double kNormalizationDriftTolerance = 1e-10;

struct ModelComparison {
  OccupationVector outcome;
  double p_quantum = 0.0;
  double p_classical = 0.0;
  double divergence = 0.0;  ///< p_quantum − p_classical
};

struct ComparisonReport {
  std::vector<ModelComparison> rows;
  double total_variation = 0.0;
};

struct QuadratureDistribution {
  OutcomeDistribution distribution;
  double normalization_drift = 0.0;
};

namespace detail {

inline constexpr std::array<int, 4> kEta{1, -1, 1, -1};

inline std::array<double, 4> station_phases(const AngleSettings& a) {
  return {-a.zeta, -a.zeta, a.theta, a.theta};
}

inline void check_two_sources(const SourceSpec& s) {
  if (s.populations.size() != 2)
    throw ValidationError("phase-integral oracle needs exactly two sources");
  if (s.populations[0] < 0 || s.populations[1] < 0)
    throw ValidationError("negative source population");
}

inline double ipow(double x, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= x;
  return r;
}

inline double log_multinomial_denominator(std::span<const int> m) {
  double s = 0.0;
  for (int k : m) s += log_factorial(k);
  return s;
}

/// (1/4π²) ∫dΛ ∫dλ cos(ΔN Λ) cos^{unmeasured} Λ Π_i [cos Λ + η_i cos(λ − φ_i)]^{m_i}
/// evaluated for a batch of outcomes sharing the same node tables.
class PhaseIntegrand {
 public:
  PhaseIntegrand(const SourceSpec& s, const AngleSettings& angles, const QuadratureGrid& grid,
                 int unmeasured)
      : delta_(s.populations[0] - s.populations[1]),
        unmeasured_(unmeasured),
        Lambda_(QuadratureGrid::nodes(grid.n_Lambda)),
        lambda_(QuadratureGrid::nodes(grid.n_lambda)) {
    grid.validate();
    const auto phi = station_phases(angles);
    local_cos_.resize(lambda_.size());
    for (std::size_t l = 0; l < lambda_.size(); ++l)
      for (int i = 0; i < 4; ++i) local_cos_[l][i] = kEta[i] * std::cos(lambda_[l] - phi[i]);
  }

  double operator()(std::span<const int> m) const {
    double outer = 0.0;
    for (double L : Lambda_) {
      const double cL = std::cos(L);
      const double weight = std::cos(delta_ * L) * ipow(cL, unmeasured_);
      if (weight == 0.0) continue;
      double inner = 0.0;
      for (const auto& lc : local_cos_) {
        double prod = 1.0;
        for (int i = 0; i < 4; ++i) prod *= ipow(cL + lc[i], m[i]);
        inner += prod;
      }
      outer += weight * inner / static_cast<double>(local_cos_.size());
    }
    return outer / static_cast<double>(Lambda_.size());
  }

 private:
  int delta_;
  int unmeasured_;
  std::vector<double> Lambda_;
  std::vector<double> lambda_;
  std::vector<std::array<double, 4>> local_cos_;
};

}  // namespace detail

/// Full outcome distribution from the phase integral, normalized over all
/// outcomes. The drift compares the explicit prefactor N_α!N_β!/(Π m_i! 2^N)
/// against that normalization.
inline QuadratureDistribution quadrature_distribution(const SourceSpec& s,
                                                      const AngleSettings& angles,
                                                      const QuadratureGrid& grid) {
  detail::check_two_sources(s);
  const int n = s.total();
  const detail::PhaseIntegrand integrand(s, angles, grid, 0);
  auto outcomes = enumerate_outcomes(4, n);
  std::vector<double> weights;
  weights.reserve(outcomes.size());
  double z = 0.0;
  for (const auto& m : outcomes) {
    weights.push_back(integrand(m) * std::exp(-detail::log_multinomial_denominator(m)));
    z += weights.back();
  }
  const double explicit_prefactor = std::exp(log_factorial(s.populations[0]) +
                                             log_factorial(s.populations[1]) -
                                             n * std::numbers::ln2);
  const double drift = std::abs(z * explicit_prefactor - 1.0);
  if (!(z > 0.0)) throw ConstructionError("phase integral has no mass; grid too coarse");
  for (double& w : weights) w /= z;
  return {OutcomeDistribution(n, std::move(outcomes), std::move(weights)), drift};
}

/// P(m) from the phase integral. Throws when the grid is too coarse for the
/// normalization to hold within `drift_tol`.
inline double probability_quadrature(const SourceSpec& s, const AngleSettings& angles,
                                     std::span<const int> m, const QuadratureGrid& grid,
                                     double drift_tol = kNormalizationDriftTolerance) {
  detail::check_two_sources(s);
  if (m.size() != 4) throw ValidationError("outcome must have four detector counts");
  if (total(m) != s.total()) throw std::domain_error("probability_quadrature: particle-number mismatch");
  const auto qd = quadrature_distribution(s, angles, grid);
  if (qd.normalization_drift > drift_tol)
    throw ValidationError("quadrature grid too coarse: normalization drift " +
                          std::to_string(qd.normalization_drift));
  return qd.distribution.probability(m);
}

/// Pre-existing random relative phase: each particle independently reaches
/// detector i with probability ¼[1 + v η_i cos(λ − φ_i)], v = 2√(N_α N_β)/N,
/// averaged over λ.
inline OutcomeDistribution classical_distribution(const SourceSpec& s, const AngleSettings& angles,
                                                  const QuadratureGrid& grid) {
  detail::check_two_sources(s);
  grid.validate();
  const int n = s.total();
  const double visibility =
      n == 0 ? 0.0
             : 2.0 * std::sqrt(static_cast<double>(s.populations[0]) * s.populations[1]) / n;
  const auto phi = detail::station_phases(angles);
  const auto lambda = QuadratureGrid::nodes(grid.n_lambda);
  std::vector<std::array<double, 4>> local(lambda.size());
  for (std::size_t l = 0; l < lambda.size(); ++l)
    for (int i = 0; i < 4; ++i)
      local[l][i] = 0.25 * (1.0 + visibility * detail::kEta[i] * std::cos(lambda[l] - phi[i]));

  auto outcomes = enumerate_outcomes(4, n);
  std::vector<double> probs;
  probs.reserve(outcomes.size());
  double z = 0.0;
  for (const auto& m : outcomes) {
    const double multinomial = std::exp(log_factorial(n) - detail::log_multinomial_denominator(m));
    double avg = 0.0;
    for (const auto& p : local) {
      double prod = 1.0;
      for (int i = 0; i < 4; ++i) prod *= detail::ipow(p[i], m[i]);
      avg += prod;
    }
    probs.push_back(multinomial * avg / static_cast<double>(local.size()));
    z += probs.back();
  }
  for (double& p : probs) p /= z;
  return {n, std::move(outcomes), std::move(probs)};
}

inline double classical_phase_probability(const SourceSpec& s, const AngleSettings& angles,
                                          std::span<const int> m, const QuadratureGrid& grid) {
  if (m.size() != 4) throw ValidationError("outcome must have four detector counts");
  if (total(m) != s.total())
    throw std::domain_error("classical_phase_probability: particle-number mismatch");
  return classical_distribution(s, angles, grid).probability(m);
}

/// Parity correlation ⟨AB⟩ when only `measured` of the N particles are
/// detected: the unobserved particles contribute a factor cos Λ each.
inline double correlation_partial(const SourceSpec& s, int measured, const AngleSettings& angles,
                                  const QuadratureGrid& grid) {
  detail::check_two_sources(s);
  const int n = s.total();
  if (measured < 0 || measured > n) throw ValidationError("measured count must lie in [0, N]");
  const detail::PhaseIntegrand integrand(s, angles, grid, n - measured);
  double num = 0.0, den = 0.0;
  for_each_composition(4, measured, [&](const Counts& m) {
    const double w = integrand(m) * std::exp(-detail::log_multinomial_denominator(m));
    den += w;
    num += ((m[1] + m[3]) & 1) ? -w : w;
  });
  if (!(std::abs(den) > 0.0)) throw ConstructionError("partial correlation has no mass");
  return num / den;
}

struct ChshOptimum {
  double q_max = 0.0;
  double zeta = 0.0, zeta_prime = 0.0, theta = 0.0, theta_prime = 0.0;
};

/// Maximizes |E(ζ,θ) + E(ζ,θ′) + E(ζ′,θ) − E(ζ′,θ′)| over all four shifter
/// angles with the partial-measurement correlation. Coarse grid start, then
/// Nelder-Mead from the best few grid points.
inline ChshOptimum maximize_chsh_partial(const SourceSpec& s, int measured,
                                         const QuadratureGrid& grid, int coarse = 6,
                                         int restarts = 6) {
  auto q = [&](const std::vector<double>& x) {
    auto e = [&](double z, double t) { return correlation_partial(s, measured, {z, t, {}}, grid); };
    return std::abs(e(x[0], x[2]) + e(x[0], x[3]) + e(x[1], x[2]) - e(x[1], x[3]));
  };
  std::vector<std::pair<double, std::vector<double>>> starts;
  const double h = 2.0 * std::numbers::pi / coarse;
  for (int a = 0; a < coarse; ++a)
    for (int b = 0; b < coarse; ++b)
      for (int c = 0; c < coarse; ++c)
        for (int d = 0; d < coarse; ++d) {
          std::vector<double> x{a * h, b * h, c * h, d * h};
          starts.emplace_back(q(x), std::move(x));
        }
  std::sort(starts.begin(), starts.end(),
            [](const auto& l, const auto& r) { return l.first > r.first; });
  ChshOptimum best;
  best.q_max = -1.0;
  for (int k = 0; k < std::min<int>(restarts, static_cast<int>(starts.size())); ++k) {
    const auto opt = nelder_mead_max(q, starts[k].second, h / 2.0);
    if (opt.value > best.q_max)
      best = {opt.value, opt.x[0], opt.x[1], opt.x[2], opt.x[3]};
  }
  return best;
}

inline ComparisonReport compare_models(const SourceSpec& s, const AngleSettings& angles,
                                       const QuadratureGrid& grid) {
  const auto quantum = quadrature_distribution(s, angles, grid).distribution;
  const auto classical = classical_distribution(s, angles, grid);
  ComparisonReport report;
  double l1 = 0.0;
  for (std::size_t k = 0; k < quantum.size(); ++k) {
    const double pq = quantum.probabilities()[k];
    const double pc = classical.probabilities()[k];
    report.rows.push_back({quantum.outcomes()[k], pq, pc, pq - pc});
    l1 += std::abs(pq - pc);
  }
  report.total_variation = 0.5 * l1;
  return report;
}

}  // namespace fockbell
