#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fockbell/combinatorics.hpp"
#include "fockbell/errors.hpp"
#include "fockbell/optics.hpp"

namespace fockbell {

/// Fock populations N_γ, one per transfer-matrix source column.
struct SourceSpec {
  Counts populations;

  int total() const { return fockbell::total(populations); }
};

using OccupationVector = Counts;

enum class AmplitudeMethod {
  polynomial,   ///< coefficient of Π_γ x_γ^{N_γ} in Π_i (Σ_γ u_iγ x_γ)^{m_i}
  contingency,  ///< explicit sum over tables p_iγ with fixed row/column sums
};

namespace detail {

inline void check_shapes(std::size_t rows, std::size_t cols, const SourceSpec& s,
                         std::span<const int> m) {
  if (s.populations.size() != cols)
    throw ValidationError("source populations do not match transfer-matrix columns");
  if (m.size() != rows)
    throw ValidationError("occupation vector does not match transfer-matrix rows");
  for (int n : s.populations)
    if (n < 0) throw ValidationError("negative source population");
  for (int k : m)
    if (k < 0) throw ValidationError("negative detector count");
}

inline double log_prefactor(const SourceSpec& s, std::span<const int> m) {
  double lp = 0.0;
  for (int n : s.populations) lp += log_factorial(n);
  for (int k : m) lp -= log_factorial(k);
  return 0.5 * lp;
}

}  // namespace detail

/// Coefficient of Π_γ x_γ^{N_γ} in Π_i (Σ_γ u_iγ x_γ)^{m_i}, computed by
/// multiplying out the linear forms one particle at a time on a dense
/// exponent grid truncated at the source populations.
template <class S>
S polynomial_coefficient(const BasicTransferMatrix<S>& u, const SourceSpec& s,
                         std::span<const int> m) {
  detail::check_shapes(u.rows(), u.cols(), s, m);
  const std::size_t g_count = u.cols();
  std::vector<std::size_t> stride(g_count, 1);
  std::size_t size = 1;
  for (std::size_t g = 0; g < g_count; ++g) {
    stride[g] = size;
    size *= static_cast<std::size_t>(s.populations[g] + 1);
  }
  std::vector<S> poly(size, S{}), next(size, S{});
  poly[0] = S{1};
  std::vector<int> exponent(g_count, 0);

  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (int step = 0; step < m[i]; ++step) {
      std::fill(next.begin(), next.end(), S{});
      std::fill(exponent.begin(), exponent.end(), 0);
      for (std::size_t idx = 0; idx < size; ++idx) {
        if (!ScalarTraits<S>::is_zero(poly[idx])) {
          for (std::size_t g = 0; g < g_count; ++g)
            if (exponent[g] < s.populations[g]) next[idx + stride[g]] += u(i, g) * poly[idx];
        }
        for (std::size_t g = 0; g < g_count; ++g) {  // odometer increment
          if (++exponent[g] <= s.populations[g]) break;
          exponent[g] = 0;
        }
      }
      std::swap(poly, next);
    }
  }
  return poly[size - 1];
}

/// The same quantity as polynomial_coefficient, as an explicit sum over
/// contingency tables: Σ_p Π_i (m_i! / Π_γ p_iγ!) Π_{i,γ} u_iγ^{p_iγ}.
inline Complex contingency_coefficient(const TransferMatrix& u, const SourceSpec& s,
                                       std::span<const int> m) {
  detail::check_shapes(u.rows(), u.cols(), s, m);
  const std::size_t cols = u.cols();
  Complex sum{};
  for_each_contingency_table(m, s.populations, [&](const std::vector<int>& table) {
    double log_weight = 0.0;
    Complex term{1.0, 0.0};
    for (std::size_t i = 0; i < u.rows(); ++i) {
      log_weight += log_factorial(m[i]);
      for (std::size_t g = 0; g < cols; ++g) {
        const int p = table[i * cols + g];
        log_weight -= log_factorial(p);
        if (p > 0) term *= std::pow(u(i, g), p);
      }
    }
    sum += std::exp(log_weight) * term;
  });
  return sum;
}

/// Probability amplitude ⟨m_1 … m_D | Π_γ (a_γ†)^{N_γ}/√N_γ! |0⟩.
inline Complex amplitude(const TransferMatrix& u, const SourceSpec& s, std::span<const int> m,
                         AmplitudeMethod method = AmplitudeMethod::polynomial) {
  detail::check_shapes(u.rows(), u.cols(), s, m);
  if (total(m) != s.total())
    throw std::domain_error("amplitude: detected count " + std::to_string(total(m)) +
                            " differs from source total " + std::to_string(s.total()));
  const Complex coeff = method == AmplitudeMethod::polynomial ? polynomial_coefficient(u, s, m)
                                                              : contingency_coefficient(u, s, m);
  return std::exp(detail::log_prefactor(s, m)) * coeff;
}

/// Exact |amplitude|² over Q(√2, √3): (Π N_γ! / Π m_i!) · |coefficient|².
inline Surd exact_probability(const ExactTransferMatrix& u, const SourceSpec& s,
                              std::span<const int> m) {
  detail::check_shapes(u.rows(), u.cols(), s, m);
  if (total(m) != s.total()) throw std::domain_error("exact_probability: particle-number mismatch");
  const ExactComplex coeff = polynomial_coefficient(u, s, m);
  Rational ratio = 1;
  for (int n : s.populations) ratio *= Rational(factorial_exact(n));
  for (int k : m) ratio /= Rational(factorial_exact(k));
  return Surd{ratio} * coeff.norm();
}

/// Exact amplitude up to the positive factor √(Π N_γ! / Π m_i!), which is
/// returned separately as its square.
struct ExactAmplitude {
  ExactComplex coefficient;
  Rational prefactor_squared;
};

inline ExactAmplitude exact_amplitude(const ExactTransferMatrix& u, const SourceSpec& s,
                                      std::span<const int> m) {
  detail::check_shapes(u.rows(), u.cols(), s, m);
  if (total(m) != s.total()) throw std::domain_error("exact_amplitude: particle-number mismatch");
  Rational ratio = 1;
  for (int n : s.populations) ratio *= Rational(factorial_exact(n));
  for (int k : m) ratio /= Rational(factorial_exact(k));
  return {polynomial_coefficient(u, s, m), ratio};
}

inline std::vector<OccupationVector> enumerate_outcomes(int detectors, int n) {
  if (detectors < 1) throw ValidationError("enumerate_outcomes: need at least one detector");
  if (n < 0) throw ValidationError("enumerate_outcomes: negative particle number");
  return enumerate_compositions(detectors, n);
}

/// Probabilities over every occupation vector with Σ m_i = N, in
/// lexicographic order of the vectors.
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  OutcomeDistribution(int total_particles, std::vector<OccupationVector> outcomes,
                      std::vector<double> probabilities)
      : total_(total_particles), outcomes_(std::move(outcomes)), probs_(std::move(probabilities)) {
    if (outcomes_.size() != probs_.size())
      throw ValidationError("distribution: outcome and probability counts differ");
    for (const auto& m : outcomes_)
      if (total(m) != total_) throw ValidationError("distribution: outcome with wrong total");
    if (!std::is_sorted(outcomes_.begin(), outcomes_.end()))
      throw ValidationError("distribution: outcomes must be in lexicographic order");
  }

  int total_particles() const { return total_; }
  std::size_t detectors() const { return outcomes_.empty() ? 0 : outcomes_.front().size(); }
  std::size_t size() const { return outcomes_.size(); }
  const std::vector<OccupationVector>& outcomes() const { return outcomes_; }
  const std::vector<double>& probabilities() const { return probs_; }

  /// Zero for vectors outside the support.
  double probability(std::span<const int> m) const {
    OccupationVector key(m.begin(), m.end());
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), key);
    if (it == outcomes_.end() || *it != key) return 0.0;
    return probs_[static_cast<std::size_t>(it - outcomes_.begin())];
  }

  double total_probability() const {
    double sum = 0.0;
    for (double p : probs_) sum += p;
    return sum;
  }

 private:
  int total_ = 0;
  std::vector<OccupationVector> outcomes_;
  std::vector<double> probs_;
};

inline OutcomeDistribution distribution(const TransferMatrix& u, const SourceSpec& s,
                                        AmplitudeMethod method = AmplitudeMethod::polynomial) {
  detail::check_shapes(u.rows(), u.cols(), s, Counts(u.rows(), 0));
  auto outcomes = enumerate_outcomes(static_cast<int>(u.rows()), s.total());
  std::vector<double> probs;
  probs.reserve(outcomes.size());
  for (const auto& m : outcomes) probs.push_back(std::norm(amplitude(u, s, m, method)));
  return {s.total(), std::move(outcomes), std::move(probs)};
}

/// Per-detector parity values η_i = ±1 and station ownership.
struct ParityAssignment {
  std::vector<int> eta;
  std::vector<int> station;

  int station_count() const {
    return station.empty() ? 0 : *std::max_element(station.begin(), station.end()) + 1;
  }

  void validate(std::size_t detectors) const {
    if (eta.size() != detectors || station.size() != detectors)
      throw ValidationError("parity assignment must cover every detector");
    for (int e : eta)
      if (e != 1 && e != -1) throw ValidationError("parity values must be +1 or -1");
    const int n = station_count();
    for (int st : station)
      if (st < 0) throw ValidationError("station indices must be non-negative");
    for (int st = 0; st < n; ++st)
      if (std::find(station.begin(), station.end(), st) == station.end())
        throw ValidationError("station " + std::to_string(st) + " owns no detector");
  }
};

/// Stations A = (D1, D2), B = (D3, D4); odd outputs 2 and 4 count -1.
inline ParityAssignment two_station_parity() { return {{1, -1, 1, -1}, {0, 0, 1, 1}}; }

inline ParityAssignment three_station_parity() {
  return {{1, -1, 1, -1, 1, -1}, {0, 0, 1, 1, 2, 2}};
}

/// Keep only outcomes in which station k detects exactly counts[k] particles.
struct StationCondition {
  std::vector<int> counts;
};

struct ParityExpectation {
  double value = 0.0;
  double mass = 0.0;  ///< probability of the conditioning event
  bool degenerate = false;
};

inline ParityExpectation parity_expectation(const OutcomeDistribution& dist,
                                            const ParityAssignment& pa,
                                            const std::optional<StationCondition>& condition = {}) {
  pa.validate(dist.detectors() == 0 ? pa.eta.size() : dist.detectors());
  const int stations = pa.station_count();
  if (condition && condition->counts.size() != static_cast<std::size_t>(stations))
    throw ValidationError("condition must give one count per station");

  double num = 0.0, den = 0.0;
  std::vector<int> per_station(stations);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const auto& m = dist.outcomes()[k];
    if (condition) {
      std::fill(per_station.begin(), per_station.end(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) per_station[pa.station[i]] += m[i];
      if (per_station != condition->counts) continue;
    }
    int sign = 1;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (pa.eta[i] < 0 && (m[i] & 1)) sign = -sign;
    num += sign * dist.probabilities()[k];
    den += dist.probabilities()[k];
  }
  if (!(den > 0.0)) return {0.0, den, true};
  return {num / den, den, false};
}

/// i.i.d. draws from the distribution; identical for identical seeds.
inline std::vector<OccupationVector> sample_outcomes(const OutcomeDistribution& dist,
                                                     std::size_t n_samples, std::uint64_t seed) {
  std::vector<OccupationVector> out;
  if (n_samples == 0 || dist.size() == 0) return out;
  std::mt19937_64 rng(seed);
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (double p : dist.probabilities()) weights.push_back(std::max(p, 0.0));
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  out.reserve(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) out.push_back(dist.outcomes()[pick(rng)]);
  return out;
}

}  // namespace fockbell
