#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockbell/combinatorics.hpp"
#include "fockbell/exact.hpp"
#include "fockbell/fock.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/optimize.hpp"

namespace fockbell {

/// ⟨AB⟩ for the two-condensate interferometer: cos^N((ζ+θ)/2) when the
/// populations are equal, zero otherwise.
inline double correlation_closed_form(int n_alpha, int n_beta, double zeta, double theta) {
  if (n_alpha < 0 || n_beta < 0) throw ValidationError("populations must be non-negative");
  if (n_alpha != n_beta) return 0.0;
  return std::pow(std::cos(0.5 * (zeta + theta)), n_alpha + n_beta);
}

/// Above this particle number the Q(ξ) family is evaluated in its Gaussian
/// limit with ξ = x/√N (cos^N underflows long before the limit is reached).
inline constexpr long long kGaussianLimitThreshold = 10'000;

inline double bchsh_q_gaussian(double x) {
  return 3.0 * std::exp(-0.5 * x * x) - std::exp(-4.5 * x * x);
}

/// Q(ξ) = 3E(ξ) − E(3ξ) with E(ξ) = cos^N ξ. Odd N has no equal-population
/// split, so E vanishes identically.
inline double bchsh_q(long long n, double xi) {
  if (n < 1) throw ValidationError("bchsh_q: need at least one particle");
  if (n % 2 != 0) return 0.0;
  if (n > kGaussianLimitThreshold) return bchsh_q_gaussian(xi * std::sqrt(static_cast<double>(n)));
  const double p = static_cast<double>(n);
  return 3.0 * std::pow(std::cos(xi), p) - std::pow(std::cos(3.0 * xi), p);
}

struct BchshSettings {
  double phi_a = 0.0, phi_a_prime = 0.0, phi_b = 0.0, phi_b_prime = 0.0;
};

struct BchshOptimum {
  long long n_particles = 0;
  double xi_star = 0.0;
  double q_max = 0.0;
  BchshSettings settings;
  bool gaussian_limit = false;

  bool violation() const { return q_max > 2.0; }
};

inline constexpr int kBchshGridPoints = 10'000;
inline constexpr double kBchshXiTolerance = 1e-10;

/// Measurement angles realizing φa−φb = φb−φa′ = φb′−φa = ξ, φb′−φa′ = 3ξ,
/// anchored at φb = 0. Alice's shifter is ζ = 2φa, Bob's θ = −2φb.
inline BchshSettings bchsh_settings(double xi) { return {xi, -xi, 0.0, 2.0 * xi}; }

inline BchshOptimum maximize_bchsh(long long n) {
  if (n < 2) throw ValidationError("maximize_bchsh: need N >= 2");
  BchshOptimum out;
  out.n_particles = n;
  if (n > kGaussianLimitThreshold) {
    // Same search in the scaled variable x = ξ√N, over a range that holds
    // the whole non-trivial structure of the limit curve.
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const auto best = grid_then_golden_max([](double x) { return bchsh_q_gaussian(x); }, 0.0,
                                           6.0, kBchshGridPoints, kBchshXiTolerance * sqrt_n);
    out.xi_star = best.x / sqrt_n;
    out.q_max = best.value;
    out.gaussian_limit = true;
  } else {
    const auto best = grid_then_golden_max([n](double xi) { return bchsh_q(n, xi); }, 0.0,
                                           std::numbers::pi / 2.0, kBchshGridPoints,
                                           kBchshXiTolerance);
    out.xi_star = best.x;
    out.q_max = best.value;
  }
  out.settings = bchsh_settings(out.xi_star);
  return out;
}

// ---------------------------------------------------------------------------
// Three condensates, conditioned on N/3 particles at every station.

inline int ghz_per_source(int n) {
  if (n <= 0 || n % 3 != 0)
    throw std::domain_error("GHZ correlation needs N to be a positive multiple of 3, got " +
                            std::to_string(n));
  return n / 3;
}

/// ⟨ABC⟩(Σ) = Σ_h a_h cos(hΣ): one entry per harmonic h = N/3 − 2q ≥ 0.
struct GhzHarmonic {
  int harmonic = 0;
  double amplitude = 0.0;
};

/// Exact rational harmonic amplitudes from the cubed binomials; practical for
/// N/3 up to a few hundred, used by default up to N/3 = 60.
inline std::vector<std::pair<int, Rational>> ghz_harmonics_exact(int n) {
  const int k = ghz_per_source(n);
  std::vector<BigInt> cube(k + 1);
  BigInt norm = 0;
  for (int q = 0; q <= k; ++q) {
    const BigInt b = binomial_exact(k, q);
    cube[q] = b * b * b;
    norm += cube[q];
  }
  std::vector<std::pair<int, Rational>> out;
  for (int q = 0; 2 * q <= k; ++q) {
    const int h = k - 2 * q;
    const BigInt weight = h == 0 ? cube[q] : cube[q] + cube[k - q];
    out.emplace_back(h, Rational(weight, norm));
  }
  return out;
}

inline constexpr int kGhzExactLimit = 60;

namespace detail {

/// Normalized weights w_q = C(k,q)³ / Σ C(k,q')³, q = 0..k.
inline std::vector<double> ghz_weights(int k) {
  std::vector<double> w(k + 1);
  if (k <= kGhzExactLimit) {
    std::vector<BigInt> cube(k + 1);
    BigInt norm = 0;
    for (int q = 0; q <= k; ++q) {
      const BigInt b = binomial_exact(k, q);
      cube[q] = b * b * b;
      norm += cube[q];
    }
    for (int q = 0; q <= k; ++q) w[q] = Rational(cube[q], norm).convert_to<double>();
    return w;
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (int q = 0; q <= k; ++q) {
    w[q] = 3.0 * (log_factorial(k) - (log_factorial(q) + log_factorial(k - q)));
    peak = std::max(peak, w[q]);
  }
  double sum = 0.0;
  for (double& x : w) sum += (x = std::exp(x - peak));
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace detail

inline std::vector<GhzHarmonic> ghz_harmonics(int n) {
  const int k = ghz_per_source(n);
  const auto w = detail::ghz_weights(k);
  std::vector<GhzHarmonic> out;
  for (int q = 0; 2 * q <= k; ++q) {
    const int h = k - 2 * q;
    out.push_back({h, h == 0 ? w[q] : w[q] + w[k - q]});
  }
  return out;
}

inline constexpr double kGhzImaginaryTolerance = 1e-14;

inline double ghz_correlation_closed_form(int n, double sigma, double theta, double chi) {
  const int k = ghz_per_source(n);
  const double total_angle = sigma + theta + chi;
  const auto w = detail::ghz_weights(k);
  // Imaginary part accumulated pairwise, q against N/3 − q.
  double im = 0.0;
  for (int q = 0; 2 * q < k; ++q) {
    im += w[q] * std::sin(total_angle * (k - 2 * q)) +
          w[k - q] * std::sin(total_angle * (2 * q - k));
  }
  if (std::abs(im) >= kGhzImaginaryTolerance)
    throw std::logic_error("GHZ closed form: imaginary part did not cancel");
  // Real part from the paired harmonics, independent of summation order.
  double re = 0.0;
  for (const auto& [h, a] : ghz_harmonics(n)) re += a * std::cos(h * total_angle);
  return re;
}

/// Conditioned parity product from the full three-source distribution.
inline ParityExpectation ghz_correlation_exact(int n, double sigma, double theta, double chi) {
  const int k = ghz_per_source(n);
  const auto u = three_source_ring(sigma, theta, chi);
  const auto dist = distribution(u, SourceSpec{{k, k, k}});
  return parity_expectation(dist, three_station_parity(), StationCondition{{k, k, k}});
}

inline constexpr double kCertificateTolerance = 1e-9;

struct GhzEvidence {
  std::array<double, 3> angles{};
  double exact = 0.0;
  double closed_form = 0.0;
};

struct GhzReport {
  int n_particles = 0;
  std::vector<GhzHarmonic> correlation_coefficients;
  bool contradiction = false;
  std::array<GhzEvidence, 4> evidence{};
  double tolerance = kCertificateTolerance;
};

/// Local realism needs A(π/2)B(π/2)C(0) = A(π/2)B(0)C(π/2) = A(0)B(π/2)C(π/2) = −1
/// to force A(0)B(0)C(0) = −1; the certificate holds when the quantum values are
/// (−1, −1, −1, +1).
inline GhzReport ghz_contradiction_certificate(int n, double tol = kCertificateTolerance) {
  ghz_per_source(n);
  const double h = std::numbers::pi / 2.0;
  const std::array<std::array<double, 3>, 4> triples{{{h, h, 0.0}, {h, 0.0, h}, {0.0, h, h},
                                                      {0.0, 0.0, 0.0}}};
  GhzReport report;
  report.n_particles = n;
  report.correlation_coefficients = ghz_harmonics(n);
  report.tolerance = tol;
  bool ok = true;
  for (std::size_t j = 0; j < 4; ++j) {
    const auto& a = triples[j];
    const auto exact = ghz_correlation_exact(n, a[0], a[1], a[2]);
    const double closed = ghz_correlation_closed_form(n, a[0], a[1], a[2]);
    report.evidence[j] = {a, exact.degenerate ? std::nan("") : exact.value, closed};
    const double expected = j < 3 ? -1.0 : 1.0;
    ok = ok && !exact.degenerate && std::abs(exact.value - expected) <= tol &&
         std::abs(closed - expected) <= tol;
  }
  report.contradiction = ok;
  return report;
}

// ---------------------------------------------------------------------------

enum class ViolationKind { bchsh, ghz, hardy };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::bchsh: return "bchsh";
    case ViolationKind::ghz: return "ghz";
    case ViolationKind::hardy: return "hardy";
  }
  return "?";
}

/// Uniform verdict record shared by the three certificate kinds.
struct ViolationReport {
  ViolationKind kind = ViolationKind::bchsh;
  bool verdict = false;
  std::map<std::string, double> evidence;
  std::map<std::string, double> tolerances;
};

inline ViolationReport to_violation_report(const BchshOptimum& opt) {
  return {ViolationKind::bchsh,
          opt.violation(),
          {{"n_particles", static_cast<double>(opt.n_particles)},
           {"xi_star", opt.xi_star},
           {"q_max", opt.q_max}},
          {{"local_bound", 2.0}, {"xi_tolerance", kBchshXiTolerance}}};
}

inline ViolationReport to_violation_report(const GhzReport& r) {
  ViolationReport v{ViolationKind::ghz, r.contradiction, {}, {{"equals_pm1", r.tolerance}}};
  v.evidence["n_particles"] = r.n_particles;
  static const char* names[] = {"ABC(pi/2,pi/2,0)", "ABC(pi/2,0,pi/2)", "ABC(0,pi/2,pi/2)",
                                "ABC(0,0,0)"};
  for (std::size_t j = 0; j < 4; ++j) v.evidence[names[j]] = r.evidence[j].exact;
  return v;
}

}  // namespace fockbell
