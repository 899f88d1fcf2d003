#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "fockbell/fock.hpp"
#include "fockbell/nonlocality.hpp"
#include "test_support.hpp"

using namespace fockbell;

namespace {

// Independent oracle: C_m = perm(U[rows repeated m_i, cols repeated N_g]) /
// sqrt(Π N_g! Π m_i!), with the permanent summed over all permutations.
Complex permanent_amplitude(const TransferMatrix& u, const SourceSpec& s, const Counts& m) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < m.size(); ++i) rows.insert(rows.end(), m[i], i);
  for (std::size_t g = 0; g < s.populations.size(); ++g)
    cols.insert(cols.end(), s.populations[g], g);
  std::vector<std::size_t> perm(cols.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  Complex sum{};
  do {
    Complex term{1.0, 0.0};
    for (std::size_t k = 0; k < perm.size(); ++k) term *= u(rows[k], cols[perm[k]]);
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = 1.0;
  for (int n : s.populations) norm *= std::tgamma(n + 1.0);
  for (int k : m) norm *= std::tgamma(k + 1.0);
  return sum / std::sqrt(norm);
}

double multinomial_quarter(const Counts& m) {
  const int n = total(m);
  double lp = log_factorial(n) - n * std::log(4.0);
  for (int k : m) lp -= log_factorial(k);
  return std::exp(lp);
}

}  // namespace

TEST(Amplitude, TwoParticleCoincidence) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const double z = test::random_angle(rng), t = test::random_angle(rng);
    const auto u = two_source_interferometer(z, t);
    const Counts m{0, 1, 0, 1};
    const double expected = 0.25 * std::pow(std::cos((z + t) / 2), 2);
    EXPECT_NEAR(std::norm(amplitude(u, {{1, 1}}, m)), expected, 1e-12);
    EXPECT_NEAR(distribution(u, {{1, 1}}).probability(m), expected, 1e-12);
  }
}

TEST(Amplitude, IdentityRoutingIsOne) {
  const TransferMatrix u(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const SourceSpec s{{2, 0, 3}};
  const Counts m{2, 0, 3};
  const Complex c = amplitude(u, s, m);
  EXPECT_NEAR(c.real(), 1.0, 1e-14);
  EXPECT_NEAR(c.imag(), 0.0, 1e-14);
}

TEST(Amplitude, StrategiesAgreeAtTwoPerSource) {
  std::mt19937_64 rng(5);
  const SourceSpec s{{2, 2}};
  for (int k = 0; k < 10; ++k) {
    const auto u = two_source_interferometer(test::random_angle(rng), test::random_angle(rng));
    for (const auto& m : enumerate_outcomes(4, 4)) {
      const Complex a = amplitude(u, s, m, AmplitudeMethod::polynomial);
      const Complex b = amplitude(u, s, m, AmplitudeMethod::contingency);
      EXPECT_LE(std::abs(a - b), 1e-12);
    }
  }
}

TEST(Amplitude, MatchesPermanentOracle) {
  std::mt19937_64 rng(99);
  for (const SourceSpec& s : {SourceSpec{{1, 2}}, SourceSpec{{2, 1, 1}}, SourceSpec{{3, 3}}}) {
    const auto u = test::random_isometry(4, s.populations.size(), rng);
    for (const auto& m : enumerate_outcomes(4, s.total())) {
      const Complex a = amplitude(u, s, m);
      const Complex b = permanent_amplitude(u, s, m);
      EXPECT_LE(std::abs(a - b), 1e-12) << "outcome " << m[0] << m[1] << m[2] << m[3];
    }
  }
}

TEST(Amplitude, ParticleNumberMismatchIsDomainError) {
  const auto u = two_source_interferometer(0.0, 0.0);
  const Counts m{1, 0, 0, 0};
  EXPECT_THROW(amplitude(u, {{1, 1}}, m), std::domain_error);
  EXPECT_THROW(amplitude(u, {{1, 1, 1}}, Counts{1, 1, 1, 0}), ValidationError);
}

TEST(Distribution, VacuumHasSingleOutcome) {
  const auto d = distribution(two_source_interferometer(0.2, 0.1), {{0, 0}});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.outcomes()[0], (Counts{0, 0, 0, 0}));
  EXPECT_NEAR(d.probabilities()[0], 1.0, 1e-15);
}

TEST(Distribution, SingleSourceIsMultinomialAndPhaseBlind) {
  for (int n = 1; n <= 5; ++n) {
    const auto d0 = distribution(two_source_interferometer(0.0, 0.3), {{n, 0}});
    const auto d1 = distribution(two_source_interferometer(2.1, -1.0), {{n, 0}});
    for (std::size_t k = 0; k < d0.size(); ++k) {
      EXPECT_NEAR(d0.probabilities()[k], multinomial_quarter(d0.outcomes()[k]), 1e-13);
      EXPECT_NEAR(d0.probabilities()[k], d1.probabilities()[k], 1e-13);
    }
  }
}

TEST(Outcomes, EnumerationExamples) {
  EXPECT_EQ(enumerate_outcomes(2, 2), (std::vector<Counts>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_EQ(enumerate_outcomes(4, 2).size(), 10u);
  EXPECT_EQ(enumerate_outcomes(6, 9).size(), 2002u);
}

TEST(Parity, ReproducesCosinePower) {
  std::mt19937_64 rng(8);
  for (int h = 1; h <= 4; ++h) {
    const double z = test::random_angle(rng), t = test::random_angle(rng);
    const auto d = distribution(two_source_interferometer(z, t), {{h, h}});
    const auto e = parity_expectation(d, two_station_parity());
    EXPECT_FALSE(e.degenerate);
    EXPECT_NEAR(e.value, std::pow(std::cos((z + t) / 2), 2 * h), 1e-10);
  }
}

TEST(Parity, UnequalPopulationsGiveZero) {
  const auto d = distribution(two_source_interferometer(0.7, 0.2), {{1, 3}});
  EXPECT_NEAR(parity_expectation(d, two_station_parity()).value, 0.0, 1e-12);
}

TEST(Parity, AllPlusAssignmentIsOne) {
  const auto d = distribution(two_source_interferometer(0.7, 0.2), {{2, 1}});
  const ParityAssignment plus{{1, 1, 1, 1}, {0, 0, 1, 1}};
  EXPECT_NEAR(parity_expectation(d, plus).value, 1.0, 1e-12);
}

TEST(Parity, EmptyConditionIsDegenerate) {
  const auto d = distribution(two_source_interferometer(0.7, 0.2), {{1, 1}});
  const auto e = parity_expectation(d, two_station_parity(), StationCondition{{3, 0}});
  EXPECT_TRUE(e.degenerate);
  EXPECT_EQ(e.mass, 0.0);
}

TEST(Parity, AssignmentValidation) {
  const auto d = distribution(two_source_interferometer(0.0, 0.0), {{1, 1}});
  EXPECT_THROW(parity_expectation(d, ParityAssignment{{1, 0, 1, -1}, {0, 0, 1, 1}}),
               ValidationError);
  EXPECT_THROW(parity_expectation(d, ParityAssignment{{1, -1, 1, -1}, {0, 0, 2, 2}}),
               ValidationError);
  EXPECT_THROW(parity_expectation(d, ParityAssignment{{1, -1}, {0, 1}}), ValidationError);
}

TEST(Sampling, ZeroDrawsIsEmpty) {
  const auto d = distribution(two_source_interferometer(0.0, 0.0), {{1, 1}});
  EXPECT_TRUE(sample_outcomes(d, 0, 1).empty());
}

TEST(Sampling, ForbiddenOutcomeNeverDrawn) {
  const auto d = distribution(two_source_interferometer(std::numbers::pi / 2, std::numbers::pi / 2),
                              {{1, 1}});
  EXPECT_LT(d.probability(Counts{0, 1, 0, 1}), 1e-30);
  for (const auto& m : sample_outcomes(d, 20000, 42)) EXPECT_NE(m, (Counts{0, 1, 0, 1}));
}

TEST(Sampling, DeterministicForSeed) {
  const auto d = distribution(two_source_interferometer(0.4, 0.9), {{2, 2}});
  EXPECT_EQ(sample_outcomes(d, 500, 17), sample_outcomes(d, 500, 17));
  EXPECT_NE(sample_outcomes(d, 500, 17), sample_outcomes(d, 500, 18));
}

TEST(Sampling, FrequenciesWithinThreeSigma) {
  const auto d = distribution(two_source_interferometer(0.4, 0.9), {{2, 2}});
  const std::size_t n = 100000;
  std::map<Counts, int> hist;
  for (const auto& m : sample_outcomes(d, n, 2024)) ++hist[m];
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double p = d.probabilities()[k];
    const double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_LE(std::abs(hist[d.outcomes()[k]] - n * p), 3 * sigma + 1e-9);
  }
}
