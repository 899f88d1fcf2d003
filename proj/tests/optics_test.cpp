#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "fockbell/fock.hpp"
#include "fockbell/optics.hpp"
#include "test_support.hpp"

using namespace fockbell;

namespace {
const double kH = std::numbers::sqrt2 / 2.0;
const Complex kI{0.0, 1.0};

void expect_close(Complex a, Complex b, double tol = 1e-14) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}
}  // namespace

TEST(Beamsplitter, RejectsNonUnitaryCoefficients) {
  EXPECT_THROW(beamsplitter_element(0.5, 0.5, 0.0, {0, "a"}, {1, "b"}), ValidationError);
  EXPECT_THROW(beamsplitter_element(kH, kH, 0.0, {0, "a"}, {0, "a"}), ValidationError);
  EXPECT_NO_THROW(beamsplitter_element(std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0), 0.0, {0, "a"},
                                       {1, "b"}));
}

TEST(Beamsplitter, ReflectionCarriesFactorI) {
  const auto e = beamsplitter_element(kH, kH, 0.3, {0, "a"}, {1, "b"});
  expect_close(e.reflection_amplitude(), kI * kH * std::polar(1.0, 0.3));
}

TEST(Beamsplitter, SingleFiftyFiftyColumn) {
  const ModeId a{0, "a"}, b{1, "b"};
  const NetworkDescription net{{beamsplitter_element(kH, kH, 0.0, a, b)}, {a}, {a, b}};
  const auto u = compose_network(net);
  expect_close(u(0, 0), kI * kH);
  expect_close(u(1, 0), kH);
}

TEST(Beamsplitter, FullTransmissionIsIdentityRouting) {
  const ModeId a{0, "a"}, b{1, "b"};
  const NetworkDescription net{{beamsplitter_element(0.0, 1.0, 0.0, a, b)}, {a, b}, {b, a}};
  const auto u = compose_network(net);
  expect_close(u(0, 0), 1.0);
  expect_close(u(0, 1), 0.0);
  expect_close(u(1, 1), 1.0);
  expect_close(u(1, 0), 0.0);
}

TEST(Beamsplitter, TwoByTwoActionIsUnitaryForAnyPhase) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const ModeId a{0, "a"}, b{1, "b"};
    const NetworkDescription net{
        {beamsplitter_element(r, std::sqrt(1 - r * r), test::random_angle(rng), a, b)},
        {a, b},
        {a, b}};
    EXPECT_TRUE(check_isometry(compose_network(net), 1e-12));
  }
}

TEST(Network, EmptyElementListIsIdentity) {
  const ModeId a{0, "a"}, b{1, "b"}, c{2, "c"};
  const NetworkDescription net{{}, {a, b, c}, {a, b, c}};
  const auto u = compose_network(net);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t g = 0; g < 3; ++g) expect_close(u(i, g), i == g ? 1.0 : 0.0);
}

TEST(Network, TwoMirrorsGiveMinusOne) {
  const ModeId a{0, "a"};
  const NetworkDescription net{{mirror_element(a), mirror_element(a)}, {a}, {a}};
  expect_close(compose_network(net)(0, 0), -1.0);
}

TEST(Network, ConstructionErrors) {
  const ModeId a{0, "a"}, b{1, "b"}, c{2, "c"};
  // detector never touched by any element
  EXPECT_THROW(compose_network(NetworkDescription{{}, {a}, {a, c}}), ConstructionError);
  // detector rail exists but nothing reaches it
  EXPECT_THROW(compose_network(NetworkDescription{{mirror_element(c)}, {a}, {a, c}}),
               ConstructionError);
  // amplitude leaks into an unlisted rail
  EXPECT_THROW(
      compose_network(NetworkDescription{{beamsplitter_element(kH, kH, 0.0, a, b)}, {a}, {a}}),
      ConstructionError);
  EXPECT_THROW(compose_network(NetworkDescription{{}, {a, a}, {a, b}}), ConstructionError);
  EXPECT_THROW(compose_network(NetworkDescription{{}, {a}, {a, a}}), ConstructionError);
  EXPECT_THROW(compose_network(NetworkDescription{{}, {a}, {ModeId{0, "renamed"}}}),
               ConstructionError);
  OpticalElement bad{ElementKind::beamsplitter, {a, b}, 0.9, 0.9, 0.0};
  EXPECT_THROW(compose_network(NetworkDescription{{bad}, {a}, {a, b}}), ValidationError);
}

TEST(Interferometer, ZeroAngleEntries) {
  const auto u = two_source_interferometer(0.0, 0.0);
  expect_close(u(0, 0), kI / 2.0);
  expect_close(u(1, 0), -0.5);
  expect_close(u(2, 1), kI / 2.0);
  expect_close(u(3, 1), -0.5);
}

TEST(Interferometer, ZetaPiFlipsAlphaColumn) {
  const auto u = two_source_interferometer(std::numbers::pi, 0.0);
  expect_close(u(0, 0), -kI / 2.0);
  expect_close(u(1, 0), 0.5);
}

TEST(Interferometer, ElementNetworkReproducesMatrix) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const double z = test::random_angle(rng), t = test::random_angle(rng);
    const auto direct = two_source_interferometer(z, t);
    const auto built = compose_network(two_source_network(z, t));
    ASSERT_EQ(built.rows(), 4u);
    ASSERT_EQ(built.cols(), 2u);
    const Complex ez = std::polar(1.0, z), et = std::polar(1.0, t);
    const Complex expected[4][2] = {{0.5 * kI * ez, 0.5 * kI},
                                    {-0.5 * ez, 0.5},
                                    {0.5 * kI, 0.5 * kI * et},
                                    {0.5, -0.5 * et}};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t g = 0; g < 2; ++g) {
        expect_close(direct(i, g), expected[i][g]);
        expect_close(built(i, g), expected[i][g]);
      }
  }
}

TEST(Isometry, FlagsDoubledEntry) {
  auto u = two_source_interferometer(0.4, -1.2);
  EXPECT_TRUE(check_isometry(u, 1e-12));
  u(2, 1) *= 2.0;
  EXPECT_FALSE(check_isometry(u, 1e-12));
  EXPECT_THROW(check_isometry(u, 0.0), ValidationError);
}

TEST(Isometry, RingAtRandomAngles) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto u = three_source_ring(test::random_angle(rng), test::random_angle(rng),
                                     test::random_angle(rng));
    EXPECT_EQ(u.rows(), 6u);
    EXPECT_EQ(u.cols(), 3u);
    EXPECT_TRUE(check_isometry(u, 1e-12));
  }
}

TEST(Angles, ReducedIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(reduce_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(reduce_angle(std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(reduce_angle(7.0), 7.0 - 2 * std::numbers::pi, 1e-15);
  const auto a = AngleSettings{10.0, -10.0, 4.0}.reduced();
  EXPECT_GT(a.zeta, -std::numbers::pi);
  EXPECT_LE(*a.chi, std::numbers::pi);
}

TEST(TransferMatrix, ShapeChecks) {
  EXPECT_THROW(TransferMatrix(1, 2, std::vector<Complex>(2)), ValidationError);
  EXPECT_THROW(TransferMatrix(2, 2, std::vector<Complex>(3)), ValidationError);
  const auto u = two_source_interferometer(0.0, 0.0);
  const std::size_t order[] = {3, 2, 1, 0};
  const auto p = u.permuted_rows(order);
  EXPECT_EQ(p.detector_labels().front(), "D4");
  expect_close(p(0, 1), u(3, 1));
}
