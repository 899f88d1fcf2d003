#include <gtest/gtest.h>

#include <sstream>

#include "fockbell/exact.hpp"

using namespace fockbell;

TEST(Surd, RootsMultiplyOut) {
  EXPECT_EQ(Surd::sqrt2() * Surd::sqrt2(), Surd(2));
  EXPECT_EQ(Surd::sqrt2() * Surd::sqrt3(), Surd::sqrt6());
  EXPECT_EQ(Surd::sqrt6() * Surd::sqrt6(), Surd(6));
  EXPECT_EQ(Surd::sqrt3() * Surd::sqrt6(), Surd(0, 3, 0, 0));
  EXPECT_TRUE((Surd::sqrt2() - Surd::sqrt2()).is_zero());
}

TEST(Surd, ToDouble) {
  const Surd x(Rational(1, 2), Rational(1, 3), Rational(-1, 5), 2);
  EXPECT_NEAR(x.to_double(), 0.5 + std::sqrt(2.0) / 3 - std::sqrt(3.0) / 5 + 2 * std::sqrt(6.0),
              1e-15);
}

TEST(Surd, Printing) {
  std::ostringstream os;
  os << Surd(Rational(1, 2), 0, 0, -1);
  EXPECT_EQ(os.str(), "1/2 + -1√6");
}

TEST(ExactComplex, Arithmetic) {
  const ExactComplex i = ExactComplex::i();
  EXPECT_EQ(i * i, ExactComplex(-1));
  const ExactComplex z(Surd::sqrt2(), Surd(Rational(1, 3)));
  EXPECT_EQ(z.norm(), Surd(Rational(19, 9)));
  EXPECT_TRUE((z - z).is_zero());
  EXPECT_EQ(z.conj().conj(), z);
  EXPECT_NEAR(z.to_complex().imag(), 1.0 / 3, 1e-16);
}
