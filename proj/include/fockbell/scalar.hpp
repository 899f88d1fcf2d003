#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "fockbell/errors.hpp"
#include "fockbell/exact.hpp"

namespace fockbell {

using Complex = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static Complex from_real(double x) { return {x, 0.0}; }
  static Complex imag_unit() { return {0.0, 1.0}; }
  static Complex polar(double angle) { return std::polar(1.0, angle); }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct ScalarTraits<ExactComplex> {
  using Real = Surd;
  static ExactComplex from_real(const Surd& x) { return {x, Surd{}}; }
  static ExactComplex imag_unit() { return ExactComplex::i(); }
  /// Only quarter-turn phases are representable exactly.
  static ExactComplex polar(double angle) {
    const double quarters = angle / (std::numbers::pi / 2.0);
    const double rounded = std::round(quarters);
    if (std::abs(quarters - rounded) > 1e-12)
      throw ValidationError("exact arithmetic supports only multiples of pi/2 as phases");
    switch (((static_cast<long long>(rounded) % 4) + 4) % 4) {
      case 0: return {Surd{1}, Surd{0}};
      case 1: return {Surd{0}, Surd{1}};
      case 2: return {Surd{-1}, Surd{0}};
      default: return {Surd{0}, Surd{-1}};
    }
  }
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static Complex to_complex(const ExactComplex& z) { return z.to_complex(); }
};

inline double to_double(double x) { return x; }
inline double to_double(const Surd& x) { return x.to_double(); }

}  // namespace fockbell
