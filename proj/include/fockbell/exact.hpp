#pragma once

#include <array>
#include <complex>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fockbell {

using Rational = boost::multiprecision::cpp_rational;

/// Exact element of the real field Q(√2, √3): a + b√2 + c√3 + d√6.
///
/// Every amplitude of the fixed-angle Hardy interferometer lives in this
/// field (50-50 and 1/3-2/3 splitters), so squared moduli come out as exact
/// rationals.
class Surd {
 public:
  Surd() = default;
  Surd(int value) : coeff_{Rational(value), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Surd(Rational value) : coeff_{std::move(value), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Surd(Rational one, Rational root2, Rational root3, Rational root6)
      : coeff_{std::move(one), std::move(root2), std::move(root3), std::move(root6)} {}

  static Surd sqrt2() { return {0, 1, 0, 0}; }
  static Surd sqrt3() { return {0, 0, 1, 0}; }
  static Surd sqrt6() { return {0, 0, 0, 1}; }

  const Rational& rational_part() const { return coeff_[0]; }
  const Rational& coefficient(int basis) const { return coeff_[basis]; }

  bool is_rational() const { return coeff_[1] == 0 && coeff_[2] == 0 && coeff_[3] == 0; }
  bool is_zero() const { return is_rational() && coeff_[0] == 0; }

  double to_double() const {
    static const std::array<double, 4> basis{1.0, 1.4142135623730951, 1.7320508075688772,
                                             2.4494897427831779};
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += coeff_[k].convert_to<double>() * basis[k];
    return sum;
  }

  Surd& operator+=(const Surd& o) {
    for (int k = 0; k < 4; ++k) coeff_[k] += o.coeff_[k];
    return *this;
  }
  Surd& operator-=(const Surd& o) {
    for (int k = 0; k < 4; ++k) coeff_[k] -= o.coeff_[k];
    return *this;
  }
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator-(const Surd& a) { return Surd{} - a; }

  friend Surd operator*(const Surd& x, const Surd& y) {
    const auto& a = x.coeff_;
    const auto& b = y.coeff_;
    // √2·√2 = 2, √3·√3 = 3, √6·√6 = 6, √2·√3 = √6, √2·√6 = 2√3, √3·√6 = 3√2
    Surd r;
    r.coeff_[0] = a[0] * b[0] + 2 * a[1] * b[1] + 3 * a[2] * b[2] + 6 * a[3] * b[3];
    r.coeff_[1] = a[0] * b[1] + a[1] * b[0] + 3 * (a[2] * b[3] + a[3] * b[2]);
    r.coeff_[2] = a[0] * b[2] + a[2] * b[0] + 2 * (a[1] * b[3] + a[3] * b[1]);
    r.coeff_[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
    return r;
  }
  Surd& operator*=(const Surd& o) { return *this = *this * o; }

  friend bool operator==(const Surd& a, const Surd& b) { return a.coeff_ == b.coeff_; }

  friend std::ostream& operator<<(std::ostream& os, const Surd& s) {
    static const char* names[] = {"", "√2", "√3", "√6"};
    bool first = true;
    for (int k = 0; k < 4; ++k) {
      if (s.coeff_[k] == 0) continue;
      if (!first) os << " + ";
      os << s.coeff_[k] << names[k];
      first = false;
    }
    if (first) os << "0";
    return os;
  }

 private:
  std::array<Rational, 4> coeff_{};
};

/// Complex number with exact Surd real and imaginary parts.
struct ExactComplex {
  Surd re;
  Surd im;

  ExactComplex() = default;
  ExactComplex(int v) : re(v) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Surd r, Surd i = Surd{}) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  static ExactComplex i() { return {Surd{0}, Surd{1}}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  ExactComplex conj() const { return {re, -im}; }
  Surd norm() const { return re * re + im * im; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace fockbell
