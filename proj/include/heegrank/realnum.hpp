#pragma once

// Variable-precision reals (MPFR) and a minimal complex type on top.

#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace heegrank {

using Real = boost::multiprecision::mpfr_float;

// Sets the MPFR default precision (decimal digits) for the lifetime of the
// guard. New Real values pick up the precision in effect when created.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real real_pi();
// 10^-digits
Real ten_to_minus(int digits);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit on purpose
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(Complex x, const Complex& y);
Complex operator-(Complex x, const Complex& y);
Complex operator*(Complex x, const Complex& y);
Complex operator/(Complex x, const Complex& y);
Complex operator*(const Real& s, const Complex& z);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm2(const Complex& z);
// Principal branch.
Complex sqrt(const Complex& z);
Complex exp(const Complex& z);
Complex i_times(const Complex& z);

// Scientific notation with `digits` significant digits.
std::string to_decimal(const Real& x, unsigned digits);

}  // namespace heegrank
