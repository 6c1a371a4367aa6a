#include "heegrank/realnum.hpp"

#include <iomanip>
#include <sstream>

namespace heegrank {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real ten_to_minus(int digits) { return boost::multiprecision::pow(Real(10), -digits); }

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real den = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / den;
  Real i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex operator+(Complex x, const Complex& y) { return x += y; }
Complex operator-(Complex x, const Complex& y) { return x -= y; }
Complex operator*(Complex x, const Complex& y) { return x *= y; }
Complex operator/(Complex x, const Complex& y) { return x /= y; }
Complex operator*(const Real& s, const Complex& z) { return {s * z.re, s * z.im}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex sqrt(const Complex& z) {
  if (z.re == 0 && z.im == 0) return {};
  const Real r = abs(z);
  Real a = boost::multiprecision::sqrt((r + abs(z.re)) / 2);
  Real b = z.im / (2 * a);
  if (z.re >= 0) return {a, b};
  // re < 0: swap roles so the real part stays non-negative
  if (z.im >= 0) return {abs(b), a};
  return {abs(b), -a};
}

Complex exp(const Complex& z) {
  const Real m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex i_times(const Complex& z) { return {-z.im, z.re}; }

std::string to_decimal(const Real& x, unsigned digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits > 0 ? digits - 1 : 0) << x;
  return os.str();
}

}  // namespace heegrank
