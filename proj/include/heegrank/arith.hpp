#pragma once

// Exact integer/rational arithmetic, quadratic fields and the small amount of
// elementary number theory the rest of the library is built on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "heegrank/error.hpp"

namespace heegrank {

using Integer = boost::multiprecision::mpz_int;
// GMP keeps rationals canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::mpq_rational;

inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

std::string to_string(const Integer& n);
// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);
bool is_integral(const Rational& q);

struct SquarefreeKernel {
  Integer s;  // s >= 1
  Integer d;  // squarefree, sign(d) = sign(n)
};

// n = s^2 * d. Trial division up to `trial_bound`, then a perfect-square test
// on the cofactor. A cofactor >= trial_bound^3 that is not a square could hide
// a repeated prime and raises FactorizationIncomplete.
SquarefreeKernel squarefree_kernel(const Integer& n,
                                   std::uint64_t trial_bound = kDefaultTrialBound);

bool is_squarefree(const Integer& n, std::uint64_t trial_bound = kDefaultTrialBound);

// Kronecker symbol (a|n) on the full integer domain.
int kronecker(const Integer& a, const Integer& n);

bool is_perfect_square(const Integer& n);
Integer isqrt(const Integer& n);

// v_p(n) for n != 0.
int valuation(const Integer& n, const Integer& p);
// v_p(q); nullopt stands for +infinity (q = 0).
std::optional<int> valuation(const Rational& q, const Integer& p);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::uint64_t radical(std::uint64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Q(sqrt d) for squarefree d not in {0, 1}.
class QuadField {
 public:
  explicit QuadField(const Integer& d);

  // Field generated by sqrt(n) for any non-square nonzero n.
  static QuadField of_radicand(const Integer& n);
  // Field of fundamental discriminant D.
  static QuadField of_discriminant(const Integer& fund_disc);

  const Integer& d() const { return d_; }
  const Integer& fund_disc() const { return fund_disc_; }
  bool is_imaginary() const { return d_ < 0; }

  friend bool operator==(const QuadField& x, const QuadField& y) { return x.d_ == y.d_; }

 private:
  Integer d_;
  Integer fund_disc_;
};

// a + b*sqrt(d) with a, b rational.
class QuadElem {
 public:
  QuadElem(QuadField field, Rational a, Rational b = Rational(0));

  const QuadField& field() const { return field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_rational() const { return b_.is_zero(); }
  Rational norm() const { return a_ * a_ - Rational(field_.d()) * b_ * b_; }
  Rational trace() const { return 2 * a_; }

  QuadElem operator-() const { return {field_, -a_, -b_}; }
  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string str() const;

 private:
  QuadField field_;
  Rational a_;
  Rational b_;
};

QuadElem quad_conj(const QuadElem& x);
inline bool is_zero(const QuadElem& x) { return x.a().is_zero() && x.b().is_zero(); }

// Element of F_p, p an odd prime below 2^31.
struct ModP {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  ModP(std::int64_t value, std::uint64_t prime);
  ModP operator-() const { return ModP(-static_cast<std::int64_t>(v), p); }
  friend ModP operator+(ModP x, ModP y);
  friend ModP operator-(ModP x, ModP y);
  friend ModP operator*(ModP x, ModP y);
  friend ModP operator/(ModP x, ModP y);
  friend bool operator==(ModP x, ModP y) { return x.v == y.v && x.p == y.p; }
};

inline bool is_zero(const ModP& x) { return x.v == 0; }

}  // namespace heegrank
