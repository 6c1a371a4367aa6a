#include "heegrank/arith.hpp"

#include <algorithm>
#include <numeric>

namespace heegrank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::FactorizationIncomplete: return "FactorizationIncomplete";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadReductionPrime: return "BadReductionPrime";
    case ErrorCode::MissingPrime: return "MissingPrime";
    case ErrorCode::NonNegativeF: return "NonNegativeF";
    case ErrorCode::SquareF: return "SquareF";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::CheckFailed: return "CheckFailed";
    case ErrorCode::BadDiscriminant: return "BadDiscriminant";
    case ErrorCode::RatioMismatch: return "RatioMismatch";
    case ErrorCode::NoSquareRoot: return "NoSquareRoot";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::RecognitionFailed: return "RecognitionFailed";
    case ErrorCode::ClassNumberNotOne: return "ClassNumberNotOne";
    case ErrorCode::NotInert: return "NotInert";
    case ErrorCode::ZeroSeed: return "ZeroSeed";
    case ErrorCode::HasseViolation: return "HasseViolation";
    case ErrorCode::CMConditionFailed: return "CMConditionFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CatalogError: return "CatalogError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_check_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::SearchExhausted:
    case ErrorCode::CheckFailed:
    case ErrorCode::RatioMismatch:
    case ErrorCode::RecognitionFailed:
    case ErrorCode::NoSquareRoot:
    case ErrorCode::PrecisionUnreachable:
    case ErrorCode::CMConditionFailed:
      return true;
    default:
      return false;
  }
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q) {
  const Integer den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + text + "'");
  }
}

Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }
bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

SquarefreeKernel squarefree_kernel(const Integer& n, std::uint64_t trial_bound) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "squarefree kernel of 0");
  Integer c = abs(n);
  Integer s = 1;
  Integer d = 1;
  std::uint64_t p = 2;
  auto strip = [&](std::uint64_t q) {
    int e = 0;
    while (mpz_divisible_ui_p(c.backend().data(), q)) {
      c /= q;
      ++e;
    }
    if (e % 2) d *= q;
    for (int i = 0; i < e / 2; ++i) s *= q;
  };
  for (; p <= trial_bound && Integer(p) * p <= c; p += (p == 2 ? 1 : 2)) strip(p);

  if (c != 1) {
    if (Integer(p) * p > c) {
      d *= c;  // no factor below sqrt(c): prime
    } else if (is_perfect_square(c)) {
      s *= isqrt(c);
    } else if (c < Integer(trial_bound) * trial_bound * trial_bound) {
      d *= c;  // at most two distinct primes above the bound
    } else {
      throw Error(ErrorCode::FactorizationIncomplete,
                  "cofactor " + c.str() + " of " + n.str() + " not resolved by trial division to " +
                      std::to_string(trial_bound));
    }
  }
  if (n < 0) d = -d;
  return {s, d};
}

bool is_squarefree(const Integer& n, std::uint64_t trial_bound) {
  return squarefree_kernel(n, trial_bound).s == 1;
}

int kronecker(const Integer& a, const Integer& n) {
  return mpz_kronecker(a.backend().data(), n.backend().data());
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.backend().data()) != 0;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of negative " + n.str());
  return boost::multiprecision::sqrt(n);
}

int valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "valuation of 0");
  Integer rest;
  return static_cast<int>(
      mpz_remove(rest.backend().data(), n.backend().data(), p.backend().data()));
}

std::optional<int> valuation(const Rational& q, const Integer& p) {
  if (q.is_zero()) return std::nullopt;
  return valuation(numerator_of(q), p) - valuation(denominator_of(q), p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Integer z(n);
  return mpz_probab_prime_p(z.backend().data(), 25) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (auto p : distinct_prime_factors(n)) r *= p;
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

// ---------------------------------------------------------------------------

namespace {
Integer fundamental_discriminant_of(const Integer& d) {
  Integer r = d % 4;
  if (r < 0) r += 4;
  return r == 1 ? d : 4 * d;
}
}  // namespace

QuadField::QuadField(const Integer& d) : d_(d) {
  if (d == 0 || d == 1)
    throw Error(ErrorCode::InvalidArgument, "Q(sqrt d) needs d not in {0, 1}, got " + d.str());
  if (!is_squarefree(d))
    throw Error(ErrorCode::InvalidArgument, "d = " + d.str() + " is not squarefree");
  fund_disc_ = fundamental_discriminant_of(d);
}

QuadField QuadField::of_radicand(const Integer& n) {
  const auto k = squarefree_kernel(n);
  if (k.d == 1) throw Error(ErrorCode::SquareF, n.str() + " is a perfect square");
  return QuadField(k.d);
}

QuadField QuadField::of_discriminant(const Integer& fund_disc) {
  Integer r = fund_disc % 4;
  if (r < 0) r += 4;
  if (fund_disc == 0 || fund_disc == 1 || (r != 0 && r != 1))
    throw Error(ErrorCode::BadDiscriminant, fund_disc.str() + " is not a discriminant");
  const Integer d = (r == 1) ? fund_disc : fund_disc / 4;
  if (!is_squarefree(d) || fundamental_discriminant_of(d) != fund_disc)
    throw Error(ErrorCode::BadDiscriminant, fund_disc.str() + " is not fundamental");
  return QuadField(d);
}

QuadElem::QuadElem(QuadField field, Rational a, Rational b)
    : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {}

namespace {
void require_same_field(const QuadElem& x, const QuadElem& y) {
  if (!(x.field() == y.field()))
    throw Error(ErrorCode::FieldMismatch, "Q(sqrt " + x.field().d().str() + ") vs Q(sqrt " +
                                              y.field().d().str() + ")");
}
}  // namespace

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  return {x.field_, x.a_ + y.a_, x.b_ + y.b_};
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  return {x.field_, x.a_ - y.a_, x.b_ - y.b_};
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  const Rational d(x.field_.d());
  return {x.field_, x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  const Rational n = y.norm();
  if (n.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero in quadratic field");
  const QuadElem num = x * quad_conj(y);
  return {x.field_, num.a_ / n, num.b_ / n};
}

std::string QuadElem::str() const {
  if (b_.is_zero()) return to_string(a_);
  std::string out = a_.is_zero() ? "" : to_string(a_) + " + ";
  return out + "(" + to_string(b_) + ")*sqrt(" + field_.d().str() + ")";
}

QuadElem quad_conj(const QuadElem& x) { return {x.field(), x.a(), -x.b()}; }

// ---------------------------------------------------------------------------

ModP::ModP(std::int64_t value, std::uint64_t prime) : p(prime) {
  v = static_cast<std::uint64_t>(mod_floor(value, static_cast<std::int64_t>(prime)));
}

namespace {
void require_same_prime(ModP x, ModP y) {
  if (x.p != y.p)
    throw Error(ErrorCode::FieldMismatch,
                "F_" + std::to_string(x.p) + " vs F_" + std::to_string(y.p));
}
}  // namespace

ModP operator+(ModP x, ModP y) {
  require_same_prime(x, y);
  return ModP(static_cast<std::int64_t>((x.v + y.v) % x.p), x.p);
}

ModP operator-(ModP x, ModP y) {
  require_same_prime(x, y);
  return ModP(static_cast<std::int64_t>((x.v + x.p - y.v) % x.p), x.p);
}

ModP operator*(ModP x, ModP y) {
  require_same_prime(x, y);
  return ModP(static_cast<std::int64_t>(x.v * y.v % x.p), x.p);
}

ModP operator/(ModP x, ModP y) {
  require_same_prime(x, y);
  if (y.v == 0) throw Error(ErrorCode::InvalidArgument, "division by zero in F_p");
  return x * ModP(static_cast<std::int64_t>(powmod(y.v, y.p - 2, y.p)), y.p);
}

}  // namespace heegrank
