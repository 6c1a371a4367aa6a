#include "heegrank/curve.hpp"

#include <cmath>

namespace heegrank {

CurveQ::CurveQ(Integer a, Integer b, std::uint64_t conductor, std::string label)
    : a_(std::move(a)), b_(std::move(b)), conductor_(conductor), label_(std::move(label)) {
  disc_ = -16 * (4 * a_ * a_ * a_ + 27 * b_ * b_);
  if (disc_ == 0)
    throw Error(ErrorCode::InvalidArgument,
                "singular curve y^2 = x^3 + " + a_.str() + "x + " + b_.str());
  if (conductor_ == 0) throw Error(ErrorCode::InvalidArgument, "conductor must be positive");
  for (auto p : distinct_prime_factors(conductor_)) {
    if (disc_ % p != 0)
      throw Error(ErrorCode::InvalidArgument,
                  "prime " + std::to_string(p) + " divides the conductor but not disc " +
                      disc_.str());
  }
}

Rational CurveQ::j_invariant() const {
  const Integer four_a3 = 4 * a_ * a_ * a_;
  return Rational(1728 * four_a3, four_a3 + 27 * b_ * b_);
}

EllipticGroup<Rational> group_over_q(const CurveQ& curve) {
  return {Rational(curve.a()), Rational(curve.b()), Rational(1)};
}

EllipticGroup<QuadElem> group_over(const CurveQ& curve, const QuadField& field) {
  return {QuadElem(field, Rational(curve.a())), QuadElem(field, Rational(curve.b())),
          QuadElem(field, Rational(1))};
}

EllipticGroup<ModP> group_mod(const CurveQ& curve, std::uint64_t p) {
  if (p == 2 || !is_prime(p) || p >= (1ULL << 31))
    throw Error(ErrorCode::InvalidArgument, "F_p needs an odd prime below 2^31");
  const auto reduce = [p](const Integer& v) {
    Integer r = v % p;
    if (r < 0) r += p;
    return ModP(r.convert_to<std::int64_t>(), p);
  };
  return {reduce(curve.a()), reduce(curve.b()), ModP(1, p)};
}

namespace {

std::int64_t character_sum_ap(const CurveQ& curve, std::uint64_t p) {
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t x = 1; x < p; ++x) chi[x * x % p] = 1;
  const auto reduce = [p](const Integer& v) {
    Integer r = v % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
  };
  const std::uint64_t a = reduce(curve.a());
  const std::uint64_t b = reduce(curve.b());
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t v = ((x * x % p) * x + a * x + b) % p;
    sum += chi[v];
  }
  // #E(F_p) = 1 + sum_x (1 + chi(f(x))) = p + 1 + sum
  return -sum;
}

}  // namespace

std::int64_t count_ap(const CurveQ& curve, std::uint64_t p) {
  if (p == 2 || !is_prime(p))
    throw Error(ErrorCode::BadReductionPrime,
                "a_p is counted only at odd primes, got p = " + std::to_string(p));
  if (curve.disc() % p == 0)
    throw Error(ErrorCode::BadReductionPrime,
                "p = " + std::to_string(p) + " divides disc " + curve.disc().str());
  return character_sum_ap(curve, p);
}

std::int64_t count_singular_ap(const CurveQ& curve, std::uint64_t p) {
  if (p == 2 || !is_prime(p) || curve.disc() % p != 0)
    throw Error(ErrorCode::InvalidArgument,
                "singular count needs an odd prime dividing disc, got " + std::to_string(p));
  return character_sum_ap(curve, p);
}

bool within_hasse(std::int64_t ap, std::uint64_t p) {
  // |a_p| < 2 sqrt(p)  <=>  a_p^2 < 4p
  return static_cast<unsigned __int128>(ap < 0 ? -ap : ap) * (ap < 0 ? -ap : ap) <
         static_cast<unsigned __int128>(4) * p;
}

ApTable::ApTable(CurveQ curve, std::map<std::uint64_t, std::int64_t> overrides)
    : curve_(std::move(curve)), overrides_(std::move(overrides)) {
  for (const auto& [p, ap] : overrides_) {
    if (!is_prime(p))
      throw Error(ErrorCode::CatalogError, "override key " + std::to_string(p) + " is not prime");
    if (curve_.disc() % p != 0)
      throw Error(ErrorCode::CatalogError,
                  "override prime " + std::to_string(p) + " does not divide disc");
    const bool bad = curve_.conductor() % p == 0;
    if (bad ? (ap < -1 || ap > 1) : !within_hasse(ap, p))
      throw Error(ErrorCode::CatalogError, "override a_" + std::to_string(p) + " = " +
                                               std::to_string(ap) + " violates the Hasse bound");
    entries_[p] = ap;
  }
}

void ApTable::extend_to(std::uint64_t max_prime) {
  if (max_prime <= extent_) return;
  for (auto p : primes_up_to(max_prime)) {
    if (entries_.count(p)) continue;
    if (p == 2) continue;  // only via override: 2 always divides -16(...)
    if (curve_.disc() % p != 0) {
      entries_[p] = count_ap(curve_, p);
    } else if (curve_.conductor() % p == 0) {
      const std::int64_t ap = count_singular_ap(curve_, p);
      const bool multiplicative = curve_.conductor() % (p * p) != 0;
      if ((multiplicative && (ap == 1 || ap == -1)) || (!multiplicative && ap == 0))
        entries_[p] = ap;
      // otherwise the model is not minimal at p; leave it to an override
    }
  }
  extent_ = max_prime;
}

void ApTable::merge(const std::map<std::uint64_t, std::int64_t>& values) {
  for (const auto& [p, ap] : values) {
    if (auto it = overrides_.find(p); it != overrides_.end() && it->second != ap)
      throw Error(ErrorCode::CatalogError, "a_" + std::to_string(p) + " = " + std::to_string(ap) +
                                               " conflicts with override " +
                                               std::to_string(it->second));
    if (auto it = entries_.find(p); it != entries_.end() && it->second != ap)
      throw Error(ErrorCode::CatalogError, "a_" + std::to_string(p) + " = " + std::to_string(ap) +
                                               " conflicts with " + std::to_string(it->second));
    entries_[p] = ap;
  }
}

std::optional<std::int64_t> ApTable::find(std::uint64_t p) const {
  if (auto it = entries_.find(p); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::int64_t ApTable::at(std::uint64_t p) const {
  if (auto v = find(p)) return *v;
  throw Error(ErrorCode::MissingPrime, "a_" + std::to_string(p) + " not available for " +
                                           (curve_.label().empty() ? "curve" : curve_.label()));
}

namespace {

std::int64_t prime_power_coefficient(const ApTable& table, std::uint64_t p, int e) {
  const std::int64_t ap = table.at(p);
  const bool bad = table.curve().conductor() % p == 0;
  std::int64_t prev = 1;  // a_{p^0}
  std::int64_t cur = ap;  // a_{p^1}
  if (e == 0) return 1;
  for (int k = 1; k < e; ++k) {
    const std::int64_t next = bad ? ap * cur : ap * cur - static_cast<std::int64_t>(p) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

std::int64_t hecke_an(const ApTable& table, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "a_n needs n >= 1");
  std::int64_t an = 1;
  for (const auto& [p, e] : factorize(n)) an *= prime_power_coefficient(table, p, e);
  return an;
}

std::vector<std::int64_t> hecke_series(const ApTable& table, std::uint64_t count) {
  std::vector<std::int64_t> a(count + 1, 0);
  if (count == 0) return a;
  std::vector<std::uint64_t> spf(count + 1, 0);
  for (std::uint64_t i = 2; i <= count; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= count; j += i)
      if (!spf[j]) spf[j] = i;
  }
  a[1] = 1;
  for (std::uint64_t n = 2; n <= count; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t pe = p;
    while ((n / pe) % p == 0) pe *= p;
    const std::uint64_t m = n / pe;
    if (m > 1) {
      a[n] = a[pe] * a[m];
    } else if (pe == p) {
      a[n] = table.at(p);
    } else {
      const bool bad = table.curve().conductor() % p == 0;
      a[n] = bad ? a[p] * a[n / p]
                 : a[p] * a[n / p] - static_cast<std::int64_t>(p) * a[n / (p * p)];
    }
  }
  return a;
}

TorsionCertificate nontorsion_certificate(const CurveQ& curve, const QuadraticPoint& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "torsion certificate of O");
  return torsion_certificate(group_over(curve, p.x().field()), p);
}

TorsionCertificate nontorsion_certificate(const CurveQ& curve, const RationalPoint& p) {
  return torsion_certificate(group_over_q(curve), p);
}

}  // namespace heegrank
