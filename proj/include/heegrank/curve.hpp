#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heegrank/arith.hpp"

namespace heegrank {

// y^2 = x^3 + a x + b over Q with catalog-supplied conductor.
class CurveQ {
 public:
  CurveQ(Integer a, Integer b, std::uint64_t conductor, std::string label = {});

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  // -16 (4a^3 + 27b^2)
  const Integer& disc() const { return disc_; }
  std::uint64_t conductor() const { return conductor_; }
  const std::string& label() const { return label_; }

  // j = 1728 * 4a^3 / (4a^3 + 27b^2)
  Rational j_invariant() const;

 private:
  Integer a_;
  Integer b_;
  Integer disc_;
  std::uint64_t conductor_;
  std::string label_;
};

// A point of E(F); the empty state is the point at infinity O.
template <class F>
class EPoint {
 public:
  EPoint() = default;
  EPoint(F x, F y) : xy_(std::in_place, std::move(x), std::move(y)) {}

  static EPoint zero() { return EPoint(); }
  bool is_zero() const { return !xy_.has_value(); }
  const F& x() const { return xy_->first; }
  const F& y() const { return xy_->second; }

 private:
  std::optional<std::pair<F, F>> xy_;
};

// Chord-tangent group law on y^2 = x^3 + a x + b over a field of
// characteristic != 2. F needs + - * /, unary minus and an is_zero overload.
template <class F>
class EllipticGroup {
 public:
  EllipticGroup(F a, F b, F one) : a_(std::move(a)), b_(std::move(b)), one_(std::move(one)) {}

  const F& a() const { return a_; }
  const F& b() const { return b_; }

  F rhs(const F& x) const { return x * x * x + a_ * x + b_; }

  bool on_curve(const EPoint<F>& p) const {
    return p.is_zero() || is_zero(p.y() * p.y() - rhs(p.x()));
  }

  EPoint<F> neg(const EPoint<F>& p) const {
    if (p.is_zero()) return p;
    return EPoint<F>(p.x(), -p.y());
  }

  bool equal(const EPoint<F>& p, const EPoint<F>& q) const {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    return is_zero(p.x() - q.x()) && is_zero(p.y() - q.y());
  }

  EPoint<F> add(const EPoint<F>& p, const EPoint<F>& q) const {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    F lambda = one_;
    if (is_zero(p.x() - q.x())) {
      if (is_zero(p.y() + q.y())) return EPoint<F>::zero();
      const F two = one_ + one_;
      const F three = two + one_;
      lambda = (three * p.x() * p.x() + a_) / (two * p.y());
    } else {
      lambda = (q.y() - p.y()) / (q.x() - p.x());
    }
    F x3 = lambda * lambda - p.x() - q.x();
    F y3 = lambda * (p.x() - x3) - p.y();
    return EPoint<F>(std::move(x3), std::move(y3));
  }

  EPoint<F> mul(const Integer& n, const EPoint<F>& p) const {
    if (n < 0) return neg(mul(-n, p));
    EPoint<F> acc = EPoint<F>::zero();
    EPoint<F> base = p;
    Integer k = n;
    while (k > 0) {
      if (bit_test(k, 0)) acc = add(acc, base);
      k >>= 1;
      if (k > 0) base = add(base, base);
    }
    return acc;
  }

 private:
  F a_;
  F b_;
  F one_;
};

EllipticGroup<Rational> group_over_q(const CurveQ& curve);
EllipticGroup<QuadElem> group_over(const CurveQ& curve, const QuadField& field);
EllipticGroup<ModP> group_mod(const CurveQ& curve, std::uint64_t p);

using RationalPoint = EPoint<Rational>;
using QuadraticPoint = EPoint<QuadElem>;

// a_p = p + 1 - #E(F_p) by the character sum over x mod p.
// p must be odd and must not divide disc.
std::int64_t count_ap(const CurveQ& curve, std::uint64_t p);

// Same character sum at an odd prime dividing the discriminant; on a model
// that is minimal at p this is +1 / -1 for split / nonsplit multiplicative
// and 0 for additive reduction.
std::int64_t count_singular_ap(const CurveQ& curve, std::uint64_t p);

// Hecke eigenvalues a_p for one curve.
class ApTable {
 public:
  explicit ApTable(CurveQ curve, std::map<std::uint64_t, std::int64_t> overrides = {});

  // Fills every prime up to max_prime that can be determined: overrides,
  // counted good primes, and odd primes of bad reduction on a p-minimal model.
  void extend_to(std::uint64_t max_prime);

  // Adds externally supplied values (e.g. a cache file); a value that
  // disagrees with an override or an existing entry raises CatalogError.
  void merge(const std::map<std::uint64_t, std::int64_t>& values);

  std::optional<std::int64_t> find(std::uint64_t p) const;
  // MissingPrime if p is unknown.
  std::int64_t at(std::uint64_t p) const;

  const CurveQ& curve() const { return curve_; }
  const std::map<std::uint64_t, std::int64_t>& entries() const { return entries_; }
  const std::map<std::uint64_t, std::int64_t>& overrides() const { return overrides_; }
  std::uint64_t extent() const { return extent_; }

 private:
  CurveQ curve_;
  std::map<std::uint64_t, std::int64_t> overrides_;
  std::map<std::uint64_t, std::int64_t> entries_;
  std::uint64_t extent_ = 1;
};

// |a_p| < 2 sqrt(p)
bool within_hasse(std::int64_t ap, std::uint64_t p);

std::int64_t hecke_an(const ApTable& table, std::uint64_t n);
// a_0 .. a_count with a_0 = 0; extends nothing, throws MissingPrime.
std::vector<std::int64_t> hecke_series(const ApTable& table, std::uint64_t count);

inline constexpr int kQuadraticTorsionBound = 18;

struct TorsionCertificate {
  bool nontorsion = false;
  std::optional<int> order;  // exact order when torsion was found
  int checked_up_to = 0;
  std::string note;
};

template <class F>
TorsionCertificate torsion_certificate(const EllipticGroup<F>& group, const EPoint<F>& p,
                                       int bound = kQuadraticTorsionBound) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "torsion certificate of O");
  TorsionCertificate cert;
  EPoint<F> multiple = p;
  for (int n = 1; n <= bound; ++n) {
    if (n > 1) multiple = group.add(multiple, p);
    if (multiple.is_zero()) {
      cert.order = n;
      cert.checked_up_to = n;
      cert.note = "n*P = O at n = " + std::to_string(n);
      return cert;
    }
  }
  cert.nontorsion = true;
  cert.checked_up_to = bound;
  cert.note = "n*P != O for 1 <= n <= " + std::to_string(bound) +
              "; torsion points over Q or a quadratic field have order at most 18 "
              "(Mazur, Kenku-Momose, Kamienny), so P has infinite order";
  return cert;
}

// Exact non-torsion certificate for a point with coordinates in a quadratic
// field (the field of the point's coordinates).
TorsionCertificate nontorsion_certificate(const CurveQ& curve, const QuadraticPoint& p);
TorsionCertificate nontorsion_certificate(const CurveQ& curve, const RationalPoint& p);

}  // namespace heegrank
