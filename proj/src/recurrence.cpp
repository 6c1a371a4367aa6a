#include "heegrank/recurrence.hpp"

#include <algorithm>

#include "heegrank/curve.hpp"

namespace heegrank {

namespace {

void validate(std::int64_t ap, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (!within_hasse(ap, p))
    throw Error(ErrorCode::HasseViolation,
                "a_p = " + std::to_string(ap) + " violates |a_p| < 2 sqrt(" + std::to_string(p) + ")");
}

Rational step(const Rational& cur, const Rational& prev, std::int64_t ap, std::uint64_t p) {
  return (Rational(ap) * cur - prev) / Rational(p);
}

}  // namespace

RecurrenceState generate(const Integer& c0, const Integer& c1, std::int64_t ap, std::uint64_t p,
                         std::size_t steps) {
  if (c0 == 0) throw Error(ErrorCode::ZeroSeed, "c0 must be nonzero");
  validate(ap, p);
  RecurrenceState st;
  st.p = p;
  st.ap = ap;
  st.seq.push_back(Rational(c0));
  if (steps >= 1) st.seq.push_back(Rational(c1));
  while (st.seq.size() < steps + 1) {
    const std::size_t n = st.seq.size();
    st.seq.push_back(step(st.seq[n - 1], st.seq[n - 2], ap, p));
  }
  st.vals = valuation_profile(st);
  return st;
}

const char* to_string(NonintegralKind kind) {
  switch (kind) {
    case NonintegralKind::Index: return "index";
    case NonintegralKind::AllZeroTail: return "all_zero_tail";
    case NonintegralKind::BoundExhausted: return "bound_exhausted";
  }
  return "?";
}

NonintegralResult first_nonintegral(const Integer& c0, const Integer& c1, std::int64_t ap,
                                    std::uint64_t p, std::size_t bound) {
  if (c0 == 0) throw Error(ErrorCode::ZeroSeed, "c0 must be nonzero");
  validate(ap, p);
  Rational prev(c0), cur(c1);
  for (std::size_t n = 1; n <= bound; ++n) {
    if (!is_integral(cur)) return {NonintegralKind::Index, n};
    if (prev.is_zero() && cur.is_zero()) return {NonintegralKind::AllZeroTail, n - 1};
    Rational next = step(cur, prev, ap, p);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {NonintegralKind::BoundExhausted, bound};
}

std::vector<std::optional<int>> valuation_profile(const RecurrenceState& state) {
  std::vector<std::optional<int>> out;
  out.reserve(state.seq.size());
  for (const auto& c : state.seq) out.push_back(valuation(c, Integer(state.p)));
  return out;
}

bool tail_decreasing(const RecurrenceState& state) {
  std::vector<std::optional<int>> v;
  if (state.ap % static_cast<std::int64_t>(state.p) != 0) {
    v = state.vals;
  } else {
    for (std::size_t k = 0; 2 * k + 1 < state.vals.size(); ++k) {
      const auto& a = state.vals[2 * k];
      const auto& b = state.vals[2 * k + 1];
      v.push_back(!a ? b : !b ? a : std::min(*a, *b));
    }
  }
  std::size_t n = 0;
  while (n < v.size() && !(v[n] && *v[n] < 0)) ++n;
  for (; n + 1 < v.size(); ++n)
    if (!v[n + 1] || *v[n + 1] != *v[n] - 1) return false;
  return true;
}

std::pair<Rational, Rational> newton_polygon_valuations(std::int64_t ap, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  // Points (0, 0), (1, v_p(a_p)), (2, 1); roots have valuation -slope.
  const bool vertex = ap != 0 && Integer(ap) % p != 0;
  if (vertex) return {Rational(-1), Rational(0)};
  return {Rational(-1, 2), Rational(-1, 2)};
}

CharRoots char_roots(std::int64_t ap, std::uint64_t p, unsigned digits) {
  validate(ap, p);
  const Integer disc = Integer(ap) * ap - 4 * Integer(p);
  if (disc >= 0 || is_perfect_square(disc))
    throw Error(ErrorCode::CheckFailed, "characteristic roots are rational");
  PrecisionScope scope(digits + 10);
  CharRoots r;
  const Real two_p = 2 * Real(p);
  const Real im = boost::multiprecision::sqrt(Real(-disc.convert_to<long long>())) / two_p;
  r.alpha = Complex(Real(ap) / two_p, im);
  r.beta = Complex(Real(ap) / two_p, -im);
  r.product_error = abs(r.alpha * r.beta - Complex(1 / Real(p)));
  r.sum_error = abs(r.alpha + r.beta - Complex(Real(ap) / Real(p)));
  std::tie(r.v_alpha, r.v_beta) = newton_polygon_valuations(ap, p);
  r.supersingular = r.v_alpha == r.v_beta;
  return r;
}

}  // namespace heegrank
