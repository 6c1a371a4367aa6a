#pragma once

// p c_{n+1} = a_p c_n - c_{n-1} over Q, its p-adic valuations and the roots
// of x^2 - (a_p/p) x + 1/p.

#include <cstdint>
#include <optional>
#include <vector>

#include "heegrank/arith.hpp"
#include "heegrank/realnum.hpp"

namespace heegrank {

struct RecurrenceState {
  std::uint64_t p = 0;
  std::int64_t ap = 0;
  std::vector<Rational> seq;
  std::vector<std::optional<int>> vals;  // nullopt = +infinity
};

// ZeroSeed if c0 = 0, HasseViolation unless a_p^2 < 4p.
RecurrenceState generate(const Integer& c0, const Integer& c1, std::int64_t ap, std::uint64_t p,
                         std::size_t steps);

enum class NonintegralKind { Index, AllZeroTail, BoundExhausted };

struct NonintegralResult {
  NonintegralKind kind = NonintegralKind::BoundExhausted;
  std::size_t index = 0;
};

const char* to_string(NonintegralKind kind);

NonintegralResult first_nonintegral(const Integer& c0, const Integer& c1, std::int64_t ap,
                                    std::uint64_t p, std::size_t bound);

std::vector<std::optional<int>> valuation_profile(const RecurrenceState& state);

// Once a valuation goes negative it keeps falling: by 1 per step when p does
// not divide a_p, and by 1 per two steps otherwise, measured on
// min(v_{2k}, v_{2k+1}). Vacuously true if no valuation is negative.
bool tail_decreasing(const RecurrenceState& state);

// Valuations of both roots from the Newton polygon of p x^2 - a_p x + 1:
// {0, -1} when p does not divide a_p, {-1/2, -1/2} otherwise. No Hasse check.
std::pair<Rational, Rational> newton_polygon_valuations(std::int64_t ap, std::uint64_t p);

struct CharRoots {
  Complex alpha, beta;
  Rational v_alpha, v_beta;  // v_alpha <= v_beta
  bool supersingular = false;
  Real product_error;  // |alpha beta - 1/p|
  Real sum_error;      // |alpha + beta - a_p/p|
};

// HasseViolation unless a_p^2 < 4p. The roots are non-real, hence irrational.
CharRoots char_roots(std::int64_t ap, std::uint64_t p, unsigned digits = 30);

}  // namespace heegrank
