#pragma once

// Primes q inert in K with p | q + 1 and p not dividing a_q.

#include <cstdint>

#include "heegrank/curve.hpp"

namespace heegrank {

struct ConditionChecks {
  std::uint64_t q = 0;
  int kronecker = 0;             // (D_K | q)
  bool inert = false;            // kronecker = -1
  std::uint64_t q_plus_1_mod_p = 0;
  bool divides = false;          // p | q + 1
  std::int64_t a_q = 0;
  std::int64_t a_q_mod_p = 0;
  bool ap_nonzero = false;       // p does not divide a_q

  bool all() const { return inert && divides && ap_nonzero; }
};

struct PrimeSearchResult {
  std::uint64_t q = 0;
  ConditionChecks checks;
  std::uint64_t primes_examined = 0;
};

// BadReductionPrime if q divides N disc.
ConditionChecks verify_conditions(const CurveQ& curve, const QuadField& field, std::uint64_t p,
                                  std::uint64_t q);

// Smallest prime q <= bound passing all three conditions and prime to N disc.
// CMConditionFailed when E has CM and p is not inert in the CM field;
// SearchExhausted otherwise if nothing is found.
PrimeSearchResult find_q(const CurveQ& curve, const QuadField& field, std::uint64_t p,
                         std::uint64_t bound);

}  // namespace heegrank
