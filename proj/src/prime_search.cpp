#include "heegrank/prime_search.hpp"

#include "heegrank/witness.hpp"

namespace heegrank {

ConditionChecks verify_conditions(const CurveQ& curve, const QuadField& field, std::uint64_t p,
                                  std::uint64_t q) {
  if (!is_prime(q)) throw Error(ErrorCode::InvalidArgument, std::to_string(q) + " is not prime");
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "p must be positive");
  if (curve.conductor() % q == 0 || curve.disc() % q == 0)
    throw Error(ErrorCode::BadReductionPrime, "q = " + std::to_string(q) + " divides N disc");
  ConditionChecks c;
  c.q = q;
  c.kronecker = kronecker(field.fund_disc(), Integer(q));
  c.inert = c.kronecker == -1;
  c.q_plus_1_mod_p = (q + 1) % p;
  c.divides = c.q_plus_1_mod_p == 0;
  c.a_q = count_ap(curve, q);
  c.a_q_mod_p = mod_floor(c.a_q, static_cast<std::int64_t>(p));
  c.ap_nonzero = c.a_q_mod_p != 0;
  return c;
}

PrimeSearchResult find_q(const CurveQ& curve, const QuadField& field, std::uint64_t p,
                         std::uint64_t bound) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
  if (!field.is_imaginary()) throw Error(ErrorCode::InvalidArgument, "field must be imaginary");
  if (curve.conductor() % p == 0)
    throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " divides N");
  if (const auto cm = cm_discriminant(curve)) {
    const int k = kronecker(*cm, Integer(p));
    if (k != -1)
      throw Error(ErrorCode::CMConditionFailed,
                  "p = " + std::to_string(p) + " is not inert in the CM field (symbol " +
                      std::to_string(k) + ")");
  }
  PrimeSearchResult res;
  for (auto q : primes_up_to(bound)) {
    ++res.primes_examined;
    if ((q + 1) % p != 0) continue;
    if (curve.conductor() % q == 0 || curve.disc() % q == 0) continue;
    if (kronecker(field.fund_disc(), Integer(q)) != -1) continue;
    const ConditionChecks c = verify_conditions(curve, field, p, q);
    if (c.all()) {
      res.q = q;
      res.checks = c;
      return res;
    }
  }
  throw Error(ErrorCode::SearchExhausted,
              "no q <= " + std::to_string(bound) + " for p = " + std::to_string(p) +
                  "; raise the bound");
}

}  // namespace heegrank
