#pragma once

// Positive definite binary quadratic forms and class numbers of imaginary
// quadratic orders.

#include <cstdint>
#include <string>
#include <vector>

#include "heegrank/arith.hpp"

namespace heegrank {

struct FormClass {
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::int64_t C = 0;

  std::int64_t disc() const { return B * B - 4 * A * C; }
  bool is_reduced() const;
  bool is_primitive() const;
  std::string str() const;

  friend bool operator==(const FormClass&, const FormClass&) = default;
  friend auto operator<=>(const FormClass&, const FormClass&) = default;
};

// Standard reduction of a positive definite form to the unique reduced form
// in its SL2(Z) class.
FormClass reduce(FormClass f);

// All reduced primitive forms of discriminant disc, sorted by (A, B).
// BadDiscriminant unless disc < 0 and disc = 0, 1 mod 4.
std::vector<FormClass> reduced_forms(std::int64_t disc);
std::int64_t class_number(std::int64_t disc);

struct QuadOrder {
  QuadField field;
  std::int64_t c = 1;
  std::int64_t disc = 0;  // c^2 D_K
  std::int64_t h = 0;
};

int unit_count(std::int64_t fund_disc);  // w: 6, 4 or 2

// Dirichlet class number formula for a fundamental discriminant.
std::int64_t class_number_analytic(std::int64_t fund_disc);
// c h(D_K) prod_{p|c} (1 - (D_K|p)/p) / [O_K^* : O_c^*]
std::int64_t class_number_order_formula(const QuadField& field, std::int64_t c);

// h(O_c) by enumeration; CheckFailed if the order formula disagrees.
QuadOrder class_number_order(const QuadField& field, std::int64_t c);

struct TowerStep {
  int n = 0;
  std::int64_t h = 0;             // h(O_{c p^n})
  std::int64_t ratio_to_base = 0; // h(O_{c p^n}) / h(O_{c p}), expected p^(n-1)
  std::int64_t step_ratio = 0;    // h(O_{c p^(n+1)}) / h(O_{c p^n}), expected p
};

struct TowerReport {
  std::int64_t fund_disc = 0;
  std::int64_t c = 1;
  std::int64_t p = 0;
  std::int64_t h_c = 0;
  std::int64_t first_step_degree = 0;  // h(O_{cp}) / h(O_c)
  std::vector<TowerStep> steps;
};

// Checks h(O_{cp^n})/h(O_{cp}) = p^(n-1) and h(O_{cp^(n+1)})/h(O_{cp^n}) = p
// for 1 <= n <= n_max. Needs p odd and p not dividing c N D_K h(O_c);
// RatioMismatch(n) otherwise.
TowerReport verify_tower_p(const QuadField& field, std::int64_t c, std::int64_t p, int n_max,
                           std::int64_t N = 1);

struct InertStepReport {
  std::int64_t k = 0;
  std::int64_t p = 0;
  std::int64_t h_k = 0;
  std::int64_t h_k_over_p = 0;
  std::int64_t degree = 0;
};

// h(O_k)/h(O_{k/p}) = p + 1 for squarefree k whose primes are all inert.
InertStepReport verify_inert_step(const QuadField& field, std::int64_t k, std::int64_t p);

bool heegner_hypothesis(const QuadField& field, std::uint64_t N);

}  // namespace heegrank
