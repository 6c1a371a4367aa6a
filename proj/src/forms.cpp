#include "heegrank/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace heegrank {

bool FormClass::is_reduced() const {
  if (A <= 0 || std::llabs(B) > A || A > C) return false;
  if ((std::llabs(B) == A || A == C) && B < 0) return false;
  return true;
}

bool FormClass::is_primitive() const { return gcd64(gcd64(A, B), C) == 1; }

std::string FormClass::str() const {
  return "[" + std::to_string(A) + "," + std::to_string(B) + "," + std::to_string(C) + "]";
}

FormClass reduce(FormClass f) {
  if (f.A <= 0 || f.disc() >= 0)
    throw Error(ErrorCode::InvalidArgument, "reduce needs a positive definite form, got " + f.str());
  for (;;) {
    if (f.B > f.A || f.B <= -f.A) {
      // x -> x + k y moves B into (-A, A]
      const std::int64_t num = f.A - f.B;
      const std::int64_t k = (num - mod_floor(num, 2 * f.A)) / (2 * f.A);
      f.C = f.A * k * k + f.B * k + f.C;
      f.B += 2 * f.A * k;
    }
    if (f.A > f.C) {
      f = {f.C, -f.B, f.A};
      continue;
    }
    if (f.A == f.C && f.B < 0) f.B = -f.B;
    return f;
  }
}

namespace {

void check_disc(std::int64_t disc) {
  const std::int64_t r = mod_floor(disc, 4);
  if (disc >= 0 || (r != 0 && r != 1))
    throw Error(ErrorCode::BadDiscriminant,
                std::to_string(disc) + " is not a negative discriminant (0 or 1 mod 4)");
}

// (D | p) for a prime p.
int kronecker_prime(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    const std::int64_t r = mod_floor(D, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  std::int64_t a = mod_floor(D, p), n = p;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

std::vector<FormClass> reduced_forms(std::int64_t disc) {
  check_disc(disc);
  const std::int64_t n = -disc;
  std::vector<FormClass> out;
  for (std::int64_t A = 1; 3 * A * A <= n; ++A) {
    for (std::int64_t B = -A + 1; B <= A; ++B) {
      if (((B - disc) & 1) != 0) continue;
      const std::int64_t num = B * B - disc;
      if (num % (4 * A) != 0) continue;
      const FormClass f{A, B, num / (4 * A)};
      if (f.C < A) continue;
      if (f.A == f.C && B < 0) continue;
      if (f.is_primitive()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t class_number(std::int64_t disc) {
  return static_cast<std::int64_t>(reduced_forms(disc).size());
}

int unit_count(std::int64_t fund_disc) {
  if (fund_disc == -3) return 6;
  if (fund_disc == -4) return 4;
  return 2;
}

std::int64_t class_number_analytic(std::int64_t fund_disc) {
  check_disc(fund_disc);
  QuadField::of_discriminant(Integer(fund_disc));  // validates fundamentality
  const std::int64_t n = -fund_disc;
  // h = (w/2) / (2 - chi(2)) * sum_{0<k<|D|/2} chi(k), chi = (D | .).
  // chi is completely multiplicative: evaluate it at primes, extend by a linear sieve.
  const std::int64_t half = (n + 1) / 2;
  std::vector<signed char> chi(static_cast<std::size_t>(std::max<std::int64_t>(half, 2)), 0);
  std::vector<char> composite(chi.size(), 0);
  std::vector<std::int64_t> primes;
  chi[1] = 1;
  std::int64_t sum = half > 1 ? 1 : 0;
  for (std::int64_t k = 2; k < half; ++k) {
    if (!composite[k]) {
      primes.push_back(k);
      chi[k] = static_cast<signed char>(kronecker_prime(fund_disc, k));
    }
    for (const std::int64_t p : primes) {
      if (k * p >= half) break;
      composite[k * p] = 1;
      chi[k * p] = static_cast<signed char>(chi[k] * chi[p]);
      if (k % p == 0) break;
    }
    sum += chi[k];
  }
  const std::int64_t num = unit_count(fund_disc) * sum;
  const std::int64_t den = 2 * (2 - kronecker_prime(fund_disc, 2));
  if (num % den != 0)
    throw Error(ErrorCode::CheckFailed, "class number sum not integral for " + std::to_string(fund_disc));
  return num / den;
}

std::int64_t class_number_order_formula(const QuadField& field, std::int64_t c) {
  if (!field.is_imaginary()) throw Error(ErrorCode::BadDiscriminant, "field is not imaginary");
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "order conductor must be positive");
  const std::int64_t D = field.fund_disc().convert_to<std::int64_t>();
  std::int64_t h = class_number_analytic(D);
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(c))) {
    const auto pp = static_cast<std::int64_t>(p);
    for (int i = 1; i < e; ++i) h *= pp;
    h *= pp - kronecker(Integer(D), Integer(pp));
  }
  if (c > 1) h /= unit_count(D) / 2;
  return h;
}

QuadOrder class_number_order(const QuadField& field, std::int64_t c) {
  if (!field.is_imaginary()) throw Error(ErrorCode::BadDiscriminant, "field is not imaginary");
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "order conductor must be positive");
  const std::int64_t D = field.fund_disc().convert_to<std::int64_t>();
  const std::int64_t disc = c * c * D;
  const std::int64_t h = class_number(disc);
  const std::int64_t formula = class_number_order_formula(field, c);
  if (h != formula)
    throw Error(ErrorCode::CheckFailed, "h(" + std::to_string(disc) + ") = " + std::to_string(h) +
                                            " by enumeration but " + std::to_string(formula) +
                                            " by the order formula");
  return {field, c, disc, h};
}

TowerReport verify_tower_p(const QuadField& field, std::int64_t c, std::int64_t p, int n_max,
                           std::int64_t N) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::InvalidArgument, "tower prime must be an odd prime");
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  const std::int64_t D = field.fund_disc().convert_to<std::int64_t>();
  TowerReport rep;
  rep.fund_disc = D;
  rep.c = c;
  rep.p = p;
  rep.h_c = class_number_order(field, c).h;
  for (std::int64_t v : {c, N, D, rep.h_c})
    if (v % p == 0)
      throw Error(ErrorCode::InvalidArgument,
                  "p = " + std::to_string(p) + " divides c N D_K h(O_c) (factor " +
                      std::to_string(v) + ")");

  std::vector<std::int64_t> h{rep.h_c};
  std::int64_t cond = c;
  for (int n = 1; n <= n_max + 1; ++n) {
    cond *= p;
    h.push_back(class_number_order(field, cond).h);
  }
  rep.first_step_degree = h[1] % h[0] == 0 ? h[1] / h[0] : 0;
  std::int64_t expected = 1;
  for (int n = 1; n <= n_max; ++n) {
    TowerStep s;
    s.n = n;
    s.h = h[n];
    s.ratio_to_base = h[n] % h[1] == 0 ? h[n] / h[1] : 0;
    s.step_ratio = h[n + 1] % h[n] == 0 ? h[n + 1] / h[n] : 0;
    rep.steps.push_back(s);
    if (s.ratio_to_base != expected || s.step_ratio != p)
      throw Error(ErrorCode::RatioMismatch,
                  "n = " + std::to_string(n) + ": h ratios " + std::to_string(h[n]) + "/" +
                      std::to_string(h[1]) + " and " + std::to_string(h[n + 1]) + "/" +
                      std::to_string(h[n]));
    expected *= p;
  }
  return rep;
}

InertStepReport verify_inert_step(const QuadField& field, std::int64_t k, std::int64_t p) {
  if (k < 2 || !is_squarefree(Integer(k)))
    throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(k) + " is not squarefree");
  if (p < 2 || k % p != 0 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(p) + " is not a prime divisor of " + std::to_string(k));
  const Integer& D = field.fund_disc();
  for (auto q : distinct_prime_factors(static_cast<std::uint64_t>(k)))
    if (kronecker(D, Integer(q)) != -1)
      throw Error(ErrorCode::NotInert,
                  std::to_string(q) + " is not inert in Q(sqrt " + field.d().str() + ")");
  InertStepReport rep;
  rep.k = k;
  rep.p = p;
  rep.h_k = class_number_order(field, k).h;
  rep.h_k_over_p = class_number_order(field, k / p).h;
  rep.degree = rep.h_k % rep.h_k_over_p == 0 ? rep.h_k / rep.h_k_over_p : 0;
  if (rep.degree != p + 1)
    throw Error(ErrorCode::RatioMismatch, "h(O_k)/h(O_k/p) = " + std::to_string(rep.h_k) + "/" +
                                              std::to_string(rep.h_k_over_p) + ", expected " +
                                              std::to_string(p + 1));
  return rep;
}

bool heegner_hypothesis(const QuadField& field, std::uint64_t N) {
  for (auto p : distinct_prime_factors(N))
    if (kronecker(field.fund_disc(), Integer(p)) != 1) return false;
  return true;
}

}  // namespace heegrank
