#pragma once

// Complex uniformization of E, Heegner forms of level N and the Heegner
// points they give through the modular parametrization.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heegrank/curve.hpp"
#include "heegrank/forms.hpp"
#include "heegrank/realnum.hpp"

namespace heegrank {

inline constexpr unsigned kDefaultDigits = 30;
inline constexpr unsigned kGuardDigits = 10;

inline unsigned working_digits(unsigned digits) { return digits + kGuardDigits; }

Real to_real(const Integer& n);
Real to_real(const Rational& q);
Integer floor_to_integer(const Real& x);

struct PeriodLattice {
  unsigned digits = kDefaultDigits;
  Integer a, b;
  // w1 is real for curves over Q; Im(w2 / w1) > 0.
  Complex w1, w2;
  // SL2(Z)-reduced basis used for series evaluation, tau = r2 / r1 in the
  // standard fundamental domain.
  Complex r1, r2, tau;
  Real g2_residual, g3_residual;
};

// g2, g3 of the lattice spanned by (w1, w2) from Eisenstein q-series.
std::pair<Complex, Complex> lattice_invariants(const Complex& w1, const Complex& w2,
                                               unsigned digits);

// AGM over the root configuration of x^3 + a x + b, confirmed by
// g2 = -4a, g3 = -4b. PrecisionUnreachable if no configuration verifies.
PeriodLattice period_lattice(const CurveQ& curve, unsigned digits = kDefaultDigits);

// Real coordinates (x, y) with z = x w1 + y w2.
std::pair<Real, Real> lattice_coordinates(const PeriodLattice& lat, const Complex& z);

// Canonical representative with coordinates in [0, 1)^2; idempotent.
Complex reduce_mod_lattice(const PeriodLattice& lat, const Complex& z);

// |z - lambda| for the nearest lattice point lambda.
Real lattice_distance(const PeriodLattice& lat, const Complex& z);

struct ComplexPoint {
  bool infinity = false;
  Complex x, y;
};

// (wp(z), wp'(z)/2), or O for z in the lattice.
ComplexPoint elliptic_exp(const PeriodLattice& lat, const Complex& z);

// Inverse of elliptic_exp, reduced into the fundamental parallelogram.
Complex elliptic_log(const PeriodLattice& lat, const Complex& x, const Complex& y);

// Continued fraction reconstruction: the first convergent p/q with
// q <= max_den and |x - p/q| <= tol.
std::optional<Rational> recognize_rational(const Real& x, const Integer& max_den,
                                           const Real& tol);

// Smallest T with (T+1) r^(T+1) / (1-r)^2 < 10^-tol_digits, r = exp(-2 pi Im tau).
// The left side bounds sum_{n>T} n r^n, and |a_n| <= n.
std::uint64_t modular_terms(double im_tau, int tol_digits);

// sum_{n<=T} a_n/n q^n at the current default precision.
Complex modular_sum(const std::vector<std::int64_t>& an, const Complex& tau, std::uint64_t T);

// z = sum_{n<=T} (a_n/n) exp(2 pi i n tau) with T = modular_terms(Im tau, tol_digits).
// MissingPrime if the table does not reach T.
Complex modular_param(const ApTable& table, const Complex& tau, int tol_digits);

struct HeegnerForm {
  std::int64_t A = 0, B = 0, C = 0;
  std::int64_t fund_disc = 0;
  std::int64_t c = 1;  // conductor of the order
  std::uint64_t N = 1;
  FormClass cls;       // reduced representative of the class

  std::int64_t disc() const { return B * B - 4 * A * C; }
  FormClass form() const { return {A, B, C}; }
  Complex tau() const;  // (-B + sqrt(disc)) / 2A at the current precision
  std::string str() const;
};

// Smallest beta in [0, 2N) with beta^2 = D_K mod 4N; NoSquareRoot if none.
std::int64_t heegner_beta(std::uint64_t N, std::int64_t fund_disc);

// One form [A, B, C] with N | A and B = c beta mod 2N per class of the order
// of conductor c, sorted by class. SearchExhausted after max_attempts (A, B)
// candidates.
std::vector<HeegnerForm> heegner_forms(std::uint64_t N, std::int64_t fund_disc, std::int64_t c,
                                       std::uint64_t max_attempts = 10000);
// Same, for a discriminant c^2 D_K given directly.
std::vector<HeegnerForm> heegner_taus(std::uint64_t N, std::int64_t disc,
                                      std::uint64_t max_attempts = 10000);

// Relation between the lattice of the modular parametrization and the
// lattice of the curve model, found from periods of f over Gamma_0(N).
struct ModularLattice {
  bool homothety = false;
  Rational scale;       // z_curve = scale * z_f
  Rational k;           // Lambda_f = k Lambda when homothety
  std::vector<std::pair<Rational, Rational>> periods;  // in (w1, w2) coordinates
  Real max_error;       // worst distance of a period from its rational coordinates
};

class HeegnerEngine {
 public:
  HeegnerEngine(ApTable table, unsigned digits = kDefaultDigits);

  unsigned digits() const { return digits_; }
  const CurveQ& curve() const { return table_.curve(); }
  const ApTable& table() const { return table_; }
  const PeriodLattice& lattice() const { return lattice_; }
  const ModularLattice& modular_lattice() const { return modular_; }

  // a_p from the engine's table, extending it when needed.
  std::int64_t ap(std::uint64_t p);
  // Raw modular parametrization at tau.
  Complex z_f(const Complex& tau);
  // Heegner point of a form as an element of C / Lambda of the curve model.
  Complex z_point(const HeegnerForm& f);

  int tol_digits() const { return static_cast<int>(digits_ + 5); }

 private:
  void ensure_coefficients(std::uint64_t T);
  ModularLattice reconcile();

  ApTable table_;
  unsigned digits_;
  PeriodLattice lattice_;
  std::vector<std::int64_t> an_;
  ModularLattice modular_;
};

struct HeegnerTrace {
  HeegnerForm form;
  Complex z;        // Heegner point in C / Lambda
  Complex trace_z;  // z + conj(z), reduced
  bool trace_is_zero = false;
  ComplexPoint image;
  std::optional<RationalPoint> point;
  Real residual;
  TorsionCertificate certificate;
};

// Trace of the conductor-1 Heegner point down to Q, recognized as a rational
// point and checked on the curve exactly. ClassNumberNotOne, RecognitionFailed.
HeegnerTrace heegner_trace_to_rational(HeegnerEngine& engine, std::int64_t fund_disc);

struct NormCheck {
  std::uint64_t prime = 0;
  std::int64_t a_prime = 0;  // after ap_shift
  int ap_shift = 0;
  std::vector<HeegnerForm> upper;  // forms whose points are summed
  std::vector<HeegnerForm> lower;  // base point forms
  std::int64_t class_count_ratio = 0;
  Real residual;
};

// |sum z_i - a_l z_1| mod Lambda over the h(l^2 D_K) conductor-l points.
// NotInert, ClassNumberNotOne.
NormCheck verify_norm_inert(HeegnerEngine& engine, std::int64_t fund_disc, std::uint64_t ell,
                            int ap_shift = 0);

// |sum z' - (a_p z_p - z_1)| mod Lambda over the conductor-p^2 points above one
// conductor-p point. NotInert, ClassNumberNotOne.
NormCheck verify_norm_tower(HeegnerEngine& engine, std::int64_t fund_disc, std::uint64_t p);

}  // namespace heegrank
