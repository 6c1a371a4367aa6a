#include "heegrank/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace heegrank {

namespace bm = boost::multiprecision;

Real to_real(const Integer& n) {
  Real r;
  mpfr_set_z(r.backend().data(), n.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const Rational& q) { return to_real(numerator_of(q)) / to_real(denominator_of(q)); }

Integer floor_to_integer(const Real& x) {
  Integer n;
  mpfr_get_z(n.backend().data(), x.backend().data(), MPFR_RNDD);
  return n;
}

namespace {

Integer round_to_integer(const Real& x) { return floor_to_integer(x + Real(0.5)); }

Complex scaled(const Integer& n, const Complex& z) { return to_real(n) * z; }

// z = x b1 + y b2 with x, y real.
std::pair<Real, Real> coords(const Complex& b1, const Complex& b2, const Complex& z) {
  const Real det = b1.re * b2.im - b2.re * b1.im;
  return {(z.re * b2.im - b2.re * z.im) / det, (b1.re * z.im - z.re * b1.im) / det};
}

void reduce_basis(Complex& r1, Complex& r2, const Real& eps) {
  for (int it = 0; it < 10000; ++it) {
    Complex t = r2 / r1;
    const Integer n = round_to_integer(t.re);
    if (n != 0) {
      r2 = r2 - scaled(n, r1);
      t = r2 / r1;
    }
    if (norm2(t) < 1 - eps) {
      Complex old = r1;
      r1 = r2;
      r2 = -old;
      continue;
    }
    return;
  }
  throw Error(ErrorCode::PrecisionUnreachable, "lattice basis reduction did not terminate");
}

Complex agm(Complex a, Complex b, const Real& eps) {
  for (int i = 0; i < 1000; ++i) {
    Complex a1 = Real(0.5) * (a + b);
    Complex b1 = sqrt(a * b);
    if (norm2(a1 - b1) > norm2(a1 + b1)) b1 = -b1;
    a = std::move(a1);
    b = std::move(b1);
    if (abs(a - b) <= eps * abs(a)) return a;
  }
  throw Error(ErrorCode::PrecisionUnreachable, "AGM did not converge");
}

Complex two_pi_i() { return {Real(0), 2 * real_pi()}; }

Complex cpow(const Complex& z, int n) {
  Complex r(Real(1));
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

Real polish_root(const Integer& a, const Integer& b, Real x) {
  const Real fa = to_real(a), fb = to_real(b);
  for (int i = 0; i < 100; ++i) {
    const Real f = x * x * x + fa * x + fb;
    const Real df = 3 * x * x + fa;
    if (df == 0) break;
    const Real step = f / df;
    x -= step;
    if (abs(step) <= bm::abs(x) * bm::pow(Real(10), -static_cast<int>(Real::default_precision())))
      break;
  }
  return x;
}

// Roots of x^3 + a x + b as (e1, e2, e3): descending when all real, else e1
// real and e2 in the upper half plane.
std::array<Complex, 3> cubic_roots(const Integer& a, const Integer& b) {
  const Real fa = to_real(a), fb = to_real(b);
  const Integer s = 4 * a * a * a + 27 * b * b;
  if (s < 0) {
    const Real m = 2 * bm::sqrt(-fa / 3);
    const Real arg = (3 * fb / (2 * fa)) * bm::sqrt(-3 / fa);
    const Real theta = bm::acos(bm::max(Real(-1), bm::min(Real(1), arg))) / 3;
    std::array<Real, 3> r;
    for (int k = 0; k < 3; ++k)
      r[k] = polish_root(a, b, m * bm::cos(theta - 2 * real_pi() * k / 3));
    std::sort(r.begin(), r.end(), [](const Real& x, const Real& y) { return x > y; });
    return {Complex(r[0]), Complex(r[1]), Complex(r[2])};
  }
  const Real disc = fb * fb / 4 + fa * fa * fa / 27;
  const Real sq = bm::sqrt(disc);
  const Real e1 = polish_root(a, b, bm::cbrt(-fb / 2 + sq) + bm::cbrt(-fb / 2 - sq));
  const Real im = bm::sqrt(3 * e1 * e1 + 4 * fa) / 2;
  return {Complex(e1), Complex(-e1 / 2, im), Complex(-e1 / 2, -im)};
}

Real work_eps() { return bm::pow(Real(10), -static_cast<int>(Real::default_precision())); }

struct WpValue {
  Complex wp, dwp;
};

// wp and wp' at z (not a lattice point) from the q-expansion in the reduced basis.
WpValue wp_eval(const PeriodLattice& lat, const Complex& z) {
  const Real eps = work_eps();
  const Complex k = two_pi_i() / lat.r1;
  const Complex u = exp(k * z);
  const Complex q = exp(two_pi_i() * lat.tau);
  const Complex one(Real(1));
  const auto f = [&](const Complex& x) {
    const Complex d = one - x;
    return x / (d * d);
  };
  const auto g = [&](const Complex& x) {
    const Complex d = one - x;
    return x * (one + x) / (d * d * d);
  };
  Complex sp = Complex(Real(1) / 12) + f(u);
  Complex sd = g(u);
  const Complex uinv = one / u;
  const Real umax = bm::max(abs(u), abs(uinv));
  Complex qn = q;
  for (int n = 1; n < 100000; ++n) {
    const Complex a = qn * u, b = qn * uinv;
    sp += f(a) + f(b) - Real(2) * f(qn);
    sd += g(a) - g(b);
    if (abs(qn) * umax < eps) break;
    qn *= q;
  }
  const Complex k2 = k * k;
  return {k2 * sp, k2 * k * sd};
}

// Representative of z in the parallelogram centred at 0 for the reduced basis.
Complex centre(const PeriodLattice& lat, const Complex& z) {
  const auto [x, y] = coords(lat.r1, lat.r2, z);
  return z - scaled(round_to_integer(x), lat.r1) - scaled(round_to_integer(y), lat.r2);
}

}  // namespace

std::pair<Complex, Complex> lattice_invariants(const Complex& w1, const Complex& w2,
                                               unsigned digits) {
  PrecisionScope scope(working_digits(digits));
  Complex r1 = w1, r2 = w2;
  const Real eps = work_eps();
  if ((r2 / r1).im < 0) r2 = -r2;
  reduce_basis(r1, r2, eps);
  const Complex q = exp(two_pi_i() * (r2 / r1));
  Complex s3, s5, qn = q;
  for (int n = 1; n < 100000; ++n) {
    Real d3(0), d5(0);
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        d3 += Real(d) * d * d;
        d5 += Real(d) * d * d * d * d;
      }
    s3 += d3 * qn;
    s5 += d5 * qn;
    if (abs(qn) * d5 < eps) break;
    qn *= q;
  }
  const Complex t = Complex(2 * real_pi()) / r1;
  const Complex t4 = cpow(t, 4), t6 = cpow(t, 6);
  Complex g2 = (Real(1) / 12) * t4 * (Complex(Real(1)) + Real(240) * s3);
  Complex g3 = (Real(1) / 216) * t6 * (Complex(Real(1)) - Real(504) * s5);
  return {g2, g3};
}

PeriodLattice period_lattice(const CurveQ& curve, unsigned digits) {
  PrecisionScope scope(working_digits(digits));
  const Real eps = work_eps();
  const Real pi = real_pi();
  const auto roots = cubic_roots(curve.a(), curve.b());
  const Real tol = bm::pow(Real(10), -static_cast<int>(digits) + 5);
  const Real ga = 4 * bm::max(Real(1), bm::abs(to_real(curve.a())));
  const Real gb = 4 * bm::max(Real(1), bm::abs(to_real(curve.b())));

  std::array<int, 3> perm{0, 1, 2};
  do {
    const Complex& e1 = roots[perm[0]];
    const Complex& e2 = roots[perm[1]];
    const Complex& e3 = roots[perm[2]];
    const Complex s13 = sqrt(e1 - e3), s12 = sqrt(e1 - e2), s23 = sqrt(e2 - e3);
    const Complex w1 = Complex(pi) / agm(s13, s12, eps);
    const std::array<Complex, 2> second = {i_times(Complex(pi) / agm(s13, s23, eps)),
                                           Complex(pi) / agm(s23, i_times(s13), eps)};
    for (Complex w2 : second) {
      const Complex t = w2 / w1;
      if (bm::abs(t.im) < eps) continue;
      if (t.im < 0) w2 = -w2;
      const auto [g2, g3] = lattice_invariants(w1, w2, digits);
      const Real r2 = abs(g2 + Complex(4 * to_real(curve.a())));
      const Real r3 = abs(g3 + Complex(4 * to_real(curve.b())));
      if (r2 < tol * ga && r3 < tol * gb) {
        PeriodLattice lat;
        lat.digits = digits;
        lat.a = curve.a();
        lat.b = curve.b();
        lat.w1 = w1;
        lat.w2 = w2;
        lat.r1 = w1;
        lat.r2 = w2;
        reduce_basis(lat.r1, lat.r2, eps);
        lat.tau = lat.r2 / lat.r1;
        lat.g2_residual = r2;
        lat.g3_residual = r3;
        return lat;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw Error(ErrorCode::PrecisionUnreachable,
              "no root configuration reproduces g2, g3 at " + std::to_string(digits) + " digits");
}

std::pair<Real, Real> lattice_coordinates(const PeriodLattice& lat, const Complex& z) {
  PrecisionScope scope(working_digits(lat.digits));
  return coords(lat.w1, lat.w2, z);
}

Complex reduce_mod_lattice(const PeriodLattice& lat, const Complex& z) {
  PrecisionScope scope(working_digits(lat.digits));
  const Real eps = bm::pow(Real(10), -static_cast<int>(lat.digits) - 2);
  auto [x, y] = coords(lat.w1, lat.w2, z);
  const auto frac = [&](Real v) {
    v -= to_real(floor_to_integer(v));
    if (v < eps || v > 1 - eps) v = 0;
    return v;
  };
  x = frac(x);
  y = frac(y);
  return x * lat.w1 + y * lat.w2;
}

Real lattice_distance(const PeriodLattice& lat, const Complex& z) {
  PrecisionScope scope(working_digits(lat.digits));
  const Complex c = centre(lat, z);
  Real best = abs(c);
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      const Real d = abs(c - Real(dx) * lat.r1 - Real(dy) * lat.r2);
      if (d < best) best = d;
    }
  return best;
}

ComplexPoint elliptic_exp(const PeriodLattice& lat, const Complex& z) {
  PrecisionScope scope(working_digits(lat.digits));
  const Complex c = centre(lat, z);
  if (lattice_distance(lat, c) <= bm::pow(Real(10), -static_cast<int>(lat.digits)) * abs(lat.r1))
    return {true, {}, {}};
  const WpValue v = wp_eval(lat, c);
  return {false, v.wp, Real(0.5) * v.dwp};
}

Complex elliptic_log(const PeriodLattice& lat, const Complex& x, const Complex& y) {
  PrecisionScope scope(working_digits(lat.digits));
  constexpr int grid = 16;
  Complex best;
  Real best_err(-1);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Complex z = Real(i + 0.5) / grid * lat.r1 + Real(j + 0.5) / grid * lat.r2;
      const Real err = abs(wp_eval(lat, centre(lat, z)).wp - x);
      if (best_err < 0 || err < best_err) {
        best_err = err;
        best = z;
      }
    }
  const Real stop = bm::pow(Real(10), -static_cast<int>(working_digits(lat.digits)) + 3) *
                    abs(lat.r1);
  Complex z = centre(lat, best);
  bool converged = false;
  for (int it = 0; it < 500; ++it) {
    const WpValue v = wp_eval(lat, z);
    if (abs(v.dwp) == 0) break;
    const Complex step = (v.wp - x) / v.dwp;
    z = centre(lat, z - step);
    if (abs(step) < stop) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorCode::PrecisionUnreachable, "elliptic logarithm did not converge");
  const Complex yy = Real(0.5) * wp_eval(lat, z).dwp;
  if (abs(yy + y) < abs(yy - y)) z = -z;
  return reduce_mod_lattice(lat, z);
}

std::optional<Rational> recognize_rational(const Real& x, const Integer& max_den,
                                           const Real& tol) {
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Real v = x;
  const Real tiny = work_eps();
  for (int it = 0; it < 10000; ++it) {
    const Integer a = floor_to_integer(v);
    const Integer h = a * h1 + h2;
    const Integer k = a * k1 + k2;
    if (k > max_den) return std::nullopt;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const Rational cand(h, k);
    if (bm::abs(x - to_real(cand)) <= tol) return cand;
    const Real frac = v - to_real(a);
    if (frac <= tiny) return std::nullopt;
    v = 1 / frac;
  }
  return std::nullopt;
}

std::uint64_t modular_terms(double im_tau, int tol_digits) {
  if (!(im_tau > 0)) throw Error(ErrorCode::InvalidArgument, "tau must lie in the upper half plane");
  const long double log_r = -2.0L * 3.14159265358979323846264338327950288L * im_tau;
  const long double log_1mr = std::log1p(-std::exp(log_r));
  const long double target = -tol_digits * std::log(10.0L);
  for (std::uint64_t T = 1;; ++T) {
    const long double lhs = std::log(static_cast<long double>(T + 1)) + (T + 1) * log_r -
                            2 * log_1mr;
    if (lhs < target) return T;
    if (T > 100000000)
      throw Error(ErrorCode::PrecisionUnreachable, "tau too close to the real axis");
  }
}

Complex modular_sum(const std::vector<std::int64_t>& an, const Complex& tau, std::uint64_t T) {
  if (an.size() <= T)
    throw Error(ErrorCode::InvalidArgument, "coefficient vector shorter than the term count");
  const Complex q = exp(two_pi_i() * tau);
  Complex qn = q, s;
  for (std::uint64_t n = 1; n <= T; ++n) {
    if (an[n] != 0) s += (Real(an[n]) / Real(n)) * qn;
    qn *= q;
  }
  return s;
}

Complex modular_param(const ApTable& table, const Complex& tau, int tol_digits) {
  const std::uint64_t T = modular_terms(tau.im.convert_to<double>(), tol_digits);
  return modular_sum(hecke_series(table, T), tau, T);
}

Complex HeegnerForm::tau() const {
  const Real den(2 * A);
  return {Real(-B) / den, bm::sqrt(Real(-disc())) / den};
}

std::string HeegnerForm::str() const { return form().str(); }

std::int64_t heegner_beta(std::uint64_t N, std::int64_t fund_disc) {
  const auto n = static_cast<std::int64_t>(N);
  for (std::int64_t beta = 0; beta < 2 * n; ++beta)
    if (mod_floor(beta * beta - fund_disc, 4 * n) == 0) return beta;
  throw Error(ErrorCode::NoSquareRoot, "no beta with beta^2 = " + std::to_string(fund_disc) +
                                           " mod " + std::to_string(4 * n));
}

std::vector<HeegnerForm> heegner_forms(std::uint64_t N, std::int64_t fund_disc, std::int64_t c,
                                       std::uint64_t max_attempts) {
  const QuadField field = QuadField::of_discriminant(Integer(fund_disc));
  if (!field.is_imaginary()) throw Error(ErrorCode::BadDiscriminant, "D_K must be negative");
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "order conductor must be positive");
  const auto n = static_cast<std::int64_t>(N);
  if (gcd64(c, n) != 1)
    throw Error(ErrorCode::InvalidArgument, "order conductor must be prime to N");
  if (!heegner_hypothesis(field, N))
    throw Error(ErrorCode::InvalidArgument, "some prime of N = " + std::to_string(N) +
                                                " does not split in Q(sqrt " + field.d().str() + ")");
  const std::int64_t beta = heegner_beta(N, fund_disc);
  const std::int64_t disc = c * c * fund_disc;
  const std::int64_t h = class_number(disc);
  const std::int64_t beta_c = mod_floor(c * beta, 2 * n);

  std::vector<HeegnerForm> out;
  std::uint64_t attempts = 0;
  for (std::int64_t k = 1; static_cast<std::int64_t>(out.size()) < h; ++k) {
    const std::int64_t A = n * k;
    for (std::int64_t B = beta_c; B < 2 * A && static_cast<std::int64_t>(out.size()) < h;
         B += 2 * n) {
      if (++attempts > max_attempts)
        throw Error(ErrorCode::SearchExhausted,
                    "found " + std::to_string(out.size()) + " of " + std::to_string(h) +
                        " Heegner classes of discriminant " + std::to_string(disc) + " in " +
                        std::to_string(max_attempts) + " attempts");
      const std::int64_t num = B * B - disc;
      if (num % (4 * A) != 0) continue;
      const FormClass f{A, B, num / (4 * A)};
      if (!f.is_primitive()) continue;
      const FormClass r = reduce(f);
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const HeegnerForm& g) { return g.cls == r; });
      if (!seen) out.push_back({A, B, f.C, fund_disc, c, N, r});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const HeegnerForm& x, const HeegnerForm& y) { return x.cls < y.cls; });
  return out;
}

std::vector<HeegnerForm> heegner_taus(std::uint64_t N, std::int64_t disc,
                                      std::uint64_t max_attempts) {
  if (disc >= 0 || (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1))
    throw Error(ErrorCode::BadDiscriminant, std::to_string(disc) + " is not a discriminant");
  const auto ker = squarefree_kernel(Integer(disc));
  const Integer D = mod_floor(ker.d.convert_to<std::int64_t>(), 4) == 1 ? ker.d : 4 * ker.d;
  const Integer c2 = Integer(disc) / D;
  if (Integer(disc) % D != 0 || !is_perfect_square(c2))
    throw Error(ErrorCode::BadDiscriminant, std::to_string(disc) + " is not c^2 D_K");
  return heegner_forms(N, D.convert_to<std::int64_t>(), isqrt(c2).convert_to<std::int64_t>(),
                       max_attempts);
}

HeegnerEngine::HeegnerEngine(ApTable table, unsigned digits)
    : table_(std::move(table)), digits_(digits) {
  if (digits_ < 10) throw Error(ErrorCode::InvalidArgument, "precision below 10 digits");
  lattice_ = period_lattice(table_.curve(), digits_);
  modular_ = reconcile();
}

void HeegnerEngine::ensure_coefficients(std::uint64_t T) {
  if (an_.size() > T) return;
  const std::uint64_t target = std::max<std::uint64_t>(T, 2 * an_.size());
  table_.extend_to(target);
  an_ = hecke_series(table_, target);
}

std::int64_t HeegnerEngine::ap(std::uint64_t p) {
  table_.extend_to(p);
  return table_.at(p);
}

Complex HeegnerEngine::z_f(const Complex& tau) {
  PrecisionScope scope(working_digits(digits_));
  const std::uint64_t T = modular_terms(tau.im.convert_to<double>(), tol_digits());
  ensure_coefficients(T);
  return modular_sum(an_, tau, T);
}

Complex HeegnerEngine::z_point(const HeegnerForm& f) {
  PrecisionScope scope(working_digits(digits_));
  return reduce_mod_lattice(lattice_, to_real(modular_.scale) * z_f(f.tau()));
}

ModularLattice HeegnerEngine::reconcile() {
  PrecisionScope scope(working_digits(digits_));
  const auto n = static_cast<std::int64_t>(curve().conductor());
  const Real tol = bm::pow(Real(10), -static_cast<int>(digits_) + 5);
  ModularLattice ml;
  ml.max_error = 0;
  for (std::int64_t mult = 1; mult <= 3; ++mult) {
    const std::int64_t c = n * mult;
    int used = 0;
    for (std::int64_t d = 1; d < c && used < 4; ++d) {
      if (gcd64(d, c) != 1) continue;
      ++used;
      // gamma = [[a, b], [c, d]] in Gamma_0(N), a = d^-1 mod c, maps
      // (-d + i)/c to (a + i)/c
      std::int64_t inv = 1;
      while (mod_floor(inv * d, c) != 1) ++inv;
      const Real cr(c);
      const Complex t0(Real(-d) / cr, 1 / cr);
      const Complex t1(Real(inv) / cr, 1 / cr);
      const Complex period = z_f(t1) - z_f(t0);
      const auto [x, y] = coords(lattice_.w1, lattice_.w2, period);
      const auto xr = recognize_rational(x, Integer(24), tol);
      const auto yr = recognize_rational(y, Integer(24), tol);
      if (!xr || !yr)
        throw Error(ErrorCode::PrecisionUnreachable,
                    "period of f is not commensurable with the curve lattice");
      const Real err = abs(period - to_real(*xr) * lattice_.w1 - to_real(*yr) * lattice_.w2);
      if (err > ml.max_error) ml.max_error = err;
      ml.periods.emplace_back(*xr, *yr);
    }
  }
  Integer L = 1;
  for (const auto& [x, y] : ml.periods) {
    L = lcm(L, denominator_of(x));
    L = lcm(L, denominator_of(y));
  }
  // Hermite normal form {(alpha, beta), (0, delta)} of the integer lattice
  // spanned by L * periods.
  Integer alpha = 0, beta = 0, delta = 0;
  for (const auto& [x, y] : ml.periods) {
    Integer p = numerator_of(x * L), q = numerator_of(y * L);
    if (p == 0) {
      delta = gcd(delta, q);
      continue;
    }
    if (alpha == 0) {
      alpha = p;
      beta = q;
      if (alpha < 0) {
        alpha = -alpha;
        beta = -beta;
      }
      continue;
    }
    Integer s, t;
    Integer g;
    mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(),
               alpha.backend().data(), p.backend().data());
    const Integer nb = s * beta + t * q;
    delta = gcd(delta, (p / g) * beta - (alpha / g) * q);
    alpha = g;
    beta = nb;
  }
  if (alpha == 0 || delta == 0)
    throw Error(ErrorCode::PrecisionUnreachable, "periods of f do not span a lattice");
  delta = abs(delta);
  beta %= delta;
  if (alpha == delta && beta == 0) {
    ml.homothety = true;
    ml.k = Rational(alpha, L);
    ml.scale = 1 / ml.k;
  } else {
    ml.homothety = false;
    ml.k = 0;
    ml.scale = Rational(L);
  }
  return ml;
}

namespace {

void require_class_number_one(std::int64_t fund_disc) {
  const std::int64_t h = class_number(fund_disc);
  if (h != 1)
    throw Error(ErrorCode::ClassNumberNotOne,
                "h(" + std::to_string(fund_disc) + ") = " + std::to_string(h));
}

void require_inert(std::int64_t fund_disc, std::uint64_t ell, std::uint64_t N) {
  if (!is_prime(ell)) throw Error(ErrorCode::InvalidArgument, std::to_string(ell) + " is not prime");
  if (N % ell == 0)
    throw Error(ErrorCode::InvalidArgument, std::to_string(ell) + " divides N = " + std::to_string(N));
  if (kronecker(Integer(fund_disc), Integer(ell)) != -1)
    throw Error(ErrorCode::NotInert,
                std::to_string(ell) + " is not inert in the field of discriminant " +
                    std::to_string(fund_disc));
}

const HeegnerForm& class_rep(const std::vector<HeegnerForm>& forms, const FormClass& f) {
  const FormClass r = reduce(f);
  for (const auto& g : forms)
    if (g.cls == r) return g;
  throw Error(ErrorCode::CheckFailed, "no Heegner representative for class " + r.str());
}

}  // namespace

HeegnerTrace heegner_trace_to_rational(HeegnerEngine& engine, std::int64_t fund_disc) {
  QuadField::of_discriminant(Integer(fund_disc));
  require_class_number_one(fund_disc);
  const CurveQ& curve = engine.curve();
  const auto forms = heegner_forms(curve.conductor(), fund_disc, 1);
  const unsigned digits = engine.digits();
  PrecisionScope scope(working_digits(digits));
  const PeriodLattice& lat = engine.lattice();

  HeegnerTrace tr;
  tr.form = forms.front();
  tr.z = engine.z_point(tr.form);
  tr.trace_z = reduce_mod_lattice(lat, tr.z + conj(tr.z));
  const Real tol = bm::pow(Real(10), -static_cast<int>(digits) + 5);
  const Real dist = lattice_distance(lat, tr.trace_z);
  if (dist < tol) {
    tr.trace_is_zero = true;
    tr.image.infinity = true;
    tr.point = RationalPoint::zero();
    tr.residual = dist;
    tr.certificate.nontorsion = false;
    tr.certificate.order = 1;
    tr.certificate.note = "trace is the identity";
    return tr;
  }
  tr.image = elliptic_exp(lat, tr.trace_z);
  const Real sx = bm::max(Real(1), abs(tr.image.x));
  const Real sy = bm::max(Real(1), abs(tr.image.y));
  if (bm::abs(tr.image.x.im) > tol * sx || bm::abs(tr.image.y.im) > tol * sy)
    throw Error(ErrorCode::RecognitionFailed, "trace image is not real");
  const Integer max_den = bm::pow(Integer(10), digits / 2);
  const auto xr = recognize_rational(tr.image.x.re, max_den, tol * sx);
  const auto yr = recognize_rational(tr.image.y.re, max_den * max_den, tol * sy);
  if (!xr || !yr)
    throw Error(ErrorCode::RecognitionFailed, "no small rational matches the trace coordinates");
  RationalPoint P(*xr, *yr);
  if (!group_over_q(curve).on_curve(P))
    throw Error(ErrorCode::RecognitionFailed,
                "recognized (" + to_string(*xr) + ", " + to_string(*yr) + ") is not on the curve");
  tr.point = P;
  tr.residual = bm::max(bm::abs(tr.image.x.re - to_real(*xr)), bm::abs(tr.image.y.re - to_real(*yr)));
  tr.certificate = nontorsion_certificate(curve, P);
  return tr;
}

NormCheck verify_norm_inert(HeegnerEngine& engine, std::int64_t fund_disc, std::uint64_t ell,
                            int ap_shift) {
  QuadField::of_discriminant(Integer(fund_disc));
  require_class_number_one(fund_disc);
  const std::uint64_t N = engine.curve().conductor();
  require_inert(fund_disc, ell, N);
  NormCheck nc;
  nc.prime = ell;
  nc.ap_shift = ap_shift;
  nc.a_prime = engine.ap(ell) + ap_shift;
  nc.lower = heegner_forms(N, fund_disc, 1);
  nc.upper = heegner_forms(N, fund_disc, static_cast<std::int64_t>(ell));
  nc.class_count_ratio = static_cast<std::int64_t>(nc.upper.size() / nc.lower.size());
  PrecisionScope scope(working_digits(engine.digits()));
  Complex sum;
  for (const auto& f : nc.upper) sum += engine.z_point(f);
  const Complex z1 = engine.z_point(nc.lower.front());
  nc.residual = lattice_distance(engine.lattice(), sum - Real(nc.a_prime) * z1);
  return nc;
}

NormCheck verify_norm_tower(HeegnerEngine& engine, std::int64_t fund_disc, std::uint64_t p) {
  QuadField::of_discriminant(Integer(fund_disc));
  require_class_number_one(fund_disc);
  const std::uint64_t N = engine.curve().conductor();
  require_inert(fund_disc, p, N);
  const auto pp = static_cast<std::int64_t>(p);
  const auto f1 = heegner_forms(N, fund_disc, 1);
  const auto fp = heegner_forms(N, fund_disc, pp);
  const auto fp2 = heegner_forms(N, fund_disc, pp * pp);

  NormCheck nc;
  nc.prime = p;
  nc.a_prime = engine.ap(p);
  nc.class_count_ratio = static_cast<std::int64_t>(fp2.size() / fp.size());
  const HeegnerForm& base = fp.front();

  // T_p images of the base form: p tau and (tau + j)/p.
  std::vector<FormClass> images{{base.A, pp * base.B, pp * pp * base.C}};
  for (std::int64_t j = 0; j < pp; ++j)
    images.push_back({base.A * pp * pp, pp * (base.B - 2 * base.A * j),
                      base.A * j * j - base.B * j + base.C});
  std::vector<HeegnerForm> low;
  for (auto f : images) {
    const std::int64_t g = gcd64(gcd64(f.A, f.B), f.C);
    f = {f.A / g, f.B / g, f.C / g};
    if (f.disc() == fp2.front().disc())
      nc.upper.push_back(class_rep(fp2, f));
    else if (f.disc() == fund_disc)
      low.push_back(class_rep(f1, f));
    else
      throw Error(ErrorCode::CheckFailed, "Hecke image " + f.str() + " has unexpected discriminant");
  }
  if (nc.upper.size() != p || low.size() != 1)
    throw Error(ErrorCode::CheckFailed, "Hecke images do not split as p + 1");
  nc.lower = {base, low.front()};

  PrecisionScope scope(working_digits(engine.digits()));
  Complex sum;
  for (const auto& f : nc.upper) sum += engine.z_point(f);
  const Complex target = Real(nc.a_prime) * engine.z_point(base) - engine.z_point(low.front());
  nc.residual = lattice_distance(engine.lattice(), sum - target);
  return nc;
}

}  // namespace heegrank
