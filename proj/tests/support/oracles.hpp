#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library routine it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline i64 mod(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline bool prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes_below(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p < n; ++p)
    if (prime(p)) out.push_back(p);
  return out;
}

// #{(x, y) in F_p^2 : y^2 = x^3 + a x + b}, by enumerating every pair.
inline u64 affine_points(i64 a, i64 b, u64 p) {
  const i64 q = static_cast<i64>(p);
  u64 count = 0;
  for (i64 x = 0; x < q; ++x) {
    const i64 rhs = mod(mod(mod(x * x, q) * x, q) + mod(a, q) * x + mod(b, q), q);
    for (i64 y = 0; y < q; ++y)
      if (mod(y * y, q) == rhs) ++count;
  }
  return count;
}

inline i64 brute_ap(i64 a, i64 b, u64 p) {
  return static_cast<i64>(p) + 1 - static_cast<i64>(affine_points(a, b, p) + 1);
}

// Quadratic residues mod p by squaring every element.
inline std::set<i64> residues(u64 p) {
  std::set<i64> out;
  for (i64 x = 1; x < static_cast<i64>(p); ++x) out.insert(mod(x * x, static_cast<i64>(p)));
  return out;
}

inline i64 powmod(i64 b, i64 e, i64 m) {
  __int128 r = 1, x = mod(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<i64>(r);
}

// Legendre symbol through Euler's criterion.
inline int euler_legendre(i64 a, i64 p) {
  if (mod(a, p) == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Class number by listing all reduced forms with a plain triple loop over
// (a, b) and checking c, without the library's reduction routine.
inline i64 class_number_bruteforce(i64 disc) {
  i64 h = 0;
  for (i64 a = 1; 3 * a * a <= -disc; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      const i64 num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      i64 g = std::gcd(std::gcd(a, std::abs(b)), c);
      if (g == 1) ++h;
    }
  }
  return h;
}

// Rational points of y^2 = x^3 + a x + b with x = u / t^2, |u| <= u_max,
// 1 <= t <= t_max, gcd(u, t) = 1. Returned as (u, t, v) with y = v / t^3.
struct SmallPoint {
  i64 u, t, v;
};

inline std::vector<SmallPoint> small_points(i64 a, i64 b, i64 u_max, i64 t_max) {
  using boost::multiprecision::mpz_int;
  std::vector<SmallPoint> out;
  for (i64 t = 1; t <= t_max; ++t) {
    const mpz_int t2 = mpz_int(t) * t, t4 = t2 * t2, t6 = t4 * t2;
    for (i64 u = -u_max; u <= u_max; ++u) {
      if (std::gcd(std::abs(u), t) != 1) continue;
      // y^2 t^6 = u^3 + a u t^4 + b t^6
      const mpz_int rhs = mpz_int(u) * u * u + a * mpz_int(u) * t4 + b * t6;
      if (rhs < 0) continue;
      const mpz_int r = sqrt(rhs);
      if (r * r != rhs) continue;
      out.push_back({u, t, r.convert_to<i64>()});
      if (r != 0) out.push_back({u, t, -r.convert_to<i64>()});
    }
  }
  return out;
}

using Float50 = boost::multiprecision::cpp_bin_float_50;

// Largest real root of x^3 + a x + b by bisection.
inline Float50 largest_root(i64 a, i64 b) {
  const auto f = [&](const Float50& x) { return x * x * x + a * x + b; };
  Float50 hi = 1;
  while (f(hi) <= 0 || hi * hi < std::abs(a)) hi *= 2;
  Float50 lo = -hi;
  // walk down from hi until the sign changes to bracket the top root
  Float50 step = hi / 4096;
  Float50 x = hi;
  while (f(x - step) > 0 && x - step > lo) x -= step;
  lo = x - step;
  hi = x;
  for (int i = 0; i < 400; ++i) {
    Float50 mid = (lo + hi) / 2;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

// Int_{x0}^{inf} dx / sqrt(x^3 + a x + b) for the largest real root x0,
// by double-exponential quadrature in 50-digit binary floating point.
inline Float50 real_period_quadrature(i64 a, i64 b) {
  const Float50 x0 = largest_root(a, b);
  // x^3 + a x + b = (x - x0)(x^2 + x0 x + x0^2 + a)
  const auto quad = [&](const Float50& x) { return x * x + x0 * x + x0 * x0 + a; };
  boost::math::quadrature::tanh_sinh<Float50> ts;
  const Float50 split = x0 + 1;
  const Float50 near = ts.integrate(
      [&](const Float50& x, const Float50& xc) {
        // in the left half xc = x0 - x exactly, which keeps x - x0 accurate
        const Float50 d = xc < 0 ? Float50(-xc) : Float50(x - x0);
        return 1 / sqrt(d * quad(x));
      },
      x0, split);
  boost::math::quadrature::exp_sinh<Float50> es;
  const Float50 far = es.integrate(
      [&](const Float50& x) { return 1 / sqrt((x - x0) * quad(x)); }, split,
      std::numeric_limits<Float50>::infinity());
  return near + far;
}

}  // namespace oracle
