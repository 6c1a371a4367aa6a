#include "check.hpp"
#include "oracles.hpp"

#include "heegrank/analytic.hpp"

using namespace heegrank;
namespace bm = boost::multiprecision;

namespace {

CurveQ curve37() { return CurveQ(Integer(-16), Integer(16), 37, "37a-short"); }
ApTable table37() { return ApTable(curve37(), {{2, -2}}); }

Real tenth(int digits) { return ten_to_minus(digits); }

// Multiple n with n * g = +-p, searched up to |n| <= bound.
std::optional<int> multiple_of(const EllipticGroup<Rational>& grp, const RationalPoint& g,
                               const RationalPoint& p, int bound) {
  RationalPoint acc = RationalPoint::zero();
  for (int n = 0; n <= bound; ++n) {
    if (grp.equal(acc, p) || grp.equal(acc, grp.neg(p))) return n;
    acc = grp.add(acc, g);
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("period lattice of 37a-short") {
  const PrecisionScope scope(40);
  const auto lat = period_lattice(curve37(), 30);
  CHECK((lat.w2 / lat.w1).im > 0);
  CHECK(lat.g2_residual < tenth(25));
  CHECK(lat.g3_residual < tenth(25));
  // invariant-differential form of the real period, from double-exponential quadrature
  const oracle::Float50 quad = oracle::real_period_quadrature(-16, 16);
  const Real expected(quad.str(45));
  CHECK(bm::abs(lat.w1.re - expected) < tenth(15));
  CHECK(bm::abs(lat.w1.im) < tenth(25));
  CHECK(bm::abs(lat.w1.re - Real("1.496729323115979814916")) < tenth(20));
  CHECK(bm::abs(lat.w2.im - Real("1.2256946909933950304")) < tenth(18));
}

TEST_CASE("period lattices of other curves") {
  const PrecisionScope scope(40);
  // one real root (27a3-short) and three real roots (y^2 = x^3 - x)
  for (const CurveQ& e : {CurveQ(Integer(0), Integer(16), 27), CurveQ(Integer(-1), Integer(0), 32),
                          CurveQ(Integer(-7), Integer(6), 10)}) {
    for (unsigned digits : {20u, 30u, 50u}) {
      const auto lat = period_lattice(e, digits);
      CHECK((lat.w2 / lat.w1).im > 0);
      const Real tol = tenth(static_cast<int>(digits) - 5);
      CHECK(lat.g2_residual < tol * 4 * bm::max(Real(1), bm::abs(to_real(e.a()))));
      CHECK(lat.g3_residual < tol * 4 * bm::max(Real(1), bm::abs(to_real(e.b()))));
      const auto [g2, g3] = lattice_invariants(lat.r1, lat.r2, digits);
      CHECK(abs(g2 + Complex(4 * to_real(e.a()))) < tol * 100);
      CHECK(abs(g3 + Complex(4 * to_real(e.b()))) < tol * 100);
    }
  }
}

TEST_CASE("elliptic_exp examples") {
  const PrecisionScope scope(40);
  const auto lat = period_lattice(curve37(), 30);
  const auto half = elliptic_exp(lat, Real(0.5) * lat.w1);
  REQUIRE_FALSE(half.infinity);
  CHECK(abs(half.y) < tenth(25));
  CHECK(elliptic_exp(lat, Complex()).infinity);
  CHECK(elliptic_exp(lat, lat.w1 + lat.w2 * Complex(Real(3))).infinity);
  const Complex z(Real("0.3141"), Real("0.2718"));
  const auto p = elliptic_exp(lat, z);
  const auto q = elliptic_exp(lat, z + lat.w1);
  const auto r = elliptic_exp(lat, z - lat.w2 * Complex(Real(2)));
  CHECK(abs(p.x - q.x) < tenth(25));
  CHECK(abs(p.y - r.y) < tenth(25));
  const Complex rhs = p.x * p.x * p.x + Complex(Real(-16)) * p.x + Complex(Real(16));
  CHECK(abs(p.y * p.y - rhs) < tenth(24));
}

TEST_CASE("elliptic exp and log round trip on random points") {
  const PrecisionScope scope(40);
  const auto lat = period_lattice(curve37(), 30);
  auto rng = seeded_rng(40);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int i = 0; i < 20; ++i) {
    const Complex z = Real(u(rng)) * lat.w1 + Real(u(rng)) * lat.w2;
    const auto p = elliptic_exp(lat, z);
    const Complex back = elliptic_log(lat, p.x, p.y);
    REQUIRE(lattice_distance(lat, back - z) < tenth(22));
    const auto p2 = elliptic_exp(lat, back);
    REQUIRE(abs(p2.x - p.x) < tenth(20) * (1 + abs(p.x)));
    REQUIRE(abs(p2.y - p.y) < tenth(20) * (1 + abs(p.y)));
  }
}

TEST_CASE("reduction mod the lattice is idempotent") {
  const PrecisionScope scope(40);
  const auto lat = period_lattice(curve37(), 30);
  auto rng = seeded_rng(41);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const Complex z(Real(u(rng)), Real(u(rng)));
    const Complex r = reduce_mod_lattice(lat, z);
    const Complex rr = reduce_mod_lattice(lat, r);
    REQUIRE(abs(r - rr) < tenth(28));
    REQUIRE(lattice_distance(lat, r - z) < tenth(25));
    const auto [x, y] = lattice_coordinates(lat, r);
    REQUIRE(x >= 0);
    REQUIRE(x < 1);
    REQUIRE(y >= 0);
    REQUIRE(y < 1);
  }
}

TEST_CASE("continued fraction recognition") {
  const PrecisionScope scope(40);
  CHECK(recognize_rational(Real(-97087) / Real(21904), Integer(100000), tenth(30)) ==
        Rational(-97087, 21904));
  CHECK(recognize_rational(Real(4), Integer(10), tenth(30)) == Rational(4));
  CHECK_FALSE(recognize_rational(real_pi(), Integer(1000000), tenth(30)).has_value());
}

TEST_CASE("modular parametrization tail") {
  const double im = std::sqrt(7.0) / 74;
  const auto T = modular_terms(im, 20);
  CHECK(T >= 240);
  CHECK(T <= 300);
  // the bound really is below the tolerance and T is minimal
  const double r = std::exp(-2 * M_PI * im);
  const auto bound = [&](double t) { return (t + 1) * std::pow(r, t + 1) / ((1 - r) * (1 - r)); };
  CHECK(bound(static_cast<double>(T)) < 1e-20);
  CHECK(bound(static_cast<double>(T - 1)) >= 1e-20);
  CHECK_ERROR_CODE(modular_terms(0, 20), ErrorCode::InvalidArgument);
}

TEST_CASE("modular parametrization converges") {
  const PrecisionScope scope(45);
  ApTable table = table37();
  table.extend_to(4000);
  const Complex tau(Real(-17) / 74, bm::sqrt(Real(7)) / 74);
  const auto T = modular_terms(tau.im.convert_to<double>(), 30);
  const auto an = hecke_series(table, 2 * T);
  const Complex z1 = modular_sum(an, tau, T);
  const Complex z2 = modular_sum(an, tau, 2 * T);
  CHECK(abs(z1 - z2) < tenth(30));
  CHECK(abs(modular_param(table, tau, 30) - z1) < tenth(35));
  // far up the imaginary axis every term vanishes
  CHECK(abs(modular_param(table, Complex(Real(0), Real(50)), 30)) < tenth(100));
  CHECK_ERROR_CODE(modular_param(ApTable(curve37(), {{2, -2}}), tau, 30), ErrorCode::MissingPrime);
}

TEST_CASE("Heegner forms") {
  CHECK(heegner_beta(37, -7) == 17);
  const auto f = heegner_forms(37, -7, 1);
  REQUIRE(f.size() == 1);
  CHECK(f[0].form() == FormClass{37, 17, 2});
  const PrecisionScope scope(40);
  CHECK(abs(f[0].tau() - Complex(Real(-17) / 74, bm::sqrt(Real(7)) / 74)) < tenth(35));
  for (std::int64_t c : {1, 3, 5, 9}) {
    const auto forms = heegner_forms(37, -7, c);
    REQUIRE(static_cast<std::int64_t>(forms.size()) == class_number(c * c * -7));
    std::set<FormClass> classes;
    for (const auto& h : forms) {
      REQUIRE(h.disc() == c * c * -7);
      REQUIRE(h.A % 37 == 0);
      REQUIRE(oracle::mod(h.B * h.B - h.disc(), 4 * 37) == 0);
      REQUIRE(h.form().is_primitive());
      REQUIRE(h.tau().im > 0);
      classes.insert(reduce(h.form()));
    }
    REQUIRE(classes.size() == forms.size());
  }
  CHECK(heegner_taus(37, -63).size() == 4);
  CHECK_ERROR_CODE(heegner_beta(7, -4), ErrorCode::NoSquareRoot);
  CHECK_ERROR_CODE(heegner_forms(37, -7, 37), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(heegner_forms(37, -8, 1), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(heegner_taus(37, -6), ErrorCode::BadDiscriminant);
  CHECK_ERROR_CODE(heegner_taus(37, -7 * 37 * 37), ErrorCode::InvalidArgument);
}

TEST_CASE("modular lattice of 37a-short is a homothety") {
  HeegnerEngine eng(table37(), 30);
  const auto& ml = eng.modular_lattice();
  CHECK(ml.homothety);
  CHECK(ml.k == 2);
  CHECK(ml.scale == Rational(1, 2));
  CHECK(ml.max_error < tenth(20));
}

TEST_CASE("Heegner trace gives a multiple of the generator") {
  const auto grp = group_over_q(curve37());
  const RationalPoint gen(Rational(0), Rational(4));
  // exhaustive small-height search: every point found is a multiple of (0, 4)
  const auto pts = oracle::small_points(-16, 16, 2000, 12);
  REQUIRE(pts.size() >= 10);
  for (const auto& s : pts) {
    const RationalPoint p(Rational(s.u, s.t * s.t), Rational(s.v, s.t * s.t * s.t));
    REQUIRE(grp.on_curve(p));
    REQUIRE(multiple_of(grp, gen, p, 30).has_value());
  }
  std::optional<RationalPoint> first;
  for (unsigned digits : {30u, 60u}) {
    HeegnerEngine eng(table37(), digits);
    const auto tr = heegner_trace_to_rational(eng, -7);
    REQUIRE(tr.point.has_value());
    REQUIRE(grp.on_curve(*tr.point));
    CHECK(tr.certificate.nontorsion);
    CHECK(tr.residual < tenth(static_cast<int>(digits) - 5));
    const auto n = multiple_of(grp, gen, *tr.point, 30);
    REQUIRE(n.has_value());
    CHECK(*n != 0);
    if (first) CHECK(grp.equal(*first, *tr.point));
    first = tr.point;
  }
  CHECK(grp.equal(*first, RationalPoint(Rational(4), Rational(4))));
}

TEST_CASE("trace needs class number one") {
  HeegnerEngine eng(table37(), 30);
  CHECK_ERROR_CODE(heegner_trace_to_rational(eng, -47), ErrorCode::ClassNumberNotOne);
}

TEST_CASE("inert norm relation and its negative control") {
  HeegnerEngine eng(table37(), 30);
  const auto nc = verify_norm_inert(eng, -7, 3);
  CHECK(nc.upper.size() == 4);
  CHECK(nc.a_prime == -3);
  CHECK(nc.residual < tenth(8));
  const auto ctl = verify_norm_inert(eng, -7, 3, 1);
  CHECK(ctl.residual > tenth(3));
  CHECK_ERROR_CODE(verify_norm_inert(eng, -7, 2), ErrorCode::NotInert);
  CHECK_ERROR_CODE(verify_norm_inert(eng, -7, 37), ErrorCode::InvalidArgument);
}

TEST_CASE("inert residual shrinks with precision") {
  Real last(1);
  for (unsigned digits : {20u, 30u, 40u}) {
    HeegnerEngine eng(table37(), digits);
    const auto nc = verify_norm_inert(eng, -7, 3);
    CHECK(nc.residual < tenth(static_cast<int>(digits) - 5));
    CHECK(nc.residual < last);
    last = nc.residual;
  }
}

TEST_CASE("more inert primes") {
  HeegnerEngine eng(table37(), 30);
  for (std::uint64_t ell : {5ULL, 13ULL}) {
    const auto nc = verify_norm_inert(eng, -7, ell);
    CHECK(nc.upper.size() == ell + 1);
    CHECK(nc.residual < tenth(8));
  }
}

TEST_CASE("tower relation") {
  HeegnerEngine eng(table37(), 30);
  const auto nc = verify_norm_tower(eng, -7, 3);
  CHECK(nc.class_count_ratio == 3);
  CHECK(class_number(81 * -7) == 3 * class_number(9 * -7));
  CHECK(nc.upper.size() == 3);
  CHECK(nc.residual < tenth(6));
  // tighter tolerance at higher precision still holds
  HeegnerEngine fine(table37(), 50);
  CHECK(verify_norm_tower(fine, -7, 3).residual < tenth(8));
}

}  // TEST_SUITE
