#include "check.hpp"

#include "heegrank/witness.hpp"

using namespace heegrank;

namespace {

CurveQ curve37() { return CurveQ(Integer(-16), Integer(16), 37, "37a-short"); }
CurveQ curve27() { return CurveQ(Integer(0), Integer(16), 27, "27a3-short"); }

// Independent re-check of everything a member must satisfy.
void recheck_member(const CurveQ& curve, const Integer& M, const WitnessMember& mem) {
  const auto& wp = mem.wp;
  const Integer X = 1 + M * wp.m;
  const Integer f = X * X * X + curve.a() * pow(M, 4) * X + curve.b() * pow(M, 6);
  REQUIRE(f == wp.f_m);
  REQUIRE(f < 0);
  REQUIRE(wp.s * wp.s * wp.d == f);
  REQUIRE(wp.d < 0);
  REQUIRE_FALSE(is_perfect_square(f));
  // on-curve identity x^3 + a x + b = f / M^6 = y^2 in exact rationals
  const Rational x(X, M * M);
  const Rational rhs = x * x * x + Rational(curve.a()) * x + Rational(curve.b());
  REQUIRE(rhs == Rational(f, pow(M, 6)));
  const Rational yc(wp.s, pow(M, 3));
  REQUIRE(yc * yc * Rational(wp.d) == rhs);
  REQUIRE(wp.point.x().is_rational());
  REQUIRE(wp.point.x().a() == x);
  REQUIRE(wp.point.y().b() == yc);
  // every prime of N splits
  const Integer D = wp.field.fund_disc();
  for (auto p : distinct_prime_factors(curve.conductor())) {
    if (p == 2) {
      REQUIRE(((D % 8) + 8) % 8 == 1);
    } else {
      REQUIRE(kronecker(D, Integer(p)) == 1);
    }
  }
  REQUIRE(gcd(D, Integer(curve.conductor())) == 1);
  REQUIRE(mem.nontorsion.nontorsion);
  const auto g = group_over(curve, wp.field);
  const QuadraticPoint c(quad_conj(wp.point.x()), quad_conj(wp.point.y()));
  REQUIRE(g.equal(c, g.neg(wp.point)));
}

}  // namespace

TEST_SUITE("witness") {

TEST_CASE("witness modulus") {
  CHECK(witness_modulus(37) == 148);
  CHECK(witness_modulus(15) == 60);
  CHECK(witness_modulus(32) == 8);
  CHECK(witness_modulus(27) == 12);
  CHECK(build_config(curve37()).M == 148);
  for (std::uint64_t n = 1; n < 500; ++n) {
    const Integer M = witness_modulus(n);
    REQUIRE(M % 8 == (n % 2 == 0 ? 0 : 4));
  }
}

TEST_CASE("eval_f examples") {
  const WitnessConfig cfg{CurveQ(Integer(0), Integer(1), 36), Integer(4)};
  CHECK(eval_f(cfg, Integer(0)) == 4097);
  CHECK(eval_f(cfg, Integer(-1)) == 4069);
}

TEST_CASE("split congruence on random m") {
  auto rng = seeded_rng(20);
  std::uniform_int_distribution<std::int64_t> dist(-1'000'000'000, 1'000'000'000);
  const CurveQ with_two(Integer(-1), Integer(0), 32);
  for (const CurveQ& curve : {curve37(), curve27(), with_two}) {
    const auto cfg = build_config(curve);
    for (int i = 0; i < 1000; ++i) {
      const Integer f = eval_f(cfg, Integer(dist(rng)));
      for (auto p : distinct_prime_factors(curve.conductor())) {
        const Integer mod = p == 2 ? Integer(8) : Integer(p);
        REQUIRE(((f % mod) + mod) % mod == 1);
      }
    }
  }
}

TEST_CASE("make_point") {
  const auto cfg = build_config(curve37());
  const auto wp = make_point(cfg, Integer(-656));
  CHECK(wp.f_m == eval_f(cfg, Integer(-656)));
  CHECK(group_over(cfg.curve, wp.field).on_curve(wp.point));
  CHECK_FALSE(wp.point.y().is_rational());
  CHECK_ERROR_CODE(make_point(cfg, Integer(0)), ErrorCode::NonNegativeF);
  // with M = 1, f(0) = 1 + a + b = 9
  const WitnessConfig square_cfg{CurveQ(Integer(0), Integer(8), 6), Integer(1)};
  CHECK_ERROR_CODE(make_point(square_cfg, Integer(0)), ErrorCode::SquareF);
}

TEST_CASE("check_split examples") {
  CHECK(check_split(curve37(), QuadField(Integer(-7))));
  CHECK(check_split(curve37(), QuadField(Integer(-1))));
  const CurveQ n7(Integer(-35), Integer(98), 7);
  CHECK_FALSE(check_split(n7, QuadField(Integer(-1))));
}

TEST_CASE("CM discriminants") {
  CHECK(cm_discriminant(curve27()) == Integer(-3));
  CHECK(cm_discriminant(CurveQ(Integer(-1), Integer(0), 32)) == Integer(-4));
  CHECK_FALSE(cm_discriminant(curve37()).has_value());
}

TEST_CASE("scan start sits just below the real root") {
  for (const CurveQ& curve : {curve37(), curve27()}) {
    const auto cfg = build_config(curve);
    const Integer m0 = scan_start(cfg);
    CHECK(eval_f(cfg, m0) < 0);
    CHECK(eval_f(cfg, m0 + 1) >= 0);
  }
}

TEST_CASE("scan_family for 37a-short") {
  const auto fam = scan_family(curve37(), 5);
  REQUIRE(fam.members.size() == 5);
  CHECK(fam.config.M == 148);
  std::set<Integer> kernels;
  for (const auto& mem : fam.members) {
    recheck_member(fam.config.curve, fam.config.M, mem);
    kernels.insert(mem.wp.d);
  }
  CHECK(kernels.size() == 5);
  CHECK(fam.certificate.rank_lower_bound == 5);
  CHECK(scan_family(curve37(), 5).last_m == fam.last_m);
}

TEST_CASE("scan_family for the CM curve avoids the CM field") {
  const auto fam = scan_family(curve27(), 5);
  REQUIRE(fam.members.size() == 5);
  REQUIRE(fam.cm_disc == Integer(-3));
  for (const auto& mem : fam.members) {
    recheck_member(fam.config.curve, fam.config.M, mem);
    CHECK(mem.wp.field.fund_disc() != -3);
  }
}

TEST_CASE("scan over a non-negative range is exhausted") {
  ScanRange range;
  range.start = Integer(1000);
  range.max_candidates = 50;
  CHECK_ERROR_CODE(scan_family(curve37(), 1, range), ErrorCode::SearchExhausted);
  CHECK_ERROR_CODE(scan_family(curve37(), 0), ErrorCode::InvalidArgument);
}

TEST_CASE("independence certificate clauses") {
  auto fam = scan_family(curve37(), 2);
  WitnessFamily single = fam;
  single.members.erase(single.members.begin() + 1, single.members.end());
  CHECK(independence_certificate(single).rank_lower_bound == 1);

  WitnessFamily dup = fam;
  dup.members.push_back(dup.members.front());
  try {
    independence_certificate(dup);
    FAIL("duplicate kernel accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CheckFailed);
    CHECK(std::string(e.what()).find("(ii)") != std::string::npos);
  }

  // replacing a point by a torsion point of another curve model trips clause (i)
  WitnessFamily torsion = fam;
  const CurveQ e2(Integer(-1), Integer(0), 32);
  torsion.config.curve = e2;
  const QuadField k(Integer(-7));
  torsion.members.erase(torsion.members.begin() + 1, torsion.members.end());
  torsion.members[0].wp.field = k;
  torsion.members[0].wp.point = QuadraticPoint(QuadElem(k, Rational(1)), QuadElem(k, Rational(0)));
  try {
    independence_certificate(torsion);
    FAIL("torsion point accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(i)") != std::string::npos);
  }
  WitnessFamily empty = fam;
  empty.members.clear();
  CHECK_ERROR_CODE(independence_certificate(empty), ErrorCode::InvalidArgument);
}

}  // TEST_SUITE
