#include "check.hpp"
#include "oracles.hpp"

#include "heegrank/forms.hpp"

using namespace heegrank;

namespace {

QuadField field_of(std::int64_t fund_disc) {
  return QuadField::of_discriminant(Integer(fund_disc));
}

bool is_fundamental(std::int64_t D) {
  try {
    return QuadField::of_discriminant(Integer(D)).fund_disc() == D;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("reduced forms examples") {
  CHECK(reduced_forms(-3) == std::vector<FormClass>{{1, 1, 1}});
  CHECK(reduced_forms(-4) == std::vector<FormClass>{{1, 0, 1}});
  const auto f23 = reduced_forms(-23);
  REQUIRE(f23.size() == 3);
  CHECK(std::find(f23.begin(), f23.end(), FormClass{1, 1, 6}) != f23.end());
  CHECK(std::find(f23.begin(), f23.end(), FormClass{2, 1, 3}) != f23.end());
  CHECK(std::find(f23.begin(), f23.end(), FormClass{2, -1, 3}) != f23.end());
  CHECK_ERROR_CODE(reduced_forms(-5), ErrorCode::BadDiscriminant);
  CHECK_ERROR_CODE(reduced_forms(5), ErrorCode::BadDiscriminant);
  CHECK(class_number(-63) == 4);
  CHECK(class_number(-175) == 6);
}

TEST_CASE("enumeration matches a brute-force count") {
  for (std::int64_t d = -3; d >= -20000; --d) {
    if (oracle::mod(d, 4) > 1) continue;
    REQUIRE(class_number(d) == oracle::class_number_bruteforce(d));
  }
}

TEST_CASE("class number of orders") {
  CHECK(class_number_order(field_of(-4), 1).h == 1);
  CHECK(class_number_order(field_of(-4), 2).h == 1);
  CHECK(class_number_order(field_of(-7), 5).h == 6);
  CHECK(class_number_order(field_of(-3), 2).h == 1);
  CHECK(class_number_order(field_of(-7), 3).disc == -63);
  CHECK_ERROR_CODE(class_number_order(field_of(5), 1), ErrorCode::BadDiscriminant);
  CHECK(unit_count(-3) == 6);
  CHECK(unit_count(-4) == 4);
  CHECK(unit_count(-7) == 2);
  CHECK(class_number_analytic(-3) == 1);
  CHECK(class_number_analytic(-4) == 1);
  CHECK(class_number_analytic(-7) == 1);
  CHECK(class_number_analytic(-23) == 3);
  CHECK(class_number_analytic(-163) == 1);
  CHECK(class_number_analytic(-9995) == class_number(-9995));
}

TEST_CASE("enumeration equals the order formula for |c^2 D_K| <= 10^5") {
  int checked = 0;
  for (std::int64_t D = -3; D >= -100000; --D) {
    if (!is_fundamental(D)) continue;
    const QuadField k = field_of(D);
    for (std::int64_t c = 1; c * c * -D <= 100000; ++c) {
      REQUIRE(class_number(c * c * D) == class_number_order_formula(k, c));
      ++checked;
    }
  }
  CHECK(checked > 30000);
}

TEST_CASE("reduction lands on exactly one reduced form") {
  auto rng = seeded_rng(30);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (std::int64_t disc : {-23LL, -47LL, -71LL, -175LL, -63LL, -1036LL, -4 * 37LL}) {
    const auto forms = reduced_forms(disc);
    for (const auto& f : forms) REQUIRE(f.is_reduced());
    for (int i = 0; i < 200; ++i) {
      const FormClass f = forms[static_cast<std::size_t>(i) % forms.size()];
      // apply a random SL2(Z) matrix [[p, q], [r, s]]
      std::int64_t p = coef(rng), r = coef(rng);
      if (std::gcd(p, r) != 1) continue;
      std::int64_t q = 0, s = 0;
      // extended Euclid for p s - q r = 1
      {
        std::int64_t old_r = p, rr = r, old_s = 1, ss = 0, old_t = 0, tt = 1;
        while (rr != 0) {
          const std::int64_t quo = old_r / rr;
          std::tie(old_r, rr) = std::make_pair(rr, old_r - quo * rr);
          std::tie(old_s, ss) = std::make_pair(ss, old_s - quo * ss);
          std::tie(old_t, tt) = std::make_pair(tt, old_t - quo * tt);
        }
        // old_s p + old_t r = old_r = +-1
        s = old_s * old_r;
        q = -old_t * old_r;
      }
      REQUIRE(p * s - q * r == 1);
      const FormClass g{f.A * p * p + f.B * p * r + f.C * r * r,
                        2 * f.A * p * q + f.B * (p * s + q * r) + 2 * f.C * r * s,
                        f.A * q * q + f.B * q * s + f.C * s * s};
      REQUIRE(g.disc() == disc);
      REQUIRE(reduce(g) == f);
    }
  }
}

TEST_CASE("tower ratios") {
  const auto rep = verify_tower_p(field_of(-7), 1, 3, 3);
  REQUIRE(rep.steps.size() == 3);
  CHECK(rep.steps[0].h == 4);
  CHECK(rep.steps[1].h == 12);
  CHECK(rep.steps[2].h == 36);
  CHECK(rep.steps[0].ratio_to_base == 1);
  for (const auto& s : rep.steps) CHECK(s.step_ratio == 3);
  const auto split = verify_tower_p(field_of(-7), 1, 11, 2);
  CHECK(split.first_step_degree == 10);
  for (const auto& s : split.steps) CHECK(s.step_ratio == 11);
  CHECK_ERROR_CODE(verify_tower_p(field_of(-7), 1, 7, 2), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(verify_tower_p(field_of(-7), 1, 2, 2), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(verify_tower_p(field_of(-7), 3, 3, 2), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(verify_tower_p(field_of(-7), 1, 37, 1, 37), ErrorCode::InvalidArgument);
}

TEST_CASE("tower powers over several fields") {
  for (std::int64_t D : {-7LL, -8LL, -11LL, -19LL, -20LL, -43LL}) {
    for (std::int64_t p : {3LL, 5LL, 7LL}) {
      const QuadField k = field_of(D);
      if (D % p == 0) continue;
      const auto rep = verify_tower_p(k, 1, p, 2);
      std::int64_t pw = 1;
      for (const auto& s : rep.steps) {
        REQUIRE(s.ratio_to_base == pw);
        pw *= p;
      }
    }
  }
}

TEST_CASE("inert steps") {
  const QuadField k = field_of(-7);
  CHECK(verify_inert_step(k, 5, 5).degree == 6);
  CHECK(verify_inert_step(k, 3, 3).degree == 4);
  CHECK(verify_inert_step(k, 15, 3).degree == 4);
  CHECK_ERROR_CODE(verify_inert_step(k, 2, 2), ErrorCode::NotInert);
  CHECK_ERROR_CODE(verify_inert_step(k, 9, 3), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(verify_inert_step(k, 15, 7), ErrorCode::InvalidArgument);
}

TEST_CASE("inert steps for all inert primes up to 50") {
  for (std::int64_t D : {-7LL, -11LL, -19LL, -43LL}) {
    const QuadField k = field_of(D);
    int count = 0;
    for (auto p : oracle::primes_below(51)) {
      if (kronecker(Integer(D), Integer(p)) != -1) continue;
      REQUIRE(verify_inert_step(k, static_cast<std::int64_t>(p), static_cast<std::int64_t>(p))
                  .degree == static_cast<std::int64_t>(p) + 1);
      ++count;
    }
    CHECK(count >= 5);
  }
}

TEST_CASE("Heegner hypothesis") {
  CHECK(heegner_hypothesis(field_of(-7), 37));
  CHECK(heegner_hypothesis(field_of(-3), 37));
  CHECK_FALSE(heegner_hypothesis(field_of(-4), 7));
  CHECK_FALSE(heegner_hypothesis(field_of(-7), 7));
}

}  // TEST_SUITE
