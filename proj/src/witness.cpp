#include "heegrank/witness.hpp"

#include <array>
#include <cmath>
#include <set>

namespace heegrank {

Integer witness_modulus(std::uint64_t conductor) {
  Integer M = 4;
  for (auto p : distinct_prime_factors(conductor)) M *= p;
  return M;
}

WitnessConfig build_config(const CurveQ& curve) {
  return {curve, witness_modulus(curve.conductor())};
}

Integer eval_f(const WitnessConfig& config, const Integer& m) {
  const Integer& M = config.M;
  const Integer X = 1 + M * m;
  const Integer M2 = M * M;
  const Integer M4 = M2 * M2;
  return X * X * X + config.curve.a() * M4 * X + config.curve.b() * M4 * M2;
}

WitnessPoint make_point(const WitnessConfig& config, const Integer& m) {
  const Integer f = eval_f(config, m);
  if (is_perfect_square(f))
    throw Error(ErrorCode::SquareF, "f(" + m.str() + ") = " + f.str() + " is a square");
  if (f >= 0)
    throw Error(ErrorCode::NonNegativeF, "f(" + m.str() + ") = " + f.str() + " is not negative");
  const auto [s, d] = squarefree_kernel(f);
  QuadField field(d);
  const Integer& M = config.M;
  const Rational x(1 + M * m, M * M);
  const Rational yc(s, M * M * M);
  QuadraticPoint point(QuadElem(field, x), QuadElem(field, Rational(0), yc));
  if (!group_over(config.curve, field).on_curve(point))
    throw Error(ErrorCode::CheckFailed, "P_" + m.str() + " is not on the curve");
  return {m, f, s, d, field, point};
}

std::vector<SplitCheck> split_checks(const CurveQ& curve, const QuadField& field) {
  std::vector<SplitCheck> out;
  const Integer& D = field.fund_disc();
  for (auto p : distinct_prime_factors(curve.conductor())) {
    SplitCheck c;
    c.p = p;
    if (p == 2) {
      Integer r = D % 8;
      if (r < 0) r += 8;
      c.ok = r == 1;
      c.symbol = c.ok ? 1 : kronecker(D, Integer(2));
      c.detail = "D_K mod 8 = " + r.str();
    } else {
      c.symbol = kronecker(D, Integer(p));
      c.ok = c.symbol == 1;
      c.detail = "(D_K|" + std::to_string(p) + ") = " + std::to_string(c.symbol);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool check_split(const CurveQ& curve, const QuadField& field) {
  for (const auto& c : split_checks(curve, field))
    if (!c.ok) return false;
  return true;
}

std::optional<Integer> cm_discriminant(const CurveQ& curve) {
  static const std::array<std::pair<const char*, int>, 13> table = {{
      {"0", -3},
      {"1728", -4},
      {"-3375", -7},
      {"8000", -8},
      {"-32768", -11},
      {"54000", -12},
      {"287496", -16},
      {"-884736", -19},
      {"-12288000", -27},
      {"16581375", -28},
      {"-884736000", -43},
      {"-147197952000", -67},
      {"-262537412640768000", -163},
  }};
  const Rational j = curve.j_invariant();
  if (!is_integral(j)) return std::nullopt;
  const Integer jn = numerator_of(j);
  for (const auto& [text, disc] : table)
    if (jn == Integer(text)) return Integer(disc);
  return std::nullopt;
}

namespace {

// Smallest real root of x^3 + a x + b. Newton from the left is monotone there
// because the cubic is increasing and concave on (-inf, 0].
long double smallest_root(const Integer& a, const Integer& b) {
  const long double fa = a.convert_to<long double>();
  const long double fb = b.convert_to<long double>();
  long double x = -(1.0L + std::max(std::fabs(fa), std::fabs(fb)));
  for (int i = 0; i < 500; ++i) {
    const long double fx = x * x * x + fa * x + fb;
    const long double dfx = 3 * x * x + fa;
    const long double next = x - fx / dfx;
    if (!(next > x)) break;
    x = next;
  }
  return x;
}

}  // namespace

Integer scan_start(const WitnessConfig& config) {
  const long double r =
      config.M.convert_to<long double>() * config.M.convert_to<long double>() *
      smallest_root(config.curve.a(), config.curve.b());
  Integer m(static_cast<long long>(std::floor((r - 1) / config.M.convert_to<long double>())));
  while (eval_f(config, m) >= 0) --m;
  return m;
}

WitnessFamily scan_family(const CurveQ& curve, std::size_t k, const ScanRange& range) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "family size must be at least 1");
  WitnessFamily fam{build_config(curve), cm_discriminant(curve), 0, 0, 0, {}, {}, {}};
  fam.start = range.start ? *range.start : scan_start(fam.config);
  std::optional<Integer> cm_field;
  if (fam.cm_disc) cm_field = QuadField::of_radicand(*fam.cm_disc).fund_disc();

  std::set<Integer> seen;
  Integer m = fam.start;
  for (std::uint64_t i = 0; i < range.max_candidates && fam.members.size() < k; ++i, --m) {
    fam.scanned = i + 1;
    fam.last_m = m;
    const Integer f = eval_f(fam.config, m);
    if (f >= 0 || is_perfect_square(f)) continue;
    WitnessPoint wp = make_point(fam.config, m);
    if (seen.count(wp.d)) continue;
    if (cm_field && wp.field.fund_disc() == *cm_field) continue;

    auto split = split_checks(curve, wp.field);
    for (const auto& c : split)
      if (!c.ok)
        throw Error(ErrorCode::CheckFailed, "split check failed at p = " + std::to_string(c.p) +
                                                " for m = " + m.str());
    if (gcd(wp.field.fund_disc(), Integer(curve.conductor())) != 1)
      throw Error(ErrorCode::CheckFailed, "D_K not prime to N for m = " + m.str());

    WitnessMember member{wp, nontorsion_certificate(curve, wp.point), std::move(split)};
    if (!member.nontorsion.nontorsion) {
      fam.torsion.push_back(std::move(member));
      continue;
    }
    seen.insert(wp.d);
    fam.members.push_back(std::move(member));
  }
  if (fam.members.size() < k)
    throw Error(ErrorCode::SearchExhausted,
                "found " + std::to_string(fam.members.size()) + " of " + std::to_string(k) +
                    " members in " + std::to_string(range.max_candidates) +
                    " candidates from m = " + fam.start.str() + "; raise the bound");
  fam.certificate = independence_certificate(fam);
  return fam;
}

IndependenceReport independence_certificate(const WitnessFamily& family) {
  if (family.members.empty())
    throw Error(ErrorCode::InvalidArgument, "independence certificate of an empty family");
  const CurveQ& curve = family.config.curve;
  IndependenceReport rep;
  std::set<Integer> kernels;
  for (const auto& mem : family.members) {
    const auto& wp = mem.wp;
    const std::string who = "member m = " + wp.m.str() + ": ";
    const auto group = group_over(curve, wp.field);
    if (!group.on_curve(wp.point))
      throw Error(ErrorCode::CheckFailed, who + "point is not on the curve");
    if (!nontorsion_certificate(curve, wp.point).nontorsion)
      throw Error(ErrorCode::CheckFailed, who + "clause (i) failed, point is torsion");
    if (!kernels.insert(wp.d).second)
      throw Error(ErrorCode::CheckFailed,
                  who + "clause (ii) failed, kernel " + wp.d.str() + " repeats");
    const QuadraticPoint c(quad_conj(wp.point.x()), quad_conj(wp.point.y()));
    if (!group.equal(c, group.neg(wp.point)))
      throw Error(ErrorCode::CheckFailed, who + "clause (iii) failed, conj(P) != -P");
    rep.kernels.push_back(wp.d.str());
  }
  rep.rank_lower_bound = family.members.size();
  std::string fields;
  for (std::size_t i = 0; i < rep.kernels.size(); ++i)
    fields += (i ? ", sqrt(" : "sqrt(") + rep.kernels[i] + ")";
  rep.statement = "rank E(Q(" + fields + ")) >= " + std::to_string(rep.rank_lower_bound) +
                  ": if sum a_i P_i = O, the automorphism negating sqrt(d_i) and fixing the "
                  "other square roots sends P_i to -P_i and fixes the rest, so 2 a_i P_i = O "
                  "and a_i = 0 since P_i has infinite order";
  return rep;
}

}  // namespace heegrank
