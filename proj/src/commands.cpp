#include "heegrank/commands.hpp"

#include <cstdio>
#include <filesystem>

#include "heegrank/prime_search.hpp"
#include "heegrank/recurrence.hpp"
#include "heegrank/witness.hpp"

namespace heegrank {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Json opt_json(const std::optional<std::uint64_t>& v) {
  return v ? Json(std::to_string(*v)) : Json(nullptr);
}

Json forms_json(const std::vector<HeegnerForm>& forms) {
  Json arr = Json::array();
  for (const auto& f : forms) arr.push_back(form_json(f.form()));
  return arr;
}

Json lattice_json(const HeegnerEngine& eng) {
  const unsigned d = eng.digits();
  const auto& lat = eng.lattice();
  const auto& ml = eng.modular_lattice();
  Json j;
  j["w1"] = complex_json(lat.w1, d);
  j["w2"] = complex_json(lat.w2, d);
  j["g2_residual"] = real_json(lat.g2_residual, 6);
  j["g3_residual"] = real_json(lat.g3_residual, 6);
  j["modular_homothety"] = ml.homothety;
  j["modular_k"] = rational_json(ml.k);
  j["modular_scale"] = rational_json(ml.scale);
  return j;
}

}  // namespace

CommandResult run_guarded(const std::string& command, const Json& inputs,
                          const std::function<std::pair<Json, bool>()>& body) {
  try {
    auto [results, ok] = body();
    return {make_report(command, inputs, std::move(results), ok), ok ? 0 : 1};
  } catch (const Error& err) {
    Json results;
    results["error"] = error_json(err);
    return {make_report(command, inputs, std::move(results), false),
            is_check_failure(err.code()) ? 1 : 2};
  } catch (const std::exception& ex) {
    Json results;
    results["error"] = {{"code", "InvalidArgument"}, {"message", ex.what()}};
    return {make_report(command, inputs, std::move(results), false), 2};
  }
}

CommandResult cmd_ap(const Catalog& catalog, const ApOptions& opt) {
  Json inputs;
  inputs["curve"] = opt.label;
  inputs["max_prime"] = std::to_string(opt.max_prime);
  inputs["cache"] = opt.cache ? Json(*opt.cache) : Json(nullptr);
  return run_guarded("ap", inputs, [&]() -> std::pair<Json, bool> {
    ApTable table = catalog.find(opt.label).table();
    table.extend_to(opt.max_prime);
    bool cache_hit = false;
    if (opt.cache && std::filesystem::exists(*opt.cache)) {
      table.merge(read_ap_cache(*opt.cache));
      cache_hit = true;
    }
    const CurveQ& curve = table.curve();
    Json ap = Json::object();
    Json bad = Json::array();
    bool hasse = true;
    for (const auto& [p, v] : table.entries()) {
      ap[std::to_string(p)] = std::to_string(v);
      const bool good = curve.disc() % p != 0;
      if (good) {
        hasse = hasse && within_hasse(v, p);
      } else {
        bad.push_back(std::to_string(p));
      }
    }
    if (opt.cache) write_ap_cache(*opt.cache, table.entries());
    Json r;
    r["count"] = std::to_string(table.entries().size());
    r["hasse_bound_ok"] = hasse;
    r["primes_dividing_disc"] = bad;
    r["cache_merged"] = cache_hit;
    r["ap"] = ap;
    return {r, hasse};
  });
}

CommandResult cmd_witness(const Catalog& catalog, const WitnessOptions& opt) {
  Json inputs;
  inputs["curve"] = opt.label;
  inputs["count"] = std::to_string(opt.count);
  inputs["bound"] = std::to_string(opt.bound);
  inputs["start"] = opt.start ? Json(*opt.start) : Json(nullptr);
  return run_guarded("witness", inputs, [&]() -> std::pair<Json, bool> {
    const CurveQ curve = catalog.find(opt.label).curve();
    ScanRange range;
    range.max_candidates = opt.bound;
    if (opt.start) range.start = Integer(*opt.start);
    const WitnessFamily fam = scan_family(curve, opt.count, range);
    const auto member_json = [](const WitnessMember& mem, const Integer& M) {
      Json j;
      j["m"] = int_json(mem.wp.m);
      j["f_m"] = int_json(mem.wp.f_m);
      j["s"] = int_json(mem.wp.s);
      j["d"] = int_json(mem.wp.d);
      j["fund_disc"] = int_json(mem.wp.field.fund_disc());
      j["x"] = to_string(mem.wp.point.x().a());
      j["y_coeff"] = to_string(Rational(mem.wp.s, M * M * M));
      j["nontorsion"] = torsion_json(mem.nontorsion);
      Json sc = Json::array();
      for (const auto& c : mem.split) {
        Json e;
        e["p"] = std::to_string(c.p);
        e["symbol"] = std::to_string(c.symbol);
        e["detail"] = c.detail;
        e["ok"] = c.ok;
        sc.push_back(e);
      }
      j["split_checks"] = sc;
      return j;
    };
    Json r;
    r["M"] = int_json(fam.config.M);
    r["cm_disc"] = fam.cm_disc ? int_json(*fam.cm_disc) : Json(nullptr);
    r["start"] = int_json(fam.start);
    r["last_m"] = int_json(fam.last_m);
    r["scanned"] = std::to_string(fam.scanned);
    Json members = Json::array();
    for (const auto& mem : fam.members) members.push_back(member_json(mem, fam.config.M));
    r["members"] = members;
    Json torsion = Json::array();
    for (const auto& mem : fam.torsion) torsion.push_back(member_json(mem, fam.config.M));
    r["torsion_members"] = torsion;
    Json cert;
    cert["rank_lower_bound"] = std::to_string(fam.certificate.rank_lower_bound);
    cert["kernels"] = fam.certificate.kernels;
    cert["statement"] = fam.certificate.statement;
    r["certificate"] = cert;
    return {r, fam.members.size() == opt.count};
  });
}

CommandResult cmd_classfield(const ClassFieldOptions& opt) {
  Json inputs;
  inputs["fund_disc"] = std::to_string(opt.fund_disc);
  inputs["conductor"] = std::to_string(opt.conductor);
  inputs["prime"] = opt.prime ? Json(std::to_string(*opt.prime)) : Json(nullptr);
  inputs["nmax"] = std::to_string(opt.nmax);
  inputs["level"] = std::to_string(opt.level);
  inputs["inert_step"] =
      opt.inert_step ? Json::array({std::to_string(opt.inert_step->first),
                                    std::to_string(opt.inert_step->second)})
                     : Json(nullptr);
  return run_guarded("classfield", inputs, [&]() -> std::pair<Json, bool> {
    const QuadField field = QuadField::of_discriminant(Integer(opt.fund_disc));
    if (!field.is_imaginary())
      throw Error(ErrorCode::BadDiscriminant, "fundamental discriminant must be negative");
    Json r;
    if (opt.inert_step) {
      const auto rep = verify_inert_step(field, opt.inert_step->first, opt.inert_step->second);
      r["mode"] = "inert_step";
      r["k"] = std::to_string(rep.k);
      r["p"] = std::to_string(rep.p);
      r["h_k"] = std::to_string(rep.h_k);
      r["h_k_over_p"] = std::to_string(rep.h_k_over_p);
      r["degree"] = std::to_string(rep.degree);
      return {r, true};
    }
    if (!opt.prime) throw Error(ErrorCode::InvalidArgument, "need --prime or --inert-step");
    const auto rep = verify_tower_p(field, opt.conductor, *opt.prime, opt.nmax, opt.level);
    r["mode"] = "tower";
    r["h_c"] = std::to_string(rep.h_c);
    r["first_step_degree"] = std::to_string(rep.first_step_degree);
    Json steps = Json::array(), ratios = Json::array();
    for (const auto& s : rep.steps) {
      Json e;
      e["n"] = std::to_string(s.n);
      e["h"] = std::to_string(s.h);
      e["ratio_to_base"] = std::to_string(s.ratio_to_base);
      e["step_ratio"] = std::to_string(s.step_ratio);
      steps.push_back(e);
      ratios.push_back(std::to_string(s.step_ratio));
    }
    r["steps"] = steps;
    r["ratios"] = ratios;
    return {r, true};
  });
}

CommandResult cmd_heegner(const Catalog& catalog, const HeegnerOptions& opt) {
  Json inputs;
  inputs["curve"] = opt.label;
  inputs["fund_disc"] = std::to_string(opt.fund_disc);
  inputs["verify_inert"] = opt_json(opt.verify_inert);
  inputs["verify_tower"] = opt_json(opt.verify_tower);
  inputs["precision"] = std::to_string(opt.precision);
  inputs["tolerance"] = opt.tolerance ? Json(sci(*opt.tolerance)) : Json(nullptr);
  return run_guarded("heegner", inputs, [&]() -> std::pair<Json, bool> {
    if (opt.verify_inert && opt.verify_tower)
      throw Error(ErrorCode::InvalidArgument, "--verify-inert and --verify-tower are exclusive");
    const unsigned d = opt.precision;
    const PrecisionScope scope(working_digits(d));
    HeegnerEngine eng(catalog.find(opt.label).table(), d);
    Json r;
    r["lattice"] = lattice_json(eng);
    if (opt.verify_inert || opt.verify_tower) {
      const bool inert = opt.verify_inert.has_value();
      const double tol = opt.tolerance.value_or(inert ? kInertTolerance : kTowerTolerance);
      const NormCheck nc = inert ? verify_norm_inert(eng, opt.fund_disc, *opt.verify_inert)
                                 : verify_norm_tower(eng, opt.fund_disc, *opt.verify_tower);
      const bool passed = nc.residual < Real(tol);
      r["mode"] = inert ? "inert" : "tower";
      r["prime"] = std::to_string(nc.prime);
      r["a_prime"] = std::to_string(nc.a_prime);
      r["upper_forms"] = forms_json(nc.upper);
      r["lower_forms"] = forms_json(nc.lower);
      r["class_count_ratio"] = std::to_string(nc.class_count_ratio);
      r["residual"] = real_json(nc.residual, 6);
      r["tolerance"] = sci(tol);
      r["passed"] = passed;
      bool ok = passed;
      if (inert) {
        const NormCheck ctl = verify_norm_inert(eng, opt.fund_disc, *opt.verify_inert, 1);
        const bool separated = ctl.residual > Real(kControlFloor);
        r["control_a_prime"] = std::to_string(ctl.a_prime);
        r["control_residual"] = real_json(ctl.residual, 6);
        r["control_separated"] = separated;
        ok = ok && separated;
      } else {
        ok = ok && nc.class_count_ratio == static_cast<std::int64_t>(nc.prime);
      }
      return {r, ok};
    }
    const HeegnerTrace tr = heegner_trace_to_rational(eng, opt.fund_disc);
    r["mode"] = "trace";
    r["form"] = form_json(tr.form.form());
    r["tau"] = complex_json(tr.form.tau(), d);
    r["z"] = complex_json(tr.z, d);
    r["trace_z"] = complex_json(tr.trace_z, d);
    r["trace_is_zero"] = tr.trace_is_zero;
    r["point"] = tr.point ? point_json(*tr.point) : Json(nullptr);
    r["on_curve"] = tr.point ? group_over_q(eng.curve()).on_curve(*tr.point) : false;
    r["residual"] = real_json(tr.residual, 6);
    r["torsion"] = torsion_json(tr.certificate);
    return {r, tr.point.has_value() && tr.certificate.nontorsion};
  });
}

CommandResult cmd_primesearch(const Catalog& catalog, const PrimeSearchOptions& opt) {
  Json inputs;
  inputs["curve"] = opt.label;
  inputs["fund_disc"] = std::to_string(opt.fund_disc);
  inputs["p"] = std::to_string(opt.p);
  inputs["bound"] = std::to_string(opt.bound);
  return run_guarded("primesearch", inputs, [&]() -> std::pair<Json, bool> {
    const CurveQ curve = catalog.find(opt.label).curve();
    const QuadField field = QuadField::of_discriminant(Integer(opt.fund_disc));
    const PrimeSearchResult res = find_q(curve, field, opt.p, opt.bound);
    const auto& c = res.checks;
    Json checks;
    checks["kronecker"] = std::to_string(c.kronecker);
    checks["inert"] = c.inert;
    checks["q_plus_1_mod_p"] = std::to_string(c.q_plus_1_mod_p);
    checks["p_divides_q_plus_1"] = c.divides;
    checks["a_q"] = std::to_string(c.a_q);
    checks["a_q_mod_p"] = std::to_string(c.a_q_mod_p);
    checks["p_not_dividing_a_q"] = c.ap_nonzero;
    Json r;
    r["q"] = std::to_string(res.q);
    r["checks"] = checks;
    r["primes_examined"] = std::to_string(res.primes_examined);
    return {r, c.all()};
  });
}

CommandResult cmd_recurrence(const RecurrenceOptions& opt) {
  Json inputs;
  inputs["p"] = std::to_string(opt.p);
  inputs["ap"] = std::to_string(opt.ap);
  inputs["c0"] = opt.c0;
  inputs["c1"] = opt.c1;
  inputs["steps"] = std::to_string(opt.steps);
  return run_guarded("recurrence", inputs, [&]() -> std::pair<Json, bool> {
    const PrecisionScope scope(working_digits(kDefaultDigits));
    const Integer c0(opt.c0), c1(opt.c1);
    const RecurrenceState st = generate(c0, c1, opt.ap, opt.p, opt.steps);
    const NonintegralResult fn = first_nonintegral(c0, c1, opt.ap, opt.p, opt.steps);
    const CharRoots roots = char_roots(opt.ap, opt.p);
    Json seq = Json::array(), vals = Json::array();
    for (const auto& c : st.seq) seq.push_back(to_string(c));
    for (const auto& v : st.vals) vals.push_back(v ? std::to_string(*v) : "inf");
    const bool tail_ok = tail_decreasing(st);
    Json r;
    r["sequence"] = seq;
    r["valuations"] = vals;
    Json fnj;
    fnj["kind"] = to_string(fn.kind);
    fnj["index"] = std::to_string(fn.index);
    r["first_nonintegral"] = fnj;
    Json rj;
    rj["alpha"] = complex_json(roots.alpha, 30);
    rj["beta"] = complex_json(roots.beta, 30);
    rj["valuations"] = Json::array({to_string(roots.v_alpha), to_string(roots.v_beta)});
    rj["product_error"] = real_json(roots.product_error, 6);
    rj["sum_error"] = real_json(roots.sum_error, 6);
    r["char_roots"] = rj;
    r["supersingular"] = roots.supersingular;
    r["valuation_tail_decreasing"] = tail_ok;
    return {r, fn.kind != NonintegralKind::BoundExhausted && tail_ok};
  });
}

}  // namespace heegrank
