#include "heegrank/report.hpp"

namespace heegrank {

Json make_report(const std::string& command, Json inputs, Json results, bool ok) {
  Json r;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["results"] = std::move(results);
  r["status"] = ok ? "ok" : "failed";
  r["version"] = kVersion;
  return r;
}

Json error_json(const Error& err) {
  Json e;
  e["code"] = std::string(to_string(err.code()));
  e["message"] = err.what();
  return e;
}

Json int_json(const Integer& n) { return n.str(); }

Json int_json(std::int64_t n) { return std::to_string(n); }

Json rational_json(const Rational& q) { return to_string(q); }

Json real_json(const Real& x, unsigned digits) {
  Json j;
  j["value"] = to_decimal(x, digits);
  j["digits"] = digits;
  return j;
}

Json complex_json(const Complex& z, unsigned digits) {
  Json j;
  j["re"] = to_decimal(z.re, digits);
  j["im"] = to_decimal(z.im, digits);
  j["digits"] = digits;
  return j;
}

Json quad_json(const QuadElem& x) {
  Json j;
  j["a"] = to_string(x.a());
  j["b"] = to_string(x.b());
  j["d"] = x.field().d().str();
  return j;
}

Json point_json(const RationalPoint& p) {
  Json j;
  if (p.is_zero()) {
    j["infinity"] = true;
    return j;
  }
  j["x"] = to_string(p.x());
  j["y"] = to_string(p.y());
  return j;
}

Json torsion_json(const TorsionCertificate& c) {
  Json j;
  j["nontorsion"] = c.nontorsion;
  j["order"] = c.order ? Json(std::to_string(*c.order)) : Json(nullptr);
  j["checked_up_to"] = std::to_string(c.checked_up_to);
  j["note"] = c.note;
  return j;
}

Json form_json(const FormClass& f) {
  return Json::array({std::to_string(f.A), std::to_string(f.B), std::to_string(f.C)});
}

std::string serialize(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace heegrank
