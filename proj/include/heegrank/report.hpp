#pragma once

// Canonical JSON reports: fixed key order, integers as decimal strings,
// floating values tagged with their precision.

#include <string>

#include <json.hpp>

#include "heegrank/analytic.hpp"

namespace heegrank {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = HEEGRANK_VERSION;

Json make_report(const std::string& command, Json inputs, Json results, bool ok);
Json error_json(const Error& err);

Json int_json(const Integer& n);
Json int_json(std::int64_t n);
Json rational_json(const Rational& q);
// {"value": "<decimal>", "digits": d}
Json real_json(const Real& x, unsigned digits);
Json complex_json(const Complex& z, unsigned digits);
Json quad_json(const QuadElem& x);
Json point_json(const RationalPoint& p);
Json torsion_json(const TorsionCertificate& c);
Json form_json(const FormClass& f);

// dump(2) plus a trailing newline.
std::string serialize(const Json& report);

}  // namespace heegrank
