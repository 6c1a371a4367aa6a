#include "heegrank/catalog.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "heegrank/bundled_catalog.hpp"

namespace heegrank {

using nlohmann::json;

namespace {

Integer json_integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::CatalogError, what + " is not an integer");
}

CatalogEntry parse_entry(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::CatalogError, where + ": not a JSON object");
  for (const char* key : {"label", "a", "b", "conductor"})
    if (!j.contains(key)) throw Error(ErrorCode::CatalogError, where + ": missing " + key);
  CatalogEntry e;
  e.label = j.at("label").get<std::string>();
  e.a = json_integer(j.at("a"), where + " a");
  e.b = json_integer(j.at("b"), where + " b");
  const Integer n = json_integer(j.at("conductor"), where + " conductor");
  if (n < 1 || n > Integer(std::numeric_limits<std::uint32_t>::max()))
    throw Error(ErrorCode::CatalogError, where + ": conductor out of range");
  e.conductor = n.convert_to<std::uint64_t>();
  if (j.contains("ap_overrides")) {
    for (const auto& [k, v] : j.at("ap_overrides").items()) {
      const Integer p(k);
      e.ap_overrides[p.convert_to<std::uint64_t>()] =
          json_integer(v, where + " override " + k).convert_to<std::int64_t>();
    }
  }
  if (j.contains("reference")) e.reference = j.at("reference").get<std::string>();
  try {
    e.table();  // validates the curve and every override
  } catch (const Error& err) {
    throw Error(ErrorCode::CatalogError, where + " (" + e.label + "): " + err.what());
  }
  return e;
}

}  // namespace

Catalog Catalog::parse(const std::string& text, const std::string& source) {
  Catalog cat;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::CatalogError, where + ": " + ex.what());
    }
    try {
      cat.entries_.push_back(parse_entry(j, where));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::CatalogError, where + ": " + ex.what());
    }
  }
  return cat;
}

Catalog Catalog::load(const std::string& path) { return parse(read_file(path), path); }

const Catalog& Catalog::bundled() {
  static const Catalog cat = parse(kBundledCatalog, "bundled catalog");
  return cat;
}

const CatalogEntry& Catalog::find(const std::string& label) const {
  for (const auto& e : entries_)
    if (e.label == label) return e;
  throw Error(ErrorCode::CatalogError, "no catalog entry '" + label + "'");
}

std::string format_ap_cache(const ApMap& values) {
  std::string out = "p,ap\n";
  for (const auto& [p, ap] : values) out += std::to_string(p) + "," + std::to_string(ap) + "\n";
  return out;
}

ApMap parse_ap_cache(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || (line != "p,ap" && line != "p,ap\r"))
    throw Error(ErrorCode::IoError, "a_p cache must start with the header p,ap");
  ApMap out;
  std::uint64_t last = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      const auto p = std::stoull(line.substr(0, comma), &used);
      const auto ap = std::stoll(line.substr(comma + 1));
      if (p <= last) throw std::invalid_argument("primes not ascending");
      last = p;
      out[p] = ap;
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::IoError, "a_p cache line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

ApMap read_ap_cache(const std::string& path) { return parse_ap_cache(read_file(path)); }

void write_ap_cache(const std::string& path, const ApMap& values) {
  write_file(path, format_ap_cache(values));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << bytes;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace heegrank
