#pragma once

// Curve catalog (JSON lines) and the a_p cache file (CSV "p,ap").

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heegrank/curve.hpp"

namespace heegrank {

struct CatalogEntry {
  std::string label;
  Integer a, b;
  std::uint64_t conductor = 0;
  std::map<std::uint64_t, std::int64_t> ap_overrides;
  std::string reference;  // free text, e.g. where the conductor comes from

  CurveQ curve() const { return CurveQ(a, b, conductor, label); }
  ApTable table() const { return ApTable(curve(), ap_overrides); }
};

class Catalog {
 public:
  // One JSON object per non-blank line; CatalogError names the line.
  static Catalog parse(const std::string& text, const std::string& source = "catalog");
  static Catalog load(const std::string& path);
  // Compiled-in copy of data/catalog.jsonl.
  static const Catalog& bundled();

  const CatalogEntry& find(const std::string& label) const;
  const std::vector<CatalogEntry>& entries() const { return entries_; }

 private:
  std::vector<CatalogEntry> entries_;
};

using ApMap = std::map<std::uint64_t, std::int64_t>;

std::string format_ap_cache(const ApMap& values);
ApMap parse_ap_cache(const std::string& text);
// IoError if unreadable.
ApMap read_ap_cache(const std::string& path);
void write_ap_cache(const std::string& path, const ApMap& values);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace heegrank
