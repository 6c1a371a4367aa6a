#pragma once

// Explicit points P_m = ((1+Mm)/M^2, sqrt f(m)/M^3) over imaginary quadratic
// fields in which every prime of bad reduction splits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heegrank/curve.hpp"

namespace heegrank {

struct WitnessConfig {
  CurveQ curve;
  Integer M;  // 4 * product of the distinct primes dividing N
};

struct WitnessPoint {
  Integer m;
  Integer f_m;
  Integer s;  // f_m = s^2 d
  Integer d;
  QuadField field;
  QuadraticPoint point;
};

// One prime of N and the evidence that it splits in the field.
struct SplitCheck {
  std::uint64_t p = 0;
  int symbol = 0;        // kronecker(D_K, p); for p = 2, +1 iff D_K = 1 mod 8
  std::string detail;    // "D_K mod 8 = 1" style witness for p = 2
  bool ok = false;
};

struct WitnessMember {
  WitnessPoint wp;
  TorsionCertificate nontorsion;
  std::vector<SplitCheck> split;
};

struct IndependenceReport {
  std::size_t rank_lower_bound = 0;
  std::vector<std::string> kernels;
  std::string statement;
};

struct WitnessFamily {
  WitnessConfig config;
  std::optional<Integer> cm_disc;
  Integer start;
  Integer last_m;
  std::uint64_t scanned = 0;
  std::vector<WitnessMember> members;
  // Candidates that passed every field check but turned out to be torsion.
  std::vector<WitnessMember> torsion;
  IndependenceReport certificate;
};

struct ScanRange {
  std::optional<Integer> start;         // default: scan_start(config)
  std::uint64_t max_candidates = 100000;
};

WitnessConfig build_config(const CurveQ& curve);
Integer witness_modulus(std::uint64_t conductor);

// (1+Mm)^3 + a M^4 (1+Mm) + b M^6
Integer eval_f(const WitnessConfig& config, const Integer& m);

// NonNegativeF / SquareF when f(m) does not give an imaginary quadratic field.
WitnessPoint make_point(const WitnessConfig& config, const Integer& m);

std::vector<SplitCheck> split_checks(const CurveQ& curve, const QuadField& field);
bool check_split(const CurveQ& curve, const QuadField& field);

// Discriminant of the CM order for the 13 rational CM j-invariants.
std::optional<Integer> cm_discriminant(const CurveQ& curve);

// Largest m with 1 + Mm below the smallest real root of X^3 + aM^4 X + bM^6,
// confirmed by the exact sign of f(m).
Integer scan_start(const WitnessConfig& config);

WitnessFamily scan_family(const CurveQ& curve, std::size_t k, const ScanRange& range = {});

// Re-checks (i) non-torsion, (ii) distinct kernels, (iii) conj(P) = -P.
// CheckFailed names the member and the clause.
IndependenceReport independence_certificate(const WitnessFamily& family);

}  // namespace heegrank
