#pragma once

#include "zkframes/frames.hpp"
#include "zkframes/matrix.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zkframes {

/// Parameters of the 4-dimensional lattice
///   L = {(a,b,c,d) : b == c - ell d, d == a + ell b (mod k)}
/// with norm (a^2 + m b^2 + c^2 + m d^2) / k.
struct FormParams {
  long k = 2;
  long ell = 0;
  long m = 1;

  /// Throws BadParams unless k >= 2, 0 <= ell < k, m >= 1 and m + ell^2 == -1 (mod k).
  void validate() const;
  nlohmann::json to_json() const;
};

struct FormLattice {
  FormParams params;
  IntMatrix spanning;  // rows (k,0,0,0), (0,0,k,0), (1,0,ell,1), (0,1,ell^2+1,ell)
  IntMatrix gram;      // with respect to the form above
};

FormLattice form_lattice(const FormParams& params);

/// Number of vectors of each norm 0..max_norm, by direct search over congruence-constrained
/// quadruples.
std::vector<std::uint64_t> form_theta(const FormParams& params, long max_norm);

struct RepWitness {
  long a = 0, b = 0, c = 0, d = 0;
  long p = 0;

  /// Congruences and a^2 + m b^2 + c^2 + m d^2 = k p.
  bool satisfies(const FormParams& params) const;
  nlohmann::json to_json() const;
};

/// One of the eight representation statements: which primes are represented by the
/// form of `params`, with every prime outside `exceptions` expected to be represented.
struct RepCase {
  std::string id;  // "a" .. "h"
  FormParams params;
  std::vector<long> exceptions;
};

const std::vector<RepCase>& representation_cases();
/// Throws BadParams for an unknown case id.
const RepCase& representation_case(const std::string& id);

/// Exhaustive search in the order (|b|, |d|, |a|, |c|), positive signs first. Returns
/// nullopt when no representation exists (a complete proof of nonexistence for this p).
std::optional<RepWitness> find_representation(long p, const FormParams& params);
std::optional<RepWitness> find_representation(long p, const std::string& case_id);

struct RangeEntry {
  std::string case_id;
  long p = 0;
  std::optional<RepWitness> witness;
  bool expected = false;  // p outside the exception list
  bool agrees() const { return witness.has_value() == expected; }
};

/// All primes below `limit` for one case.
std::vector<RangeEntry> verify_range(const std::string& case_id, long limit);
nlohmann::json range_report_json(const std::vector<RangeEntry>& entries);

struct FramePlan {
  std::string case_id;
  long prime = 0;  // frame norm produced by the representation
  long scale = 1;  // multiplier applied afterwards by frame scaling
  RepWitness witness;

  nlohmann::json to_json() const;
};

/// Splits k = prime * scale with an admissible prime factor that has a witness.
/// Throws Unsupported when the rule rejects k or no factor has a witness.
FramePlan frame_order_for(const StarRule& rule, long k);

}  // namespace zkframes
