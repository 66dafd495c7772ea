#pragma once

#include "zkframes/catalog.hpp"
#include "zkframes/frames.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace zkframes {

struct JobOptions {
  long max_k = 24;          // frame orders 1..max_k are examined
  long prime_range = 500;   // representation checks cover primes below this
  std::int64_t fingerprint_norm = 0;  // 0: 5 below dimension 40, else 4 (5 in the full tier)
  Tier tier = Tier::Fast;
  EnumerationOptions enumeration;
  std::uint64_t frame_budget = kDefaultFrameBudget;
  std::uint64_t count_budget = 50000000;  // node budget of each A_k >= 2n check
};

/// Claim statuses: pass, fail, skipped (not run at this tier or budget), external (rests
/// on a code that is not in the catalog).
struct JobReport {
  std::string id;
  std::string title;
  std::vector<ClaimResult> claims;
  nlohmann::json details = nlohmann::json::object();
  double elapsed_seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

struct TheoremInfo {
  std::string id;
  std::vector<std::string> aliases;
  std::string title;
};

const std::vector<TheoremInfo>& theorem_list();
/// Accepts an id or an alias; throws UnsupportedTheorem.
const TheoremInfo& find_theorem(const std::string& id);

JobReport run_theorem(const Catalog& catalog, const std::string& id, const JobOptions& opts = {});

/// Names of the 46 printed matrices and codes the catalog must contain.
const std::vector<std::string>& printed_entry_names();

struct CatalogReport {
  std::vector<ClaimResult> closure;
  std::vector<EntryReport> entries;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Verifies the named entries, or every entry when `names` is empty.
CatalogReport verify_catalog(const Catalog& catalog, Tier tier, const std::vector<std::string>& names = {},
                             const EnumerationOptions& opts = {});

}  // namespace zkframes
