#pragma once

#include "zkframes/codes.hpp"
#include "zkframes/frames.hpp"
#include "zkframes/lattice.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zkframes {

/// One named matrix or code from the data directory.
struct CatalogEntry {
  std::string name;
  std::string kind;  // negacirculant-pair | two-block-matrix | paley | z4-split | generator
  std::int64_t k = 0;
  std::vector<std::string> aliases;
  std::string source;
  std::string file;
  bool checksum_ok = false;
  nlohmann::json data;    // the whole document
  nlohmann::json claims;  // expected values
  std::optional<StarRule> star;
};

/// Lower-cases and strips braces, underscores and spaces, so "C_{13,12}" and "c13,12"
/// name the same entry.
std::string normalize_name(const std::string& name);

/// Directory used when none is given: $ZKFRAMES_DATA if set, else the configured default.
std::filesystem::path default_data_dir();

class Catalog {
 public:
  /// Reads every file listed in MANIFEST.sha256. Throws DataError for a missing manifest,
  /// a missing or unparsable file, or a duplicate name. Checksum mismatches are recorded
  /// per entry instead of thrown.
  static Catalog load(const std::filesystem::path& dir = default_data_dir());

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  /// Throws UnknownName.
  const CatalogEntry& find(const std::string& name) const;
  bool contains(const std::string& name) const;

 private:
  std::vector<CatalogEntry> entries_;
};

/// A built entry: every entry yields a code; matrix entries also carry M.
struct BuiltEntry {
  std::optional<IntMatrix> matrix;
  ZkCode code;
  long ell = 0;  // two-block entries only
  long m = 0;    // M M^T = m I
};

/// Throws the builder's error (NotSelfDual, ConditionViolated, NotSelfOrthogonal, ...)
/// when the data is inconsistent, DataError for malformed documents.
BuiltEntry build(const CatalogEntry& entry);

/// (A B ; -B^T A^T) for negacirculant A, B.
IntMatrix two_block_matrix(const Row& ra, const Row& rb);

enum class Tier { Fast, Full };
Tier parse_tier(const std::string& s);
std::string to_string(Tier t);

/// Largest theta radius run in the given tier for a lattice of this dimension.
std::int64_t theta_radius_limit(std::size_t dimension, Tier tier);

struct ClaimResult {
  std::string claim;
  nlohmann::json expected;
  nlohmann::json computed;
  std::string status;  // pass | fail | skipped
  std::string note;

  nlohmann::json to_json() const;
};

struct EntryReport {
  std::string name;
  std::vector<ClaimResult> claims;
  double elapsed_seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Checksum, self-duality, minimum norm, extremality class, theta prefix, alpha/beta and
/// kissing-number claims of one entry. Claims that need more than the tier allows are
/// reported as skipped.
EntryReport verify(const CatalogEntry& entry, Tier tier, const EnumerationOptions& opts = {});

}  // namespace zkframes
