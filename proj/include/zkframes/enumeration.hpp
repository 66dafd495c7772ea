#pragma once

#include "zkframes/matrix.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace zkframes {

struct EnumerationOptions {
  std::uint64_t node_budget = 0;  // 0 means unlimited
  unsigned threads = 1;
  std::string checkpoint;  // resumable state file for count_by_norm; empty disables
};

/// Short-vector enumeration on a positive definite integral Gram matrix.
///
/// The Gram matrix is LLL-reduced once on construction. Enumeration is depth-first
/// Schnorr-Euchner over the floating-point GSO of the reduced form; every candidate
/// leaf is re-checked with exact integer arithmetic, and float bounds are only used
/// with a safety margin so no lattice vector inside the radius is pruned.
class Enumerator {
 public:
  using Coords = std::vector<std::int64_t>;
  /// Receives coordinates in the input basis and the exact norm; return false to stop.
  using Visitor = std::function<bool(const Coords& coords, std::int64_t norm)>;

  explicit Enumerator(const IntMatrix& gram);

  std::size_t dimension() const { return n_; }
  const IntMatrix& reduced_gram() const { return reduced_; }
  /// Rows express the reduced basis in terms of the input basis.
  const IntMatrix& transform() const { return transform_; }
  /// Nodes visited by the most recent call.
  std::uint64_t nodes() const { return nodes_; }

  /// Theta coefficients A_0..A_max_norm (A_0 = 1, both v and -v counted).
  /// Throws BudgetExceeded when the node budget runs out.
  std::vector<std::uint64_t> count_by_norm(std::int64_t max_norm, const EnumerationOptions& opts = {});

  /// Minimum norm of a nonzero vector. `above` is a norm already known to have no
  /// nonzero vectors at or below it (from an earlier count), so the search starts past it.
  std::int64_t minimum(const EnumerationOptions& opts = {}, std::int64_t above = 0);

  /// Visits each nonzero vector of norm <= max_norm once per +-pair.
  /// Returns false if the visitor stopped the enumeration.
  bool for_each(std::int64_t max_norm, const Visitor& visit, const EnumerationOptions& opts = {});

  /// Number of vectors (both signs) of norm exactly `norm`, stopping once `limit` is reached.
  std::uint64_t count_norm_at_least(std::int64_t norm, std::uint64_t limit, const EnumerationOptions& opts = {});

 private:
  Coords to_input(const Coords& x) const;

  std::size_t n_ = 0;
  IntMatrix reduced_;
  IntMatrix transform_;
  std::vector<std::int64_t> g_;   // reduced Gram, row-major
  std::vector<std::int64_t> u_;   // transform, row-major
  std::vector<double> r_;
  std::vector<double> mu_;        // mu_[i*n+j], j < i
  std::uint64_t nodes_ = 0;
};

/// Convenience wrappers constructing a one-off Enumerator.
std::int64_t minimum_norm(const IntMatrix& gram, const EnumerationOptions& opts = {});
std::vector<std::uint64_t> theta_counts(const IntMatrix& gram, std::int64_t max_norm,
                                        const EnumerationOptions& opts = {});

}  // namespace zkframes
