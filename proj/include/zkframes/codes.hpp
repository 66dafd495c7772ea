#pragma once

#include "zkframes/enumeration.hpp"
#include "zkframes/matrix.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zkframes {

using Row = std::vector<long>;

/// Linear code over Z_k given by generator rows (a Z_k-module, rows need not be independent).
class ZkCode {
 public:
  ZkCode(std::int64_t modulus, ModMatrix generator);

  std::int64_t modulus() const { return generator_.modulus(); }
  std::size_t length() const { return generator_.cols(); }
  const ModMatrix& generator() const { return generator_; }

  /// G * G^T == 0 (mod k).
  bool is_self_orthogonal() const;

  nlohmann::json to_json() const;
  static ZkCode from_json(const nlohmann::json& j);

 private:
  ModMatrix generator_;
};

/// n x n negacirculant matrix: each row is the previous one shifted right, with the
/// entry wrapping around to the front negated.
IntMatrix negacirculant(const Row& first_row);

bool is_prime(long p);

/// Paley matrix P_{p+1} for a prime p = 3 (mod 4): skew, P * P^T = p * I.
IntMatrix paley_matrix(long p);

/// Code with generator (I_{2n} | A B ; -B^T A^T) for negacirculant A, B.
/// Throws NotSelfDual unless A A^T + B B^T == -I_n (mod k).
ZkCode four_block_code(std::int64_t k, const Row& ra, const Row& rb);

/// Code with generator (I_n | M + ell I_n). Throws ConditionViolated unless M is skew,
/// M M^T = m I_n and m + ell^2 == -1 (mod k).
ZkCode two_block_code(std::int64_t k, const IntMatrix& m, long ell);

/// Z_4 code with generator (I_r | A | B ; O | 2I_a | 2D), where `b_block` holds the
/// printed B_1 + 2B_2 entries and `two_d` the already doubled 2D rows.
/// Throws NotSelfOrthogonal when the stacked generator is not self-orthogonal.
ZkCode z4_split_code(const IntMatrix& a, const IntMatrix& b_block, const IntMatrix& two_d);

/// Basis (HNF of rho(G) stacked over k I_n) of the integer lattice rho(C) + kZ^n.
IntMatrix construction_a_basis(const ZkCode& c);

/// Self-orthogonal and |C| = k^(n/2), the latter read off the HNF diagonal.
bool is_self_dual(const ZkCode& c);

enum class WeightStrategy { Direct, Lattice };
enum class ExtremalClass { Extremal, NearExtremal, Neither };

std::string to_string(WeightStrategy s);
std::string to_string(ExtremalClass c);

struct EuclideanWeightReport {
  std::int64_t d_e = 0;
  WeightStrategy method = WeightStrategy::Direct;
  ExtremalClass extremal_class = ExtremalClass::Neither;
  std::int64_t bound = 0;
};

/// Euclidean weight of one codeword: sum of min(x, k - x)^2.
std::int64_t euclidean_weight(const std::vector<std::int64_t>& word, std::int64_t k);

/// Upper bound on d_E for self-dual codes of length n <= 48 over Z_k.
std::int64_t extremal_bound(int n, std::int64_t k);

/// Extremal when d_E equals the bound, near-extremal when d_E + k does.
ExtremalClass classify(std::int64_t d_e, int n, std::int64_t k);

inline constexpr std::uint64_t kDirectEnumerationGuard = 1000000000ULL;

/// Direct route: exhaustive search over coefficient vectors of the generator rows with a
/// finished-column lower bound; refuses with TooLarge when the number of coefficient
/// vectors exceeds kDirectEnumerationGuard.
std::int64_t min_euclidean_weight_direct(const ZkCode& c);

/// Lattice route: d_E = k * (minimum norm over vectors of A_k(C) outside sqrt(k) Z^n).
/// A positive `known_minimum` (the minimum norm of A_k(C)) skips recomputing it.
std::int64_t min_euclidean_weight_lattice(const ZkCode& c, const EnumerationOptions& opts = {},
                                          std::int64_t known_minimum = 0);

EuclideanWeightReport min_euclidean_weight(const ZkCode& c, WeightStrategy strategy,
                                           const EnumerationOptions& opts = {});

}  // namespace zkframes
