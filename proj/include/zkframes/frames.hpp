#pragma once

#include "zkframes/codes.hpp"
#include "zkframes/lattice.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace zkframes {

/// n pairwise orthogonal lattice vectors of common norm `norm` (a norm-frame).
struct Frame {
  Integer norm;
  IntMatrix vectors;  // coordinate rows with respect to the host basis

  nlohmann::json to_json() const;
};

/// Checks Gram(F) = norm * I_n with n = dimension of the host.
bool is_frame(const UnimodularLattice& host, const IntMatrix& coords, const Integer& norm);

/// Validates and wraps coordinate rows; throws InvalidFrame.
Frame make_frame(const UnimodularLattice& host, const IntMatrix& coords);

/// Ambient rows -> frame; throws NotInLattice for a row outside the host.
Frame frame_from_ambient(const UnimodularLattice& host, const IntMatrix& ambient_rows);

/// The frame sqrt(k) e_1, ..., sqrt(k) e_n of A_k(C) (ambient rows k I_n).
Frame standard_frame(const UnimodularLattice& construction_a_lattice);

/// Ambient rows of F(M) = (aI+bM, cI+dM ; -cI+dM, aI-bM) for A_k(C_{2n,k}(M)).
IntMatrix prop_frame_rows(const IntMatrix& m, long a, long b, long c, long d);

/// Frame of norm (a^2 + m b^2 + c^2 + m d^2)/k in `host` = A_k(C_{2n,k}(M)).
/// Throws CongruenceViolated unless b == c - ell d and d == a + ell b (mod k),
/// NotInLattice if a row falls outside the host.
Frame prop_const_frame(const UnimodularLattice& host, const IntMatrix& m, std::int64_t k, long ell, long a, long b,
                       long c, long d);

/// Lexicographically smallest (a, b, c, d) with a >= b >= c >= d >= 0 and
/// a^2 + b^2 + c^2 + d^2 = m.
std::array<long, 4> four_squares(long m);

/// Q(a,b,c,d) with Q Q^T = (a^2+b^2+c^2+d^2) I_4.
IntMatrix quaternion_matrix(long a, long b, long c, long d);

/// Multiplies consecutive quadruples of frame vectors by Q(four_squares(m)), giving a
/// frame of norm m * F.norm. Throws DimensionNotDiv4.
Frame scale_frame(const UnimodularLattice& host, const Frame& f, long m);

enum class SearchStatus { Found, None, Exhausted };
std::string to_string(SearchStatus s);

struct FrameSearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<Frame> frame;
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;  // number of +-pairs of norm-k vectors
  double elapsed_seconds = 0.0;

  nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDefaultFrameBudget = 100000000ULL;

/// Exhaustive search for a k-frame: collects the norm-k vectors (one per +-pair) in
/// coordinate-lexicographic order and extends partial frames by later orthogonal
/// vectors only. `None` certifies nonexistence; `Exhausted` means the budget ran out.
FrameSearchResult find_frame(const UnimodularLattice& l, std::int64_t k, std::uint64_t budget = kDefaultFrameBudget,
                             const EnumerationOptions& opts = {});

/// The code {((v, f_1), ..., (v, f_n)) mod k : v in L}. Throws InvalidFrame.
ZkCode code_from_frame(const UnimodularLattice& l, const Frame& f);

/// Admissibility rule on k: k >= threshold and k has a prime factor outside `excluded`.
struct StarRule {
  long threshold = 1;
  std::vector<long> excluded;
  std::string case_id;  // representation case used to build the frames

  nlohmann::json to_json() const;
  static StarRule from_json(const nlohmann::json& j);
};

bool star_condition(const StarRule& rule, long k);

}  // namespace zkframes
