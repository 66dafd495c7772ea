#pragma once

#include "zkframes/codes.hpp"
#include "zkframes/enumeration.hpp"
#include "zkframes/matrix.hpp"

#include "json.hpp"

#include <optional>
#include <utility>

namespace zkframes {

/// Integral unimodular lattice (1/sqrt(scale)) * rowspace(basis).
///
/// Vectors are handled either as integer coordinate rows with respect to `basis` or as
/// "ambient" integer vectors y standing for y / sqrt(scale).
class UnimodularLattice {
 public:
  /// Throws RankDeficient, NonIntegralGram or NotUnimodular when the rows do not span
  /// an integral lattice of determinant 1.
  UnimodularLattice(IntMatrix basis, Integer scale);

  std::size_t dimension() const { return basis_.rows(); }
  const Integer& scale() const { return scale_; }
  const IntMatrix& basis() const { return basis_; }
  const IntMatrix& gram() const { return gram_; }

  bool is_even() const;

  /// Inner product of two coordinate vectors.
  Integer inner(const IntVector& u, const IntVector& v) const;
  IntVector ambient_of(const IntVector& coords) const;
  /// Throws NotInLattice when the ambient vector is not a lattice vector.
  IntVector coordinates_of(const IntVector& ambient) const;
  bool contains(const IntVector& ambient) const;

  nlohmann::json to_json() const;
  static UnimodularLattice from_json(const nlohmann::json& j);

 private:
  IntMatrix basis_;
  Integer scale_;
  IntMatrix gram_;
  IntMatrix gram_inverse_;
};

/// A_k(C) with basis HNF(rho(G) over k I_n) and scale k. Throws NotUnimodular unless C
/// is self-dual.
UnimodularLattice construction_a(const ZkCode& c);

std::int64_t min_norm(const UnimodularLattice& l, const EnumerationOptions& opts = {});

struct ThetaFingerprint {
  std::int64_t max_norm = 0;
  std::vector<std::uint64_t> counts;
  std::optional<std::int64_t> alpha;  // dimension 40: A_4 = 19120 + 256 alpha
  std::optional<std::int64_t> beta;   // dimension 44: A_4 = 6600 + 16 beta

  nlohmann::json to_json() const;
};

ThetaFingerprint theta_coefficients(const UnimodularLattice& l, std::int64_t max_norm,
                                    const EnumerationOptions& opts = {});

/// Rank and Gram determinant of the sublattice spanned by all vectors of norm <= max_norm.
struct SpanInvariant {
  std::size_t vectors = 0;  // +-pairs
  std::size_t rank = 0;
  Integer determinant;
  nlohmann::json to_json() const;
};

SpanInvariant short_vector_span(const UnimodularLattice& l, std::int64_t max_norm, const EnumerationOptions& opts = {});

/// Even sublattice L0 and the cosets of L0 in its dual: L = L0 u L2 and the shadow is
/// L1 u L3. Coset representatives are given in doubled coordinates, i.e. 2 * (coordinates
/// with respect to the basis of L), since L1 and L3 sit in (1/2) L.
struct ShadowDecomposition {
  IntVector parity;          // w with (v, v) == w . v (mod 2)
  IntMatrix l0_basis;        // rows: coordinates of a basis of L0
  IntVector characteristic;  // s with (s, v) == (v, v) (mod 2); shadow = s/2 + L
  IntVector l1;              // doubled coordinates of s/2
  IntVector l2;              // doubled coordinates of an odd vector of L
  IntVector l3;              // doubled coordinates of s/2 plus that odd vector
};

/// Throws LatticeIsEven for even input.
ShadowDecomposition shadow(const UnimodularLattice& l);

/// Minimum norm of the shadow s/2 + L.
Rational shadow_min_norm(const UnimodularLattice& l, const EnumerationOptions& opts = {});

/// The even unimodular neighbors L0 u L1 and L0 u L3 (scale 4k). Throws
/// DimensionNotDiv8 unless the dimension is a multiple of 8, LatticeIsEven for even input.
std::pair<UnimodularLattice, UnimodularLattice> even_neighbors(const UnimodularLattice& l);

/// Odd neighbor {v : (x,v) even} u (x/2 + y + ...) of an even unimodular lattice, for an
/// ambient vector x of norm 8. Throws BadVector on a wrong norm, a vector outside the
/// lattice, or when (x, y) is even for every lattice vector y.
UnimodularLattice odd_neighbor_from_vector(const UnimodularLattice& even, const IntVector& x_ambient);

}  // namespace zkframes
