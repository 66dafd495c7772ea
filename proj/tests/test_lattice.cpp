#include "zkframes/errors.hpp"
#include "zkframes/lattice.hpp"
#include "zkframes/linalg.hpp"

#include "doctest.h"

using namespace zkframes;

namespace {

UnimodularLattice integer_lattice(std::size_t n) { return UnimodularLattice(IntMatrix::identity(n), 1); }

// D12+ = D12 u (D12 + (1/2, ..., 1/2)) in doubled coordinates, scale 4.
UnimodularLattice d12_plus() {
  IntMatrix gens(13, 12);
  for (std::size_t i = 0; i + 1 < 12; ++i) {
    gens(i, i) = 2;
    gens(i, i + 1) = -2;
  }
  gens(11, 10) = 2;
  gens(11, 11) = 2;
  for (std::size_t j = 0; j < 12; ++j) gens(12, j) = 1;
  return UnimodularLattice(hnf(gens), 4);
}

// First norm-8 vector of E8 that is not twice a lattice vector.
IntVector primitive_norm8(const UnimodularLattice& e8) {
  Enumerator e(e8.gram());
  IntVector found;
  e.for_each(8, [&](const Enumerator::Coords& x, std::int64_t norm) {
    if (norm != 8) return true;
    bool all_even = true;
    for (auto c : x) all_even = all_even && c % 2 == 0;
    if (all_even) return true;
    found = e8.ambient_of(IntVector(x.begin(), x.end()));
    return false;
  });
  return found;
}

}  // namespace

TEST_CASE("constructor validates unimodularity") {
  CHECK_THROWS_AS(UnimodularLattice(IntMatrix::from_rows({{2, 0}, {0, 1}}), 1), NotUnimodular);
  CHECK_THROWS_AS(UnimodularLattice(IntMatrix::from_rows({{1, 1}, {1, 1}}), 1), RankDeficient);
  CHECK_NOTHROW(d12_plus());
}

TEST_CASE("construction A of the repetition code is Z^2") {
  const ZkCode c(2, ModMatrix::reduce(IntMatrix::from_rows({{1, 1}}), 2));
  const UnimodularLattice l = construction_a(c);
  CHECK(l.dimension() == 2);
  CHECK(min_norm(l) == 1);
  const auto th = theta_coefficients(l, 4);
  // r_2(m) for Z^2: 4, 4, 0, 4.
  CHECK(th.counts == std::vector<std::uint64_t>{1, 4, 4, 0, 4});
  CHECK_FALSE(l.is_even());
}

TEST_CASE("coordinates and ambient vectors") {
  const UnimodularLattice l = d12_plus();
  IntVector glue(12, Integer(1));
  CHECK(l.contains(glue));
  const IntVector coords = l.coordinates_of(glue);
  CHECK(l.ambient_of(coords) == glue);
  CHECK(l.inner(coords, coords) == 3);
  IntVector half_odd(12, Integer(0));
  half_odd[0] = 1;
  CHECK_FALSE(l.contains(half_odd));
  CHECK_THROWS_AS(l.coordinates_of(half_odd), NotInLattice);
}

TEST_CASE("json round trip") {
  const UnimodularLattice l = d12_plus();
  const UnimodularLattice back = UnimodularLattice::from_json(l.to_json());
  CHECK(back.basis() == l.basis());
  CHECK(back.scale() == l.scale());
}

TEST_CASE("theta of D12+") {
  // D12 has 2*12*11 = 264 roots; glue vectors (+-1/2)^12 have norm 3, 2^11 of them.
  const auto th = theta_coefficients(d12_plus(), 3);
  CHECK(th.counts == std::vector<std::uint64_t>{1, 0, 264, 2048});
  const SpanInvariant s = short_vector_span(d12_plus(), 2);
  CHECK(s.vectors == 132);
  CHECK(s.rank == 12);
  CHECK(s.determinant == 4);  // det D12
}

TEST_CASE("shadow of Z^n") {
  CHECK(shadow_min_norm(integer_lattice(1)) == Rational(1, 4));
  CHECK(shadow_min_norm(integer_lattice(2)) == Rational(1, 2));
  CHECK(shadow_min_norm(integer_lattice(8)) == Rational(2));
}

TEST_CASE("shadow of D12+") {
  const UnimodularLattice l = d12_plus();
  // 2 e_12 (ambient (0, ..., 0, 4)) is characteristic: (s, v) = (v, v) mod 2 on a basis.
  IntVector s(12, Integer(0));
  s[11] = 4;
  const IntVector sc = l.coordinates_of(s);
  for (std::size_t i = 0; i < 12; ++i) {
    IntVector ei(12, Integer(0));
    ei[i] = 1;
    CHECK(mod_floor(l.inner(sc, ei) - l.inner(ei, ei), Integer(2)) == 0);
  }
  // Shadow norms are = n/4 = 3 (mod 2), so e_12 of norm 1 is a shadow minimum.
  CHECK(shadow_min_norm(l) == Rational(1));
  const ShadowDecomposition d = shadow(l);
  CHECK(d.l0_basis.rows() == 12);
}

TEST_CASE("even neighbors of Z^8 are E8") {
  const auto [a, b] = even_neighbors(integer_lattice(8));
  for (const auto* n : {&a, &b}) {
    CHECK(n->is_even());
    CHECK(n->scale() == 4);
    // 240 sigma_3(m): 240, 2160.
    const auto th = theta_coefficients(*n, 4);
    CHECK(th.counts == std::vector<std::uint64_t>{1, 0, 240, 0, 2160});
  }
  CHECK_THROWS_AS(even_neighbors(integer_lattice(4)), DimensionNotDiv8);
  CHECK_THROWS_AS(shadow(a), LatticeIsEven);
}

TEST_CASE("odd neighbor of E8 is Z^8") {
  const UnimodularLattice e8 = even_neighbors(integer_lattice(8)).first;
  const IntVector x = primitive_norm8(e8);
  REQUIRE(!x.empty());
  const UnimodularLattice odd = odd_neighbor_from_vector(e8, x);
  CHECK_FALSE(odd.is_even());
  // The only odd unimodular lattice in dimension 8 is Z^8.
  CHECK(theta_coefficients(odd, 2).counts == std::vector<std::uint64_t>{1, 16, 112});

  IntVector doubled = x;
  for (auto& v : doubled) v *= 2;
  CHECK_THROWS_AS(odd_neighbor_from_vector(e8, doubled), BadVector);
}
