#include "zkframes/errors.hpp"
#include "zkframes/linalg.hpp"

#include "doctest.h"

#include <cstdlib>
#include <random>

using namespace zkframes;

namespace {

// Shortest nonzero norm of a 2-dim form by brute force over a box.
long brute_min_2d(long a, long b, long c, long box) {
  long best = -1;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y) {
      if (x == 0 && y == 0) continue;
      const long v = a * x * x + 2 * b * x * y + c * y * y;
      if (best < 0 || v < best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("hnf of small examples") {
  const IntMatrix m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  const IntMatrix h = hnf(m);
  // Computed by hand: the row module has the same lattice as this echelon basis.
  CHECK(h == IntMatrix::from_rows({{2, 4, 4}, {0, 6, 0}, {0, 0, 12}}));

  const IntMatrix dependent = IntMatrix::from_rows({{1, 2}, {2, 4}, {3, 6}});
  CHECK(hnf(dependent) == IntMatrix::from_rows({{1, 2}}));
  CHECK(rank(dependent) == 1);
}

TEST_CASE("hnf spans the same module") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = d(rng);
    if (determinant(m) == 0) continue;
    const IntMatrix h = hnf(m);
    REQUIRE(h.rows() == 4);
    CHECK(abs(determinant(h)) == abs(determinant(m)));
    for (std::size_t r = 0; r < 4; ++r) {
      CHECK(h(r, r) > 0);
      for (std::size_t above = 0; above < r; ++above) {
        CHECK(h(above, r) >= 0);
        CHECK(h(above, r) < h(r, r));
      }
    }
    // Each original row stays in the module: stacking it adds nothing.
    CHECK(hnf(IntMatrix::vstack(h, m)) == h);
  }
}

TEST_CASE("determinant and unimodular inverse") {
  const IntMatrix u = IntMatrix::from_rows({{2, 3, 1}, {1, 2, 1}, {0, 1, 2}});
  CHECK(determinant(u) == 1);
  CHECK(u * inverse_unimodular(u) == IntMatrix::identity(3));
  CHECK_THROWS_AS(inverse_unimodular(IntMatrix::from_rows({{2, 0}, {0, 1}})), NotUnimodular);
  CHECK(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("gram with scale") {
  const IntMatrix b = IntMatrix::from_rows({{2, 0}, {1, 1}});
  CHECK(gram(b, 2) == IntMatrix::from_rows({{2, 1}, {1, 1}}));
  CHECK_THROWS_AS(gram(IntMatrix::from_rows({{1, 0}, {0, 1}}), 2), NonIntegralGram);
}

TEST_CASE("lll on two-dimensional forms matches brute force") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-40, 40);
  int checked = 0;
  while (checked < 30) {
    const IntMatrix basis = IntMatrix::from_rows({{d(rng), d(rng)}, {d(rng), d(rng)}});
    if (determinant(basis) == 0) continue;
    const IntMatrix g = basis * basis.transpose();
    const GramReduction red = lll_reduce_gram(g);
    CHECK(is_lll_reduced(red.gram));
    CHECK(abs(determinant(red.transform)) == 1);
    CHECK(red.transform * g * red.transform.transpose() == red.gram);
    // In dimension 2 an LLL-reduced first vector is within sqrt(4/3) of the minimum.
    const long a = g(0, 0).get_si(), b = g(0, 1).get_si(), c = g(1, 1).get_si();
    const long mn = brute_min_2d(a, b, c, 200);
    CHECK(red.gram(0, 0) * 3 <= Integer(mn) * 4);
    ++checked;
  }
}

TEST_CASE("lll rejects dependent rows") {
  CHECK_THROWS_AS(lll_reduce(IntMatrix::from_rows({{1, 1}, {2, 2}}), 1), RankDeficient);
}

TEST_CASE("integral gso of a diagonal form") {
  const IntegralGso g = integral_gso(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  REQUIRE(g.d.size() == 2);
  CHECK(g.d[0] == 2);
  CHECK(g.d[1] == 6);
  CHECK_THROWS_AS(integral_gso(IntMatrix::from_rows({{1, 2}, {2, 1}})), RankDeficient);
}
