#include "zkframes/catalog.hpp"
#include "zkframes/errors.hpp"
#include "zkframes/frames.hpp"
#include "zkframes/lattice.hpp"
#include "zkframes/representations.hpp"

#include "doctest.h"

#include <array>

using namespace zkframes;

namespace {

UnimodularLattice e8() { return even_neighbors(UnimodularLattice(IntMatrix::identity(8), 1)).first; }

IntMatrix scaled_identity(std::size_t n, long s) {
  IntMatrix m = IntMatrix::identity(n);
  m *= Integer(s);
  return m;
}

// Gram matrix of coordinate rows, computed straight from the host's inner product.
IntMatrix frame_gram(const UnimodularLattice& l, const IntMatrix& rows) {
  IntMatrix g(rows.rows(), rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.rows(); ++j) g(i, j) = l.inner(rows.row(i), rows.row(j));
  return g;
}

}  // namespace

TEST_CASE("four_squares returns the lexicographically smallest ordered decomposition") {
  for (long m = 1; m <= 300; ++m) {
    std::array<long, 4> best{-1, -1, -1, -1};
    for (long a = 0; a * a <= m && best[0] < 0; ++a)
      for (long b = 0; b <= a && best[0] < 0; ++b)
        for (long c = 0; c <= b && best[0] < 0; ++c)
          for (long d = 0; d <= c; ++d)
            if (a * a + b * b + c * c + d * d == m) {
              best = {a, b, c, d};
              break;
            }
    CHECK(four_squares(m) == best);
  }
}

TEST_CASE("quaternion matrices are orthogonal up to scale") {
  const IntMatrix q = quaternion_matrix(1, 2, 3, 4);
  CHECK(q * q.transpose() == scaled_identity(4, 30));
}

TEST_CASE("standard frame of a construction A lattice") {
  const UnimodularLattice l = construction_a(four_block_code(5, {2}, {0}));
  const Frame f = standard_frame(l);
  CHECK(f.norm == 5);
  CHECK(is_frame(l, f.vectors, 5));
  CHECK(frame_gram(l, f.vectors) == scaled_identity(4, 5));
  CHECK_FALSE(is_frame(l, f.vectors, 4));
}

TEST_CASE("make_frame rejects non-orthogonal rows") {
  const UnimodularLattice z2(IntMatrix::identity(2), 1);
  CHECK_THROWS_AS(make_frame(z2, IntMatrix::from_rows({{1, 0}, {1, 1}})), InvalidFrame);
  CHECK_NOTHROW(make_frame(z2, IntMatrix::from_rows({{1, 1}, {1, -1}})));
}

TEST_CASE("scaling a frame of Z^12") {
  const UnimodularLattice z(IntMatrix::identity(12), 1);
  const Frame unit = make_frame(z, IntMatrix::identity(12));
  for (long m = 1; m <= 10; ++m) {
    const Frame f = scale_frame(z, unit, m);
    CHECK(f.norm == m);
    CHECK(frame_gram(z, f.vectors) == scaled_identity(12, m));
  }
}

TEST_CASE("frame search in E8") {
  const UnimodularLattice l = e8();
  const FrameSearchResult none = find_frame(l, 1);
  CHECK(none.status == SearchStatus::None);
  const FrameSearchResult two = find_frame(l, 2);
  REQUIRE(two.status == SearchStatus::Found);
  CHECK(frame_gram(l, two.frame->vectors) == scaled_identity(8, 2));
  CHECK(find_frame(l, 2, 3).status == SearchStatus::Exhausted);
}

TEST_CASE("code of a frame") {
  const UnimodularLattice l = e8();
  const Frame f = *find_frame(l, 2).frame;
  const ZkCode c = code_from_frame(l, f);
  CHECK(c.modulus() == 2);
  CHECK(c.length() == 8);
  CHECK(is_self_dual(c));
  // E8 = A_2 of the extended Hamming code, the only doubly-even self-dual [8,4] code.
  CHECK(min_euclidean_weight_direct(c) == 4);
  CHECK(theta_coefficients(construction_a(c), 4).counts == theta_coefficients(l, 4).counts);
}

TEST_CASE("star rule and frame plans for D_6") {
  const Catalog cat = Catalog::load();
  const CatalogEntry& d6 = cat.find("D_6");
  REQUIRE(d6.star.has_value());
  const StarRule& rule = *d6.star;
  CHECK(star_condition(rule, 11));
  CHECK_FALSE(star_condition(rule, 35));
  CHECK_FALSE(star_condition(rule, 1));
  CHECK_FALSE(star_condition(rule, 4));

  const FramePlan p11 = frame_order_for(rule, 11);
  CHECK(p11.prime == 11);
  CHECK(p11.scale == 1);
  CHECK(p11.case_id == "a");
  CHECK(p11.witness.satisfies(representation_case("a").params));

  const FramePlan p22 = frame_order_for(rule, 22);
  CHECK(p22.prime == 11);
  CHECK(p22.scale == 2);
  CHECK_THROWS_AS(frame_order_for(rule, 35), Unsupported);

  const BuiltEntry b = build(d6);
  const UnimodularLattice host = construction_a(b.code);
  const RepWitness& w = p11.witness;
  const Frame f = prop_const_frame(host, *b.matrix, d6.k, b.ell, w.a, w.b, w.c, w.d);
  CHECK(frame_gram(host, f.vectors) == scaled_identity(12, 11));
  CHECK_THROWS_AS(prop_const_frame(host, *b.matrix, d6.k, b.ell, 1, 0, 0, 0), CongruenceViolated);
}

TEST_CASE("star rule of the dimension 48 lattice") {
  const Catalog cat = Catalog::load();
  const StarRule& rule = *cat.find("D_24").star;
  CHECK(star_condition(rule, 5));
  CHECK_FALSE(star_condition(rule, 4));
  CHECK_FALSE(star_condition(rule, 2 * 3 * 7 * 17));
}
