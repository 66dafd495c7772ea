#pragma once

#include "zkframes/matrix.hpp"

#include <vector>

namespace zkframes {

/// Row Hermite normal form: echelon form with positive pivots and entries above each
/// pivot reduced into [0, pivot). Zero rows are dropped, so the result has rank(m) rows
/// and spans the same Z-module as the rows of `m`.
IntMatrix hnf(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// (1/scale) * B * B^T. Throws NonIntegralGram if scale does not divide every entry.
IntMatrix gram(const IntMatrix& basis, const Integer& scale);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

/// Inverse of an integer matrix with determinant +-1; throws NotUnimodular otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Integral Gram-Schmidt data of a positive definite Gram matrix:
/// d[i] = det of the leading (i+1)x(i+1) minor (d[-1] = 1 implied),
/// lambda(i, j) = d[j] * mu(i, j) for j < i.
struct IntegralGso {
  std::vector<Integer> d;
  IntMatrix lambda;
};

/// Throws RankDeficient when the form is not positive definite.
IntegralGso integral_gso(const IntMatrix& gram);

/// Floating-point GSO (squared lengths r_i and coefficients mu(i,j), j<i) converted
/// from the exact rational values.
struct FloatGso {
  std::size_t n = 0;
  std::vector<double> r;
  std::vector<double> mu;  // row-major n x n, mu[i*n+j] for j < i
};
FloatGso float_gso(const IntMatrix& gram);

inline constexpr long kLllDeltaNum = 99;
inline constexpr long kLllDeltaDen = 100;

/// Exact check for size reduction |mu| <= 0.51 and the Lovasz condition with delta = 0.99.
bool is_lll_reduced(const IntMatrix& gram);

struct GramReduction {
  IntMatrix gram;       // U * G * U^T
  IntMatrix transform;  // U, unimodular
};

/// LLL (delta = 0.99) on a positive definite integral Gram matrix. Runs a floating-point
/// pass first, certifies the result exactly and falls back to integral LLL when the
/// certificate fails.
GramReduction lll_reduce_gram(const IntMatrix& gram);

/// LLL-reduces the rows of `basis`, a lattice given as (1/sqrt(scale)) * rowspace.
/// Throws RankDeficient when the rows are linearly dependent.
IntMatrix lll_reduce(const IntMatrix& basis, const Integer& scale);

}  // namespace zkframes
