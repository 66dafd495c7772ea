#include "zkframes/linalg.hpp"

#include "zkframes/errors.hpp"

#include <cmath>
#include <utility>

namespace zkframes {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Nearest integer to a / b (b > 0), ties rounded up.
Integer round_div(const Integer& a, const Integer& b) {
  Integer num = 2 * a + b;
  Integer den = 2 * b;
  return floor_div(num, den);
}

}  // namespace

IntMatrix hnf(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    while (true) {
      // Bring the smallest nonzero entry of column c (rows >= pivot_row) up.
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r) {
        if (a(r, c) == 0) continue;
        if (best == rows || abs(a(r, c)) < abs(a(best, c))) best = r;
      }
      if (best == rows) break;
      a.swap_rows(pivot_row, best);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (a(r, c) == 0) continue;
        Integer q = floor_div(a(r, c), a(pivot_row, c));
        a.add_row_multiple(r, pivot_row, -q);
        if (a(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(pivot_row, c) == 0) continue;
    if (a(pivot_row, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(pivot_row, j) = -a(pivot_row, j);
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q = floor_div(a(r, c), a(pivot_row, c));
      a.add_row_multiple(r, pivot_row, -q);
    }
    ++pivot_row;
  }
  return a.block(0, 0, pivot_row, cols);
}

std::size_t rank(const IntMatrix& m) { return hnf(m).rows(); }

IntMatrix gram(const IntMatrix& basis, const Integer& scale) {
  if (scale < 1) throw std::invalid_argument("scale must be positive");
  IntMatrix g = basis * basis.transpose();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (!mpz_divisible_p(g(i, j).get_mpz_t(), scale.get_mpz_t()))
        throw NonIntegralGram("Gram entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                              g(i, j).get_str() + " is not divisible by " + scale.get_str());
      mpz_divexact(g(i, j).get_mpz_t(), g(i, j).get_mpz_t(), scale.get_mpz_t());
    }
  }
  return g;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> a(n * 2 * n);
  auto at = [&](std::size_t r, std::size_t c) -> Rational& { return a[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = Rational(m(r, c));
    at(r, n + r) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && at(p, c) == 0) ++p;
    if (p == n) throw NotUnimodular("matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(p, j), at(c, j));
    Rational inv = 1 / at(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) at(c, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || at(r, c) == 0) continue;
      Rational f = at(r, c);
      for (std::size_t j = 0; j < 2 * n; ++j) at(r, j) -= f * at(c, j);
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& v = at(r, n + c);
      if (v.get_den() != 1) throw NotUnimodular("inverse is not integral");
      inv(r, c) = v.get_num();
    }
  }
  return inv;
}

IntegralGso integral_gso(const IntMatrix& g) {
  const std::size_t n = g.rows();
  IntegralGso out;
  out.d.assign(n, 0);
  out.lambda = IntMatrix(n, n);
  auto dm = [&](long i) -> const Integer& {
    static const Integer one = 1;
    return i < 0 ? one : out.d[static_cast<std::size_t>(i)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Integer u = g(i, j);
      for (std::size_t t = 0; t < j; ++t) {
        u = dm(static_cast<long>(t)) * u - out.lambda(i, t) * out.lambda(j, t);
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), dm(static_cast<long>(t) - 1).get_mpz_t());
      }
      if (j < i) {
        out.lambda(i, j) = u;
      } else {
        if (u <= 0) throw RankDeficient("Gram matrix is not positive definite");
        out.d[i] = u;
      }
    }
  }
  return out;
}

FloatGso float_gso(const IntMatrix& g) {
  const IntegralGso exact = integral_gso(g);
  const std::size_t n = g.rows();
  FloatGso f;
  f.n = n;
  f.r.resize(n);
  f.mu.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer prev = i == 0 ? Integer(1) : exact.d[i - 1];
    f.r[i] = Rational(exact.d[i], prev).get_d();
    for (std::size_t j = 0; j < i; ++j) f.mu[i * n + j] = Rational(exact.lambda(i, j), exact.d[j]).get_d();
  }
  return f;
}

bool is_lll_reduced(const IntMatrix& g) {
  const IntegralGso gso = integral_gso(g);
  const std::size_t n = g.rows();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      // |lambda / d_j| <= 0.51
      if (200 * abs(gso.lambda(i, j)) > 102 * gso.d[j]) return false;
    }
    const Integer d2 = i >= 2 ? gso.d[i - 2] : Integer(1);
    const Integer& lam = gso.lambda(i, i - 1);
    if (kLllDeltaDen * gso.d[i] * d2 < kLllDeltaNum * gso.d[i - 1] * gso.d[i - 1] - kLllDeltaDen * lam * lam)
      return false;
  }
  return true;
}

namespace {

class GramState {
 public:
  explicit GramState(IntMatrix g) : g_(std::move(g)), u_(IntMatrix::identity(g_.rows())) {}

  std::size_t n() const { return g_.rows(); }
  const IntMatrix& g() const { return g_; }

  // b_k <- b_k - x * b_j
  void reduce(std::size_t k, std::size_t j, const Integer& x) {
    if (x == 0) return;
    const std::size_t size = n();
    g_(k, k) += x * x * g_(j, j) - 2 * x * g_(k, j);
    for (std::size_t t = 0; t < size; ++t) {
      if (t == k) continue;
      g_(k, t) -= x * g_(j, t);
      g_(t, k) = g_(k, t);
    }
    u_.add_row_multiple(k, j, -x);
  }

  void swap(std::size_t a, std::size_t b) {
    g_.swap_rows(a, b);
    for (std::size_t t = 0; t < n(); ++t) std::swap(g_(t, a), g_(t, b));
    u_.swap_rows(a, b);
  }

  GramReduction finish() && { return {std::move(g_), std::move(u_)}; }

  IntMatrix g_;
  IntMatrix u_;
};

// Returns false when the iteration guard fires; the caller then relies on the exact pass.
bool float_lll(GramState& s) {
  const std::size_t n = s.n();
  if (n <= 1) return true;
  std::vector<long double> r(n * n, 0.0L), mu(n * n, 0.0L);
  const long double delta = static_cast<long double>(kLllDeltaNum) / kLllDeltaDen;

  auto compute_row = [&](std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      long double v = static_cast<long double>(s.g()(k, j).get_d());
      for (std::size_t t = 0; t < j; ++t) v -= mu[j * n + t] * r[k * n + t];
      r[k * n + j] = v;
      if (j < k) mu[k * n + j] = v / r[j * n + j];
    }
  };

  compute_row(0);
  std::size_t k = 1;
  std::size_t guard = 0;
  const std::size_t max_iter = 200000 * n;
  while (k < n) {
    if (++guard > max_iter) return false;
    compute_row(k);
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (std::size_t jj = k; jj-- > 0;) {
        if (std::fabs(static_cast<double>(mu[k * n + jj])) <= 0.51) continue;
        const long double x = std::nearbyint(mu[k * n + jj]);
        s.reduce(k, jj, Integer(static_cast<double>(x)));
        for (std::size_t t = 0; t < jj; ++t) mu[k * n + t] -= x * mu[jj * n + t];
        mu[k * n + jj] -= x;
        changed = true;
      }
      if (!changed) break;
      compute_row(k);
    }
    const long double rk = r[k * n + k];
    const long double rk1 = r[(k - 1) * n + (k - 1)];
    const long double m = mu[k * n + k - 1];
    if (rk + m * m * rk1 < delta * rk1) {
      s.swap(k - 1, k);
      if (k == 1) {
        compute_row(0);
      } else {
        --k;
      }
    } else {
      ++k;
    }
  }
  return true;
}

void exact_lll(GramState& s) {
  const std::size_t n = s.n();
  if (n <= 1) return;
  std::vector<Integer> d(n, 0);
  IntMatrix lambda(n, n);
  auto dm = [&](long i) -> Integer { return i < 0 ? Integer(1) : d[static_cast<std::size_t>(i)]; };

  auto redi = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lambda(k, l)) <= d[l]) return;
    const Integer q = round_div(lambda(k, l), d[l]);
    s.reduce(k, l, q);
    lambda(k, l) -= q * d[l];
    for (std::size_t i = 0; i < l; ++i) lambda(k, i) -= q * lambda(l, i);
  };

  std::size_t kmax = 0;
  d[0] = s.g()(0, 0);
  if (d[0] <= 0) throw RankDeficient("Gram matrix is not positive definite");
  std::size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j <= k; ++j) {
        Integer u = s.g()(k, j);
        for (std::size_t t = 0; t < j; ++t) {
          u = dm(static_cast<long>(t)) * u - lambda(k, t) * lambda(j, t);
          mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), dm(static_cast<long>(t) - 1).get_mpz_t());
        }
        if (j < k) {
          lambda(k, j) = u;
        } else {
          if (u <= 0) throw RankDeficient("Gram matrix is not positive definite");
          d[k] = u;
        }
      }
    }
    redi(k, k - 1);
    const Integer lhs = kLllDeltaDen * d[k] * dm(static_cast<long>(k) - 2);
    const Integer rhs = kLllDeltaNum * d[k - 1] * d[k - 1] - kLllDeltaDen * lambda(k, k - 1) * lambda(k, k - 1);
    if (lhs < rhs) {
      s.swap(k, k - 1);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lambda(k, j), lambda(k - 1, j));
      const Integer lam = lambda(k, k - 1);
      Integer b = dm(static_cast<long>(k) - 2) * d[k] + lam * lam;
      mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d[k - 1].get_mpz_t());
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        const Integer t = lambda(i, k);
        Integer v = d[k] * lambda(i, k - 1) - lam * t;
        mpz_divexact(lambda(i, k).get_mpz_t(), v.get_mpz_t(), d[k - 1].get_mpz_t());
        Integer w = b * t + lam * lambda(i, k);
        mpz_divexact(lambda(i, k - 1).get_mpz_t(), w.get_mpz_t(), d[k].get_mpz_t());
      }
      d[k - 1] = b;
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
      ++k;
    }
  }
}

}  // namespace

GramReduction lll_reduce_gram(const IntMatrix& g) {
  if (!g.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  integral_gso(g);  // positive definiteness check
  GramState state(g);
  const bool converged = float_lll(state);
  if (!converged || !is_lll_reduced(state.g())) exact_lll(state);
  return std::move(state).finish();
}

IntMatrix lll_reduce(const IntMatrix& basis, const Integer& scale) {
  if (scale < 1) throw std::invalid_argument("scale must be positive");
  if (rank(basis) != basis.rows()) throw RankDeficient("basis rows are linearly dependent");
  const GramReduction red = lll_reduce_gram(basis * basis.transpose());
  return red.transform * basis;
}

}  // namespace zkframes
