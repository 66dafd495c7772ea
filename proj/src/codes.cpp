#include "zkframes/codes.hpp"

#include "zkframes/errors.hpp"
#include "zkframes/linalg.hpp"

#include <algorithm>

namespace zkframes {

ZkCode::ZkCode(std::int64_t modulus, ModMatrix generator) : generator_(std::move(generator)) {
  if (generator_.modulus() != modulus) throw std::invalid_argument("generator modulus does not match code modulus");
}

bool ZkCode::is_self_orthogonal() const {
  const std::int64_t k = modulus();
  const std::size_t r = generator_.rows();
  const std::size_t n = generator_.cols();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < n; ++c) s = (s + generator_(i, c) * generator_(j, c)) % k;
      if (s != 0) return false;
    }
  }
  return true;
}

nlohmann::json ZkCode::to_json() const {
  std::vector<std::vector<std::int64_t>> rows(generator_.rows(), std::vector<std::int64_t>(generator_.cols()));
  for (std::size_t r = 0; r < generator_.rows(); ++r)
    for (std::size_t c = 0; c < generator_.cols(); ++c) rows[r][c] = generator_(r, c);
  return {{"modulus", modulus()}, {"length", length()}, {"generator_rows", rows}};
}

ZkCode ZkCode::from_json(const nlohmann::json& j) {
  const auto k = j.at("modulus").get<std::int64_t>();
  const auto rows = j.at("generator_rows").get<std::vector<std::vector<std::int64_t>>>();
  const std::size_t n = j.contains("length") ? j.at("length").get<std::size_t>() : (rows.empty() ? 0 : rows[0].size());
  ModMatrix g(k, rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw DataError("generator row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < n; ++c) g.set(r, c, rows[r][c]);
  }
  return ZkCode(k, std::move(g));
}

IntMatrix negacirculant(const Row& first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) throw std::invalid_argument("negacirculant needs a nonempty first row");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = j >= i ? first_row[j - i] : -first_row[n + j - i];
  return m;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

IntMatrix paley_matrix(long p) {
  if (!is_prime(p) || p % 4 != 3) throw NotValidPrime(std::to_string(p) + " is not a prime congruent to 3 mod 4");
  std::vector<char> square(p, 0);
  for (long x = 1; x < p; ++x) square[(x * x) % p] = 1;
  const std::size_t n = p + 1;
  IntMatrix m(n, n);
  for (std::size_t j = 1; j < n; ++j) {
    m(0, j) = 1;
    m(j, 0) = -1;
  }
  for (long i = 0; i < p; ++i) {
    for (long j = 0; j < p; ++j) {
      if (i == j) continue;
      m(i + 1, j + 1) = square[mod_floor(j - i, p)] ? -1 : 1;
    }
  }
  return m;
}

namespace {

ModMatrix stack_with_identity(std::int64_t k, const IntMatrix& right) {
  const std::size_t r = right.rows();
  IntMatrix g = IntMatrix::hstack(IntMatrix::identity(r), right);
  return ModMatrix::reduce(g, k);
}

bool is_identity_mod(const IntMatrix& m, std::int64_t k, long diag) {
  const Integer kk = k;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (mod_floor(m(i, j) - (i == j ? diag : 0), kk) != 0) return false;
  return true;
}

}  // namespace

ZkCode four_block_code(std::int64_t k, const Row& ra, const Row& rb) {
  if (k < 2) throw std::invalid_argument("modulus must be at least 2");
  if (ra.size() != rb.size()) throw std::invalid_argument("rA and rB must have the same length");
  const IntMatrix a = negacirculant(ra);
  const IntMatrix b = negacirculant(rb);
  const IntMatrix at = a.transpose();
  const IntMatrix bt = b.transpose();
  if (!is_identity_mod(a * at + b * bt, k, -1))
    throw NotSelfDual("A A^T + B B^T is not -I modulo " + std::to_string(k));
  const IntMatrix right = IntMatrix::vstack(IntMatrix::hstack(a, b), IntMatrix::hstack(-bt, at));
  return ZkCode(k, stack_with_identity(k, right));
}

ZkCode two_block_code(std::int64_t k, const IntMatrix& m, long ell) {
  if (k < 2) throw std::invalid_argument("modulus must be at least 2");
  if (m.rows() == 0 || m.rows() != m.cols()) throw ConditionViolated("M must be a nonempty square matrix");
  if (ell < 0 || ell >= k) throw ConditionViolated("ell must lie in 0..k-1");
  if (!(m.transpose() == -m)) throw ConditionViolated("M is not skew-symmetric (M^T != -M)");
  const IntMatrix mmt = m * m.transpose();
  const Integer mval = mmt(0, 0);
  if (!(mmt == IntMatrix::identity(m.rows()) * mval)) throw ConditionViolated("M M^T is not a multiple of the identity");
  if (mod_floor(mval + ell * ell + 1, Integer(k)) != 0)
    throw ConditionViolated("m + ell^2 is not -1 modulo k (m = " + mval.get_str() + ")");
  IntMatrix right = m;
  for (std::size_t i = 0; i < m.rows(); ++i) right(i, i) += ell;
  return ZkCode(k, stack_with_identity(k, right));
}

ZkCode z4_split_code(const IntMatrix& a, const IntMatrix& b_block, const IntMatrix& two_d) {
  const std::size_t r = a.rows();
  const std::size_t na = a.cols();
  const std::size_t nb = b_block.cols();
  if (b_block.rows() != r || two_d.rows() != na || two_d.cols() != nb)
    throw std::invalid_argument("inconsistent block dimensions for split Z4 generator");
  for (std::size_t i = 0; i < two_d.rows(); ++i)
    for (std::size_t j = 0; j < two_d.cols(); ++j)
      if (mod_floor(two_d(i, j), Integer(2)) != 0) throw std::invalid_argument("2D block has an odd entry");
  const IntMatrix top = IntMatrix::hstack(IntMatrix::hstack(IntMatrix::identity(r), a), b_block);
  const IntMatrix bottom =
      IntMatrix::hstack(IntMatrix::hstack(IntMatrix(na, r), IntMatrix::identity(na) * Integer(2)), two_d);
  ZkCode code(4, ModMatrix::reduce(IntMatrix::vstack(top, bottom), 4));
  if (!code.is_self_orthogonal()) throw NotSelfOrthogonal("Z4 generator is not self-orthogonal");
  return code;
}

IntMatrix construction_a_basis(const ZkCode& c) {
  const std::size_t n = c.length();
  return hnf(IntMatrix::vstack(c.generator().lift(), IntMatrix::identity(n) * Integer(c.modulus())));
}

bool is_self_dual(const ZkCode& c) {
  if (c.length() % 2 != 0 || !c.is_self_orthogonal()) return false;
  const IntMatrix basis = construction_a_basis(c);
  Integer index = 1;
  for (std::size_t i = 0; i < basis.rows(); ++i) index *= basis(i, i);
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(c.modulus()), c.length() / 2);
  return index == expected;
}

std::string to_string(WeightStrategy s) { return s == WeightStrategy::Direct ? "direct-enumeration" : "lattice-minimum"; }

std::string to_string(ExtremalClass c) {
  switch (c) {
    case ExtremalClass::Extremal:
      return "extremal";
    case ExtremalClass::NearExtremal:
      return "near-extremal";
    default:
      return "neither";
  }
}

std::int64_t euclidean_weight(const std::vector<std::int64_t>& word, std::int64_t k) {
  std::int64_t w = 0;
  for (std::int64_t x : word) {
    const std::int64_t v = mod_floor(x, k);
    const std::int64_t t = std::min(v, k - v);
    w += t * t;
  }
  return w;
}

std::int64_t extremal_bound(int n, std::int64_t k) {
  if (n < 1 || n > 48 || k < 2) throw std::invalid_argument("extremal bound needs 1 <= n <= 48 and k >= 2");
  if (n == 23 && k >= 4) return 3 * k;
  if ((n == 22 || n == 46) && k == 2) return 4 * (n / 24) + 6;
  if (n == 47 && k == 4) return 20;
  return 2 * k * (n / 24) + 2 * k;
}

ExtremalClass classify(std::int64_t d_e, int n, std::int64_t k) {
  const std::int64_t bound = extremal_bound(n, k);
  if (d_e == bound) return ExtremalClass::Extremal;
  if (d_e + k == bound) return ExtremalClass::NearExtremal;
  return ExtremalClass::Neither;
}

std::int64_t min_euclidean_weight_lattice(const ZkCode& c, const EnumerationOptions& opts, std::int64_t known_minimum) {
  const std::int64_t k = c.modulus();
  const std::size_t n = c.length();
  const IntMatrix basis = construction_a_basis(c);
  Enumerator e(gram(basis, k));
  const std::int64_t mu = known_minimum > 0 ? known_minimum : e.minimum(opts);
  if (mu < k) return k * mu;

  // Every minimal vector may lie in sqrt(k) Z^n; search shells upward for a vector whose
  // ambient coordinates are not all divisible by k.
  std::vector<std::int64_t> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = to_int64(basis(i, j));
  const std::int64_t cap = static_cast<std::int64_t>(n) * k;
  std::int64_t best = 0;
  for (std::int64_t radius = k; radius <= cap && best == 0; ++radius) {
    e.for_each(
        radius,
        [&](const Enumerator::Coords& x, std::int64_t norm) {
          for (std::size_t j = 0; j < n; ++j) {
            std::int64_t y = 0;
            for (std::size_t i = 0; i < n; ++i) y += x[i] * b[i * n + j];
            if (y % k != 0) {
              if (best == 0 || norm < best) best = norm;
              return false;
            }
          }
          return true;
        },
        opts);
  }
  if (best == 0) throw TooLarge("no codeword found within the search radius");
  return k * best;
}

EuclideanWeightReport min_euclidean_weight(const ZkCode& c, WeightStrategy strategy, const EnumerationOptions& opts) {
  EuclideanWeightReport rep;
  rep.method = strategy;
  rep.d_e = strategy == WeightStrategy::Direct ? min_euclidean_weight_direct(c) : min_euclidean_weight_lattice(c, opts);
  const int n = static_cast<int>(c.length());
  if (n <= 48) {
    rep.bound = extremal_bound(n, c.modulus());
    rep.extremal_class = classify(rep.d_e, n, c.modulus());
  }
  return rep;
}

}  // namespace zkframes
