#include "zkframes/lattice.hpp"

#include "zkframes/errors.hpp"
#include "zkframes/linalg.hpp"

namespace zkframes {

UnimodularLattice::UnimodularLattice(IntMatrix basis, Integer scale) : basis_(std::move(basis)), scale_(std::move(scale)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
    throw RankDeficient("lattice basis must be a nonempty square matrix");
  if (scale_ < 1) throw std::invalid_argument("scale must be positive");
  gram_ = zkframes::gram(basis_, scale_);
  const Integer det = determinant(gram_);
  if (det == 0) throw RankDeficient("basis rows are linearly dependent");
  if (det != 1) throw NotUnimodular("Gram determinant is " + det.get_str());
  gram_inverse_ = inverse_unimodular(gram_);
}

bool UnimodularLattice::is_even() const {
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    if (mod_floor(gram_(i, i), Integer(2)) != 0) return false;
  return true;
}

Integer UnimodularLattice::inner(const IntVector& u, const IntVector& v) const { return dot(row_times(u, gram_), v); }

IntVector UnimodularLattice::ambient_of(const IntVector& coords) const { return row_times(coords, basis_); }

IntVector UnimodularLattice::coordinates_of(const IntVector& ambient) const {
  if (ambient.size() != basis_.cols()) throw NotInLattice("ambient vector has the wrong length");
  IntVector y = row_times(ambient, basis_.transpose());
  for (auto& v : y) {
    if (!mpz_divisible_p(v.get_mpz_t(), scale_.get_mpz_t())) throw NotInLattice("vector is not in the lattice");
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), scale_.get_mpz_t());
  }
  IntVector coords = row_times(y, gram_inverse_);
  if (row_times(coords, basis_) != ambient) throw NotInLattice("vector is not in the lattice");
  return coords;
}

bool UnimodularLattice::contains(const IntVector& ambient) const {
  try {
    coordinates_of(ambient);
    return true;
  } catch (const NotInLattice&) {
    return false;
  }
}

nlohmann::json UnimodularLattice::to_json() const {
  std::vector<std::vector<std::string>> rows(basis_.rows(), std::vector<std::string>(basis_.cols()));
  for (std::size_t r = 0; r < basis_.rows(); ++r)
    for (std::size_t c = 0; c < basis_.cols(); ++c) rows[r][c] = basis_(r, c).get_str();
  nlohmann::json j;
  j["scale"] = scale_.get_str();
  j["basis_rows"] = nlohmann::json::array();
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < basis_.cols(); ++c) {
      if (basis_(r, c).fits_slong_p())
        row.push_back(basis_(r, c).get_si());
      else
        row.push_back(basis_(r, c).get_str());
    }
    j["basis_rows"].push_back(row);
  }
  return j;
}

namespace {

Integer json_integer(const nlohmann::json& v) {
  if (v.is_string()) return Integer(v.get<std::string>());
  return Integer(v.get<long>());
}

}  // namespace

UnimodularLattice UnimodularLattice::from_json(const nlohmann::json& j) {
  const auto& rows = j.at("basis_rows");
  const std::size_t n = rows.size();
  IntMatrix b(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw DataError("basis row has the wrong length");
    for (std::size_t c = 0; c < n; ++c) b(r, c) = json_integer(rows[r][c]);
  }
  return UnimodularLattice(std::move(b), json_integer(j.at("scale")));
}

UnimodularLattice construction_a(const ZkCode& c) {
  if (!c.is_self_orthogonal()) throw NotUnimodular("code is not self-orthogonal");
  try {
    return UnimodularLattice(construction_a_basis(c), c.modulus());
  } catch (const NotUnimodular& e) {
    throw NotUnimodular(std::string("code is not self-dual: ") + e.what());
  }
}

std::int64_t min_norm(const UnimodularLattice& l, const EnumerationOptions& opts) {
  return minimum_norm(l.gram(), opts);
}

nlohmann::json ThetaFingerprint::to_json() const {
  nlohmann::json j{{"max_norm", max_norm}, {"counts", counts}};
  if (alpha) j["alpha"] = *alpha;
  if (beta) j["beta"] = *beta;
  return j;
}

ThetaFingerprint theta_coefficients(const UnimodularLattice& l, std::int64_t max_norm, const EnumerationOptions& opts) {
  ThetaFingerprint fp;
  fp.max_norm = max_norm;
  fp.counts = theta_counts(l.gram(), max_norm, opts);
  const bool min_at_least_4 = max_norm >= 4 && fp.counts[1] == 0 && fp.counts[2] == 0 && fp.counts[3] == 0;
  if (min_at_least_4) {
    const auto a4 = static_cast<std::int64_t>(fp.counts[4]);
    if (l.dimension() == 40 && (a4 - 19120) % 256 == 0) fp.alpha = (a4 - 19120) / 256;
    if (l.dimension() == 44 && (a4 - 6600) % 16 == 0) fp.beta = (a4 - 6600) / 16;
  }
  return fp;
}

nlohmann::json SpanInvariant::to_json() const {
  return {{"vectors", vectors}, {"rank", rank}, {"determinant", determinant.get_str()}};
}

SpanInvariant short_vector_span(const UnimodularLattice& l, std::int64_t max_norm, const EnumerationOptions& opts) {
  const std::size_t n = l.dimension();
  SpanInvariant out;
  IntMatrix span(0, n);
  std::vector<IntVector> batch;
  auto flush = [&]() {
    if (batch.empty()) return;
    span = hnf(IntMatrix::vstack(span, IntMatrix::from_vectors(batch, n)));
    batch.clear();
  };
  Enumerator e(l.gram());
  e.for_each(
      max_norm,
      [&](const Enumerator::Coords& x, std::int64_t) {
        ++out.vectors;
        batch.emplace_back(x.begin(), x.end());
        if (batch.size() == n) flush();
        return true;
      },
      opts);
  flush();
  out.rank = span.rows();
  out.determinant = out.rank == 0 ? Integer(1) : determinant(span * l.gram() * span.transpose());
  return out;
}

namespace {

// Basis (coordinate rows) of {v : u . v even}, given u not identically even.
IntMatrix even_kernel_basis(const IntVector& u, std::size_t pivot) {
  const std::size_t n = u.size();
  IntMatrix rows(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == pivot) {
      rows(i, i) = 2;
    } else {
      rows(i, i) = 1;
      if (mod_floor(u[i], Integer(2)) != 0) rows(i, pivot) = 1;
    }
  }
  return hnf(rows);
}

std::size_t first_odd(const IntVector& u) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (mod_floor(u[i], Integer(2)) != 0) return i;
  return u.size();
}

// Lattice spanned by `sub` (coordinate rows of an index-2 sublattice) and glue/2, where
// `glue` is given in doubled coordinates.
UnimodularLattice glue_lattice(const UnimodularLattice& l, const IntMatrix& sub, const IntVector& glue) {
  IntMatrix g(1, glue.size());
  g.set_row(0, glue);
  const IntMatrix doubled = hnf(IntMatrix::vstack(sub * Integer(2), g));
  return UnimodularLattice(doubled * l.basis(), 4 * l.scale());
}

}  // namespace

ShadowDecomposition shadow(const UnimodularLattice& l) {
  if (l.is_even()) throw LatticeIsEven("lattice is even and has no shadow decomposition");
  const std::size_t n = l.dimension();
  ShadowDecomposition s;
  s.parity.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.parity[i] = mod_floor(l.gram()(i, i), Integer(2));
  const std::size_t pivot = first_odd(s.parity);
  s.l0_basis = even_kernel_basis(s.parity, pivot);
  // s . G = w exactly, hence (s, v) = w . v == (v, v) (mod 2).
  s.characteristic = row_times(s.parity, inverse_unimodular(l.gram()));
  s.l1 = s.characteristic;
  s.l2 = IntVector(n, 0);
  s.l2[pivot] = 2;
  s.l3 = s.characteristic;
  s.l3[pivot] += 2;
  return s;
}

Rational shadow_min_norm(const UnimodularLattice& l, const EnumerationOptions& opts) {
  const ShadowDecomposition s = shadow(l);
  const std::size_t n = l.dimension();
  // Doubled shadow = vectors of 2L + Zs outside 2L.
  IntMatrix gens = IntMatrix::identity(n) * Integer(2);
  IntMatrix srow(1, n);
  srow.set_row(0, s.characteristic);
  const IntMatrix m = hnf(IntMatrix::vstack(gens, srow));
  Enumerator e(m * l.gram() * m.transpose());
  std::vector<std::int64_t> mb(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mb[i * n + j] = to_int64(m(i, j));
  for (std::int64_t radius = 1;; radius *= 2) {
    std::int64_t best = 0;
    e.for_each(
        radius,
        [&](const Enumerator::Coords& x, std::int64_t norm) {
          for (std::size_t j = 0; j < n; ++j) {
            std::int64_t c = 0;
            for (std::size_t i = 0; i < n; ++i) c += x[i] * mb[i * n + j];
            if (c % 2 != 0) {
              if (best == 0 || norm < best) best = norm;
              break;
            }
          }
          return true;
        },
        opts);
    if (best != 0) {
      Rational r(best, 4);
      r.canonicalize();
      return r;
    }
  }
}

std::pair<UnimodularLattice, UnimodularLattice> even_neighbors(const UnimodularLattice& l) {
  if (l.dimension() % 8 != 0) throw DimensionNotDiv8("dimension " + std::to_string(l.dimension()) + " is not a multiple of 8");
  const ShadowDecomposition s = shadow(l);
  UnimodularLattice n1 = glue_lattice(l, s.l0_basis, s.l1);
  UnimodularLattice n2 = glue_lattice(l, s.l0_basis, s.l3);
  if (!n1.is_even() || !n2.is_even()) throw std::logic_error("even neighbor construction produced an odd lattice");
  return {std::move(n1), std::move(n2)};
}

UnimodularLattice odd_neighbor_from_vector(const UnimodularLattice& even, const IntVector& x_ambient) {
  if (!even.is_even()) throw BadVector("odd neighbor construction needs an even lattice");
  IntVector x;
  try {
    x = even.coordinates_of(x_ambient);
  } catch (const NotInLattice&) {
    throw BadVector("x is not a vector of the lattice");
  }
  if (even.inner(x, x) != 8) throw BadVector("x must have norm 8");
  const IntVector u = row_times(x, even.gram());  // u_i = (x, b_i)
  const std::size_t pivot = first_odd(u);
  if (pivot == u.size()) throw BadVector("(x, y) is even for every lattice vector y");
  IntVector glue = x;
  glue[pivot] += 2;  // x/2 + b_pivot in doubled coordinates
  UnimodularLattice out = glue_lattice(even, even_kernel_basis(u, pivot), glue);
  if (out.is_even()) throw std::logic_error("odd neighbor construction produced an even lattice");
  return out;
}

}  // namespace zkframes
