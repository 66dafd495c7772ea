#include "zkframes/frames.hpp"

#include "zkframes/errors.hpp"
#include "zkframes/linalg.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

namespace zkframes {

nlohmann::json Frame::to_json() const {
  std::vector<std::vector<long>> rows(vectors.rows(), std::vector<long>(vectors.cols()));
  for (std::size_t r = 0; r < vectors.rows(); ++r)
    for (std::size_t c = 0; c < vectors.cols(); ++c) rows[r][c] = to_int64(vectors(r, c));
  return {{"k", to_int64(norm)}, {"vector_rows", rows}};
}

bool is_frame(const UnimodularLattice& host, const IntMatrix& coords, const Integer& norm) {
  const std::size_t n = host.dimension();
  if (coords.rows() != n || coords.cols() != n || norm < 1) return false;
  return coords * host.gram() * coords.transpose() == IntMatrix::identity(n) * norm;
}

Frame make_frame(const UnimodularLattice& host, const IntMatrix& coords) {
  if (coords.rows() != host.dimension() || coords.cols() != host.dimension())
    throw InvalidFrame("a frame needs exactly n coordinate rows of length n");
  const Integer norm = host.inner(coords.row(0), coords.row(0));
  if (!is_frame(host, coords, norm)) throw InvalidFrame("Gram matrix of the vectors is not a multiple of the identity");
  return Frame{norm, coords};
}

Frame frame_from_ambient(const UnimodularLattice& host, const IntMatrix& ambient_rows) {
  IntMatrix coords(ambient_rows.rows(), host.dimension());
  for (std::size_t r = 0; r < ambient_rows.rows(); ++r) coords.set_row(r, host.coordinates_of(ambient_rows.row(r)));
  return make_frame(host, coords);
}

Frame standard_frame(const UnimodularLattice& construction_a_lattice) {
  const std::size_t n = construction_a_lattice.dimension();
  return frame_from_ambient(construction_a_lattice, IntMatrix::identity(n) * construction_a_lattice.scale());
}

IntMatrix prop_frame_rows(const IntMatrix& m, long a, long b, long c, long d) {
  const std::size_t n = m.rows();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix top = IntMatrix::hstack(id * Integer(a) + m * Integer(b), id * Integer(c) + m * Integer(d));
  const IntMatrix bottom = IntMatrix::hstack(id * Integer(-c) + m * Integer(d), id * Integer(a) - m * Integer(b));
  return IntMatrix::vstack(top, bottom);
}

Frame prop_const_frame(const UnimodularLattice& host, const IntMatrix& m, std::int64_t k, long ell, long a, long b,
                       long c, long d) {
  if (mod_floor(b - (c - ell * d), k) != 0) throw CongruenceViolated("b is not congruent to c - ell d modulo k");
  if (mod_floor(d - (a + ell * b), k) != 0) throw CongruenceViolated("d is not congruent to a + ell b modulo k");
  if (a == 0 && b == 0 && c == 0 && d == 0) throw InvalidFrame("(a, b, c, d) = 0 gives no frame");
  if (host.scale() != k || host.dimension() != 2 * m.rows())
    throw InvalidFrame("host lattice does not match A_k(C_{2n,k}(M))");
  return frame_from_ambient(host, prop_frame_rows(m, a, b, c, d));
}

std::array<long, 4> four_squares(long m) {
  if (m < 1) throw std::invalid_argument("four_squares needs a positive integer");
  auto isqrt = [](long v) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  };
  for (long a = 0; a * a <= m; ++a) {
    if (4 * a * a < m) continue;
    for (long b = 0; b <= a && a * a + b * b <= m; ++b) {
      if (a * a + 3 * b * b < m) continue;
      for (long c = 0; c <= b && a * a + b * b + c * c <= m; ++c) {
        const long rest = m - a * a - b * b - c * c;
        const long d = isqrt(rest);
        if (d * d == rest && d <= c) return {a, b, c, d};
      }
    }
  }
  throw std::logic_error("no four-square decomposition found");
}

IntMatrix quaternion_matrix(long a, long b, long c, long d) {
  return IntMatrix::from_rows({{a, b, c, d}, {-b, a, -d, c}, {-c, d, a, -b}, {-d, -c, b, a}});
}

Frame scale_frame(const UnimodularLattice& host, const Frame& f, long m) {
  const std::size_t n = f.vectors.rows();
  if (n % 4 != 0) throw DimensionNotDiv4("frame size " + std::to_string(n) + " is not a multiple of 4");
  if (m < 1) throw std::invalid_argument("scale factor must be positive");
  const auto [a, b, c, d] = four_squares(m);
  const IntMatrix q = quaternion_matrix(a, b, c, d);
  IntMatrix out(n, f.vectors.cols());
  for (std::size_t blk = 0; blk < n; blk += 4) {
    const IntMatrix prod = q * f.vectors.block(blk, 0, 4, f.vectors.cols());
    for (std::size_t r = 0; r < 4; ++r) out.set_row(blk + r, prod.row(r));
  }
  Frame scaled = make_frame(host, out);
  if (scaled.norm != f.norm * m) throw std::logic_error("scaled frame has an unexpected norm");
  return scaled;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::None:
      return "none";
    default:
      return "exhausted";
  }
}

nlohmann::json FrameSearchResult::to_json() const {
  nlohmann::json j{{"status", to_string(status)}, {"nodes", nodes}, {"candidates", candidates},
                   {"elapsed", elapsed_seconds}};
  if (frame) j["frame"] = frame->to_json();
  return j;
}

namespace {

struct BudgetHit {};

class CliqueSearch {
 public:
  // w[a] = x_a G, so (x_a, x_b) = w[a] . x_b.
  CliqueSearch(std::size_t target, const std::vector<std::vector<std::int64_t>>& w,
               const std::vector<std::vector<std::int64_t>>& vecs, std::uint64_t budget)
      : target_(target), v_(vecs.size()), w_(w), vecs_(vecs), budget_(budget) {}

  // Returns the chosen indices, or empty when no clique of size target exists.
  std::vector<std::size_t> run_bitset() {
    words_ = (v_ + 63) / 64;
    adj_.assign(v_ * words_, 0);
    for (std::size_t i = 0; i < v_; ++i)
      for (std::size_t j = i + 1; j < v_; ++j)
        if (orthogonal(i, j)) {
          adj_[i * words_ + j / 64] |= 1ULL << (j % 64);
          adj_[j * words_ + i / 64] |= 1ULL << (i % 64);
        }
    stack_.assign((target_ + 1) * words_, 0);
    for (std::size_t j = 0; j < v_; ++j) stack_[j / 64] |= 1ULL << (j % 64);
    chosen_.clear();
    if (dfs_bitset(0)) return chosen_;
    return {};
  }

  std::vector<std::size_t> run_lists() {
    std::vector<std::size_t> all(v_);
    for (std::size_t i = 0; i < v_; ++i) all[i] = i;
    chosen_.clear();
    if (dfs_lists(all)) return chosen_;
    return {};
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool orthogonal(std::size_t a, std::size_t b) const {
    const auto& wa = w_[a];
    const auto& xb = vecs_[b];
    std::int64_t s = 0;
    for (std::size_t j = 0; j < wa.size(); ++j) s += wa[j] * xb[j];
    return s == 0;
  }

  void tick() {
    if (++nodes_ > budget_) throw BudgetHit{};
  }

  std::size_t count_from(const std::uint64_t* bits, std::size_t start) const {
    std::size_t total = 0;
    std::size_t w = start / 64;
    if (w >= words_) return 0;
    total += std::popcount(bits[w] & (~0ULL << (start % 64)));
    for (++w; w < words_; ++w) total += std::popcount(bits[w]);
    return total;
  }

  bool dfs_bitset(std::size_t depth) {
    if (depth == target_) return true;
    tick();
    const std::uint64_t* cand = &stack_[depth * words_];
    std::uint64_t* next = &stack_[(depth + 1) * words_];
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        // Candidates at or after i must still be able to complete the frame.
        if (depth + count_from(cand, i) < target_) return false;
        const std::uint64_t* row = &adj_[i * words_];
        for (std::size_t u = 0; u < words_; ++u) next[u] = cand[u] & row[u];
        // keep only indices greater than i
        const std::size_t iw = i / 64;
        for (std::size_t u = 0; u < iw; ++u) next[u] = 0;
        next[iw] &= (i % 64 == 63) ? 0 : (~0ULL << (i % 64 + 1));
        if (depth + 1 + count_from(next, 0) < target_) continue;
        chosen_.push_back(i);
        if (dfs_bitset(depth + 1)) return true;
        chosen_.pop_back();
      }
    }
    return false;
  }

  bool dfs_lists(const std::vector<std::size_t>& cand) {
    const std::size_t depth = chosen_.size();
    if (depth == target_) return true;
    tick();
    for (std::size_t pos = 0; pos < cand.size(); ++pos) {
      if (depth + (cand.size() - pos) < target_) return false;
      const std::size_t i = cand[pos];
      std::vector<std::size_t> next;
      for (std::size_t q = pos + 1; q < cand.size(); ++q)
        if (orthogonal(i, cand[q])) next.push_back(cand[q]);
      if (depth + 1 + next.size() < target_) continue;
      chosen_.push_back(i);
      if (dfs_lists(next)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::size_t target_;
  std::size_t v_;
  const std::vector<std::vector<std::int64_t>>& w_;
  const std::vector<std::vector<std::int64_t>>& vecs_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint64_t> stack_;
  std::vector<std::size_t> chosen_;
};

constexpr std::size_t kBitsetLimit = 16384;

}  // namespace

FrameSearchResult find_frame(const UnimodularLattice& l, std::int64_t k, std::uint64_t budget,
                             const EnumerationOptions& opts) {
  if (k < 1) throw std::invalid_argument("frame norm must be positive");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = l.dimension();
  FrameSearchResult result;

  std::vector<Enumerator::Coords> vecs;
  Enumerator e(l.gram());
  e.for_each(
      k,
      [&](const Enumerator::Coords& x, std::int64_t norm) {
        if (norm == k) vecs.push_back(x);
        return true;
      },
      opts);
  std::sort(vecs.begin(), vecs.end());
  result.candidates = vecs.size();

  auto finish = [&]() {
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  };
  if (vecs.size() < n) {
    result.status = SearchStatus::None;
    return finish();
  }

  // Pairwise inner products through w = x G.
  const std::size_t v = vecs.size();
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = to_int64(l.gram()(i, j));
  std::vector<std::vector<std::int64_t>> w(v, std::vector<std::int64_t>(n, 0));
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      if (vecs[a][i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) w[a][j] += vecs[a][i] * g[i * n + j];
    }

  CliqueSearch search(n, w, vecs, budget);
  std::vector<std::size_t> chosen;
  try {
    chosen = v <= kBitsetLimit ? search.run_bitset() : search.run_lists();
    result.status = chosen.empty() ? SearchStatus::None : SearchStatus::Found;
  } catch (const BudgetHit&) {
    result.status = SearchStatus::Exhausted;
  }
  result.nodes = search.nodes();
  if (result.status == SearchStatus::Found) {
    IntMatrix coords(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) coords(r, c) = static_cast<long>(vecs[chosen[r]][c]);
    result.frame = make_frame(l, coords);
  }
  return finish();
}

ZkCode code_from_frame(const UnimodularLattice& l, const Frame& f) {
  const std::size_t n = l.dimension();
  if (f.vectors.rows() != n || f.vectors.cols() != n || !is_frame(l, f.vectors, f.norm))
    throw InvalidFrame("not a frame of the lattice");
  if (f.norm < 2) throw InvalidFrame("frame norm must be at least 2 to define a code");
  const std::int64_t k = to_int64(f.norm);
  return ZkCode(k, ModMatrix::reduce(l.gram() * f.vectors.transpose(), k));
}

nlohmann::json StarRule::to_json() const {
  return {{"threshold", threshold}, {"excluded", excluded}, {"case", case_id}};
}

StarRule StarRule::from_json(const nlohmann::json& j) {
  StarRule r;
  r.threshold = j.at("threshold").get<long>();
  r.excluded = j.at("excluded").get<std::vector<long>>();
  r.case_id = j.value("case", std::string{});
  return r;
}

bool star_condition(const StarRule& rule, long k) {
  if (k < rule.threshold || k < 2) return false;
  long rest = k;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    if (std::find(rule.excluded.begin(), rule.excluded.end(), p) == rule.excluded.end()) return true;
    while (rest % p == 0) rest /= p;
  }
  return rest > 1 && std::find(rule.excluded.begin(), rule.excluded.end(), rest) == rule.excluded.end();
}

}  // namespace zkframes
