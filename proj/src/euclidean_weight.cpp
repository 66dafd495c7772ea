#include "zkframes/codes.hpp"
#include "zkframes/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace zkframes {

namespace {

class WeightSearch {
 public:
  WeightSearch(std::int64_t k, std::vector<std::vector<std::int64_t>> rows, std::size_t n)
      : k_(k), n_(n), rows_(std::move(rows)) {
    const std::size_t r = rows_.size();
    order_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t g = k_;
      for (std::int64_t v : rows_[i]) g = std::gcd(g, v);
      order_[i] = k_ / g;
    }
    // A column contributes to the lower bound once no later row touches it.
    finished_at_.assign(r + 1, {});
    for (std::size_t c = 0; c < n_; ++c) {
      std::size_t last = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (rows_[i][c] != 0) last = i + 1;
      finished_at_[last].push_back(c);
    }
    sq_.resize(k_);
    for (std::int64_t v = 0; v < k_; ++v) sq_[v] = std::min(v, k_ - v) * std::min(v, k_ - v);
    sums_.assign((r + 1) * n_, 0);
  }

  std::int64_t run() {
    best_ = std::numeric_limits<std::int64_t>::max();
    visit(0, 0);
    return best_;
  }

 private:
  void visit(std::size_t depth, std::int64_t bound) {
    if (depth == rows_.size()) {
      if (bound > 0 && bound < best_) best_ = bound;
      return;
    }
    const std::int64_t* prev = &sums_[depth * n_];
    std::int64_t* cur = &sums_[(depth + 1) * n_];
    std::copy(prev, prev + n_, cur);
    const auto& row = rows_[depth];
    const auto& done = finished_at_[depth + 1];
    for (std::int64_t a = 0; a < order_[depth]; ++a) {
      if (a > 0) {
        for (std::size_t c = 0; c < n_; ++c) {
          std::int64_t v = cur[c] + row[c];
          cur[c] = v >= k_ ? v - k_ : v;
        }
      }
      std::int64_t next = bound;
      for (std::size_t c : done) next += sq_[cur[c]];
      if (next < best_) visit(depth + 1, next);
    }
  }

  std::int64_t k_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::int64_t> order_;
  std::vector<std::vector<std::size_t>> finished_at_;
  std::vector<std::int64_t> sq_;
  std::vector<std::int64_t> sums_;
  std::int64_t best_ = 0;
};

}  // namespace

std::int64_t min_euclidean_weight_direct(const ZkCode& c) {
  const std::int64_t k = c.modulus();
  const std::size_t n = c.length();
  std::vector<std::vector<std::int64_t>> rows;
  long double work = 1.0L;
  for (std::size_t r = 0; r < c.generator().rows(); ++r) {
    std::vector<std::int64_t> row(n);
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c.generator()(r, j);
      nonzero = nonzero || row[j] != 0;
    }
    if (!nonzero) continue;
    std::int64_t g = k;
    for (std::int64_t v : row) g = std::gcd(g, v);
    work *= static_cast<long double>(k / g);
    rows.push_back(std::move(row));
  }
  if (work > static_cast<long double>(kDirectEnumerationGuard))
    throw TooLarge("direct enumeration would visit more than 10^9 codewords");
  if (rows.empty()) throw std::invalid_argument("code has no nonzero codeword");
  return WeightSearch(k, std::move(rows), n).run();
}

}  // namespace zkframes
