#include "zkframes/enumeration.hpp"

#include "zkframes/digest.hpp"
#include "zkframes/errors.hpp"
#include "zkframes/linalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace zkframes {

namespace {

using json = nlohmann::json;

// Float radius used for pruning: admissible margin above the exact integer radius.
double float_radius(std::int64_t r) {
  const double rd = static_cast<double>(r);
  return rd * (1.0 + 1e-9) + 1e-6;
}

class NodeCounter {
 public:
  NodeCounter(std::atomic<std::uint64_t>& total, std::uint64_t budget) : total_(total), budget_(budget) {}
  ~NodeCounter() { flush(); }

  void tick() {
    if (++local_ == kFlushEvery) flush_and_check();
  }

  void flush() {
    total_ += local_;
    local_ = 0;
  }

 private:
  static constexpr std::uint64_t kFlushEvery = 1u << 14;

  void flush_and_check() {
    const std::uint64_t now = (total_ += local_);
    local_ = 0;
    if (budget_ != 0 && now > budget_)
      throw BudgetExceeded("enumeration node budget of " + std::to_string(budget_) + " exhausted");
  }

  std::atomic<std::uint64_t>& total_;
  std::uint64_t budget_;
  std::uint64_t local_ = 0;
};

struct Kernel {
  int n;
  const double* r;
  const double* mu;
  const std::int64_t* g;

  std::int64_t exact_norm(const std::int64_t* x) const {
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      std::int64_t t = g[i * n + i] * x[i];
      for (int j = 0; j < i; ++j) t += 2 * g[i * n + j] * x[j];
      s += t * x[i];
    }
    return s;
  }
};

// Depth-first Schnorr-Euchner walk over levels [bottom, top) beneath the fixed
// coordinates x[top..n-1], whose partial squared length is `ltop`. `on_leaf(x, l)` is
// called for every node at level `bottom` within `radius`; it may shrink `radius` and
// returns false to abort. When every coordinate above a level is zero, only
// nonnegative values are tried there, so each +-pair is visited once.
template <class OnLeaf>
bool walk(const Kernel& K, std::vector<std::int64_t>& x, int top, int bottom, const double& radius, double ltop,
          OnLeaf&& on_leaf, NodeCounter& counter) {
  const int n = K.n;
  if (top == bottom) return on_leaf(x, ltop);

  std::vector<double> sig(static_cast<std::size_t>(n) * (n + 1), 0.0);
  std::vector<int> begin(n + 1, n - 1);
  std::vector<double> l(n + 1, 0.0), c(n, 0.0);
  std::vector<std::int64_t> dx(n, 0), ddx(n, 0);
  std::vector<char> nz(n + 1, 0);
  l[top] = ltop;
  for (int j = top; j < n; ++j) nz[top] = nz[top] || x[j] != 0;

  auto init = [&](int k) {
    double* row = &sig[static_cast<std::size_t>(k) * (n + 1)];
    for (int j = begin[k + 1]; j > k; --j) row[j] = row[j + 1] - K.mu[j * n + k] * static_cast<double>(x[j]);
    if (begin[k + 1] > begin[k]) begin[k] = begin[k + 1];
    begin[k + 1] = k + 1;
    c[k] = row[k + 1];
    const double xr = std::nearbyint(c[k]);
    x[k] = static_cast<std::int64_t>(xr);
    dx[k] = ddx[k] = (c[k] >= xr) ? 1 : -1;
  };

  int k = top - 1;
  init(k);
  while (true) {
    const double d = static_cast<double>(x[k]) - c[k];
    const double lk = l[k + 1] + d * d * K.r[k];
    counter.tick();
    if (lk <= radius) {
      if (k == bottom) {
        if (!on_leaf(x, lk)) return false;
      } else {
        l[k] = lk;
        nz[k] = nz[k + 1] || x[k] != 0;
        --k;
        init(k);
        continue;
      }
    } else if (++k == top) {
      return true;
    }
    if (nz[k + 1]) {
      x[k] += dx[k];
      ddx[k] = -ddx[k];
      dx[k] = ddx[k] - dx[k];
    } else {
      ++x[k];
    }
  }
}

struct Job {
  std::vector<std::int64_t> prefix;  // coordinates split..n-1
  double partial = 0.0;
};

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << text;
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Enumerator::Enumerator(const IntMatrix& gram) {
  if (gram.rows() == 0 || gram.rows() != gram.cols()) throw std::invalid_argument("Gram matrix must be square");
  GramReduction red = lll_reduce_gram(gram);
  n_ = gram.rows();
  reduced_ = std::move(red.gram);
  transform_ = std::move(red.transform);
  g_.resize(n_ * n_);
  u_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      g_[i * n_ + j] = to_int64(reduced_(i, j));
      u_[i * n_ + j] = to_int64(transform_(i, j));
    }
  }
  FloatGso gso = float_gso(reduced_);
  r_ = std::move(gso.r);
  mu_ = std::move(gso.mu);
}

Enumerator::Coords Enumerator::to_input(const Coords& x) const {
  Coords out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) out[j] += x[i] * u_[i * n_ + j];
  }
  return out;
}

std::vector<std::uint64_t> Enumerator::count_by_norm(std::int64_t max_norm, const EnumerationOptions& opts) {
  if (max_norm < 0) throw std::invalid_argument("max_norm must be nonnegative");
  const Kernel K{static_cast<int>(n_), r_.data(), mu_.data(), g_.data()};
  const int n = K.n;
  const double radius = float_radius(max_norm);
  std::atomic<std::uint64_t> total{0};
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_norm) + 1, 0);
  counts[0] = 1;

  auto count_leaf = [&](std::vector<std::uint64_t>& acc) {
    return [&K, &acc, max_norm](const std::vector<std::int64_t>& x, double) {
      const std::int64_t norm = K.exact_norm(x.data());
      if (norm > 0 && norm <= max_norm) acc[static_cast<std::size_t>(norm)] += 2;
      return true;
    };
  };

  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 && opts.checkpoint.empty()) {
    NodeCounter counter(total, opts.node_budget);
    std::vector<std::int64_t> x(n, 0);
    walk(K, x, n, 0, radius, 0.0, count_leaf(counts), counter);
    counter.flush();
    nodes_ = total;
    return counts;
  }

  // Split the tree at a level with enough prefixes to balance threads and make
  // checkpoints fine-grained.
  const std::size_t target = opts.checkpoint.empty() ? 64u * threads : 2048u;
  std::vector<Job> jobs;
  int split = n;
  {
    NodeCounter counter(total, opts.node_budget);
    for (int depth = 1; depth < n; ++depth) {
      split = n - depth;
      jobs.clear();
      std::vector<std::int64_t> x(n, 0);
      walk(K, x, n, split, radius, 0.0,
           [&](const std::vector<std::int64_t>& xs, double l) {
             jobs.push_back({std::vector<std::int64_t>(xs.begin() + split, xs.end()), l});
             return true;
           },
           counter);
      if (jobs.size() >= target) break;
    }
  }

  std::ostringstream digest_src;
  digest_src << reduced_ << "|" << max_norm << "|" << split << "|" << jobs.size();
  const std::string digest = sha256_hex(digest_src.str());

  std::vector<char> done(jobs.size(), 0);
  std::uint64_t prior_nodes = 0;
  if (!opts.checkpoint.empty() && std::filesystem::exists(opts.checkpoint)) {
    std::ifstream in(opts.checkpoint);
    json state = json::parse(in);
    if (state.at("digest").get<std::string>() == digest) {
      for (std::size_t idx : state.at("completed").get<std::vector<std::size_t>>()) done.at(idx) = 1;
      const auto saved = state.at("counts").get<std::vector<std::uint64_t>>();
      for (std::size_t m = 1; m < counts.size() && m < saved.size(); ++m) counts[m] = saved[m];
      prior_nodes = state.value("nodes", std::uint64_t{0});
    }
  }

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::set<std::size_t> completed;
  for (std::size_t i = 0; i < done.size(); ++i)
    if (done[i]) completed.insert(i);

  auto save = [&]() {
    json state;
    state["digest"] = digest;
    state["max_norm"] = max_norm;
    state["split_level"] = split;
    state["jobs"] = jobs.size();
    state["completed"] = std::vector<std::size_t>(completed.begin(), completed.end());
    state["counts"] = counts;
    state["nodes"] = prior_nodes + total.load();
    write_atomically(opts.checkpoint, state.dump());
  };

  auto worker = [&]() {
    try {
      NodeCounter counter(total, opts.node_budget);
      std::vector<std::int64_t> x(n, 0);
      std::vector<std::uint64_t> local(counts.size(), 0);
      while (!stop) {
        const std::size_t idx = next++;
        if (idx >= jobs.size()) break;
        if (done[idx]) continue;
        std::fill(x.begin(), x.end(), 0);
        std::copy(jobs[idx].prefix.begin(), jobs[idx].prefix.end(), x.begin() + split);
        std::fill(local.begin(), local.end(), 0);
        walk(K, x, split, 0, radius, jobs[idx].partial, count_leaf(local), counter);
        std::lock_guard<std::mutex> lock(mutex);
        for (std::size_t m = 1; m < counts.size(); ++m) counts[m] += local[m];
        completed.insert(idx);
        if (!opts.checkpoint.empty()) save();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  nodes_ = total;
  if (failure) std::rethrow_exception(failure);
  return counts;
}

std::int64_t Enumerator::minimum(const EnumerationOptions& opts, std::int64_t above) {
  const Kernel K{static_cast<int>(n_), r_.data(), mu_.data(), g_.data()};
  std::int64_t best = g_[0];
  for (std::size_t i = 1; i < n_; ++i) best = std::min(best, g_[i * n_ + i]);
  if (best <= 1) {
    nodes_ = 0;
    return best;
  }
  // Iterative deepening: radius r - 1 came back empty, so the first vector within
  // radius r has norm r. The last, empty pass dominates the cost.
  std::atomic<std::uint64_t> total{0};
  NodeCounter counter(total, opts.node_budget);
  for (std::int64_t r = std::max<std::int64_t>(1, above + 1); r < best; ++r) {
    std::int64_t found = 0;
    std::vector<std::int64_t> x(n_, 0);
    walk(K, x, K.n, 0, float_radius(r), 0.0,
         [&](const std::vector<std::int64_t>& xs, double) {
           const std::int64_t norm = K.exact_norm(xs.data());
           if (norm > 0 && norm <= r) {
             found = norm;
             return false;
           }
           return true;
         },
         counter);
    if (found > 0) {
      best = found;
      break;
    }
  }
  counter.flush();
  nodes_ = total;
  return best;
}

bool Enumerator::for_each(std::int64_t max_norm, const Visitor& visit, const EnumerationOptions& opts) {
  const Kernel K{static_cast<int>(n_), r_.data(), mu_.data(), g_.data()};
  const double radius = float_radius(max_norm);
  std::atomic<std::uint64_t> total{0};
  bool finished = false;
  {
    NodeCounter counter(total, opts.node_budget);
    std::vector<std::int64_t> x(n_, 0);
    finished = walk(K, x, K.n, 0, radius, 0.0,
                    [&](const std::vector<std::int64_t>& xs, double) {
                      const std::int64_t norm = K.exact_norm(xs.data());
                      if (norm <= 0 || norm > max_norm) return true;
                      return visit(to_input(xs), norm);
                    },
                    counter);
  }
  nodes_ = total;
  return finished;
}

std::uint64_t Enumerator::count_norm_at_least(std::int64_t norm, std::uint64_t limit, const EnumerationOptions& opts) {
  const Kernel K{static_cast<int>(n_), r_.data(), mu_.data(), g_.data()};
  const double radius = float_radius(norm);
  std::atomic<std::uint64_t> total{0};
  std::uint64_t found = 0;
  {
    NodeCounter counter(total, opts.node_budget);
    std::vector<std::int64_t> x(n_, 0);
    walk(K, x, K.n, 0, radius, 0.0,
         [&](const std::vector<std::int64_t>& xs, double) {
           if (K.exact_norm(xs.data()) == norm) found += 2;
           return found < limit;
         },
         counter);
  }
  nodes_ = total;
  return found;
}

std::int64_t minimum_norm(const IntMatrix& gram, const EnumerationOptions& opts) {
  Enumerator e(gram);
  return e.minimum(opts);
}

std::vector<std::uint64_t> theta_counts(const IntMatrix& gram, std::int64_t max_norm, const EnumerationOptions& opts) {
  Enumerator e(gram);
  return e.count_by_norm(max_norm, opts);
}

}  // namespace zkframes
