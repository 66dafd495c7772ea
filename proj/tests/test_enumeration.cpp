#include "zkframes/enumeration.hpp"
#include "zkframes/errors.hpp"

#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

using namespace zkframes;

namespace {

// Counts vectors of each norm <= max_norm by scanning the box [-box, box]^n.
std::vector<std::uint64_t> brute_counts(const IntMatrix& g, std::int64_t max_norm, long box) {
  const std::size_t n = g.rows();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_norm) + 1, 0);
  std::vector<long> x(n, -box);
  for (;;) {
    Integer v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v += g(i, j) * x[i] * x[j];
    if (v <= max_norm) counts[v.get_ui()] += 1;
    std::size_t i = 0;
    while (i < n && x[i] == box) x[i++] = -box;
    if (i == n) break;
    ++x[i];
  }
  return counts;
}

IntMatrix d4_gram() {
  // Basis of D4: e1-e2, e2-e3, e3-e4, e3+e4.
  return IntMatrix::from_rows({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
}

// Rows U * diag(1,1,1,1,2) with U unimodular and far from reduced, so the lattice is
// {v in Z^5 : v_5 even}.
IntMatrix skewed_gram() {
  const IntMatrix u = IntMatrix::from_rows(
      {{1, 0, 0, 0, 0}, {3, 1, 0, 0, 0}, {-2, 5, 1, 0, 0}, {4, 1, -3, 1, 0}, {1, 2, 2, 7, 1}});
  const IntMatrix d = IntMatrix::from_rows(
      {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 2}});
  const IntMatrix b = u * d;
  return b * b.transpose();
}

// The same lattice counted directly in the ambient space.
std::vector<std::uint64_t> skewed_counts(std::int64_t max_norm) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(max_norm) + 1, 0);
  const long box = 3;
  std::vector<long> x(5, -box);
  for (;;) {
    long v = 0;
    for (long c : x) v += c * c;
    if (v <= max_norm && x[4] % 2 == 0) out[static_cast<std::size_t>(v)] += 1;
    std::size_t i = 0;
    while (i < 5 && x[i] == box) x[i++] = -box;
    if (i == 5) break;
    ++x[i];
  }
  return out;
}

}  // namespace

TEST_CASE("counts of Z^3 match brute force") {
  const IntMatrix g = IntMatrix::identity(3);
  Enumerator e(g);
  CHECK(e.count_by_norm(6) == brute_counts(g, 6, 3));
  CHECK(e.minimum() == 1);
}

TEST_CASE("counts of D4 match brute force") {
  Enumerator e(d4_gram());
  const auto counts = e.count_by_norm(6);
  CHECK(counts == brute_counts(d4_gram(), 6, 6));
  CHECK(counts[2] == 24);
  CHECK(e.minimum() == 2);
}

TEST_CASE("a badly skewed basis is reduced before counting") {
  const IntMatrix g = skewed_gram();
  Enumerator e(g);
  const auto counts = e.count_by_norm(8);
  CHECK(counts == skewed_counts(8));
}

TEST_CASE("for_each reports coordinates in the input basis") {
  const IntMatrix g = d4_gram();
  Enumerator e(g);
  std::size_t seen = 0;
  e.for_each(2, [&](const Enumerator::Coords& x, std::int64_t norm) {
    Integer v = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) v += g(i, j) * x[i] * x[j];
    CHECK(v == norm);
    ++seen;
    return true;
  });
  CHECK(seen == 12);  // one vector per +-pair
}

TEST_CASE("count_norm_at_least stops early") {
  Enumerator e(d4_gram());
  CHECK(e.count_norm_at_least(2, 1000) == 24);
  CHECK(e.count_norm_at_least(2, 5) >= 5);
  CHECK(e.count_norm_at_least(3, 10) == 0);
}

TEST_CASE("node budget raises") {
  Enumerator e(IntMatrix::identity(10));
  EnumerationOptions opts;
  opts.node_budget = 100;
  CHECK_THROWS_AS(e.count_by_norm(6, opts), BudgetExceeded);
}

TEST_CASE("threads and checkpoints give the same counts") {
  const IntMatrix g = skewed_gram();
  const auto serial = Enumerator(g).count_by_norm(8);
  EnumerationOptions threaded;
  threaded.threads = 3;
  CHECK(Enumerator(g).count_by_norm(8, threaded) == serial);

  const auto path = std::filesystem::temp_directory_path() / "zkframes_enum_ckpt.json";
  std::filesystem::remove(path);
  EnumerationOptions ck;
  ck.checkpoint = path.string();
  CHECK(Enumerator(g).count_by_norm(8, ck) == serial);
  CHECK(std::filesystem::exists(path));
  // A completed checkpoint resumes to the same answer.
  CHECK(Enumerator(g).count_by_norm(8, ck) == serial);
  std::filesystem::remove(path);
}

TEST_CASE("minimum_norm helper") {
  CHECK(minimum_norm(skewed_gram()) == 1);
  CHECK(minimum_norm(d4_gram()) == 2);
  // Resuming past a radius already known to be empty.
  CHECK(Enumerator(d4_gram()).minimum({}, 1) == 2);
  CHECK(Enumerator(skewed_gram()).minimum({}, 0) == 1);
}
