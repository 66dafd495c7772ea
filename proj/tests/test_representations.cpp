#include "zkframes/enumeration.hpp"
#include "zkframes/errors.hpp"
#include "zkframes/linalg.hpp"
#include "zkframes/representations.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace zkframes;

namespace {

long pmod(long a, long k) { return ((a % k) + k) % k; }

bool congruent(const FormParams& p, long a, long b, long c, long d) {
  return pmod(b - c + p.ell * d, p.k) == 0 && pmod(d - a - p.ell * b, p.k) == 0;
}

// Any (a, b, c, d) meeting the congruences with a^2 + m b^2 + c^2 + m d^2 = k p.
bool brute_represents(const FormParams& p, long prime) {
  const long target = p.k * prime;
  const long r = static_cast<long>(std::sqrt(static_cast<double>(target))) + 1;
  for (long a = -r; a <= r; ++a)
    for (long c = -r; c <= r; ++c) {
      const long rest = target - a * a - c * c;
      if (rest < 0) continue;
      for (long b = -r; b <= r; ++b) {
        const long rest2 = rest - p.m * b * b;
        if (rest2 < 0 || rest2 % p.m != 0) continue;
        const long dd = rest2 / p.m;
        const long d = static_cast<long>(std::llround(std::sqrt(static_cast<double>(dd))));
        if (d * d != dd) continue;
        if (congruent(p, a, b, c, d) || congruent(p, a, b, c, -d)) return true;
      }
    }
  return false;
}

std::vector<std::uint64_t> brute_theta(const FormParams& p, long max_norm) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(max_norm) + 1, 0);
  const long r = static_cast<long>(std::sqrt(static_cast<double>(p.k * max_norm))) + 1;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      for (long c = -r; c <= r; ++c)
        for (long d = -r; d <= r; ++d) {
          if (!congruent(p, a, b, c, d)) continue;
          const long q = a * a + p.m * b * b + c * c + p.m * d * d;
          if (q % p.k == 0 && q / p.k <= max_norm) out[static_cast<std::size_t>(q / p.k)] += 1;
        }
  return out;
}

bool small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("parameter validation") {
  const FormParams good{3, 1, 25}, wrong_m{3, 1, 24}, tiny_k{1, 0, 1};
  CHECK_NOTHROW(good.validate());
  CHECK_THROWS_AS(wrong_m.validate(), BadParams);
  CHECK_THROWS_AS(tiny_k.validate(), BadParams);
  CHECK_THROWS_AS(representation_case("z"), BadParams);
}

TEST_CASE("form lattice gram") {
  for (const auto& rc : representation_cases()) {
    const FormLattice fl = form_lattice(rc.params);
    CHECK(fl.gram.is_symmetric());
    // Index k^2 in Z^4 and diagonal form diag(1, m, 1, m) / k: det = m^2.
    CHECK(determinant(fl.gram) == Integer(rc.params.m) * rc.params.m);
  }
}

TEST_CASE("form theta: direct search, brute force and enumeration agree") {
  for (const auto& rc : representation_cases()) {
    const long max_norm = 12;
    const auto direct = form_theta(rc.params, max_norm);
    CHECK(direct == brute_theta(rc.params, max_norm));
    CHECK(direct == Enumerator(form_lattice(rc.params).gram).count_by_norm(max_norm));
  }
}

TEST_CASE("witness search matches brute force for small primes") {
  for (const auto& rc : representation_cases()) {
    for (long p = 2; p < 120; ++p) {
      if (!small_prime(p)) continue;
      const auto w = find_representation(p, rc.params);
      CHECK_MESSAGE(w.has_value() == brute_represents(rc.params, p), "case " << rc.id << " p " << p);
      if (w) {
        CHECK(w->p == p);
        CHECK(w->satisfies(rc.params));
      }
    }
  }
}

TEST_CASE("case b below 500") {
  const auto entries = verify_range("b", 500);
  std::vector<long> missing;
  for (const auto& e : entries)
    if (!e.witness) missing.push_back(e.p);
  CHECK(missing == std::vector<long>{2, 7});
  CHECK(std::all_of(entries.begin(), entries.end(), [](const RangeEntry& e) { return e.agrees(); }));
  const auto j = range_report_json(entries);
  REQUIRE(j.size() == entries.size());
  CHECK(j.at(0).at("p") == 2);
  CHECK(j.at(0).at("status") == "none");
}

TEST_CASE("witness check rejects a broken quadruple") {
  const FormParams& p = representation_case("a").params;
  auto w = *find_representation(11, p);
  CHECK(w.satisfies(p));
  w.a += p.k;
  CHECK_FALSE(w.satisfies(p));
}
