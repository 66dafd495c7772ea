#include "zkframes/errors.hpp"
#include "zkframes/jobs.hpp"

#include "doctest.h"

#include <algorithm>

using namespace zkframes;

namespace {

const ClaimResult* find_claim(const JobReport& r, const std::string& name) {
  for (const auto& c : r.claims)
    if (c.claim == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("theorem ids and aliases") {
  CHECK(find_theorem("d12plus").id == "d12plus");
  CHECK(find_theorem("rep-b").id == "rep-b");
  for (const auto& t : theorem_list())
    for (const auto& a : t.aliases) CHECK(find_theorem(a).id == t.id);
  CHECK_THROWS_AS(find_theorem("nonsense"), UnsupportedTheorem);
}

TEST_CASE("representation job for case b") {
  const Catalog cat = Catalog::load();
  JobOptions opts;
  opts.prime_range = 500;
  const JobReport r = run_theorem(cat, "rep-b", opts);
  CHECK(r.passed());
  const ClaimResult* c = find_claim(r, "unrepresented primes below 500");
  REQUIRE(c != nullptr);
  CHECK(c->computed == nlohmann::json({2, 7}));
}

TEST_CASE("D12+ frames up to 8") {
  const Catalog cat = Catalog::load();
  JobOptions opts;
  opts.max_k = 8;
  const JobReport r = run_theorem(cat, "d12plus", opts);
  CHECK(r.passed());
  const ClaimResult* one = find_claim(r, "D12+: frame[1]");
  REQUIRE(one != nullptr);
  CHECK(one->computed == "none");
  for (long k = 2; k <= 8; ++k) {
    const ClaimResult* c = find_claim(r, "D12+: frame[" + std::to_string(k) + "]");
    REQUIRE(c != nullptr);
    CHECK(c->status == "pass");
    CHECK(c->computed.at("gram_ok") == true);
  }
  CHECK(std::any_of(r.claims.begin(), r.claims.end(),
                    [](const ClaimResult& c) { return c.claim.find("fingerprint-match") != std::string::npos; }));
}

TEST_CASE("length 20: negative results") {
  const Catalog cat = Catalog::load();
  JobOptions opts;
  opts.max_k = 3;
  const JobReport r = run_theorem(cat, "length20", opts);
  CHECK(r.passed());
  CHECK(find_claim(r, "D20: frame[3]")->note == "A_k = 0");
  CHECK(find_claim(r, "A5^4: frame[2]")->computed.at("status") == "none");
  CHECK(find_claim(r, "D4^5: frame[2]")->status == "pass");
  // Same theta, different root systems.
  const auto d45 = r.details.at("D4^5").at("fingerprint");
  const auto a54 = r.details.at("A5^4").at("fingerprint");
  CHECK(d45.at("theta") == a54.at("theta"));
  CHECK(d45.at("span") != a54.at("span"));
}

TEST_CASE("catalog closure claim") {
  const Catalog cat = Catalog::load();
  const CatalogReport r = verify_catalog(cat, Tier::Fast, {"D_6"});
  CHECK(r.passed());
  REQUIRE(r.closure.size() == 1);
  CHECK(r.closure.front().computed.empty());
  CHECK(r.entries.size() == 1);
}
