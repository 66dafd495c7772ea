#include "zkframes/catalog.hpp"
#include "zkframes/digest.hpp"
#include "zkframes/errors.hpp"
#include "zkframes/jobs.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zkframes;
namespace fs = std::filesystem;

namespace {

fs::path copy_catalog(const std::string& tag) {
  const fs::path dst = fs::temp_directory_path() / ("zkframes_catalog_" + tag);
  fs::remove_all(dst);
  fs::copy(default_data_dir(), dst, fs::copy_options::recursive);
  return dst;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Rewrites the manifest line of `file` with the file's current digest.
void reseal(const fs::path& dir, const std::string& file) {
  std::istringstream in(slurp(dir / "MANIFEST.sha256"));
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.size() > 66 && line.substr(66) == file) line = sha256_hex(slurp(dir / file)) + "  " + file;
    out += line + "\n";
  }
  spit(dir / "MANIFEST.sha256", out);
}

}  // namespace

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("name normalization") {
  CHECK(normalize_name("C_{13,12}") == normalize_name("c13,12"));
  CHECK(normalize_name("D'_10") != normalize_name("D''_10"));
}

TEST_CASE("shipped catalog loads and is closed") {
  const Catalog cat = Catalog::load();
  for (const auto& e : cat.entries()) CHECK_MESSAGE(e.checksum_ok, e.name);
  for (const auto& n : printed_entry_names()) CHECK_MESSAGE(cat.contains(n), n);
  CHECK(printed_entry_names().size() == 46);
  CHECK(cat.find("D12+").name == "B_12");
  CHECK_THROWS_AS(cat.find("no such code"), UnknownName);
}

TEST_CASE("every entry builds a self-dual code") {
  const Catalog cat = Catalog::load();
  for (const auto& e : cat.entries()) {
    const BuiltEntry b = build(e);
    CHECK_MESSAGE(is_self_dual(b.code), e.name);
    CHECK(b.code.modulus() == e.k);
  }
}

TEST_CASE("table examples") {
  const Catalog cat = Catalog::load();
  const BuiltEntry c940 = build(cat.find("C_{9,40}"));
  CHECK(c940.code.modulus() == 9);
  CHECK(c940.code.length() == 40);
  CHECK(cat.find("C_{9,40}").data.at("rA") == nlohmann::json({0, 0, 1, 0, 5, 8, 3, 0, 4, 4}));
  const BuiltEntry p8 = build(cat.find("P_8"));
  REQUIRE(p8.matrix.has_value());
  CHECK(p8.matrix->rows() == 8);
  CHECK(build(cat.find("C_{17,44}")).code.length() == 44);
}

TEST_CASE("two-block matrix layout") {
  const Row ra{1, 2, 0}, rb{0, 1, 1};
  const IntMatrix m = two_block_matrix(ra, rb);
  const IntMatrix a = negacirculant(ra), b = negacirculant(rb);
  CHECK(m.block(0, 0, 3, 3) == a);
  CHECK(m.block(0, 3, 3, 3) == b);
  CHECK(m.block(3, 0, 3, 3) == -b.transpose());
  CHECK(m.block(3, 3, 3, 3) == a.transpose());
}

TEST_CASE("small entries verify at the fast tier") {
  const Catalog cat = Catalog::load();
  for (const char* n : {"D_6", "C_{13,12}", "F_16", "D''_10", "C'_{4,20}", "C_{4,28}"}) {
    const EntryReport r = verify(cat.find(n), Tier::Fast);
    CHECK_MESSAGE(r.passed(), n);
  }
}

TEST_CASE("a corrupted digit is caught") {
  const fs::path dir = copy_catalog("corrupt");
  const std::string file = "C_5_20.json";
  std::string doc = slurp(dir / file);
  nlohmann::json j = nlohmann::json::parse(doc);
  auto ra = j.at("rA").get<std::vector<long>>();
  ra[1] = (ra[1] + 1) % 5;
  j["rA"] = ra;
  spit(dir / file, j.dump(2));

  // Unsealed: the checksum claim fails.
  {
    const Catalog cat = Catalog::load(dir);
    const EntryReport r = verify(cat.find("C_{5,20}"), Tier::Fast);
    CHECK_FALSE(r.passed());
    CHECK(r.claims.front().claim == "checksum");
    CHECK(r.claims.front().status == "fail");
  }
  // Resealed: the checksum passes and the construction itself fails.
  reseal(dir, file);
  {
    const Catalog cat = Catalog::load(dir);
    CHECK(cat.find("C_{5,20}").checksum_ok);
    const EntryReport r = verify(cat.find("C_{5,20}"), Tier::Fast);
    CHECK_FALSE(r.passed());
  }
  fs::remove_all(dir);
}

TEST_CASE("missing data is a data error") {
  const fs::path dir = copy_catalog("missing");
  fs::remove(dir / "D_6.json");
  CHECK_THROWS_AS(Catalog::load(dir), DataError);
  fs::remove(dir / "MANIFEST.sha256");
  CHECK_THROWS_AS(Catalog::load(dir), DataError);
  CHECK_THROWS_AS(Catalog::load(dir / "nowhere"), DataError);
  fs::remove_all(dir);
}

TEST_CASE("tier parsing") {
  CHECK(parse_tier("fast") == Tier::Fast);
  CHECK(parse_tier("full") == Tier::Full);
  CHECK(to_string(Tier::Full) == "full");
  CHECK(theta_radius_limit(48, Tier::Fast) == 4);
  CHECK(theta_radius_limit(36, Tier::Fast) >= 5);
}
