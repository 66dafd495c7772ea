#include "zkframes/catalog.hpp"

#include "zkframes/digest.hpp"
#include "zkframes/errors.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

namespace zkframes {

using nlohmann::json;

std::string normalize_name(const std::string& name) {
  std::string out;
  for (char ch : name) {
    if (ch == '{' || ch == '}' || ch == '_' || std::isspace(static_cast<unsigned char>(ch))) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("ZKFRAMES_DATA"); env != nullptr && *env != '\0') return env;
  return ZKFRAMES_DEFAULT_DATA_DIR;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CatalogEntry parse_entry(const json& doc, const std::string& file) {
  CatalogEntry e;
  try {
    e.name = doc.at("name").get<std::string>();
    e.kind = doc.at("kind").get<std::string>();
    e.k = doc.at("k").get<std::int64_t>();
    e.aliases = doc.value("aliases", std::vector<std::string>{});
    e.source = doc.value("source", std::string{});
    e.claims = doc.value("claims", json::object());
    if (doc.contains("star")) e.star = StarRule::from_json(doc.at("star"));
  } catch (const json::exception& ex) {
    throw DataError(file + ": " + ex.what());
  }
  e.file = file;
  e.data = doc;
  return e;
}

}  // namespace

Catalog Catalog::load(const std::filesystem::path& dir) {
  const std::filesystem::path manifest = dir / "MANIFEST.sha256";
  if (!std::filesystem::exists(manifest)) throw DataError("missing manifest " + manifest.string());
  std::istringstream lines(read_file(manifest));
  Catalog cat;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string digest, file;
    if (!(ls >> digest >> file)) throw DataError("malformed manifest line: " + line);
    const std::string text = read_file(dir / file);
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& ex) {
      throw DataError(file + ": " + ex.what());
    }
    CatalogEntry e = parse_entry(doc, file);
    e.checksum_ok = sha256_hex(text) == digest;
    for (const auto& other : cat.entries_)
      if (normalize_name(other.name) == normalize_name(e.name)) throw DataError("duplicate entry " + e.name);
    cat.entries_.push_back(std::move(e));
  }
  return cat;
}

const CatalogEntry& Catalog::find(const std::string& name) const {
  const std::string key = normalize_name(name);
  for (const auto& e : entries_) {
    if (normalize_name(e.name) == key) return e;
    for (const auto& a : e.aliases)
      if (normalize_name(a) == key) return e;
  }
  throw UnknownName("no catalog entry named '" + name + "'");
}

bool Catalog::contains(const std::string& name) const {
  try {
    find(name);
    return true;
  } catch (const UnknownName&) {
    return false;
  }
}

IntMatrix two_block_matrix(const Row& ra, const Row& rb) {
  if (ra.size() != rb.size()) throw std::invalid_argument("rA and rB must have the same length");
  const IntMatrix a = negacirculant(ra);
  const IntMatrix b = negacirculant(rb);
  return IntMatrix::vstack(IntMatrix::hstack(a, b), IntMatrix::hstack(-b.transpose(), a.transpose()));
}

namespace {

std::vector<long> digits(const std::string& s) {
  std::vector<long> out;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw DataError("non-digit in matrix row '" + s + "'");
    out.push_back(ch - '0');
  }
  return out;
}

IntMatrix digit_rows(const std::vector<std::string>& rows) {
  std::vector<std::vector<long>> out;
  for (const auto& r : rows) out.push_back(digits(r));
  for (const auto& r : out)
    if (r.size() != out.front().size()) throw DataError("ragged matrix rows");
  return IntMatrix::from_rows(out);
}

ZkCode build_z4_split(const CatalogEntry& e) {
  const auto r = e.data.at("r").get<std::size_t>();
  const auto rows = e.data.at("rows").get<std::vector<std::vector<std::string>>>();
  std::vector<std::string> left, right, two_d;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw DataError(e.name + ": each row needs a left and a right block");
    if (i < r) {
      left.push_back(rows[i][0]);
      right.push_back(rows[i][1]);
      continue;
    }
    // Lower rows printed inline as (2I | 2D).
    const std::vector<long> l = digits(rows[i][0]);
    const std::size_t pos = i - r;
    for (std::size_t j = 0; j < l.size(); ++j)
      if (l[j] != (j == pos ? 2 : 0)) throw DataError(e.name + ": lower row does not start with 2I");
    two_d.push_back(rows[i][1]);
  }
  for (const auto& s : e.data.value("two_d", std::vector<std::string>{})) two_d.push_back(s);
  if (left.size() != r || two_d.empty()) throw DataError(e.name + ": inconsistent block sizes");
  return z4_split_code(digit_rows(left), digit_rows(right), digit_rows(two_d));
}

}  // namespace

BuiltEntry build(const CatalogEntry& e) {
  const auto& d = e.data;
  try {
    if (e.kind == "negacirculant-pair")
      return BuiltEntry{std::nullopt, four_block_code(e.k, d.at("rA").get<Row>(), d.at("rB").get<Row>())};
    if (e.kind == "two-block-matrix" || e.kind == "paley") {
      const IntMatrix m = e.kind == "paley" ? paley_matrix(d.at("p").get<long>())
                                            : two_block_matrix(d.at("rA").get<Row>(), d.at("rB").get<Row>());
      const long ell = d.at("ell").get<long>();
      return BuiltEntry{m, two_block_code(e.k, m, ell), ell, d.at("m").get<long>()};
    }
    if (e.kind == "z4-split") {
      if (e.k != 4) throw DataError(e.name + ": z4-split entries must have k = 4");
      return BuiltEntry{std::nullopt, build_z4_split(e)};
    }
    if (e.kind == "generator") {
      const IntMatrix g = digit_rows(d.at("rows").get<std::vector<std::string>>());
      return BuiltEntry{std::nullopt, ZkCode(e.k, ModMatrix::reduce(g, e.k))};
    }
  } catch (const json::exception& ex) {
    throw DataError(e.name + ": " + ex.what());
  }
  throw DataError(e.name + ": unknown kind '" + e.kind + "'");
}

Tier parse_tier(const std::string& s) {
  if (s == "fast") return Tier::Fast;
  if (s == "full") return Tier::Full;
  throw std::invalid_argument("tier must be 'fast' or 'full'");
}

std::string to_string(Tier t) { return t == Tier::Fast ? "fast" : "full"; }

std::int64_t theta_radius_limit(std::size_t dimension, Tier tier) {
  if (tier == Tier::Full || dimension < 40) return std::numeric_limits<std::int64_t>::max();
  return 4;
}

json ClaimResult::to_json() const {
  json j{{"claim", claim}, {"expected", expected}, {"computed", computed}, {"status", status}};
  if (!note.empty()) j["note"] = note;
  return j;
}

bool EntryReport::passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.status != "fail"; });
}

json EntryReport::to_json() const {
  json arr = json::array();
  for (const auto& c : claims) arr.push_back(c.to_json());
  return {{"name", name}, {"passed", passed()}, {"elapsed_seconds", elapsed_seconds}, {"claims", arr}};
}

namespace {

ClaimResult compare(std::string claim, const json& expected, const json& computed) {
  return ClaimResult{std::move(claim), expected, computed, expected == computed ? "pass" : "fail", ""};
}

ClaimResult skipped(std::string claim, const json& expected, std::string why) {
  return ClaimResult{std::move(claim), expected, nullptr, "skipped", std::move(why)};
}

}  // namespace

EntryReport verify(const CatalogEntry& entry, Tier tier, const EnumerationOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  EntryReport rep;
  rep.name = entry.name;
  auto finish = [&]() {
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  };
  const json& cl = entry.claims;
  rep.claims.push_back(compare("checksum", true, entry.checksum_ok));

  std::optional<BuiltEntry> built;
  try {
    built = build(entry);
  } catch (const Error& ex) {
    rep.claims.push_back(ClaimResult{"build", true, false, "fail", ex.what()});
    return finish();
  }
  const ZkCode& code = built->code;
  const bool self_dual = is_self_dual(code);
  rep.claims.push_back(compare("self_dual", cl.value("self_dual", true), self_dual));
  if (!self_dual) return finish();

  const UnimodularLattice lat = construction_a(code);
  const std::size_t n = lat.dimension();
  const std::int64_t limit = theta_radius_limit(n, tier);

  std::int64_t radius = 0;
  std::vector<std::pair<std::int64_t, std::uint64_t>> theta_claims;
  if (cl.contains("theta")) {
    for (const auto& [key, value] : cl.at("theta").items()) theta_claims.emplace_back(std::stoll(key), value.get<std::uint64_t>());
    std::sort(theta_claims.begin(), theta_claims.end());
    for (const auto& [norm, count] : theta_claims)
      if (norm <= limit) radius = std::max(radius, norm);
  }
  if ((cl.contains("alpha") || cl.contains("beta")) && limit >= 4) radius = std::max<std::int64_t>(radius, 4);
  if (cl.contains("kissing") && cl.contains("min_norm") && cl.at("min_norm").get<std::int64_t>() <= limit)
    radius = std::max(radius, cl.at("min_norm").get<std::int64_t>());

  Enumerator en(lat.gram());
  std::vector<std::uint64_t> counts;
  if (radius > 0) counts = en.count_by_norm(radius, opts);
  std::int64_t mu = 0;
  for (std::size_t m = 1; m < counts.size() && mu == 0; ++m)
    if (counts[m] != 0) mu = static_cast<std::int64_t>(m);
  if (mu == 0) mu = en.minimum(opts, counts.empty() ? 0 : static_cast<std::int64_t>(counts.size()) - 1);
  if (cl.contains("min_norm")) rep.claims.push_back(compare("min_norm", cl.at("min_norm"), mu));

  if (cl.contains("extremality")) {
    const std::int64_t d_e = min_euclidean_weight_lattice(code, opts, mu);
    const int len = static_cast<int>(code.length());
    ClaimResult c = compare("extremality", cl.at("extremality"), to_string(classify(d_e, len, code.modulus())));
    c.note = "d_E = " + std::to_string(d_e) + ", bound = " + std::to_string(extremal_bound(len, code.modulus()));
    rep.claims.push_back(std::move(c));
  }

  for (const auto& [norm, count] : theta_claims) {
    const std::string name = "theta[" + std::to_string(norm) + "]";
    if (norm > limit)
      rep.claims.push_back(skipped(name, count, "full tier"));
    else
      rep.claims.push_back(compare(name, count, counts.at(static_cast<std::size_t>(norm))));
  }

  const bool min4 = counts.size() > 4 && counts[1] == 0 && counts[2] == 0 && counts[3] == 0;
  for (const auto& [key, base, step, dim] : {std::tuple{"alpha", 19120, 256, 40}, std::tuple{"beta", 6600, 16, 44}}) {
    if (!cl.contains(key)) continue;
    if (counts.size() <= 4) {
      rep.claims.push_back(skipped(key, cl.at(key), "needs radius 4"));
      continue;
    }
    const auto a4 = static_cast<std::int64_t>(counts[4]);
    json computed = nullptr;
    if (min4 && static_cast<int>(n) == dim && (a4 - base) % step == 0) computed = (a4 - base) / step;
    ClaimResult c = compare(key, cl.at(key), computed);
    c.note = "A_4 = " + std::to_string(a4);
    rep.claims.push_back(std::move(c));
  }

  if (cl.contains("kissing")) {
    if (static_cast<std::int64_t>(counts.size()) > mu)
      rep.claims.push_back(compare("kissing", cl.at("kissing"), counts[static_cast<std::size_t>(mu)]));
    else
      rep.claims.push_back(skipped("kissing", cl.at("kissing"), "full tier"));
  }
  return finish();
}

}  // namespace zkframes
