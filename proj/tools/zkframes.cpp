// Command-line driver: catalog verification, theorem jobs and single-lattice queries.
// JSON goes to stdout, a one-line summary to stderr.
//
// Exit codes: 0 every executed claim passed, 1 some claim failed, 2 data or I/O error,
// 3 invalid request (unknown name, unsupported theorem, bad parameters).

#include "zkframes/catalog.hpp"
#include "zkframes/errors.hpp"
#include "zkframes/frames.hpp"
#include "zkframes/jobs.hpp"
#include "zkframes/lattice.hpp"
#include "zkframes/representations.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>

using namespace zkframes;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kClaimFailed = 1, kDataError = 2, kBadRequest = 3 };

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_si());
    rows.push_back(row);
  }
  return rows;
}

int emit(const json& j, bool ok, const std::string& summary) {
  std::cout << j.dump(2) << "\n";
  std::cerr << summary << (ok ? "" : " [FAILED]") << "\n";
  return ok ? kOk : kClaimFailed;
}

struct Globals {
  std::string data_dir;
  std::uint64_t node_budget = 0;
  unsigned threads = 1;
  std::string checkpoint;

  EnumerationOptions enumeration() const { return {node_budget, threads, checkpoint}; }
  Catalog catalog() const { return data_dir.empty() ? Catalog::load() : Catalog::load(data_dir); }
};

std::string count_summary(const std::vector<ClaimResult>& claims) {
  std::size_t pass = 0, fail = 0, other = 0;
  for (const auto& c : claims) {
    if (c.status == "pass") ++pass;
    else if (c.status == "fail") ++fail;
    else ++other;
  }
  return std::to_string(pass) + " passed, " + std::to_string(fail) + " failed, " + std::to_string(other) +
         " skipped or external";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-dual Z_k codes, unimodular lattices and k-frames"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir, "Catalog directory (default: $ZKFRAMES_DATA or the built-in path)");
  app.add_option("--node-budget", g.node_budget, "Enumeration node budget, 0 for unlimited");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--checkpoint", g.checkpoint, "Checkpoint file for long theta counts");

  std::string tier = "fast";
  std::vector<std::string> names;
  auto* vc = app.add_subcommand("verify-catalog", "Check every catalog claim");
  vc->add_option("--tier", tier)->check(CLI::IsMember({"fast", "full"}));
  vc->add_option("--names", names, "Restrict to these entries");

  std::string theorem_id;
  JobOptions job;
  auto* th = app.add_subcommand("theorem", "Run one theorem job");
  th->add_option("id", theorem_id)->required();
  th->add_option("--max-k", job.max_k, "Largest frame order examined")->check(CLI::Range(1L, 200L));
  th->add_option("--range,--prime-range", job.prime_range, "Prime bound for representation jobs")
      ->check(CLI::Range(2L, 1000000L));
  th->add_option("--fingerprint-norm", job.fingerprint_norm, "Theta radius used for fingerprints")
      ->check(CLI::Range(0L, 8L));
  th->add_option("--frame-budget", job.frame_budget, "Node budget of each frame search");
  th->add_option("--tier", tier)->check(CLI::IsMember({"fast", "full"}));
  auto* list = app.add_subcommand("theorems", "List supported theorem ids");

  std::string name;
  auto* bd = app.add_subcommand("build", "Build an entry's code and lattice");
  bd->add_option("name", name)->required();

  std::int64_t max_norm = 4;
  auto* ts = app.add_subcommand("theta", "Theta coefficients up to a norm");
  ts->add_option("name", name)->required();
  ts->add_option("--max-norm", max_norm)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{12}));

  auto* mn = app.add_subcommand("min-norm", "Minimum norm of an entry's lattice");
  mn->add_option("name", name)->required();

  std::int64_t k = 2;
  auto* ff = app.add_subcommand("find-frame", "Exhaustive k-frame search");
  ff->add_option("name", name)->required();
  ff->add_option("--k", k)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1000}));

  std::string rep_case;
  long range = 500;
  auto* rp = app.add_subcommand("represent", "Prime representations for one case");
  rp->add_option("--case", rep_case)->required();
  rp->add_option("--range", range)->check(CLI::Range(2L, 1000000L));

  auto* nb = app.add_subcommand("neighbors", "Even neighbors of an odd lattice");
  nb->add_option("name", name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      json out = json::array();
      for (const auto& t : theorem_list()) out.push_back({{"id", t.id}, {"aliases", t.aliases}, {"title", t.title}});
      return emit(out, true, std::to_string(out.size()) + " theorems");
    }
    if (*rp) {
      const auto entries = verify_range(rep_case, range);
      const bool ok = std::all_of(entries.begin(), entries.end(), [](const RangeEntry& e) { return e.agrees(); });
      return emit(range_report_json(entries), ok, "case " + rep_case + ": " + std::to_string(entries.size()) + " primes");
    }

    const Catalog cat = g.catalog();
    if (*vc) {
      const CatalogReport rep = verify_catalog(cat, parse_tier(tier), names, g.enumeration());
      std::vector<ClaimResult> all = rep.closure;
      for (const auto& e : rep.entries) {
        all.insert(all.end(), e.claims.begin(), e.claims.end());
        for (const auto& c : e.claims)
          if (c.status == "fail") std::cerr << "FAIL " << e.name << ": " << c.claim << "\n";
      }
      return emit(rep.to_json(), rep.passed(), std::to_string(rep.entries.size()) + " entries; " + count_summary(all));
    }
    if (*th) {
      job.tier = parse_tier(tier);
      job.enumeration = g.enumeration();
      const JobReport rep = run_theorem(cat, theorem_id, job);
      for (const auto& c : rep.claims)
        if (c.status == "fail") std::cerr << "FAIL " << c.claim << "\n";
      return emit(rep.to_json(), rep.passed(), rep.id + ": " + count_summary(rep.claims));
    }

    const CatalogEntry& entry = cat.find(name);
    const BuiltEntry built = build(entry);
    const UnimodularLattice lat = construction_a(built.code);
    if (*bd) {
      json out{{"name", entry.name}, {"kind", entry.kind}, {"k", entry.k}, {"code", built.code.to_json()},
               {"self_dual", is_self_dual(built.code)}, {"lattice", lat.to_json()}};
      if (built.matrix) out["matrix"] = matrix_json(*built.matrix);
      return emit(out, true, entry.name + ": length " + std::to_string(built.code.length()));
    }
    if (*ts) {
      const ThetaFingerprint fp = theta_coefficients(lat, max_norm, g.enumeration());
      return emit(fp.to_json(), true, entry.name + ": theta to norm " + std::to_string(max_norm));
    }
    if (*mn) {
      const std::int64_t m = min_norm(lat, g.enumeration());
      return emit({{"name", entry.name}, {"min_norm", m}}, true, entry.name + ": min norm " + std::to_string(m));
    }
    if (*ff) {
      const FrameSearchResult r = find_frame(lat, k, job.frame_budget, g.enumeration());
      json out = r.to_json();
      out["name"] = entry.name;
      return emit(out, true, entry.name + ": " + std::to_string(k) + "-frame " + to_string(r.status));
    }
    if (*nb) {
      auto [n1, n2] = even_neighbors(lat);
      json out = json::array();
      for (const auto* n : {&n1, &n2})
        out.push_back({{"even", n->is_even()}, {"min_norm", min_norm(*n, g.enumeration())}, {"lattice", n->to_json()}});
      return emit(out, true, entry.name + ": neighbor minima " + out[0]["min_norm"].dump() + ", " +
                                 out[1]["min_norm"].dump());
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kDataError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadRequest;
  }
  return kBadRequest;
}
