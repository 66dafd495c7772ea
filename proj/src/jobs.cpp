#include "zkframes/jobs.hpp"

#include "zkframes/errors.hpp"
#include "zkframes/representations.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>

namespace zkframes {

using nlohmann::json;

bool JobReport::passed() const {
  return std::none_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.status == "fail"; });
}

json JobReport::to_json() const {
  json arr = json::array();
  for (const auto& c : claims) arr.push_back(c.to_json());
  return {{"theorem", id},      {"title", title},     {"passed", passed()},
          {"claims", arr},      {"details", details}, {"elapsed_seconds", elapsed_seconds}};
}

const std::vector<TheoremInfo>& theorem_list() {
  static const std::vector<TheoremInfo> list = [] {
    std::vector<TheoremInfo> out;
    for (const auto& c : representation_cases())
      out.push_back({"rep-" + c.id, {"3.2" + c.id}, "primes represented by the constrained form of case " + c.id});
    out.push_back({"d12plus", {"5.1"}, "k-frames of D12+ and extremal codes of length 12"});
    out.push_back({"d8squared", {"5.3"}, "k-frames of D8^2 and extremal codes of length 16"});
    out.push_back({"length20", {"5.5"}, "k-frames of D4^5, A5^4 and D20"});
    out.push_back({"length28", {"5.7"}, "k-frames of the optimal lattices R28,32 and R28,15"});
    out.push_back({"l32-82", {"5.9"}, "k-frames of the extremal lattice L32,82"});
    out.push_back({"bw32", {"5.17", "5.18"}, "even-order frames of the extremal even neighbor of L32,82"});
    out.push_back({"length36", {"5.12"}, "k-frames of A6(C36,6(D18))"});
    out.push_back({"length40", {}, "k-frames in extremal odd unimodular lattices of dimension 40"});
    out.push_back({"length44", {}, "k-frames in extremal odd unimodular lattices of dimension 44"});
    out.push_back({"length48", {}, "k-frames in optimal odd unimodular lattices of dimension 48"});
    return out;
  }();
  return list;
}

const TheoremInfo& find_theorem(const std::string& id) {
  for (const auto& t : theorem_list()) {
    if (t.id == id) return t;
    if (std::find(t.aliases.begin(), t.aliases.end(), id) != t.aliases.end()) return t;
  }
  throw UnsupportedTheorem("unsupported theorem id '" + id + "'");
}

const std::vector<std::string>& printed_entry_names() {
  static const std::vector<std::string> names = {
      "D_6", "P_8", "D_10", "D'_10", "D''_10", "D_14", "D'_14", "D_16", "D_18", "P_20", "D_22", "D_24",
      "C_{5,20}", "C_{7,20}", "C_{13,20}", "C_{23,20}", "C'_{5,20}", "C'_{7,20}", "C'_{13,20}", "C'_{23,20}",
      "C''_{7,20}", "C''_{9,20}", "C''_{11,20}", "C''_{19,20}", "C''_{29,20}",
      "C_{5,28}", "C_{7,28}", "C_{13,28}", "C_{23,28}", "C'_{17,28}",
      "C_{6,32}", "C_{9,32}", "C_{5,36}", "C_{7,36}", "C_{9,36}",
      "C_{9,40}", "C_{13,40}", "C_{19,40}", "C_{9,44}", "C_{17,44}", "C_{7,48}", "C_{9,48}",
      "C'_{4,20}", "C_{4,28}", "C'_{4,28}", "C_{4,36}"};
  return names;
}

bool CatalogReport::passed() const {
  auto ok = [](const ClaimResult& c) { return c.status != "fail"; };
  return std::all_of(closure.begin(), closure.end(), ok) &&
         std::all_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.passed(); });
}

json CatalogReport::to_json() const {
  json c = json::array(), e = json::array();
  for (const auto& x : closure) c.push_back(x.to_json());
  for (const auto& x : entries) e.push_back(x.to_json());
  return {{"passed", passed()}, {"closure", c}, {"entries", e}};
}

CatalogReport verify_catalog(const Catalog& catalog, Tier tier, const std::vector<std::string>& names,
                             const EnumerationOptions& opts) {
  CatalogReport rep;
  json missing = json::array();
  for (const auto& n : printed_entry_names())
    if (!catalog.contains(n)) missing.push_back(n);
  rep.closure.push_back(ClaimResult{"closure", json::array(), missing, missing.empty() ? "pass" : "fail",
                                    "every printed matrix and code has an entry"});
  if (names.empty()) {
    for (const auto& e : catalog.entries()) rep.entries.push_back(verify(e, tier, opts));
  } else {
    for (const auto& n : names) rep.entries.push_back(verify(catalog.find(n), tier, opts));
  }
  return rep;
}

namespace {

ClaimResult claim(std::string name, json expected, json computed, bool ok, std::string note = {}) {
  return ClaimResult{std::move(name), std::move(expected), std::move(computed), ok ? "pass" : "fail", std::move(note)};
}

ClaimResult status_claim(std::string name, json expected, json computed, std::string status, std::string note) {
  return ClaimResult{std::move(name), std::move(expected), std::move(computed), std::move(status), std::move(note)};
}

JobReport representation_job(const std::string& case_id, const JobOptions& opts) {
  const RepCase& rc = representation_case(case_id);
  JobReport rep;
  const auto entries = verify_range(case_id, opts.prime_range);
  json expected = json::array(), unrepresented = json::array(), disagreements = json::array();
  for (long p : rc.exceptions)
    if (p < opts.prime_range) expected.push_back(p);
  bool witnesses_ok = true;
  for (const auto& e : entries) {
    if (!e.witness) unrepresented.push_back(e.p);
    if (!e.agrees()) disagreements.push_back(e.p);
    if (e.witness && !e.witness->satisfies(rc.params)) witnesses_ok = false;
  }
  rep.claims.push_back(claim("unrepresented primes below " + std::to_string(opts.prime_range), expected, unrepresented,
                             expected == unrepresented));
  rep.claims.push_back(claim("witnesses satisfy congruences and norm", true, witnesses_ok, witnesses_ok));
  rep.details = {{"params", rc.params.to_json()},
                 {"primes", entries.size()},
                 {"disagreements", disagreements},
                 {"report", range_report_json(entries)}};
  return rep;
}

enum class Expect { Exists, Absent, Open };

struct BaseFrame {
  enum Kind { Standard, Search, External };
  long order;
  Kind kind;
  std::string host;  // catalog name, or the cited source for External
};

struct ClassSpec {
  std::string label;
  std::vector<std::string> members;  // the first one is the reference lattice
  bool isomorphic = true;            // compare members by fingerprint
  std::string star_entry;
  std::int64_t min_norm = 1;
  std::vector<BaseFrame> bases;
  std::function<Expect(long)> expect;
  std::vector<long> code_ks;
  std::string code_class;
};

struct Host {
  const CatalogEntry* entry;
  BuiltEntry built;
  UnimodularLattice lat;
  std::unique_ptr<Enumerator> enumerator;
  std::vector<std::uint64_t> theta;
  bool theta_done = false;
  std::int64_t minimum = 0;
};

struct FrameWitness {
  std::string host;
  Frame frame;
  json route;
  bool external = false;
};

class Context {
 public:
  Context(const Catalog& cat, const JobOptions& opts) : cat_(cat), opts_(opts) {}

  const JobOptions& opts() const { return opts_; }

  Host& host(const std::string& name) {
    auto it = hosts_.find(name);
    if (it == hosts_.end()) {
      const CatalogEntry& e = cat_.find(name);
      BuiltEntry b = build(e);
      UnimodularLattice l = construction_a(b.code);
      it = hosts_.emplace(name, std::make_unique<Host>(Host{&e, std::move(b), std::move(l), nullptr, {}, false, 0})).first;
    }
    return *it->second;
  }

  Enumerator& enumerator(Host& h) {
    if (!h.enumerator) h.enumerator = std::make_unique<Enumerator>(h.lat.gram());
    return *h.enumerator;
  }

  std::int64_t fingerprint_norm(std::size_t dim) const {
    if (opts_.fingerprint_norm > 0) return opts_.fingerprint_norm;
    if (dim < 40) return 5;
    if (opts_.tier == Tier::Full) return 5;
    return dim < 48 ? 4 : 0;
  }

  const std::vector<std::uint64_t>& theta(Host& h) {
    if (!h.theta_done) {
      const std::int64_t r = fingerprint_norm(h.lat.dimension());
      if (r > 0) h.theta = enumerator(h).count_by_norm(r, opts_.enumeration);
      h.theta_done = true;
    }
    return h.theta;
  }

  std::int64_t minimum(Host& h) {
    if (h.minimum == 0) {
      const auto& th = theta(h);
      for (std::size_t m = 1; m < th.size() && h.minimum == 0; ++m)
        if (th[m] != 0) h.minimum = static_cast<std::int64_t>(m);
      if (h.minimum == 0) {
        const std::int64_t above = th.empty() ? 0 : static_cast<std::int64_t>(th.size()) - 1;
        h.minimum = enumerator(h).minimum(opts_.enumeration, above);
      }
    }
    return h.minimum;
  }

  const FrameSearchResult& search(const std::string& name, long k) {
    const std::string key = name + "#" + std::to_string(k);
    auto it = searches_.find(key);
    if (it == searches_.end())
      it = searches_.emplace(key, find_frame(host(name).lat, k, opts_.frame_budget, opts_.enumeration)).first;
    return it->second;
  }

  /// A_k of the host, from the fingerprint when it reaches k, else by an early-exit count
  /// capped at `need`. nullopt when the node budget runs out.
  std::optional<std::uint64_t> norm_count(Host& h, long k, std::uint64_t need) {
    const auto& th = theta(h);
    if (static_cast<std::size_t>(k) < th.size()) return th[static_cast<std::size_t>(k)];
    EnumerationOptions o = opts_.enumeration;
    o.node_budget = opts_.count_budget;
    o.checkpoint.clear();
    try {
      return enumerator(h).count_norm_at_least(k, need, o);
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  }

 private:
  const Catalog& cat_;
  JobOptions opts_;
  std::map<std::string, std::unique_ptr<Host>> hosts_;
  std::map<std::string, FrameSearchResult> searches_;
};

std::optional<FrameWitness> representation_route(Context& ctx, const ClassSpec& spec, long k) {
  if (spec.star_entry.empty()) return std::nullopt;
  Host& h = ctx.host(spec.star_entry);
  if (!h.entry->star || !star_condition(*h.entry->star, k)) return std::nullopt;
  const FramePlan plan = frame_order_for(*h.entry->star, k);
  const RepWitness& w = plan.witness;
  const Frame base = prop_const_frame(h.lat, *h.built.matrix, h.entry->k, h.built.ell, w.a, w.b, w.c, w.d);
  Frame f = plan.scale == 1 ? base : scale_frame(h.lat, base, plan.scale);
  return FrameWitness{spec.star_entry, std::move(f), {{"route", "representation"}, {"plan", plan.to_json()}}, false};
}

std::optional<FrameWitness> base_route(Context& ctx, const ClassSpec& spec, long k) {
  for (const auto& b : spec.bases) {
    if (k % b.order != 0 || b.kind == BaseFrame::External) continue;
    Host& h = ctx.host(b.host);
    std::optional<Frame> f;
    if (b.kind == BaseFrame::Standard) {
      f = standard_frame(h.lat);
    } else {
      const FrameSearchResult& r = ctx.search(b.host, b.order);
      if (r.status != SearchStatus::Found) continue;
      f = *r.frame;
    }
    const long m = k / b.order;
    Frame out = m == 1 ? *f : scale_frame(h.lat, *f, m);
    const char* kind = b.kind == BaseFrame::Standard ? "standard-frame" : "frame-search";
    return FrameWitness{b.host, std::move(out), {{"route", kind}, {"order", b.order}, {"scale", m}}, false};
  }
  for (const auto& b : spec.bases) {
    if (k % b.order != 0 || b.kind != BaseFrame::External) continue;
    return FrameWitness{b.host, Frame{}, {{"route", "external"}, {"source", b.host}, {"order", b.order}}, true};
  }
  return std::nullopt;
}

std::optional<FrameWitness> frame_witness(Context& ctx, const ClassSpec& spec, long k) {
  if (auto w = representation_route(ctx, spec, k)) return w;
  return base_route(ctx, spec, k);
}

json theta_json(const std::vector<std::uint64_t>& th) { return th; }

void run_class(Context& ctx, const ClassSpec& spec, JobReport& rep) {
  const std::string& ref_name = spec.members.front();
  Host& ref = ctx.host(ref_name);
  const std::size_t n = ref.lat.dimension();
  const std::string prefix = spec.label + ": ";

  // Minimum norms, and fingerprints standing in for isometry.
  const std::vector<std::string> min_checked =
      spec.isomorphic ? std::vector<std::string>{ref_name} : spec.members;
  for (const auto& name : min_checked)
    rep.claims.push_back(claim(prefix + "min_norm[" + name + "]", spec.min_norm, ctx.minimum(ctx.host(name)),
                               ctx.minimum(ctx.host(name)) == spec.min_norm));
  if (spec.isomorphic) {
    const auto ref_theta = ctx.theta(ref);
    const bool use_span = n <= 28;
    std::optional<SpanInvariant> ref_span;
    if (use_span) ref_span = short_vector_span(ref.lat, spec.min_norm, ctx.opts().enumeration);
    json fp{{"theta", theta_json(ref_theta)}};
    if (ref_span) fp["span"] = ref_span->to_json();
    rep.details[spec.label] = {{"reference", ref_name}, {"fingerprint", fp}};
    for (std::size_t i = 1; i < spec.members.size(); ++i) {
      Host& h = ctx.host(spec.members[i]);
      json got{{"theta", theta_json(ctx.theta(h))}};
      if (use_span) got["span"] = short_vector_span(h.lat, spec.min_norm, ctx.opts().enumeration).to_json();
      rep.claims.push_back(claim(prefix + "fingerprint-match[" + spec.members[i] + "]", fp, got, fp == got,
                                 (use_span ? "theta prefix and short-vector span compared with " : "theta prefix compared with ") +
                                     ref_name));
    }
  }

  for (long k = 1; k <= ctx.opts().max_k; ++k) {
    const Expect e = spec.expect(k);
    const std::string name = prefix + "frame[" + std::to_string(k) + "]";
    if (e == Expect::Open) continue;
    if (e == Expect::Absent) {
      if (k < ctx.minimum(ref)) {
        rep.claims.push_back(claim(name, "none", "none", true, "k is below the minimum norm"));
        continue;
      }
      const auto& th = ctx.theta(ref);
      if (static_cast<std::size_t>(k) < th.size() && th[static_cast<std::size_t>(k)] == 0) {
        rep.claims.push_back(claim(name, "none", "none", true, "A_k = 0"));
        continue;
      }
      const FrameSearchResult& r = ctx.search(ref_name, k);
      json computed = r.to_json();
      computed.erase("frame");
      const std::string st = r.status == SearchStatus::None ? "pass"
                             : r.status == SearchStatus::Found ? "fail"
                                                               : "skipped";
      rep.claims.push_back(status_claim(name, "none", computed, st, "completed search over norm-k vectors"));
      continue;
    }
    const auto w = frame_witness(ctx, spec, k);
    if (!w) {
      rep.claims.push_back(claim(name, "frame", nullptr, false, "no construction route"));
      continue;
    }
    if (w->external) {
      rep.claims.push_back(status_claim(name, "frame", w->route, "external", "rests on a code not in the catalog"));
      continue;
    }
    Host& h = ctx.host(w->host);
    const bool gram_ok = is_frame(h.lat, w->frame.vectors, k);
    const std::uint64_t need = 2 * n;
    const auto ak = ctx.norm_count(h, k, need);
    json computed = w->route;
    computed["host"] = w->host;
    computed["gram_ok"] = gram_ok;
    computed["A_k_at_least_2n"] = ak ? json(*ak >= need) : json(nullptr);
    const bool ok = gram_ok && (!ak || *ak >= need);
    rep.claims.push_back(claim(name, "frame", computed, ok, ak ? "" : "A_k count skipped: node budget"));

    if (gram_ok && std::find(spec.code_ks.begin(), spec.code_ks.end(), k) != spec.code_ks.end()) {
      const ZkCode code = code_from_frame(h.lat, w->frame);
      const bool sd = is_self_dual(code);
      json got{{"self_dual", sd}};
      bool pass = sd;
      if (sd) {
        const std::int64_t d_e = min_euclidean_weight_lattice(code, ctx.opts().enumeration);
        const int len = static_cast<int>(code.length());
        got["d_E"] = d_e;
        got["class"] = to_string(classify(d_e, len, k));
        pass = got["class"] == spec.code_class;
      }
      rep.claims.push_back(claim(prefix + "code[" + std::to_string(k) + "]", spec.code_class, got, pass,
                                 "code of the frame found above"));
    }
  }
}

Expect at_least(long k, long lo) { return k >= lo ? Expect::Exists : Expect::Absent; }

BaseFrame standard(long order, std::string host) { return {order, BaseFrame::Standard, std::move(host)}; }
BaseFrame searched(long order, std::string host) { return {order, BaseFrame::Search, std::move(host)}; }
BaseFrame external(long order, std::string source) { return {order, BaseFrame::External, std::move(source)}; }

std::vector<ClassSpec> classes_for(const std::string& id) {
  if (id == "d12plus")
    return {{"D12+", {"B_12", "D_6", "C_{13,12}", "C_{23,12}"}, true, "D_6", 2,
             {standard(2, "B_12"), searched(5, "B_12"), searched(7, "B_12"), standard(13, "C_{13,12}"),
              standard(23, "C_{23,12}")},
             [](long k) { return at_least(k, 2); }, {5, 7}, "extremal"}};
  if (id == "d8squared")
    return {{"D8^2", {"F_16", "P_8", "C_{7,16}"}, true, "P_8", 2,
             {standard(2, "F_16"), standard(7, "C_{7,16}")},
             [](long k) { return at_least(k, 2); }, {3, 7}, "extremal"}};
  if (id == "length20")
    return {{"D4^5", {"D_10", "C_{5,20}", "C_{7,20}", "C_{13,20}", "C_{23,20}"}, true, "D_10", 2,
             {searched(2, "D_10"), standard(5, "C_{5,20}"), standard(7, "C_{7,20}"), standard(13, "C_{13,20}"),
              standard(23, "C_{23,20}")},
             [](long k) { return at_least(k, 2); }, {2}, "extremal"},
            {"A5^4", {"D'_10", "C'_{4,20}", "C'_{5,20}", "C'_{7,20}", "C'_{13,20}", "C'_{23,20}"}, true, "D'_10", 2,
             {standard(4, "C'_{4,20}"), standard(5, "C'_{5,20}"), standard(7, "C'_{7,20}"),
              standard(13, "C'_{13,20}"), standard(23, "C'_{23,20}")},
             [](long k) { return at_least(k, 3); }, {3}, "extremal"},
            {"D20", {"D''_10", "C''_{7,20}", "C''_{9,20}", "C''_{11,20}", "C''_{19,20}", "C''_{29,20}"}, true,
             "D''_10", 2,
             {searched(2, "D''_10"), standard(7, "C''_{7,20}"), standard(9, "C''_{9,20}"),
              standard(11, "C''_{11,20}"), standard(19, "C''_{19,20}"), standard(29, "C''_{29,20}")},
             [](long k) { return k == 3 ? Expect::Absent : at_least(k, 2); }, {2}, "extremal"}};
  if (id == "length28")
    return {{"R28,32", {"D_14", "C_{4,28}", "C_{5,28}", "C_{7,28}", "C_{13,28}", "C_{23,28}"}, true, "D_14", 3,
             {standard(4, "C_{4,28}"), standard(5, "C_{5,28}"), standard(7, "C_{7,28}"), standard(13, "C_{13,28}"),
              standard(23, "C_{23,28}")},
             [](long k) { return at_least(k, 3); }, {4}, "near-extremal"},
            {"R28,15", {"D'_14", "C'_{4,28}", "C'_{17,28}"}, true, "D'_14", 3,
             {searched(3, "D'_14"), standard(4, "C'_{4,28}"), standard(17, "C'_{17,28}")},
             [](long k) { return at_least(k, 3); }, {3}, "near-extremal"}};
  if (id == "l32-82")
    return {{"L32,82", {"D_16", "C_{6,32}", "C_{9,32}"}, true, "D_16", 4,
             {standard(4, "D_16"), standard(6, "C_{6,32}"), standard(9, "C_{9,32}")},
             [](long k) { return at_least(k, 4); }, {6}, "extremal"}};
  if (id == "length36")
    return {{"A6(C36,6(D18))", {"D_18", "C_{4,36}", "C_{5,36}", "C_{7,36}", "C_{9,36}"}, true, "D_18", 4,
             {standard(4, "C_{4,36}"), standard(5, "C_{5,36}"), standard(6, "D_18"), standard(7, "C_{7,36}"),
              standard(9, "C_{9,36}")},
             [](long k) { return at_least(k, 4); }, {}, "extremal"}};
  if (id == "length40")
    return {{"dim40", {"P_20", "C_{9,40}", "C_{13,40}", "C_{19,40}"}, false, "P_20", 4,
             {standard(4, "P_20"), external(6, "GH05 Z6 code"), standard(9, "C_{9,40}"), standard(13, "C_{13,40}"),
              standard(19, "C_{19,40}")},
             [](long k) { return at_least(k, 4); }, {}, "extremal"}};
  if (id == "length44")
    return {{"dim44", {"D_22", "C_{9,44}", "C_{17,44}"}, false, "D_22", 4,
             {external(4, "H12 Z4 code"), standard(5, "D_22"), external(6, "GH05 Z6 code"), standard(9, "C_{9,44}"),
              standard(17, "C_{17,44}")},
             [](long k) { return at_least(k, 4); }, {}, "extremal"}};
  if (id == "length48")
    return {{"dim48", {"D_24", "C_{7,48}", "C_{9,48}"}, false, "D_24", 5,
             {standard(5, "D_24"), external(6, "HKMV Z6 code"), standard(7, "C_{7,48}"),
              external(8, "8-frame of an extremal even lattice"), standard(9, "C_{9,48}")},
             [](long k) {
               if (k < 5) return Expect::Absent;
               long rest = k, c = 0;
               while (rest % 17 == 0) rest /= 17, ++c;
               const bool open = c >= 1 && (rest == 1 || rest == 2 || rest == 3 || rest == 4);
               return open ? Expect::Open : Expect::Exists;
             },
             {}, "near-extremal"}};
  return {};
}

// The even sublattice is shared with both even neighbors, so an even-norm frame of
// L32,82 is a frame of its extremal even neighbor.
void run_bw32(Context& ctx, JobReport& rep) {
  const ClassSpec spec = classes_for("l32-82").front();
  std::map<std::string, UnimodularLattice> extremal;
  json fingerprints = json::object();
  for (const auto& name : spec.members) {
    Host& h = ctx.host(name);
    auto [n1, n2] = even_neighbors(h.lat);
    const std::int64_t m1 = minimum_norm(n1.gram(), ctx.opts().enumeration);
    const std::int64_t m2 = minimum_norm(n2.gram(), ctx.opts().enumeration);
    const bool ok = std::max(m1, m2) == 4;
    rep.claims.push_back(claim("extremal even neighbor[" + name + "]", 4, std::max(m1, m2), ok,
                               "neighbor minima " + std::to_string(m1) + ", " + std::to_string(m2)));
    if (!ok) continue;
    const UnimodularLattice& ext = m1 == 4 ? n1 : n2;
    fingerprints[name] = theta_coefficients(ext, 4, ctx.opts().enumeration).counts;
    extremal.emplace(name, ext);
  }
  for (auto it = fingerprints.begin(); it != fingerprints.end(); ++it) {
    if (it == fingerprints.begin()) continue;
    rep.claims.push_back(claim("fingerprint-match[" + it.key() + "]", fingerprints.begin().value(), it.value(),
                               it.value() == fingerprints.begin().value(), "extremal even neighbors compared"));
  }
  rep.details["neighbor_theta"] = fingerprints;

  for (long k = 1; 2 * k <= ctx.opts().max_k; ++k) {
    const long order = 2 * k;
    const std::string name = "frame[" + std::to_string(order) + "]";
    if (k == 1) {
      rep.claims.push_back(claim(name, "none", "none", true, "even lattice of minimum 4 has no norm-2 vectors"));
      continue;
    }
    const auto w = frame_witness(ctx, spec, order);
    if (!w || w->external || !extremal.count(w->host)) {
      rep.claims.push_back(claim(name, "frame", nullptr, false, "no construction route"));
      continue;
    }
    const Host& h = ctx.host(w->host);
    const UnimodularLattice& target = extremal.at(w->host);
    IntMatrix ambient(w->frame.vectors.rows(), target.dimension());
    for (std::size_t r = 0; r < ambient.rows(); ++r) {
      IntVector y = h.lat.ambient_of(w->frame.vectors.row(r));
      for (auto& v : y) v *= 2;  // scale s -> 4s
      ambient.set_row(r, y);
    }
    bool ok = true;
    std::string note;
    try {
      const Frame f = frame_from_ambient(target, ambient);
      ok = f.norm == order;
    } catch (const Error& ex) {
      ok = false;
      note = ex.what();
    }
    json computed = w->route;
    computed["host"] = w->host;
    computed["frame_in_neighbor"] = ok;
    rep.claims.push_back(claim(name, "frame", computed, ok, note));
  }
}

}  // namespace

JobReport run_theorem(const Catalog& catalog, const std::string& id, const JobOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const TheoremInfo& info = find_theorem(id);
  JobReport rep;
  if (info.id.rfind("rep-", 0) == 0) {
    rep = representation_job(info.id.substr(4), opts);
  } else {
    Context ctx(catalog, opts);
    if (info.id == "bw32") {
      run_bw32(ctx, rep);
    } else {
      for (const auto& spec : classes_for(info.id)) run_class(ctx, spec, rep);
    }
  }
  rep.id = info.id;
  rep.title = info.title;
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace zkframes
