#include "zkframes/representations.hpp"

#include "zkframes/codes.hpp"
#include "zkframes/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zkframes {

namespace {

long isqrt(long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool congruent(long x, long y, long k) { return mod_floor(x - y, k) == 0; }

}  // namespace

void FormParams::validate() const {
  if (k < 2) throw BadParams("k must be at least 2");
  if (ell < 0 || ell >= k) throw BadParams("ell must lie in 0..k-1");
  if (m < 1) throw BadParams("m must be positive");
  if (!congruent(m + ell * ell, -1, k)) throw BadParams("m + ell^2 is not -1 modulo k");
}

nlohmann::json FormParams::to_json() const { return {{"k", k}, {"ell", ell}, {"m", m}}; }

FormLattice form_lattice(const FormParams& params) {
  params.validate();
  const long k = params.k, l = params.ell, m = params.m;
  FormLattice out;
  out.params = params;
  out.spanning = IntMatrix::from_rows({{k, 0, 0, 0}, {0, 0, k, 0}, {1, 0, l, 1}, {0, 1, l * l + 1, l}});
  const IntMatrix weights = IntMatrix::from_rows({{1, 0, 0, 0}, {0, m, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, m}});
  IntMatrix g = out.spanning * weights * out.spanning.transpose();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (!mpz_divisible_ui_p(g(i, j).get_mpz_t(), static_cast<unsigned long>(k)))
        throw BadParams("form Gram matrix is not integral");
      g(i, j) /= k;
    }
  out.gram = std::move(g);
  return out;
}

std::vector<std::uint64_t> form_theta(const FormParams& params, long max_norm) {
  params.validate();
  if (max_norm < 0) throw std::invalid_argument("max_norm must be nonnegative");
  const long k = params.k, l = params.ell, m = params.m;
  const long limit = k * max_norm;
  std::vector<std::uint64_t> counts(max_norm + 1, 0);
  const long bmax = isqrt(limit / m);
  const long amax = isqrt(limit);
  for (long b = -bmax; b <= bmax; ++b) {
    for (long d = -bmax; d <= bmax; ++d) {
      const long bd = m * (b * b + d * d);
      if (bd > limit) continue;
      for (long a = -amax; a <= amax; ++a) {
        if (!congruent(d, a + l * b, k)) continue;
        const long abd = bd + a * a;
        if (abd > limit) continue;
        const long cmax = isqrt(limit - abd);
        // c == b + ell d (mod k)
        long c = -cmax + mod_floor(b + l * d + cmax, k);
        for (; c <= cmax; c += k) {
          const long total = abd + c * c;
          if (total % k == 0) ++counts[total / k];
        }
      }
    }
  }
  return counts;
}

bool RepWitness::satisfies(const FormParams& params) const {
  const long k = params.k, l = params.ell, m = params.m;
  return congruent(b, c - l * d, k) && congruent(d, a + l * b, k) && a * a + m * b * b + c * c + m * d * d == k * p;
}

nlohmann::json RepWitness::to_json() const { return {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"p", p}}; }

const std::vector<RepCase>& representation_cases() {
  static const std::vector<RepCase> cases = {
      {"a", {3, 1, 25}, {2, 5, 7, 13, 23}},  {"b", {4, 2, 7}, {2, 7}},
      {"c", {5, 0, 49}, {2, 3, 7, 11, 19, 29}}, {"d", {5, 2, 25}, {2, 3, 17}},
      {"e", {4, 2, 15}, {2, 3}},             {"f", {6, 2, 49}, {2, 3, 5, 7}},
      {"g", {4, 0, 19}, {2, 3, 13, 19}},     {"h", {5, 0, 39}, {2, 3, 7, 17}},
  };
  return cases;
}

const RepCase& representation_case(const std::string& id) {
  for (const auto& c : representation_cases())
    if (c.id == id) return c;
  throw BadParams("unknown representation case '" + id + "'");
}

std::optional<RepWitness> find_representation(long p, const FormParams& params) {
  params.validate();
  if (!is_prime(p)) throw BadParams(std::to_string(p) + " is not prime");
  const long k = params.k, m = params.m;
  const long target = k * p;
  for (long bb = 0; m * bb * bb <= target; ++bb) {
    for (long dd = 0; m * (bb * bb + dd * dd) <= target; ++dd) {
      const long bd = m * (bb * bb + dd * dd);
      for (long aa = 0; bd + aa * aa <= target; ++aa) {
        const long rest = target - bd - aa * aa;
        const long cc = isqrt(rest);
        if (cc * cc != rest) continue;
        for (long sb : {1L, -1L}) {
          if (bb == 0 && sb < 0) continue;
          for (long sd : {1L, -1L}) {
            if (dd == 0 && sd < 0) continue;
            for (long sa : {1L, -1L}) {
              if (aa == 0 && sa < 0) continue;
              for (long sc : {1L, -1L}) {
                if (cc == 0 && sc < 0) continue;
                RepWitness w{sa * aa, sb * bb, sc * cc, sd * dd, p};
                if (w.satisfies(params)) return w;
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<RepWitness> find_representation(long p, const std::string& case_id) {
  return find_representation(p, representation_case(case_id).params);
}

std::vector<RangeEntry> verify_range(const std::string& case_id, long limit) {
  const RepCase& rc = representation_case(case_id);
  std::vector<RangeEntry> out;
  for (long p = 2; p < limit; ++p) {
    if (!is_prime(p)) continue;
    RangeEntry e;
    e.case_id = case_id;
    e.p = p;
    e.witness = find_representation(p, rc.params);
    e.expected = std::find(rc.exceptions.begin(), rc.exceptions.end(), p) == rc.exceptions.end();
    out.push_back(std::move(e));
  }
  return out;
}

nlohmann::json range_report_json(const std::vector<RangeEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j{{"case", e.case_id}, {"p", e.p}, {"status", e.witness ? "witness" : "none"},
                     {"agrees", e.agrees()}};
    if (e.witness) j["witness"] = e.witness->to_json();
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json FramePlan::to_json() const {
  return {{"case", case_id}, {"prime", prime}, {"scale", scale}, {"witness", witness.to_json()}};
}

FramePlan frame_order_for(const StarRule& rule, long k) {
  if (!star_condition(rule, k)) throw Unsupported("k = " + std::to_string(k) + " does not satisfy the admissibility rule");
  const RepCase& rc = representation_case(rule.case_id);
  long rest = k;
  std::vector<long> primes;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    primes.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) primes.push_back(rest);
  for (long p : primes) {
    if (std::find(rule.excluded.begin(), rule.excluded.end(), p) != rule.excluded.end()) continue;
    if (auto w = find_representation(p, rc.params)) return FramePlan{rc.id, p, k / p, *w};
  }
  throw Unsupported("no admissible prime factor of " + std::to_string(k) + " is represented");
}

}  // namespace zkframes
