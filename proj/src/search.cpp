#include "recur/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "recur/errors.hpp"

namespace recur {

const char* const kDeskScaleBanner =
    "desk-scale evidence only: the certified threshold c_1 lies far beyond any exhaustive range, so this "
    "report is consistent with the theorem but proves nothing about it";

namespace {

struct BigIntHash {
  std::size_t operator()(const BigInt& v) const {
    const mpz_srcptr z = v.get_mpz_t();
    std::string_view limbs(reinterpret_cast<const char*>(z->_mp_d), sizeof(mp_limb_t) * mpz_size(z));
    return std::hash<std::string_view>{}(limbs) ^ static_cast<std::size_t>(mpz_sgn(z) + 1);
  }
};

// Rough bytes for the terms of `spec` on [from, to], from root sizes.
double estimate_bytes(const RecurrenceSpec& spec, long from, long to) {
  const IntPoly g = char_poly(spec);
  double init_bits = 0;
  for (const auto& v : spec.initial) init_bits = std::max(init_bits, static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2)));
  auto side_bytes = [&](const IntPoly& poly, long count) {
    if (count <= 0) return 0.0;
    double r = std::max(1.0, max_root_size(poly, 64).upper_double());
    double growth = std::log2(r) + 1.0;
    // Average limb count over the side, plus node overhead.
    double bits = init_bits + growth * static_cast<double>(count) / 2 + static_cast<double>(spec.order) * 8;
    return static_cast<double>(count) * (96.0 + bits / 8.0);
  };
  double total = side_bytes(g, std::max(0L, to) - std::max(0L, from) + 1);
  if (from < 0) total += side_bytes(reverse(g), -from);
  return total;
}

void guard(const RecurrenceSpec& a, long from_a, long to_a, const RecurrenceSpec& b, long from_b, long to_b,
           const SearchConfig& config) {
  double bytes = estimate_bytes(a, from_a, to_a) + estimate_bytes(b, from_b, to_b);
  if (bytes > static_cast<double>(config.memory_cap_bytes)) {
    throw MemoryGuardExceeded("term store needs about " + std::to_string(static_cast<long long>(bytes)) +
                              " bytes, cap is " + std::to_string(config.memory_cap_bytes));
  }
}

}  // namespace

std::vector<CommonValueHit> enumerate_common_values(const RecurrenceSpec& a, const RecurrenceSpec& b, long n_max,
                                                    long m_max, bool include_negative, const SearchConfig& config) {
  if (n_max < 0 || m_max < 0) throw InputError("search bounds must be nonnegative");
  a.validate();
  b.validate();
  if (include_negative && (!a.backward_extendable() || !b.backward_extendable())) {
    throw NotBackwardExtendable("negative indices need |p_0| = 1 on both sides");
  }
  const long na = include_negative ? -n_max : 0;
  const long nb = include_negative ? -m_max : 0;
  guard(a, na, n_max, b, nb, m_max, config);
  const std::vector<BigInt> as = eval_range(a, na, n_max);
  const std::vector<BigInt> bs = eval_range(b, nb, m_max);
  std::unordered_map<BigInt, std::vector<long>, BigIntHash> index;
  index.reserve(bs.size());
  for (std::size_t j = 0; j < bs.size(); ++j) index[bs[j]].push_back(nb + static_cast<long>(j));
  std::vector<CommonValueHit> hits;
  for (std::size_t i = 0; i < as.size(); ++i) {
    auto it = index.find(as[i]);
    if (it == index.end()) continue;
    for (long m : it->second) hits.push_back({na + static_cast<long>(i), m, as[i]});
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return std::tie(x.n, x.m) < std::tie(y.n, y.m); });
  return hits;
}

std::vector<ValueGroup> self_intersections(const RecurrenceSpec& f, long n_max, const SearchConfig& config) {
  if (n_max < 0) throw InputError("search bound must be nonnegative");
  f.validate();
  if (n_max == 0) return {};
  if (!f.backward_extendable()) throw NotBackwardExtendable("self intersections need |p_0| = 1");
  guard(f, -n_max, n_max, f, 0, -1, config);
  const std::vector<BigInt> v = eval_range(f, -n_max, n_max);
  std::map<BigInt, std::vector<long>> by_value;
  for (std::size_t i = 0; i < v.size(); ++i) by_value[v[i]].push_back(-n_max + static_cast<long>(i));
  std::vector<ValueGroup> out;
  for (auto& [value, idx] : by_value) {
    if (idx.size() >= 2) out.push_back({value, idx});
  }
  return out;
}

std::vector<CommonValueHit> intersection_pairs(const std::vector<ValueGroup>& groups) {
  std::vector<CommonValueHit> out;
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.indices.size(); ++i) {
      for (std::size_t j = i + 1; j < g.indices.size(); ++j) out.push_back({g.indices[i], g.indices[j], g.value});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return std::tie(x.n, x.m) < std::tie(y.n, y.m); });
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

namespace {

Verdict compare(const RealBall& c0, long n, const BigInt& an, const BigInt& bm) {
  if (n < 2 || an == 0) return Verdict::Holds;
  const BigInt lhs = abs(an - bm);
  if (lhs == 0) return Verdict::Fails;
  const BigInt size = abs(an);
  // |a_n| = 1 makes the right side exactly 1.
  if (size == 1) return lhs > 1 ? Verdict::Holds : Verdict::Fails;
  for (Bits prec = std::max<Bits>(c0.bits(), 128);; prec *= 2) {
    RealBall nb(n, prec);
    RealBall expo = (RealBall(1, prec) - c0 * sqr(log(nb)) / nb) * log(RealBall(size, prec));
    RealBall rhs = exp(expo);
    RealBall left(lhs, prec);
    if (certainly_gt(left, rhs)) return Verdict::Holds;
    if (certainly_lt(left, rhs)) return Verdict::Fails;
    if (prec * 2 > precision_ceiling()) return Verdict::Undecided;
  }
}

}  // namespace

Verdict check_inequality(const BoundCertificate& cert, long n, long m) {
  if (n < 0 || m < 0) throw InputError("the inequality is stated for n, m >= 0");
  return compare(cert.ledger.at("c0"), n, eval_term(cert.spec_a, n), eval_term(cert.spec_b, m));
}

InequalityReport verify_no_violation(const BoundCertificate& cert, long n_max, long m_max, const SearchConfig& config) {
  if (n_max < 0 || m_max < 0) throw InputError("search bounds must be nonnegative");
  guard(cert.spec_a, 0, n_max, cert.spec_b, 0, m_max, config);
  const std::vector<BigInt> as = eval_range(cert.spec_a, 0, n_max);
  const std::vector<BigInt> bs = eval_range(cert.spec_b, 0, m_max);
  const RealBall c0 = cert.ledger.at("c0");
  const RealBall c1 = cert.ledger.at("c1");

  struct Row {
    long holds = 0, fails = 0, undecided = 0;
    std::vector<InequalityFailure> failures;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n_max + 1));
  auto work = [&](long first, long step) {
    for (long n = first; n <= n_max; n += step) {
      Row& row = rows[static_cast<std::size_t>(n)];
      for (long m = 0; m <= m_max; ++m) {
        const BigInt& an = as[static_cast<std::size_t>(n)];
        const BigInt& bm = bs[static_cast<std::size_t>(m)];
        Verdict v = compare(c0, n, an, bm);
        if (v == Verdict::Holds) {
          ++row.holds;
        } else if (v == Verdict::Undecided) {
          ++row.undecided;
        } else {
          ++row.fails;
          row.failures.push_back({n, m, an == bm, certainly_le(RealBall(std::max(n, m), c1.bits()), c1)});
        }
      }
    }
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  InequalityReport report;
  report.n_max = n_max;
  report.m_max = m_max;
  report.precision = cert.precision;
  for (auto& row : rows) {
    report.holds += row.holds;
    report.fails += row.fails;
    report.undecided += row.undecided;
    for (auto& f : row.failures) {
      report.consistent = report.consistent && (f.exact_hit || f.below_threshold);
      report.failures.push_back(f);
    }
  }
  return report;
}

HitLawReport check_hit_law(const BoundCertificate& cert, const std::vector<CommonValueHit>& hits) {
  const auto& L = cert.ledger;
  const Bits prec = cert.precision;
  const BigRat d = cert.gap_delta();
  HitLawReport rep;
  rep.gap_threshold_m = max(L.thresholds.at("m1_lower_b"), L.thresholds.at("m_upper_b"));
  rep.weak_threshold_m = max(rep.gap_threshold_m, L.thresholds.at("m_gap_weak"));
  const RealBall n3 = L.thresholds.at("n3_growth_a");
  for (const auto& h : hits) {
    if (h.n < 0 || h.m < 0) continue;
    ++rep.hits;
    if (h.n < 2 || h.m < 2) continue;
    const RealBall nb(h.n, prec), mb(h.m, prec);
    const RealBall gap(BigRat(h.n) - d * h.m, prec);
    // -c_10 log m < n - d m < c_8.
    bool gap_ok = certainly_lt(gap, L.at("c8")) && certainly_lt(-(L.at("c10") * log(mb)), gap);
    bool gap_bad = certainly_le(L.at("c8"), gap) || certainly_le(gap, -(L.at("c10") * log(mb)));
    // d m / 2 < n < 2 d m, exact.
    bool weak_ok = BigRat(h.n) * 2 > d * h.m && BigRat(h.n) < 2 * d * h.m;
    if (!gap_ok && !gap_bad) ++rep.undecided;
    ++rep.unconditional_checked;
    if (gap_bad) ++rep.unconditional_gap_violations;
    if (!weak_ok) ++rep.unconditional_weak_violations;
    const bool past = certainly_le(n3, nb) && certainly_lt(rep.gap_threshold_m, mb);
    if (past) {
      ++rep.gap_checked;
      if (!gap_ok) ++rep.gap_violations;
    }
    if (past && certainly_lt(rep.weak_threshold_m, mb)) {
      ++rep.weak_checked;
      if (!weak_ok) ++rep.weak_violations;
    }
  }
  return rep;
}

nlohmann::json to_json(const HitLawReport& r) {
  return {{"hits", r.hits},
          {"gap_checked", r.gap_checked},
          {"gap_violations", r.gap_violations},
          {"weak_checked", r.weak_checked},
          {"weak_violations", r.weak_violations},
          {"unconditional_checked", r.unconditional_checked},
          {"unconditional_gap_violations", r.unconditional_gap_violations},
          {"unconditional_weak_violations", r.unconditional_weak_violations},
          {"undecided", r.undecided},
          {"gap_threshold_m", ball_json(r.gap_threshold_m)},
          {"weak_threshold_m", ball_json(r.weak_threshold_m)}};
}

nlohmann::json to_json(const CommonValueHit& hit) { return {{"n", hit.n}, {"m", hit.m}, {"value", hit.value.get_str()}}; }

nlohmann::json to_json(const ValueGroup& group) {
  return {{"value", group.value.get_str()}, {"indices", group.indices}};
}

nlohmann::json to_json(const InequalityReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"n", f.n}, {"m", f.m}, {"exact_hit", f.exact_hit}, {"below_threshold", f.below_threshold}});
  }
  return {{"range", {{"N", report.n_max}, {"M", report.m_max}}},
          {"holds", report.holds},
          {"fails", report.fails},
          {"undecided", report.undecided},
          {"failures", failures},
          {"consistent", report.consistent},
          {"precision_bits", report.precision},
          {"banner", kDeskScaleBanner}};
}

}  // namespace recur
