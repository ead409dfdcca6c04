#include "recur/recurrence.hpp"

#include <algorithm>
#include <cstdio>

#include "recur/errors.hpp"

namespace recur {

void RecurrenceSpec::validate() const {
  if (order < 1) throw InputError("recurrence order must be positive");
  if (coeffs.size() != static_cast<size_t>(order)) throw InputError("expected " + std::to_string(order) + " coefficients");
  if (initial.size() != static_cast<size_t>(order)) throw InputError("expected " + std::to_string(order) + " initial terms");
  if (coeffs[0] == 0) throw InputError("p_0 must be nonzero");
  if (std::all_of(initial.begin(), initial.end(), [](const BigInt& g) { return g == 0; })) {
    throw InputError("at least one initial term must be nonzero");
  }
}

std::vector<BigInt> eval_range(const RecurrenceSpec& spec, long from, long to) {
  if (to < from) return {};
  const long k = spec.order;
  if (from < 0 && !spec.backward_extendable()) {
    throw NotBackwardExtendable("negative index needs |p_0| = 1, got p_0 = " + spec.coeffs[0].get_str());
  }
  const long lo = std::min(from, 0L);
  const long hi = std::max(to, k - 1);
  std::vector<BigInt> g(static_cast<size_t>(hi - lo + 1));
  auto at = [&](long n) -> BigInt& { return g[static_cast<size_t>(n - lo)]; };
  for (long i = 0; i < k; ++i) at(i) = spec.initial[static_cast<size_t>(i)];
  for (long n = k; n <= hi; ++n) {
    BigInt s = 0;
    for (long i = 0; i < k; ++i) s += spec.coeffs[static_cast<size_t>(i)] * at(n - k + i);
    at(n) = s;
  }
  // g_n = (g_{n+k} - p_{k-1} g_{n+k-1} - ... - p_1 g_{n+1}) / p_0, and 1/p_0 = p_0.
  for (long n = -1; n >= lo; --n) {
    BigInt s = at(n + k);
    for (long i = 1; i < k; ++i) s -= spec.coeffs[static_cast<size_t>(i)] * at(n + i);
    at(n) = s * spec.coeffs[0];
  }
  return {g.begin() + (from - lo), g.begin() + (to - lo) + 1};
}

BigInt eval_term(const RecurrenceSpec& spec, long n) { return eval_range(spec, n, n).front(); }

IntPoly char_poly(const RecurrenceSpec& spec) {
  std::vector<BigInt> c(static_cast<size_t>(spec.order) + 1);
  for (int i = 0; i < spec.order; ++i) c[static_cast<size_t>(i)] = -spec.coeffs[static_cast<size_t>(i)];
  c.back() = 1;
  return IntPoly(c);
}

nlohmann::json to_json(const RecurrenceSpec& spec) {
  nlohmann::json j;
  j["order"] = spec.order;
  auto strs = [](const std::vector<BigInt>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
  };
  j["coeffs_p0_first"] = strs(spec.coeffs);
  j["initial_terms"] = strs(spec.initial);
  j["name"] = spec.name;
  j["index_offset"] = spec.index_offset;
  return j;
}

namespace {

BigInt parse_int(const nlohmann::json& v, const std::string& field) {
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    BigInt out;
    const std::string s = v.get<std::string>();
    if (s.empty() || out.set_str(s, 10) != 0) throw InputError(field + ": not an integer: " + s);
    return out;
  }
  throw InputError(field + ": expected an integer or a decimal string");
}

std::vector<BigInt> parse_ints(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_array()) throw InputError("missing array field " + field);
  std::vector<BigInt> out;
  for (const auto& v : j[field]) out.push_back(parse_int(v, field));
  return out;
}

}  // namespace

RecurrenceSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("recurrence spec must be a JSON object");
  RecurrenceSpec s;
  if (!j.contains("order") || !j["order"].is_number_integer()) throw InputError("missing integer field order");
  s.order = j["order"].get<int>();
  s.coeffs = parse_ints(j, "coeffs_p0_first");
  s.initial = parse_ints(j, "initial_terms");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("name must be a string");
    s.name = j["name"].get<std::string>();
  }
  if (j.contains("index_offset")) {
    if (!j["index_offset"].is_number_integer()) throw InputError("index_offset must be an integer");
    s.index_offset = j["index_offset"].get<long>();
  }
  s.validate();
  return s;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string spec_hash(const RecurrenceSpec& spec) { return fnv1a_hex(to_json(spec).dump()); }

BigInt factorial(long k) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(std::max(0L, k)));
  return f;
}

RealBall root_height_bound(const IntPoly& g, Bits prec) {
  return upper_ball(log_l2_norm(g, prec) + RealBall::log2(prec) * static_cast<long>(g.degree()));
}

// ---------------------------------------------------------------- Binet

const RootCoefficients& BinetDecomposition::term_of(int root) const {
  for (const auto& t : terms) {
    if (t.root == root) return t;
  }
  throw std::out_of_range("root has no Binet term");
}

namespace {

struct Column {
  int root;
  int power;
};

std::vector<Column> columns_of(const RootSet& rs) {
  std::vector<Column> cols;
  for (size_t j = 0; j < rs.roots.size(); ++j) {
    for (int t = 0; t < rs.roots[j].multiplicity; ++t) cols.push_back({static_cast<int>(j), t});
  }
  return cols;
}

ComplexBall entry(const RootSet& rs, const Column& c, long n, Bits prec) {
  if (c.power > 0 && n == 0) return ComplexBall(RealBall(0L, prec));
  ComplexBall z = pow(rs.roots[static_cast<size_t>(c.root)].enclosure(), n);
  BigInt np;
  mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(c.power));
  return z * RealBall(np, prec);
}

// Gaussian elimination with pivoting on the certified modulus; nullopt when
// no pivot is certified nonzero.
std::optional<std::vector<ComplexBall>> solve(std::vector<std::vector<ComplexBall>> a, std::vector<ComplexBall> b) {
  const size_t k = b.size();
  for (size_t col = 0; col < k; ++col) {
    size_t best = k;
    double best_low = 0;
    for (size_t r = col; r < k; ++r) {
      RealBall m = norm(a[r][col]);
      if (!m.is_positive()) continue;
      double low = m.lower_double();
      if (best == k || low > best_low) {
        best = r;
        best_low = low;
      }
    }
    if (best == k) return std::nullopt;
    std::swap(a[col], a[best]);
    std::swap(b[col], b[best]);
    for (size_t r = col + 1; r < k; ++r) {
      ComplexBall f = a[r][col] / a[col][col];
      for (size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<ComplexBall> x(k);
  for (size_t i = k; i-- > 0;) {
    ComplexBall s = b[i];
    for (size_t c = i + 1; c < k; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

RealBall int_height(const BigInt& g, Bits prec) {
  if (g == 0) return RealBall();
  return log(RealBall(BigInt(abs(g)), prec));
}

// Height bound shared by every Cramer quotient det(M_col <- g) / det(M).
// Row n of M holds n^t gamma^n with height <= n h(gamma) + t log n; each of
// the k! determinant terms has height at most the sum of row maxima and the
// sum rule adds log 2 per addition.
RealBall cramer_height(const RecurrenceSpec& spec, const RootSet& rs, const RealBall& h_root, Bits prec) {
  int max_mult = 1;
  for (const auto& r : rs.roots) max_mult = std::max(max_mult, r.multiplicity);
  RealBall row_den_sum, row_num_sum;
  for (long n = 0; n < spec.order; ++n) {
    RealBall row = h_root * n;
    if (n > 1 && max_mult > 1) row += log(RealBall(n, prec)) * static_cast<long>(max_mult - 1);
    row_den_sum += row;
    row_num_sum += max(row, int_height(spec.initial[static_cast<size_t>(n)], prec));
  }
  BigInt f = factorial(spec.order);
  RealBall terms(f, prec);
  RealBall adds = RealBall::log2(prec) * RealBall(BigInt(f - 1), prec);
  RealBall h_den = terms * row_den_sum + adds;
  RealBall h_num = terms * row_num_sum + adds;
  return upper_ball(h_num + h_den);
}

BinetDecomposition binet_from_roots(const RecurrenceSpec& spec, const RootSet& rs, DominanceKind kind,
                                    std::vector<int> dominant) {
  const Bits prec = rs.precision;
  const auto cols = columns_of(rs);
  const size_t k = cols.size();
  std::vector<std::vector<ComplexBall>> a(k, std::vector<ComplexBall>(k));
  std::vector<ComplexBall> b(k);
  for (size_t n = 0; n < k; ++n) {
    for (size_t c = 0; c < k; ++c) a[n][c] = entry(rs, cols[c], static_cast<long>(n), prec);
    b[n] = ComplexBall(RealBall(spec.initial[n], prec));
  }
  auto x = solve(std::move(a), std::move(b));
  if (!x) throw PrecisionExceeded("Vandermonde system not certified nonsingular");
  BinetDecomposition out;
  out.roots = rs;
  out.kind = kind;
  out.dominant = std::move(dominant);
  out.precision = prec;
  for (size_t c = 0; c < k; ++c) {
    if (cols[c].power == 0) out.terms.push_back({cols[c].root, rs.roots[static_cast<size_t>(cols[c].root)].multiplicity, {}});
    out.terms.back().coeffs.push_back((*x)[c]);
  }
  out.root_height = root_height_bound(char_poly(spec), prec);
  out.coefficient_height = cramer_height(spec, rs, out.root_height, prec);
  RealBall tail;
  for (const auto& t : out.terms) {
    if (std::find(out.dominant.begin(), out.dominant.end(), t.root) != out.dominant.end()) continue;
    out.tail_degree = std::max(out.tail_degree, t.multiplicity - 1);
    for (const auto& c : t.coeffs) tail += abs(c);
  }
  out.tail_coefficient = upper_ball(tail);
  if (!out.dominant.empty()) out.dominant_abs = abs(out.term_of(out.dominant[0]).coeffs.back());
  return out;
}

}  // namespace

BinetDecomposition binet_data(const RecurrenceSpec& spec, const DominanceReport& report, Bits precision) {
  spec.validate();
  RootSet rs = report.roots;
  std::vector<int> dominant = report.dominant;
  if (rs.precision < precision) {
    RootSet fresh = isolate_roots(report.poly, precision);
    for (int& d : dominant) {
      auto t = track_root(fresh, rs.roots[static_cast<size_t>(d)]);
      if (!t) throw PrecisionExceeded("lost track of a dominant root");
      d = *t;
    }
    rs = std::move(fresh);
  }
  for (;;) {
    try {
      return binet_from_roots(spec, rs, report.kind, dominant);
    } catch (const PrecisionExceeded&) {
      if (rs.precision * 2 > precision_ceiling()) throw;
    }
    RootSet fresh = isolate_roots(report.poly, rs.precision * 2);
    for (int& d : dominant) {
      auto t = track_root(fresh, rs.roots[static_cast<size_t>(d)]);
      if (!t) throw PrecisionExceeded("lost track of a dominant root");
      d = *t;
    }
    rs = std::move(fresh);
  }
}

ComplexBall binet_eval(const BinetDecomposition& binet, long n) {
  const Bits prec = binet.precision;
  ComplexBall sum(RealBall(0L, prec));
  for (const auto& t : binet.terms) {
    ComplexBall poly(RealBall(0L, prec));
    for (size_t i = t.coeffs.size(); i-- > 0;) poly = poly * ComplexBall(RealBall(n, prec)) + t.coeffs[i];
    ComplexBall z = binet.roots.roots[static_cast<size_t>(t.root)].enclosure();
    if (n >= 0) {
      sum += poly * pow(z, n);
    } else {
      sum += poly * (ComplexBall(RealBall(1L, prec)) / pow(z, -n));
    }
  }
  return sum;
}

bool dominant_coefficient_nonzero(const RecurrenceSpec& spec, const BinetDecomposition& binet) {
  if (binet.dominant.empty()) throw std::invalid_argument("no dominant root");
  const long k = spec.order;
  BinetDecomposition cur = binet;
  for (;;) {
    const Bits prec = cur.precision;
    const auto& coeffs = cur.term_of(cur.dominant[0]).coeffs;
    bool any_nonzero = false;
    bool all_tiny = true;
    // A nonzero number of degree <= k! and height <= h has modulus >= exp(-k! h).
    RealBall sep = exp(-(RealBall(factorial(k), prec) * cur.coefficient_height));
    for (const auto& c : coeffs) {
      RealBall m = abs(c);
      if (m.is_positive()) any_nonzero = true;
      if (!certainly_lt(m, sep)) all_tiny = false;
    }
    if (any_nonzero) return true;
    if (all_tiny) return false;
    if (prec * 2 > precision_ceiling()) throw PrecisionExceeded("dominant coefficient undecided below the ceiling");
    RootSet fresh = isolate_roots(char_poly(spec), prec * 2);
    std::vector<int> dom = cur.dominant;
    for (int& d : dom) {
      auto t = track_root(fresh, cur.roots.roots[static_cast<size_t>(d)]);
      if (!t) throw PrecisionExceeded("lost track of a dominant root");
      d = *t;
    }
    cur = binet_from_roots(spec, fresh, cur.kind, dom);
  }
}

}  // namespace recur
