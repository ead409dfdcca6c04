#include "recur/baker.hpp"

#include <algorithm>
#include <functional>

#include "recur/errors.hpp"

namespace recur {

namespace {

RealBall num(long v, Bits prec) { return RealBall(v, prec); }
RealBall rat(const BigRat& v, Bits prec) { return RealBall(v, prec); }

RealBall ceil_up(const RealBall& x) {
  Mpfr u = x.upper();
  Mpfr c(std::max<Bits>(u.prec(), 64));
  mpfr_ceil(c.get(), u.get());
  return RealBall::from_mid_rad(c, Mpfr());
}

RealBall clamp_nonneg(const RealBall& x) { return x.is_negative() ? RealBall() : x; }

// Strictness margin for constants that bound a quantity which may be attained.
RealBall inflate(const RealBall& x, Bits prec) {
  return upper_ball(x * (num(1, prec) + rat(BigRat(1, BigInt(1) << 30), prec)));
}

bool nonneg(const RealBall& x) { return x.lower().sign() >= 0; }

RealBall sqrt_ball(long v, Bits prec) { return sqrt(num(v, prec)); }

}  // namespace

// ---------------------------------------------------------------- Matveev

MatveevWeight matveev_weight(const BigInt& field_degree, const RealBall& height_upper,
                             const RealBall& abs_log_upper, Bits prec) {
  RealBall dh = RealBall(field_degree, prec) * height_upper;
  RealBall floor_v = rat(BigRat(4, 25), prec);
  MatveevWeight w;
  w.value = upper_ball(max(max(dh, abs_log_upper), floor_v));
  if (certainly_le(abs_log_upper, dh) && certainly_le(floor_v, dh)) {
    w.provenance = "d_K * h";
  } else if (certainly_le(floor_v, abs_log_upper) && certainly_le(dh, abs_log_upper)) {
    w.provenance = "|log eta|";
  } else if (certainly_le(dh, floor_v) && certainly_le(abs_log_upper, floor_v)) {
    w.provenance = "0.16 floor";
  } else {
    w.provenance = "max of d_K * h, |log eta|, 0.16";
  }
  return w;
}

namespace {

RealBall matveev_constant(int t, const BigInt& d, const std::vector<MatveevWeight>& weights, Bits prec) {
  if (t < 1) throw std::invalid_argument("Matveev: t must be positive");
  if (d < 1) throw std::invalid_argument("Matveev: field degree must be positive");
  if (weights.size() != static_cast<size_t>(t)) throw std::invalid_argument("Matveev: need t weights");
  RealBall floor_v = rat(BigRat(4, 25), prec);
  RealBall prod = num(1, prec);
  for (const auto& w : weights) {
    if (!certainly_le(floor_v, w.value)) throw std::invalid_argument("Matveev: weight below 0.16");
    prod *= w.value;
  }
  RealBall dk(d, prec);
  RealBall t1 = num(t + 1, prec);
  RealBall c = num(3, prec) * pow(num(30, prec), t + 4) * pow(t1, 5) * sqrt(t1);
  return c * sqr(dk) * (num(1, prec) + log(dk)) * prod;
}

}  // namespace

RealBall matveev_log_lower_bound(const MatveevInput& input, Bits prec) {
  RealBall k = matveev_constant(input.t, input.field_degree, input.weights, prec);
  RealBall b = max(input.b_max, num(3, prec));
  return -(k * (num(1, prec) + log(b * static_cast<long>(input.t))));
}

RealBall gap_c8(const RealBall& c7, const RealBall& abs_a1, const RealBall& log_alpha) {
  return upper_ball((log(c7) - log(lower_ball(abs_a1) / 2L)) / log_alpha);
}

RealBall gap_c9(const RealBall& abs_a1, const RealBall& log_alpha) {
  return upper_ball(clamp_nonneg(log(upper_ball(abs_a1) * 3L / 2L) / log_alpha));
}

std::string to_string(LedgerMode mode) { return mode == LedgerMode::PaperFaithful ? "paper_faithful" : "tightened"; }

LedgerMode ledger_mode_from_string(const std::string& s) {
  if (s == "paper_faithful") return LedgerMode::PaperFaithful;
  if (s == "tightened") return LedgerMode::Tightened;
  throw InputError("unknown mode " + s + " (expected paper_faithful or tightened)");
}

const RealBall& ConstantsLedger::at(const std::string& name) const {
  auto it = constants.find(name);
  if (it == constants.end()) throw std::out_of_range("no constant " + name);
  return it->second;
}

// ---------------------------------------------------------------- thresholds

namespace {

using Fn = std::function<RealBall(const RealBall&)>;

// Smallest integer x >= lo (up to one doubling step of slack) with g >= 0 on
// [x, inf), for g convex on [lo, inf) with derivative dg.
RealBall convex_threshold(const Fn& g, const Fn& dg, const RealBall& lo, Bits prec) {
  RealBall x = max(ceil_up(lo), num(3, prec));
  int guard = 0;
  while (!nonneg(dg(x))) {
    x = x * 2L;
    if (++guard > 100000) throw PrecisionExceeded("threshold search did not find the increasing branch");
  }
  if (nonneg(g(x))) return x;
  RealBall low = x, high = x * 2L;
  while (!nonneg(g(high))) {
    low = high;
    high = high * 2L;
    if (++guard > 100000) throw PrecisionExceeded("threshold search diverged");
  }
  const RealBall tol = rat(BigRat(1, BigInt(1) << 40), prec);
  while (certainly_lt(num(1, prec), high - low) && certainly_lt(tol, (high - low) / high)) {
    Mpfr m(prec + 64);
    mpfr_add(m.get(), low.mid().get(), high.mid().get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    mpfr_floor(m.get(), m.get());
    RealBall mid = RealBall::from_mid_rad(m, Mpfr());
    if (nonneg(g(mid))) {
      high = mid;
    } else {
      low = mid;
    }
  }
  return ceil_up(high);
}

// x with a x - b log x >= c from then on.
RealBall threshold_linear_log(const RealBall& a, const RealBall& b, const RealBall& c, Bits prec) {
  Fn g = [=](const RealBall& x) { return a * x - b * log(x) - c; };
  Fn dg = [=](const RealBall& x) { return a - b / x; };
  return convex_threshold(g, dg, num(3, prec), prec);
}

// x with a x - b log^2 x >= c from then on.
RealBall threshold_linear_log2(const RealBall& a, const RealBall& b, const RealBall& c, Bits prec) {
  Fn g = [=](const RealBall& x) { return a * x - b * sqr(log(x)) - c; };
  Fn dg = [=](const RealBall& x) { return a - b * log(x) * 2L / x; };
  return convex_threshold(g, dg, num(3, prec), prec);
}

// x >= c / a with a > 0.
RealBall threshold_linear(const RealBall& a, const RealBall& c) {
  if (!c.is_positive()) return RealBall();
  return ceil_up(c / a);
}

// exp(sqrt(max(0, v))) rounded up to an integer.
RealBall threshold_exp_sqrt(const RealBall& v) {
  if (!v.is_positive()) return RealBall();
  return ceil_up(exp(sqrt(v)));
}

struct SideTail {
  RealBall c;
};

// C sup_{n>=0} max(1,n)^D rho^n with rho = second / dom^delta, via the real
// maximum (D / (e log(1/rho)))^D.
RealBall tail_constant(const BinetDecomposition& binet, const DominanceReport& rep, const RealBall& delta,
                       Bits prec) {
  if (binet.tail_coefficient.is_exact() && binet.tail_coefficient.mid().is_zero()) return RealBall();
  if (rep.second_modulus.is_exact() && rep.second_modulus.mid().is_zero()) return RealBall();
  RealBall log_rho = log(rep.second_modulus) - delta * log(rep.dominant_modulus);
  if (!log_rho.is_negative()) throw PrecisionExceeded("subdominant ratio not certified below 1");
  RealBall sup = num(1, prec);
  if (binet.tail_degree > 0) {
    RealBall e = exp(num(1, prec));
    RealBall peak = pow(num(binet.tail_degree, prec) / (e * (-log_rho)), binet.tail_degree);
    sup = max(sup, peak);
  }
  return inflate(binet.tail_coefficient * sup, prec);
}

BigInt splitting_degree_bound(const IntPoly& a, const IntPoly& b, Bits prec) {
  std::vector<IntPoly> classes;
  auto same_field = [](const IntPoly& f, const IntPoly& g) {
    if (f.degree() != g.degree()) return false;
    IntPoly r = reverse(g).normalized();
    return f == g || f == r || f == negate_variable(g).normalized() || f == negate_variable(r).normalized();
  };
  for (const IntPoly* p : {&a, &b}) {
    for (const IntPoly& f : irreducible_factors(*p, prec)) {
      if (f.degree() < 2) continue;
      bool seen = false;
      for (const auto& c : classes) seen = seen || same_field(c, f);
      if (!seen) classes.push_back(f);
    }
  }
  BigInt d = 1;
  for (const auto& c : classes) d *= factorial(c.degree());
  return d;
}

void fail(std::vector<HypothesisCheck>& hyps, const std::string& which, const std::string& detail) {
  hyps.push_back({which, false, detail});
  throw HypothesisFailed(which, detail);
}

void pass(std::vector<HypothesisCheck>& hyps, const std::string& which, const std::string& detail) {
  hyps.push_back({which, true, detail});
}

// Main part B_1 beta_1^m + B_2 beta_2^m of the B side.
ComplexBall main_part(const BinetDecomposition& b, long m) {
  ComplexBall s;
  for (int idx : b.dominant) {
    s += b.term_of(idx).coeffs[0] * pow(b.roots.roots[static_cast<size_t>(idx)].enclosure(), m);
  }
  return s;
}

// Scan 0 <= m <= bound for an exact zero of the main part. At most one exists
// because beta_2/beta_1 is not a root of unity.
std::optional<long> scan_gap_exception(const RecurrenceSpec& spec, const DominanceReport& rep,
                                       const BinetDecomposition& binet, long bound) {
  const BigInt field = factorial(spec.order);
  for (long m = 0; m <= bound; ++m) {
    BinetDecomposition cur = binet;
    for (;;) {
      ComplexBall v = main_part(cur, m);
      if (!v.contains_zero()) break;
      const Bits prec = cur.precision;
      RealBall h = cur.coefficient_height * 2L + cur.root_height * (2 * m) + RealBall::log2(prec);
      RealBall sep = exp(-(RealBall(field, prec) * h));
      if (certainly_lt(abs(v), sep)) return m;
      if (prec * 2 > precision_ceiling()) throw PrecisionExceeded("gap exception scan undecided");
      cur = binet_data(spec, rep, prec * 2);
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- certify

BoundCertificate certify(const RecurrenceSpec& a, const RecurrenceSpec& b, const CertifyConfig& config) {
  a.validate();
  b.validate();
  const Bits prec = config.precision;
  BoundCertificate cert;
  cert.spec_a = a;
  cert.spec_b = b;
  cert.precision = prec;
  cert.max_denominator = config.max_denominator;
  auto& hyps = cert.hypotheses;
  const IntPoly ga = char_poly(a), gb = char_poly(b);

  cert.dominance_a = dominance_profile(ga, prec);
  const DominanceReport& ra = cert.dominance_a;
  if (ra.kind != DominanceKind::RealDominant) {
    fail(hyps, "type_a_dominance", "A(X) = " + ga.to_string() + " is " + to_string(ra.kind) +
                                       (ra.reason.empty() ? "" : " (" + ra.reason + ")"));
  }
  if (ra.dominant_multiplicity != 1) {
    fail(hyps, "simple_dominant_a", "m_1 = " + std::to_string(ra.dominant_multiplicity));
  }
  pass(hyps, "type_a_dominance", "simple dominant real root");
  cert.dominance_b = dominance_profile(gb, prec);
  const DominanceReport& rb = cert.dominance_b;
  if (rb.kind != DominanceKind::ComplexPairDominant) {
    fail(hyps, "type_b_dominance", "B(X) = " + gb.to_string() + " is " + to_string(rb.kind) +
                                       (rb.reason.empty() ? "" : " (" + rb.reason + ")"));
  }
  if (rb.dominant_multiplicity != 1) {
    fail(hyps, "simple_dominant_b", "n_1 = " + std::to_string(rb.dominant_multiplicity));
  }
  pass(hyps, "type_b_dominance", "simple dominant conjugate pair");

  cert.binet_a = binet_data(a, ra, prec);
  cert.binet_b = binet_data(b, rb, prec);
  if (!dominant_coefficient_nonzero(a, cert.binet_a)) fail(hyps, "dominant_coefficient_a", "A_1 = 0");
  if (!dominant_coefficient_nonzero(b, cert.binet_b)) fail(hyps, "dominant_coefficient_b", "B_1 = 0");
  pass(hyps, "dominant_coefficients", "A_1 != 0 and B_1 != 0");

  const auto& roots_a = cert.binet_a.roots.roots;
  const auto& roots_b = cert.binet_b.roots.roots;
  AlgebraicNumber alpha =
      AlgebraicNumber::from_root(ga, roots_a[static_cast<size_t>(cert.binet_a.dominant[0])].enclosure(), prec);
  AlgebraicNumber beta1 =
      AlgebraicNumber::from_root(gb, roots_b[static_cast<size_t>(cert.binet_b.dominant[0])].enclosure(), prec);
  AlgebraicNumber beta2 = beta1.conj();

  AlgebraicNumber pair_ratio = ratio_min_poly(beta2, beta1);
  RootOfUnity ru = is_root_of_unity(pair_ratio);
  if (ru.is_root) {
    fail(hyps, "beta2_over_beta1_not_root_of_unity",
         "beta_2/beta_1 is a root of unity of order " + std::to_string(ru.order) + " (minimal polynomial " +
             pair_ratio.minpoly().to_string() + ")");
  }
  pass(hyps, "beta2_over_beta1_not_root_of_unity", "minimal polynomial " + pair_ratio.minpoly().to_string());
  AlgebraicNumber cross_ratio = ratio_min_poly(alpha, beta1);
  ru = is_root_of_unity(cross_ratio);
  if (ru.is_root) {
    fail(hyps, "alpha1_over_beta1_not_root_of_unity",
         "alpha_1/beta_1 is a root of unity of order " + std::to_string(ru.order));
  }
  pass(hyps, "alpha1_over_beta1_not_root_of_unity", "minimal polynomial " + cross_ratio.minpoly().to_string());

  AlgebraicNumber alpha_abs = alpha.value().re().is_negative() ? alpha.negate() : alpha;
  AlgebraicNumber gamma = product(beta1, beta2);
  DependenceResult dep = multiplicative_dependence(alpha_abs, gamma, config.max_denominator, prec);
  if (!dep.witness) {
    hyps.push_back({"multiplicative_dependence", false, dep.transcript.back()});
    throw DependenceUnknown("dependence not found up to bound " + std::to_string(config.max_denominator));
  }
  cert.witness = *dep.witness;
  pass(hyps, "multiplicative_dependence",
       "|alpha_1|^(2p) = (beta_1 conj(beta_1))^q with p = " + std::to_string(cert.witness.p) +
           ", q = " + std::to_string(cert.witness.q));

  // ------------------------------------------------------------ ledger
  ConstantsLedger& L = cert.ledger;
  L.mode = config.mode;
  auto& C = L.constants;
  auto& T = L.thresholds;
  const BinetDecomposition& ba = cert.binet_a;
  const BinetDecomposition& bb = cert.binet_b;
  const RealBall one = num(1, prec);
  const RealBall la = log(ra.dominant_modulus);
  const RealBall lb = log(rb.dominant_modulus);
  const RealBall pi = RealBall::pi(prec);
  const RealBall ln2 = RealBall::log2(prec);
  const RealBall dg = rat(cert.gap_delta(), prec);

  C["log_alpha1"] = la;
  C["log_beta1"] = lb;
  C["delta"] = rat(cert.delta(), prec);
  C["gap_delta"] = dg;
  const RealBall da = decay_exponent(ra);
  const RealBall db = decay_exponent(rb);
  C["delta_a"] = da;
  C["delta_b"] = db;

  const RealBall a_low = lower_ball(ba.dominant_abs);
  const RealBall a_up = upper_ball(ba.dominant_abs);
  const RealBall b1 = bb.dominant_abs;
  const RealBall b2 = abs(bb.term_of(bb.dominant[1]).coeffs[0]);
  C["abs_A1"] = ba.dominant_abs;
  C["abs_B1"] = b1;

  // Growth of a_n and the tail of b_m.
  const RealBall c2 = tail_constant(ba, ra, da, prec);
  const RealBall c4 = upper_ball(a_up + c2);
  const RealBall c3 = lower_ball(a_low / 2L);
  const RealBall c5 = tail_constant(bb, rb, db, prec);
  const RealBall c7 = upper_ball(upper_ball(b1) + upper_ball(b2));
  C["c2"] = c2;
  C["c3"] = c3;
  C["c4"] = c4;
  C["c5"] = c5;
  C["c7"] = c7;
  T["n2_tail_a"] = RealBall();
  T["n3_growth_a"] = c2.mid().is_zero() ? RealBall() : threshold_linear((one - da) * la, log(c2 * 2L / a_low));
  T["m_tail_b"] = RealBall();
  T["m_upper_b"] = c5.mid().is_zero() ? RealBall() : threshold_linear((one - db) * lb, log(c5 / c7));

  // Lower gap for the main part via Matveev with t = 2, eta_1 = beta_2/beta_1,
  // eta_2 = -B_2/B_1, b_1 = m, b_2 = 1.
  const BigInt d6 = factorial(b.order) * 2;
  RealBall h_eta1 = upper_ball(min(weil_height(pair_ratio, 1e-12), bb.root_height * 2L));
  HeightExpr eta2 = HeightExpr::div(HeightExpr::leaf(bb.coefficient_height, "B_2"),
                                    HeightExpr::leaf(bb.coefficient_height, "B_1"));
  RealBall h_eta2 = eta2.bound(prec);
  RealBall abs_log_eta2 = upper_ball(abs(log(b2 / b1)) + pi);
  std::vector<MatveevWeight> w6{matveev_weight(d6, h_eta1, upper_ball(pi), prec),
                                matveev_weight(d6, h_eta2, abs_log_eta2, prec)};
  const RealBall k6 = upper_ball(matveev_constant(2, d6, w6, prec));
  const RealBall c6 = upper_ball(k6 * 2L / lb);
  C["matveev_gap_constant"] = k6;
  C["c6"] = c6;
  L.notes["c6_derivation"] = "log|1 + (B_2/B_1)(beta_2/beta_1)^m| > -K(1 + log 2m), K = 3*30^6*3^5.5*d^2(1+log d)A_1A_2, d = " +
                             d6.get_str() + ", A_1 from " + w6[0].provenance + ", A_2 from " + w6[1].provenance +
                             "; c_6 = 2K/log|beta_1| absorbs log|B_1| and 1 + log 2 for m >= m_0";
  // log m >= 1 + log 2 - log|B_1| / K.
  RealBall m0 = ceil_up(exp(one + ln2 - log(lower_ball(b1)) / k6));
  T["m0_gap_b"] = max(m0, num(3, prec));
  {
    RealBall h_low = lower_ball(weil_height(pair_ratio, 1e-12));
    if (!h_low.is_positive()) throw PrecisionExceeded("height of beta_2/beta_1 not separated from 0");
    RealBall bound = (bb.coefficient_height * 2L) / h_low;
    if (!certainly_lt(bound, num(1000000, prec))) {
      throw PrecisionExceeded("gap exception scan range too large");
    }
    long scan = static_cast<long>(ceil_up(bound).mid_double());
    L.gap_exception = scan_gap_exception(b, rb, bb, scan);
    L.notes["gap_exception_scan"] = "m in [0, " + std::to_string(scan) + "] from m h(beta_2/beta_1) <= h(B_1/B_2)";
  }
  // |b_m| > |beta_1|^{m - 2 c_6 log m}: c_5 |beta_1|^{(delta_b - 1)m + c_6 log m} <= 1/2.
  {
    RealBall m1 = max(T["m0_gap_b"], num(2, prec));
    if (!c5.mid().is_zero()) {
      m1 = max(m1, threshold_linear_log((one - db) * lb, c6 * lb, log(c5 * 2L), prec));
    }
    T["m1_lower_b"] = m1;
  }

  // Exponent gap n - delta m (delta here is log|beta_1| / log|alpha_1|).
  const RealBall c8 = gap_c8(c7, ba.dominant_abs, la);
  const RealBall c9 = gap_c9(ba.dominant_abs, la);
  const RealBall c10 = upper_ball(c6 * dg + c9);
  const RealBall c11 = lower_ball((one - db) / (dg * 4L));
  const RealBall c12 = upper_ball(exp(c8 * la) * sqrt(c3) * 2L / lower_ball(b1));
  C["c8"] = c8;
  C["c9"] = c9;
  C["c10"] = c10;
  C["c10_printed_variant"] = upper_ball(c4 * dg + c9);
  C["c11"] = c11;
  C["c12"] = c12;
  T["m_gap_log"] = num(3, prec);
  T["m_gap_weak"] = upper_ball(max(ceil_up(c8 / (dg * 2L)), ceil_up(sqr(c10 * 2L / dg))));
  T["n_c11"] = threshold_linear_log(c11, c6 * 2L, c6 * 2L * log(num(2, prec) / dg), prec);

  // Heights and the quadratic-root chain for lambda_1.
  const RealBall h_alpha = upper_ball(weil_height(alpha, 1e-20));
  const RealBall h_beta = upper_ball(weil_height(beta1, 1e-20));
  C["h_alpha1"] = h_alpha;
  C["h_beta1"] = h_beta;
  HeightExpr x = HeightExpr::div(HeightExpr::leaf(ba.coefficient_height, "A_1"),
                                 HeightExpr::leaf(bb.coefficient_height, "B_1"));
  HeightExpr y = HeightExpr::mul(HeightExpr::leaf(log(num(4, prec)), "4"), eta2);
  HeightExpr disc = HeightExpr::sub(HeightExpr::pow(x, BigRat(2)), y);
  HeightExpr lambda = HeightExpr::div(HeightExpr::add(x, HeightExpr::pow(disc, BigRat(1, 2))),
                                      HeightExpr::leaf(ln2, "2"));
  const RealBall c13 = upper_ball(lambda.bound(prec) + h_alpha * c8 * 2L);
  const RealBall c14 = upper_ball(h_alpha * c10 * 2L);
  C["c13"] = c13;
  C["c14"] = c14;
  L.notes["c13_chain"] = "h(lambda_1) <= " + lambda.describe() + " + 2|u| h(alpha_1), |u| <= c_8 absorbed";

  // Final Matveev application, t = 2, eta_1 = z, eta_2 = lambda_1, B = m.
  const BigInt kl = factorial(a.order) * factorial(b.order);
  const BigInt d_faithful = kl * 4;
  const BigInt d_tight = std::min(d_faithful, BigInt(splitting_degree_bound(ga, gb, prec) * 4));
  C["field_degree_faithful"] = RealBall(d_faithful, prec);
  C["field_degree_tightened"] = RealBall(d_tight, prec);
  const RealBall base = pow(num(3, prec), 6) * sqrt_ball(3, prec) * pow(num(30, prec), 6);
  auto weight1 = [&](const BigInt& d) {
    return matveev_weight(d, h_beta * 2L, upper_ball(pi), prec);
  };
  std::optional<RealBall> c15_pf;
  if (kl >= 11) {
    // 3^6.5 2^11 30^6 (k!l!)^4 log(k!l!) h(beta_1) c_14, with 8 k!l! h(beta_1)
    // replaced by its floored Matveev weight.
    RealBall klb(kl, prec);
    MatveevWeight w = weight1(d_faithful);
    c15_pf = upper_ball(base * pow(num(2, prec), 11) * pow(klb, 4) * log(klb) * (w.value / (klb * 8L)) * c14);
    C["c15_paper_faithful"] = *c15_pf;
  }
  {
    RealBall d(d_tight, prec);
    MatveevWeight w = weight1(d_tight);
    C["c15_tightened"] = upper_ball(base * 2L * pow(d, 3) * (one + log(d)) * w.value * c14);
    L.notes["c15_weight_eta1"] = w.provenance;
  }
  if (config.mode == LedgerMode::PaperFaithful && !c15_pf) {
    throw ModeUnavailable("paper_faithful c_15 needs k!l! >= 11 (log(k!l!) absorbs 1 + log 4k!l!); use tightened");
  }
  const RealBall c15 = config.mode == LedgerMode::PaperFaithful ? *c15_pf : C["c15_tightened"];
  // Kept as the ball itself so the identity with c_15 c_13 / c_14 is exact.
  const RealBall c16 = c15 * c13 / c14;
  C["c15"] = c15;
  C["c16"] = c16;
  Mpfr c0 = upper_ball(c15 * 9L / la).mid();
  mpfr_nextabove(c0.get());
  const RealBall c0b = RealBall::from_mid_rad(c0, Mpfr());
  C["c0"] = c0b;
  L.notes["c16_form"] = "log|Gamma| > -c_15 log^2 m - c_16 log m; c_16 = c_15 c_13 / c_14";

  // Remaining "large enough" conditions.
  const RealBall sc3 = sqrt(c3);
  T["n_case1_tail"] = threshold_linear_log2((one - da) * la, c0b * la, log((c4 + c5) / sc3), prec);
  T["n_case1_half"] = threshold_exp_sqrt(log(sc3 * 4L / a_low) / (c0b * la));
  T["m_case2_tail"] = threshold_linear_log((one - db) * lb, c6 * lb * 2L, log((c4 + c5) * 8L), prec);
  T["n_case2_half"] = threshold_exp_sqrt(log(sc3 * 4L / a_low) / (c0b * la));
  T["n_lambda_half"] = threshold_exp_sqrt(log(sqrt(c12) * 2L) * 2L / (c0b * la));
  T["m_matveev_log"] = num(6, prec);
  T["n_final"] = upper_ball(max(ceil_up(num(2, prec) / dg), threshold_exp_sqrt((c16 + log(sqrt(c12) * 2L)) / c15)));
  RealBall c1 = RealBall();
  for (const auto& [name, v] : T) c1 = max(c1, upper_ball(v));
  C["c1"] = c1;
  L.notes["delta_convention"] = "midpoint";
  L.notes["delta_orientation"] = "delta = log|alpha_1|/log|beta_1| = q/p; gap constants use log|beta_1|/log|alpha_1| = p/q";
  L.notes["gamma_nonzero"] = "Gamma != 0 rests on prime-divisor growth and is not checked at runtime";
  L.notes["desk_scale"] = "c_1 exceeds any exhaustive search range; finite searches are consistency evidence only";
  return cert;
}

// ---------------------------------------------------------------- JSON

nlohmann::json ball_json(const RealBall& x) {
  return {{"mid", to_decimal(x.mid())}, {"rad", to_decimal_up(x.rad())}, {"bits", x.bits()}};
}

nlohmann::json to_json(const DominanceReport& r) {
  nlohmann::json j;
  j["poly"] = r.poly.to_string();
  j["kind"] = to_string(r.kind);
  j["dominant_multiplicity"] = r.dominant_multiplicity;
  j["dominant_modulus"] = ball_json(r.dominant_modulus);
  j["second_modulus"] = ball_json(r.second_modulus);
  j["decay_exponent"] = r.kind == DominanceKind::Other ? nlohmann::json() : ball_json(decay_exponent(r));
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& root : r.roots.roots) {
    roots.push_back({{"re", to_decimal(root.center.re().mid())},
                     {"im", to_decimal(root.center.im().mid())},
                     {"radius", to_decimal_up(root.radius)},
                     {"multiplicity", root.multiplicity}});
  }
  j["roots"] = roots;
  return j;
}

nlohmann::json to_json(const BinetDecomposition& b) {
  return {{"dominant_abs", ball_json(b.dominant_abs)},
          {"coefficient_height", ball_json(b.coefficient_height)},
          {"root_height", ball_json(b.root_height)},
          {"tail_degree", b.tail_degree},
          {"tail_coefficient", ball_json(b.tail_coefficient)}};
}


nlohmann::json to_json(const BoundCertificate& cert) {
  nlohmann::json j;
  j["schema"] = kCertificateSchema;
  j["precision_bits"] = cert.precision;
  j["mode"] = to_string(cert.ledger.mode);
  j["max_denominator"] = cert.max_denominator;
  j["pair"] = {{"a", {{"hash", spec_hash(cert.spec_a)}, {"spec", to_json(cert.spec_a)}}},
               {"b", {{"hash", spec_hash(cert.spec_b)}, {"spec", to_json(cert.spec_b)}}}};
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : cert.hypotheses) hyps.push_back({{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
  j["hypotheses"] = hyps;
  j["dominance"] = {{"a", to_json(cert.dominance_a)}, {"b", to_json(cert.dominance_b)}};
  j["binet"] = {{"a", to_json(cert.binet_a)}, {"b", to_json(cert.binet_b)}};
  j["dependence"] = {{"p", cert.witness.p},
                     {"q", cert.witness.q},
                     {"delta", cert.delta().get_str()},
                     {"gap_delta", cert.gap_delta().get_str()},
                     {"transcript", cert.witness.transcript}};
  nlohmann::json constants, thresholds;
  for (const auto& [k, v] : cert.ledger.constants) constants[k] = ball_json(v);
  for (const auto& [k, v] : cert.ledger.thresholds) thresholds[k] = ball_json(v);
  j["ledger"] = {{"constants", constants},
                 {"thresholds", thresholds},
                 {"notes", cert.ledger.notes},
                 {"gap_exception", cert.ledger.gap_exception ? nlohmann::json(*cert.ledger.gap_exception) : nlohmann::json()}};
  return j;
}

// ---------------------------------------------------------------- checks

namespace {

void tally(InequalityTally& t, const RealBall& small, const RealBall& large) {
  ++t.checked;
  if (certainly_lt(small, large)) return;
  if (certainly_le(large, small)) {
    ++t.violations;
  } else {
    ++t.undecided;
  }
}

long start_index(const RealBall& threshold) {
  double v = threshold.upper_double();
  return v > 1e15 ? -1 : static_cast<long>(v);
}

}  // namespace

std::vector<InequalityTally> check_growth_inequalities(const BoundCertificate& cert, long upto) {
  const auto& L = cert.ledger;
  const Bits prec = cert.precision;
  const BinetDecomposition& ba = cert.binet_a;
  const BinetDecomposition& bb = cert.binet_b;
  const RealBall alpha = cert.dominance_a.dominant_modulus;
  const RealBall beta = cert.dominance_b.dominant_modulus;
  const ComplexBall a1 = ba.term_of(ba.dominant[0]).coeffs[0];
  const ComplexBall za = ba.roots.roots[static_cast<size_t>(ba.dominant[0])].enclosure();
  const std::vector<BigInt> as = eval_range(cert.spec_a, 0, upto);
  const std::vector<BigInt> bs = eval_range(cert.spec_b, 0, upto);
  const RealBall la = log(alpha), lb = log(beta);

  auto range = [&](const std::string& name, const std::string& threshold) {
    InequalityTally t;
    t.name = name;
    long s = start_index(L.thresholds.at(threshold));
    t.from = s < 0 ? upto + 1 : s;
    t.to = upto;
    return t;
  };
  std::vector<InequalityTally> out;

  InequalityTally t2 = range("a_tail", "n2_tail_a");
  for (long n = t2.from; n <= upto; ++n) {
    RealBall lhs = abs(ComplexBall(RealBall(as[static_cast<size_t>(n)], prec)) - a1 * pow(za, n));
    tally(t2, lhs, L.at("c2") * exp(L.at("delta_a") * la * n));
  }
  out.push_back(t2);

  InequalityTally t3l = range("a_growth_lower", "n3_growth_a");
  InequalityTally t3u = range("a_growth_upper", "n3_growth_a");
  t3u.from = 0;
  for (long n = 0; n <= upto; ++n) {
    RealBall an = abs(RealBall(as[static_cast<size_t>(n)], prec));
    RealBall pw = pow(alpha, n);
    if (n >= t3l.from) tally(t3l, L.at("c3") * pw, an);
    tally(t3u, an, L.at("c4") * pw);
  }
  out.push_back(t3l);
  out.push_back(t3u);

  InequalityTally t5 = range("b_tail", "m_tail_b");
  for (long m = t5.from; m <= upto; ++m) {
    RealBall lhs = abs(ComplexBall(RealBall(bs[static_cast<size_t>(m)], prec)) - main_part(bb, m));
    tally(t5, lhs, L.at("c5") * exp(L.at("delta_b") * lb * m));
  }
  out.push_back(t5);

  InequalityTally t1l = range("b_main_lower", "m0_gap_b");
  InequalityTally t1u = range("b_main_upper", "m0_gap_b");
  t1u.from = 0;
  for (long m = 0; m <= upto; ++m) {
    RealBall mp = abs(main_part(bb, m));
    if (m >= t1l.from && m >= 2 && !(L.gap_exception && *L.gap_exception == m)) {
      tally(t1l, exp((num(m, prec) - L.at("c6") * log(num(m, prec))) * lb), mp);
    }
    tally(t1u, mp, L.at("c7") * pow(beta, m));
  }
  out.push_back(t1l);
  out.push_back(t1u);

  InequalityTally t6l = range("b_growth_lower", "m1_lower_b");
  InequalityTally t6u = range("b_growth_upper", "m_upper_b");
  for (long m = 0; m <= upto; ++m) {
    RealBall bm = abs(RealBall(bs[static_cast<size_t>(m)], prec));
    if (m >= t6l.from && m >= 2 && !(L.gap_exception && *L.gap_exception == m)) {
      tally(t6l, exp((num(m, prec) - L.at("c6") * log(num(m, prec)) * 2L) * lb), bm);
    }
    if (m >= t6u.from) tally(t6u, bm, L.at("c7") * pow(beta, m) * 2L);
  }
  out.push_back(t6l);
  out.push_back(t6u);
  return out;
}

}  // namespace recur
