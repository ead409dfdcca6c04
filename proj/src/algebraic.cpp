#include "recur/algebraic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "recur/errors.hpp"

namespace recur {

namespace {

std::vector<BigInt> positive_divisors(const BigInt& n) {
  BigInt m = abs(n);
  std::vector<std::pair<BigInt, int>> primes;
  for (BigInt p = 2; p * p <= m && p < 1000000; ++p) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e > 0) primes.emplace_back(p, e);
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0 && m >= BigInt(1000000) * BigInt(1000000)) {
      throw std::domain_error("leading coefficient too large to enumerate divisors");
    }
    primes.emplace_back(m, 1);
  }
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : primes) {
    size_t count = divs.size();
    BigInt pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= p;
      for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

enum class Verdict { Integer, NoInteger, TooWide };

Verdict nearest_integer(const RealBall& x, BigInt& out) {
  Mpfr width(kRadiusBits);
  mpfr_mul_2ui(width.get(), x.rad().get(), 1, MPFR_RNDU);
  if (mpfr_cmp_ui(width.get(), 1) >= 0) return Verdict::TooWide;
  BigInt lo, hi;
  mpfr_get_z(lo.get_mpz_t(), x.lower().get(), MPFR_RNDU);
  mpfr_get_z(hi.get_mpz_t(), x.upper().get(), MPFR_RNDD);
  if (lo > hi) return Verdict::NoInteger;
  out = lo;
  return Verdict::Integer;
}

struct SearchOutcome {
  std::optional<IntPoly> factor;
  bool too_wide = false;
};

class FactorSearch {
 public:
  FactorSearch(const IntPoly& s, const RootSet& iso, int target, std::vector<BigInt> divisors)
      : s_(s), iso_(iso), target_(target), divisors_(std::move(divisors)) {
    for (size_t i = 0; i < iso.roots.size(); ++i) {
      const IsolatedRoot& r = iso.roots[i];
      if (r.real) {
        units_.push_back({static_cast<int>(i)});
      } else if (r.center.im().mid().sign() > 0) {
        units_.push_back({static_cast<int>(i), r.conj_index});
      }
    }
    for (size_t u = 0; u < units_.size(); ++u) {
      if (std::find(units_[u].begin(), units_[u].end(), target) != units_[u].end()) target_unit_ = u;
    }
  }

  SearchOutcome run() {
    const int n = s_.degree();
    const int base = static_cast<int>(units_[target_unit_].size());
    for (int size = base; size <= n; ++size) {
      std::vector<size_t> chosen{target_unit_};
      SearchOutcome out;
      if (enumerate(0, size - base, chosen, out)) return out;
    }
    return {};
  }

 private:
  static constexpr long kBudget = 2000000;

  bool enumerate(size_t start, int remaining, std::vector<size_t>& chosen, SearchOutcome& out) {
    if (remaining == 0) return test(chosen, out);
    for (size_t u = start; u < units_.size(); ++u) {
      if (u == target_unit_) continue;
      int sz = static_cast<int>(units_[u].size());
      if (sz > remaining) continue;
      chosen.push_back(u);
      bool done = enumerate(u + 1, remaining - sz, chosen, out);
      chosen.pop_back();
      if (done) return true;
    }
    return false;
  }

  // Returns true when the search must stop (factor found or precision too low).
  bool test(const std::vector<size_t>& chosen, SearchOutcome& out) {
    if (++examined_ > kBudget) throw PrecisionExceeded("factor search budget exhausted");
    const Bits prec = iso_.precision;
    std::vector<ComplexBall> coeffs{ComplexBall(RealBall(1L, prec))};
    for (size_t u : chosen) {
      for (int idx : units_[u]) {
        ComplexBall z = iso_.roots[static_cast<size_t>(idx)].enclosure();
        std::vector<ComplexBall> next(coeffs.size() + 1, ComplexBall(RealBall(0L, prec)));
        for (size_t i = 0; i < coeffs.size(); ++i) {
          next[i + 1] += coeffs[i];
          next[i] -= coeffs[i] * z;
        }
        coeffs = std::move(next);
      }
    }
    const size_t k = coeffs.size() - 1;
    for (const BigInt& c : divisors_) {
      RealBall cb(c, prec);
      std::vector<BigInt> ints(k + 1);
      bool ok = true;
      // Cheap screen on the trace and constant term first.
      for (size_t j : {k - 1, size_t{0}, k}) {
        Verdict v = nearest_integer(coeffs[j].re() * cb, ints[j]);
        if (v == Verdict::TooWide) {
          out.too_wide = true;
          return true;
        }
        if (v == Verdict::NoInteger) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (size_t j = 1; j + 1 < k && ok; ++j) {
        Verdict v = nearest_integer(coeffs[j].re() * cb, ints[j]);
        if (v == Verdict::TooWide) {
          out.too_wide = true;
          return true;
        }
        ok = v == Verdict::Integer;
      }
      if (!ok) continue;
      IntPoly f = IntPoly(ints).primitive_part();
      if (f.degree() != static_cast<int>(k) || !divides(f, s_)) continue;
      auto cof = exact_div(s_, f);
      if (!cof) continue;
      if (cof->degree() > 0) {
        ComplexBall at = cof->eval(iso_.roots[static_cast<size_t>(target_)].enclosure());
        if (at.contains_zero()) {
          out.too_wide = true;
          return true;
        }
      }
      out.factor = f.normalized();
      return true;
    }
    return false;
  }

  const IntPoly& s_;
  const RootSet& iso_;
  int target_;
  std::vector<BigInt> divisors_;
  std::vector<std::vector<int>> units_;
  size_t target_unit_ = 0;
  long examined_ = 0;
};

}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, RootSet roots, int index)
    : minpoly_(std::move(minpoly)), roots_(std::move(roots)), index_(index) {}

AlgebraicNumber AlgebraicNumber::from_integer(const BigInt& v) { return from_rational(BigRat(v)); }

AlgebraicNumber AlgebraicNumber::from_rational(const BigRat& v) {
  BigRat q = v;
  q.canonicalize();
  IntPoly f(std::vector<BigInt>{-q.get_num(), q.get_den()});
  RootSet rs = isolate_roots(f, kDefaultPrecision);
  return AlgebraicNumber(f, std::move(rs), 0);
}

AlgebraicNumber AlgebraicNumber::from_root(const IntPoly& f, const ComplexBall& root, Bits precision) {
  IsolatedRoot old;
  old.center = root.mid_point();
  Mpfr r(kRadiusBits);
  mpfr_max(r.get(), root.re().rad().get(), root.im().rad().get(), MPFR_RNDU);
  mpfr_mul_2ui(r.get(), r.get(), 1, MPFR_RNDU);
  old.radius = r;
  auto target = [f, old](Bits prec) {
    RootSet rs = isolate_roots(f, prec);
    auto idx = track_root(rs, old);
    if (!idx) return old.enclosure();
    return rs.roots[static_cast<size_t>(*idx)].enclosure();
  };
  return select_factor(f, target, precision);
}

AlgebraicNumber AlgebraicNumber::refined(Bits prec) const {
  if (prec <= precision()) return *this;
  for (Bits p = prec; p <= precision_ceiling(); p *= 2) {
    RootSet rs = isolate_roots(minpoly_, p);
    auto idx = track_root(rs, root());
    if (idx) return AlgebraicNumber(minpoly_, std::move(rs), *idx);
  }
  throw PrecisionExceeded("could not track an algebraic number to higher precision");
}

AlgebraicNumber AlgebraicNumber::conj() const { return AlgebraicNumber(minpoly_, roots_, root().conj_index); }

AlgebraicNumber AlgebraicNumber::negate() const {
  IntPoly m = negate_variable(minpoly_).normalized();
  IsolatedRoot old = root();
  old.center = -old.center;
  for (Bits p = precision(); p <= precision_ceiling(); p *= 2) {
    RootSet rs = isolate_roots(m, p);
    auto idx = track_root(rs, old);
    if (idx) return AlgebraicNumber(m, std::move(rs), *idx);
  }
  throw PrecisionExceeded("could not negate an algebraic number");
}

bool equals(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!(a.minpoly() == b.minpoly())) return false;
  for (Bits p = std::max(a.precision(), b.precision()); p <= precision_ceiling(); p *= 2) {
    RootSet rs = isolate_roots(a.minpoly(), p);
    auto ia = track_root(rs, a.root());
    auto ib = track_root(rs, b.root());
    if (ia && ib) return *ia == *ib;
  }
  throw PrecisionExceeded("could not compare algebraic numbers");
}

AlgebraicNumber select_factor(const IntPoly& candidate, const std::function<ComplexBall(Bits)>& target,
                              Bits precision) {
  IntPoly s = squarefree_part(candidate).normalized();
  if (s.degree() < 1) throw std::invalid_argument("factor selection needs a non-constant polynomial");
  const auto divisors = positive_divisors(s.lead());
  for (Bits prec = std::max<Bits>(precision, 64); prec <= precision_ceiling(); prec *= 2) {
    RootSet iso = isolate_roots(s, prec);
    auto idx = locate(iso, target(iso.precision));
    if (!idx) continue;
    if (s.degree() == 1) return AlgebraicNumber(s, iso, *idx);
    FactorSearch search(s, iso, *idx, divisors);
    SearchOutcome out = search.run();
    if (!out.factor) continue;
    RootSet fr = isolate_roots(*out.factor, iso.precision);
    auto fi = track_root(fr, iso.roots[static_cast<size_t>(*idx)]);
    if (!fi) continue;
    return AlgebraicNumber(*out.factor, std::move(fr), *fi);
  }
  throw PrecisionExceeded("factor selection undecided below the precision ceiling");
}

std::vector<IntPoly> irreducible_factors(const IntPoly& f, Bits precision) {
  std::vector<IntPoly> out;
  IntPoly rest = squarefree_part(f).normalized();
  while (rest.degree() >= 1) {
    RootSet rs = isolate_roots(rest, precision);
    AlgebraicNumber a = AlgebraicNumber::from_root(rest, rs.roots[0].enclosure(), rs.precision);
    out.push_back(a.minpoly());
    auto q = exact_div(rest, a.minpoly());
    if (!q) throw std::logic_error("selected factor does not divide");
    rest = q->normalized();
  }
  std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_string() < b.to_string();
  });
  return out;
}

AlgebraicNumber ratio_min_poly(const AlgebraicNumber& eta, const AlgebraicNumber& theta) {
  if (theta.minpoly().coeff(0) == 0) throw std::invalid_argument("ratio by zero");
  IntPoly cand = ratio_poly(eta.minpoly(), theta.minpoly());
  auto target = [&](Bits prec) { return eta.refined(prec).value() / theta.refined(prec).value(); };
  return select_factor(cand, target, std::max(eta.precision(), theta.precision()));
}

AlgebraicNumber product(const AlgebraicNumber& eta, const AlgebraicNumber& theta) {
  IntPoly cand = product_poly(eta.minpoly(), theta.minpoly());
  auto target = [&](Bits prec) { return eta.refined(prec).value() * theta.refined(prec).value(); };
  return select_factor(cand, target, std::max(eta.precision(), theta.precision()));
}

AlgebraicNumber power(const AlgebraicNumber& eta, long e) {
  if (e < 1) throw std::invalid_argument("power exponent must be positive");
  if (e == 1) return eta;
  IntPoly cand = power_poly(eta.minpoly(), e);
  auto target = [&](Bits prec) { return pow(eta.refined(prec).value(), e); };
  return select_factor(cand, target, eta.precision());
}

RealBall weil_height(const AlgebraicNumber& eta, double tolerance) {
  const IntPoly& m = eta.minpoly();
  for (Bits p = std::max<Bits>(eta.precision(), 64); p <= precision_ceiling(); p *= 2) {
    RootSet rs = isolate_roots(m, p);
    RealBall sum = log(RealBall(BigInt(abs(m.lead())), rs.precision));
    RealBall one(1L, rs.precision);
    for (const auto& r : rs.roots) {
      RealBall mod = r.modulus();
      if (certainly_gt(mod, one)) {
        sum += log(mod);
      } else if (certainly_lt(mod, one)) {
        continue;
      } else {
        Mpfr up = mod.upper();
        Mpfr l(rs.precision);
        if (mpfr_cmp_ui(up.get(), 1) > 0) mpfr_log(l.get(), up.get(), MPFR_RNDU);
        sum += RealBall::from_interval(Mpfr(rs.precision), l, rs.precision);
      }
    }
    RealBall h = sum / static_cast<long>(m.degree());
    double width = 2 * h.rad().to_double(MPFR_RNDU);
    if (width <= tolerance) return h;
  }
  throw PrecisionExceeded("height not resolved to the requested tolerance");
}

namespace {

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

RootOfUnity is_root_of_unity(const AlgebraicNumber& eta) {
  const IntPoly& m = eta.minpoly();
  if (m.lead() != 1) return {};
  IntPoly rev = reverse(m);
  if (!(rev == m || rev == -m)) return {};
  const long d = m.degree();
  for (long n = 1; n <= 2 * d * d + 2; ++n) {
    if (euler_phi(n) != d) continue;
    IntPoly xn = IntPoly::monomial(1, static_cast<int>(n)) - IntPoly{1};
    if (divides(m, xn)) return {true, n};
  }
  return {};
}

// ---------------------------------------------------------------- HeightExpr

struct HeightExpr::Node {
  Op op = Op::Leaf;
  RealBall value;
  std::string label;
  BigRat exponent;
  std::shared_ptr<const Node> a, b;
};

HeightExpr HeightExpr::leaf(const RealBall& height, std::string label) {
  auto n = std::make_shared<Node>();
  n->value = height;
  n->label = std::move(label);
  HeightExpr e;
  e.node_ = n;
  return e;
}

HeightExpr HeightExpr::add(const HeightExpr& a, const HeightExpr& b) {
  auto n = std::make_shared<Node>();
  n->op = Op::Add;
  n->a = a.node_;
  n->b = b.node_;
  HeightExpr e;
  e.node_ = n;
  return e;
}

HeightExpr HeightExpr::sub(const HeightExpr& a, const HeightExpr& b) {
  HeightExpr e = add(a, b);
  auto n = std::make_shared<Node>(*e.node_);
  n->op = Op::Sub;
  e.node_ = n;
  return e;
}

HeightExpr HeightExpr::mul(const HeightExpr& a, const HeightExpr& b) {
  HeightExpr e = add(a, b);
  auto n = std::make_shared<Node>(*e.node_);
  n->op = Op::Mul;
  e.node_ = n;
  return e;
}

HeightExpr HeightExpr::div(const HeightExpr& a, const HeightExpr& b) {
  HeightExpr e = add(a, b);
  auto n = std::make_shared<Node>(*e.node_);
  n->op = Op::Div;
  e.node_ = n;
  return e;
}

HeightExpr HeightExpr::pow(const HeightExpr& a, const BigRat& u) {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->a = a.node_;
  n->exponent = u;
  HeightExpr e;
  e.node_ = n;
  return e;
}

namespace {

RealBall bound_of(const HeightExpr::Op op, const RealBall& value, const BigRat& exponent,
                  const RealBall* a, const RealBall* b, Bits prec) {
  switch (op) {
    case HeightExpr::Op::Leaf:
      return upper_ball(value);
    case HeightExpr::Op::Add:
    case HeightExpr::Op::Sub:
      return upper_ball(*a + *b + RealBall::log2(prec));
    case HeightExpr::Op::Mul:
    case HeightExpr::Op::Div:
      return upper_ball(*a + *b);
    case HeightExpr::Op::Pow:
      return upper_ball(*a * RealBall(BigRat(abs(exponent)), prec));
  }
  return value;
}

}  // namespace

RealBall HeightExpr::bound(Bits prec) const {
  const Node& n = *node_;
  if (n.op == Op::Leaf) return bound_of(n.op, n.value, n.exponent, nullptr, nullptr, prec);
  HeightExpr ea, eb;
  ea.node_ = n.a;
  RealBall ra = ea.bound(prec);
  if (n.op == Op::Pow) return bound_of(n.op, n.value, n.exponent, &ra, nullptr, prec);
  eb.node_ = n.b;
  RealBall rb = eb.bound(prec);
  return bound_of(n.op, n.value, n.exponent, &ra, &rb, prec);
}

std::string HeightExpr::describe() const {
  const Node& n = *node_;
  HeightExpr ea, eb;
  ea.node_ = n.a;
  eb.node_ = n.b;
  switch (n.op) {
    case Op::Leaf:
      return n.label.empty() ? "h" : "h(" + n.label + ")";
    case Op::Add:
      return "(" + ea.describe() + " + " + eb.describe() + ")";
    case Op::Sub:
      return "(" + ea.describe() + " - " + eb.describe() + ")";
    case Op::Mul:
      return "(" + ea.describe() + " * " + eb.describe() + ")";
    case Op::Div:
      return "(" + ea.describe() + " / " + eb.describe() + ")";
    case Op::Pow:
      return "(" + ea.describe() + ")^(" + n.exponent.get_str() + ")";
  }
  return "";
}

// ---------------------------------------------------------------- dependence

namespace {

// Convergents of x with denominators up to `max_den`.
std::vector<std::pair<BigInt, BigInt>> convergents(BigRat x, long max_den) {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt h_prev = 1, h = 0, k_prev = 0, k = 1;
  // Standard recurrence h_n = a_n h_{n-1} + h_{n-2}, k_n likewise.
  h = 1;
  h_prev = 0;
  k = 0;
  k_prev = 1;
  for (int step = 0; step < 200; ++step) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    BigInt hn = a * h + h_prev, kn = a * k + k_prev;
    if (kn > max_den) break;
    out.emplace_back(hn, kn);
    h_prev = h;
    h = hn;
    k_prev = k;
    k = kn;
    BigRat frac = x - BigRat(a);
    if (frac == 0) break;
    x = 1 / frac;
  }
  return out;
}

}  // namespace

DependenceResult multiplicative_dependence(const AlgebraicNumber& alpha, const AlgebraicNumber& gamma,
                                           long max_denominator, Bits precision) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be positive");
  if (!alpha.is_real() || !gamma.is_real()) throw std::invalid_argument("dependence needs real inputs");
  DependenceResult result;
  const Bits ceiling = precision_ceiling();
  Bits prec = std::max(precision, std::max(alpha.precision(), gamma.precision()));
  RealBall la, lg, r;
  for (;; prec *= 2) {
    if (prec > ceiling) throw PrecisionExceeded("log ratio not resolved below the precision ceiling");
    RealBall a = alpha.refined(prec).value().re(), g = gamma.refined(prec).value().re();
    RealBall one(1L, prec);
    if (!certainly_gt(a, one) || !certainly_gt(g, one)) {
      if (certainly_le(a, one) || certainly_le(g, one)) throw std::invalid_argument("dependence needs inputs > 1");
      continue;
    }
    la = log(a);
    lg = log(g);
    r = lg / (la * 2L);
    // Legendre: any p/q with q <= max_denominator equal to r is a convergent
    // of every x with |x - r| < 1 / (2 q^2).
    RealBall tol = RealBall(BigRat(1, 4 * max_denominator * max_denominator), prec);
    RealBall inv = (la * 2L) / lg;
    if (certainly_lt(RealBall::from_mid_rad(r.rad(), Mpfr()), tol) &&
        certainly_lt(RealBall::from_mid_rad(inv.rad(), Mpfr()), tol)) {
      break;
    }
  }
  BigRat mid;
  mpfr_get_q(mid.get_mpq_t(), r.mid().get());
  std::vector<std::pair<long, long>> cands;
  for (const auto& [p, q] : convergents(mid, max_denominator)) {
    if (p > 0 && p.fits_slong_p()) cands.emplace_back(p.get_si(), q.get_si());
  }
  for (const auto& [q, p] : convergents(1 / mid, max_denominator)) {
    if (q > 0 && q.fits_slong_p()) cands.emplace_back(p.get_si(), q.get_si());
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  for (const auto& [p, q] : cands) {
    std::ostringstream label;
    label << "p=" << p << " q=" << q;
    Bits cp = prec;
    RealBall form = la * (2 * p) - lg * q;
    if (!form.contains_zero()) {
      result.transcript.push_back(label.str() + ": 2p*log(alpha) - q*log(gamma) certified nonzero");
      continue;
    }
    AlgebraicNumber lhs = power(alpha, 2 * p);
    AlgebraicNumber rhs = power(gamma, q);
    if (equals(lhs, rhs)) {
      DependenceWitness w;
      w.p = p;
      w.q = q;
      w.delta = BigRat(q, p);
      w.delta.canonicalize();
      result.transcript.push_back(label.str() + ": exact identity alpha^(2p) = gamma^q verified (" +
                                  lhs.minpoly().to_string() + ")");
      w.transcript = result.transcript;
      result.witness = w;
      return result;
    }
    while (form.contains_zero()) {
      cp *= 2;
      if (cp > ceiling) throw PrecisionExceeded("dependence candidate unresolved");
      RealBall a = alpha.refined(cp).value().re(), g = gamma.refined(cp).value().re();
      form = log(a) * (2 * p) - log(g) * q;
    }
    result.transcript.push_back(label.str() + ": powers differ exactly; linear form certified nonzero");
  }
  result.transcript.push_back("no dependence alpha^(2p) = gamma^q with p or q <= " +
                              std::to_string(max_denominator));
  return result;
}

}  // namespace recur
