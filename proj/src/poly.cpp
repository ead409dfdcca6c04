#include "recur/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace recur {

namespace {

using RatMatrix = std::vector<std::vector<BigRat>>;

BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign > 0 ? BigInt(m[n - 1][n - 1]) : BigInt(-m[n - 1][n - 1]);
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  const size_t n = a.size();
  RatMatrix c(n, std::vector<BigRat>(n, BigRat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Characteristic polynomial det(X I - A), ascending, via Faddeev-LeVerrier.
std::vector<BigRat> charpoly(const RatMatrix& a) {
  const size_t n = a.size();
  std::vector<BigRat> c(n + 1, BigRat(0));
  c[n] = 1;
  RatMatrix m(n, std::vector<BigRat>(n, BigRat(0)));
  for (size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    RatMatrix am = mat_mul(a, m);
    for (size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    RatMatrix t = mat_mul(a, m);
    BigRat tr = 0;
    for (size_t i = 0; i < n; ++i) tr += t[i][i];
    c[n - k] = -tr / BigRat(static_cast<long>(k));
  }
  return c;
}

IntPoly from_rationals(const std::vector<BigRat>& c) {
  BigInt den = 1;
  for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(c.size());
  for (const auto& v : c) {
    BigRat s = v * BigRat(den);
    out.push_back(s.get_num());
  }
  return IntPoly(std::move(out));
}

IntPoly must_div(const IntPoly& f, const IntPoly& g) {
  auto q = exact_div(f, g);
  if (!q) throw std::logic_error("expected exact polynomial division");
  return *q;
}

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, int n) {
  std::vector<BigInt> v(static_cast<size_t>(n) + 1, BigInt(0));
  v[static_cast<size_t>(n)] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<size_t>(i)];
}

const BigInt& IntPoly::lead() const {
  if (c_.empty()) throw std::invalid_argument("leading coefficient of the zero polynomial");
  return c_.back();
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const BigInt& s) {
  std::vector<BigInt> c = a.c_;
  for (auto& v : c) v *= s;
  return IntPoly(std::move(c));
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

BigRat IntPoly::eval(const BigRat& x) const {
  BigRat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + BigRat(*it);
  return r;
}

RealBall IntPoly::eval(const RealBall& x) const {
  const Bits p = x.bits();
  if (c_.empty()) return RealBall(0L, p);
  RealBall r(c_.back(), p);
  for (int i = degree() - 1; i >= 0; --i) r = r * x + RealBall(c_[static_cast<size_t>(i)], p);
  return r;
}

ComplexBall IntPoly::eval(const ComplexBall& x) const {
  const Bits p = x.bits();
  if (c_.empty()) return ComplexBall(RealBall(0L, p));
  ComplexBall r(RealBall(c_.back(), p));
  for (int i = degree() - 1; i >= 0; --i) {
    r = r * x + ComplexBall(RealBall(c_[static_cast<size_t>(i)], p));
  }
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (c_.empty()) return {};
  BigInt g = content();
  std::vector<BigInt> c = c_;
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(c));
}

IntPoly IntPoly::normalized() const {
  IntPoly p = primitive_part();
  if (!p.is_zero() && p.lead() < 0) p = -p;
  return p;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& v = c_[static_cast<size_t>(i)];
    if (v == 0) continue;
    BigInt mag = abs(v);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::optional<IntPoly> exact_div(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (f.is_zero()) return IntPoly{};
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<BigInt> r = f.coeffs();
  const int dg = g.degree();
  std::vector<BigInt> q(static_cast<size_t>(f.degree() - dg + 1), BigInt(0));
  const BigInt& lg = g.lead();
  for (int i = f.degree(); i >= dg; --i) {
    BigInt& top = r[static_cast<size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lg.get_mpz_t())) return std::nullopt;
    BigInt t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
    q[static_cast<size_t>(i - dg)] = t;
    for (int j = 0; j <= dg; ++j) r[static_cast<size_t>(i - dg + j)] -= t * g.coeffs()[static_cast<size_t>(j)];
  }
  for (const auto& v : r) {
    if (v != 0) return std::nullopt;
  }
  return IntPoly(std::move(q));
}

IntPoly pseudo_rem(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("pseudo-remainder by the zero polynomial");
  std::vector<BigInt> r = f.coeffs();
  const int dg = g.degree();
  const BigInt& lg = g.lead();
  int dr = f.degree();
  int steps = std::max(0, f.degree() - dg + 1);
  while (dr >= dg && dr >= 0) {
    BigInt t = r[static_cast<size_t>(dr)];
    for (auto& v : r) v *= lg;
    for (int j = 0; j <= dg; ++j) r[static_cast<size_t>(dr - dg + j)] -= t * g.coeffs()[static_cast<size_t>(j)];
    --steps;
    r.pop_back();
    --dr;
    while (dr >= 0 && r[static_cast<size_t>(dr)] == 0) {
      r.pop_back();
      --dr;
    }
  }
  // Bring the multiplier up to lc(g)^(deg f - deg g + 1).
  for (; steps > 0; --steps) {
    for (auto& v : r) v *= lg;
  }
  return IntPoly(std::move(r));
}

bool divides(const IntPoly& g, const IntPoly& f) { return pseudo_rem(f, g).is_zero(); }

IntPoly gcd(const IntPoly& f, const IntPoly& g) {
  IntPoly a = f.primitive_part();
  IntPoly b = g.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.primitive_part();
  }
  return a.normalized();
}

IntPoly squarefree_part(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("square-free part of the zero polynomial");
  if (f.degree() == 0) return IntPoly::constant(f.lead() > 0 ? 1 : -1);
  IntPoly p = f.primitive_part();
  IntPoly g = gcd(p, p.derivative());
  IntPoly q = must_div(p, g).primitive_part();
  if ((q.lead() > 0) != (f.lead() > 0)) q = -q;
  return q;
}

std::vector<std::pair<IntPoly, int>> squarefree_factorization(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("square-free factorization of the zero polynomial");
  std::vector<std::pair<IntPoly, int>> out;
  if (f.degree() == 0) return out;
  IntPoly p = f.normalized();
  IntPoly dp = p.derivative();
  IntPoly a = gcd(p, dp);
  IntPoly b = must_div(p, a);
  IntPoly c = must_div(dp, a);
  IntPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    IntPoly ai = gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai.normalized(), i);
    IntPoly nb = must_div(b, ai);
    IntPoly nc = d.is_zero() ? IntPoly{} : must_div(d, ai);
    b = nb;
    d = nc - b.derivative();
    ++i;
  }
  return out;
}

BigInt resultant_formal(const IntPoly& f, int df, const IntPoly& g, int dg) {
  if (df < f.degree() || dg < g.degree()) throw std::invalid_argument("formal degree below actual degree");
  const int n = df + dg;
  std::vector<std::vector<BigInt>> m(static_cast<size_t>(n), std::vector<BigInt>(static_cast<size_t>(n), BigInt(0)));
  for (int r = 0; r < dg; ++r) {
    for (int j = 0; j <= df; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = f.coeff(df - j);
  }
  for (int r = 0; r < df; ++r) {
    for (int j = 0; j <= dg; ++j) m[static_cast<size_t>(dg + r)][static_cast<size_t>(r + j)] = g.coeff(dg - j);
  }
  return bareiss_det(std::move(m));
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant with the zero polynomial");
  return resultant_formal(f, f.degree(), g, g.degree());
}

IntPoly reverse(const IntPoly& f) {
  if (f.is_zero() || f.coeff(0) == 0) throw std::invalid_argument("reverse requires a nonzero constant term");
  std::vector<BigInt> c = f.coeffs();
  std::reverse(c.begin(), c.end());
  return IntPoly(std::move(c));
}

IntPoly compose(const IntPoly& f, const IntPoly& g) {
  IntPoly r;
  for (int i = f.degree(); i >= 0; --i) r = r * g + IntPoly::constant(f.coeff(i));
  return r;
}

IntPoly negate_variable(const IntPoly& f) {
  std::vector<BigInt> c = f.coeffs();
  for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return IntPoly(std::move(c));
}

IntPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigRat>& ys) {
  const size_t n = xs.size();
  if (ys.size() != n) throw std::invalid_argument("interpolation sizes differ");
  if (n == 0) throw std::invalid_argument("interpolation needs at least one point");
  std::vector<BigRat> dd = ys;
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / BigRat(xs[i] - xs[i - k]);
      if (i == k) break;
    }
  }
  // Expand the Newton form from the innermost term outward.
  std::vector<BigRat> poly(1, dd[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    std::vector<BigRat> next(poly.size() + 1, BigRat(0));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * BigRat(xs[k]);
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  std::vector<BigInt> out;
  out.reserve(poly.size());
  for (auto& v : poly) {
    v.canonicalize();
    if (v.get_den() != 1) throw std::domain_error("interpolant is not integral");
    out.push_back(v.get_num());
  }
  return IntPoly(std::move(out));
}

IntPoly ratio_poly(const IntPoly& f, const IntPoly& g) {
  if (f.degree() < 1 || g.degree() < 1) throw std::invalid_argument("ratio_poly needs non-constant inputs");
  if (g.coeff(0) == 0) throw std::invalid_argument("ratio_poly denominator has root 0");
  const int df = f.degree(), dg = g.degree(), d = df * dg;
  std::vector<BigInt> xs;
  std::vector<BigRat> ys;
  for (int x = 0; x <= d; ++x) {
    std::vector<BigInt> c(static_cast<size_t>(df) + 1);
    BigInt pw = 1;
    for (int i = 0; i <= df; ++i) {
      c[static_cast<size_t>(i)] = f.coeff(i) * pw;
      pw *= x;
    }
    xs.emplace_back(x);
    ys.emplace_back(resultant_formal(IntPoly(std::move(c)), df, g, dg));
  }
  return interpolate(xs, ys).normalized();
}

IntPoly product_poly(const IntPoly& f, const IntPoly& g) {
  if (f.degree() < 1 || g.degree() < 1) throw std::invalid_argument("product_poly needs non-constant inputs");
  const int df = f.degree(), dg = g.degree(), d = df * dg;
  std::vector<BigInt> xs;
  std::vector<BigRat> ys;
  for (int x = 0; x <= d; ++x) {
    std::vector<BigInt> c(static_cast<size_t>(df) + 1);
    BigInt pw = 1;
    for (int i = 0; i <= df; ++i) {
      c[static_cast<size_t>(df - i)] = f.coeff(i) * pw;
      pw *= x;
    }
    xs.emplace_back(x);
    ys.emplace_back(resultant_formal(IntPoly(std::move(c)), df, g, dg));
  }
  return interpolate(xs, ys).normalized();
}

IntPoly power_poly(const IntPoly& f, long e) {
  if (f.degree() < 1) throw std::invalid_argument("power_poly needs a non-constant input");
  if (e < 1) throw std::invalid_argument("power_poly exponent must be positive");
  const size_t n = static_cast<size_t>(f.degree());
  BigRat lc(f.lead());
  RatMatrix comp(n, std::vector<BigRat>(n, BigRat(0)));
  for (size_t i = 1; i < n; ++i) comp[i][i - 1] = 1;
  for (size_t i = 0; i < n; ++i) comp[i][n - 1] = -BigRat(f.coeff(static_cast<int>(i))) / lc;
  RatMatrix result;
  RatMatrix base = comp;
  bool have = false;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) {
      result = have ? mat_mul(result, base) : base;
      have = true;
    }
    if (k > 1) base = mat_mul(base, base);
  }
  return from_rationals(charpoly(result)).normalized();
}

RealBall log_l2_norm(const IntPoly& f, Bits prec) {
  if (f.is_zero()) throw std::invalid_argument("norm of the zero polynomial");
  BigInt s = 0;
  for (const auto& v : f.coeffs()) s += v * v;
  return log(RealBall(s, prec)) / 2;
}

}  // namespace recur
