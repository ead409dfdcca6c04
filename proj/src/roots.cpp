#include "recur/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "recur/errors.hpp"

namespace recur {

namespace {

using Cld = std::complex<long double>;

ComplexBall point(long double re, long double im, Bits prec) {
  Mpfr r(prec), i(prec);
  mpfr_set_ld(r.get(), re, MPFR_RNDN);
  mpfr_set_ld(i.get(), im, MPFR_RNDN);
  return {RealBall::from_mid_rad(std::move(r), Mpfr()), RealBall::from_mid_rad(std::move(i), Mpfr())};
}

ComplexBall at_precision(const ComplexBall& z, Bits prec) {
  return ComplexBall(z.re().with_bits(prec), z.im().with_bits(prec)).mid_point();
}

Cld eval_ld(const std::vector<long double>& c, Cld z) {
  Cld r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

// Initial approximations by Aberth iteration in long double.
std::vector<Cld> aberth_ld(const IntPoly& g) {
  const int n = g.degree();
  std::vector<long double> c, dc;
  for (const auto& v : g.coeffs()) c.push_back(static_cast<long double>(v.get_d()));
  for (int i = 1; i <= n; ++i) dc.push_back(c[static_cast<size_t>(i)] * i);
  // Fujiwara bound on the root moduli.
  long double bound = 0;
  for (int i = 1; i <= n; ++i) {
    long double q = std::fabs(c[static_cast<size_t>(n - i)] / c[static_cast<size_t>(n)]);
    bound = std::max(bound, std::pow(q, 1.0L / i));
  }
  bound = std::max<long double>(2 * bound, 1e-6L);
  std::vector<Cld> z(static_cast<size_t>(n));
  const long double two_pi = 6.283185307179586476925286766559L;
  for (int k = 0; k < n; ++k) {
    long double ang = two_pi * k / n + 0.4L;
    z[static_cast<size_t>(k)] = std::polar(bound * 0.9L, ang);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      Cld zi = z[static_cast<size_t>(i)];
      Cld num = eval_ld(c, zi), den = eval_ld(dc, zi);
      if (std::abs(num) == 0) continue;
      if (std::abs(den) == 0) den = 1e-30L;
      Cld w = num / den;
      Cld s = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += 1.0L / (zi - z[static_cast<size_t>(j)]);
      }
      Cld corr = w / (1.0L - w * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
      z[static_cast<size_t>(i)] -= corr;
      worst = std::max(worst, std::abs(corr) / std::max<long double>(1, std::abs(zi)));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

// Aberth refinement at `prec` bits on exact points.
void aberth_mp(const IntPoly& g, std::vector<ComplexBall>& z, Bits prec) {
  const int n = g.degree();
  const IntPoly dg = g.derivative();
  for (auto& zi : z) zi = at_precision(zi, prec);
  const double target = std::ldexp(1.0, -static_cast<int>(std::min<Bits>(prec - 8, 1000)));
  for (int iter = 0; iter < 200; ++iter) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      ComplexBall& zi = z[static_cast<size_t>(i)];
      ComplexBall num = g.eval(zi).mid_point();
      if (num.re().mid().is_zero() && num.im().mid().is_zero()) continue;
      ComplexBall den = dg.eval(zi).mid_point();
      ComplexBall s(RealBall(0L, prec));
      ComplexBall one(RealBall(1L, prec));
      bool ok = true;
      try {
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          s = (s + one / (zi - z[static_cast<size_t>(j)]).mid_point()).mid_point();
        }
        ComplexBall w = (num / den).mid_point();
        ComplexBall corr = (w / (one - w * s).mid_point()).mid_point();
        zi = (zi - corr).mid_point();
        double rel = abs(corr).mid_double() / std::max(1.0, abs(zi).mid_double());
        if (std::isfinite(rel)) worst = std::max(worst, rel);
      } catch (const std::domain_error&) {
        ok = false;
      }
      if (!ok) {
        // Nudge off a critical point or a collision.
        RealBall eps = RealBall::from_double(std::ldexp(1.0, -40), prec);
        zi = (zi + ComplexBall(eps, eps)).mid_point();
        worst = 1;
      }
    }
    if (worst < target) break;
  }
}

// Makes the approximation set exactly conjugate-symmetric. Returns false when
// the pairing is inconsistent.
bool symmetrize(std::vector<ComplexBall>& z, Bits prec) {
  const size_t n = z.size();
  const double tol = std::ldexp(1.0, -static_cast<int>(std::min<Bits>(prec / 2, 900)));
  std::vector<int> upper, lower, real;
  for (size_t i = 0; i < n; ++i) {
    double im = z[i].im().mid_double();
    double scale = std::max(1.0, abs(z[i]).mid_double());
    if (std::fabs(im) <= tol * scale) {
      real.push_back(static_cast<int>(i));
    } else if (im > 0) {
      upper.push_back(static_cast<int>(i));
    } else {
      lower.push_back(static_cast<int>(i));
    }
  }
  if (upper.size() != lower.size()) return false;
  std::vector<ComplexBall> out;
  out.reserve(n);
  for (int i : real) out.emplace_back(ComplexBall(RealBall::from_mid_rad(z[static_cast<size_t>(i)].re().mid(), Mpfr())));
  std::vector<bool> used(lower.size(), false);
  for (int u : upper) {
    const ComplexBall& zu = z[static_cast<size_t>(u)];
    int best = -1;
    double best_d = 0;
    for (size_t k = 0; k < lower.size(); ++k) {
      if (used[k]) continue;
      double d = abs(zu.conj() - z[static_cast<size_t>(lower[k])]).mid_double();
      if (best < 0 || d < best_d) {
        best = static_cast<int>(k);
        best_d = d;
      }
    }
    used[static_cast<size_t>(best)] = true;
    out.push_back(zu.mid_point());
    out.push_back(zu.mid_point().conj());
  }
  z = std::move(out);
  return true;
}

struct Disk {
  ComplexBall center;
  Mpfr radius;
};

// Weierstrass inclusion disks of radius n|W_i|. Returns nullopt unless the
// disks are pairwise disjoint.
std::optional<std::vector<Disk>> certify(const IntPoly& g, const std::vector<ComplexBall>& z, Bits prec) {
  const int n = g.degree();
  std::vector<Disk> disks;
  RealBall lc(g.lead(), prec);
  for (int i = 0; i < n; ++i) {
    const ComplexBall& zi = z[static_cast<size_t>(i)];
    ComplexBall den(lc);
    for (int j = 0; j < n; ++j) {
      if (j != i) den = den * (zi - z[static_cast<size_t>(j)]);
    }
    if (den.contains_zero()) return std::nullopt;
    ComplexBall w = g.eval(zi) / den;
    Mpfr r(kRadiusBits);
    mpfr_mul_si(r.get(), abs(w).upper().get(), n, MPFR_RNDU);
    disks.push_back({zi, std::move(r)});
  }
  for (size_t i = 0; i < disks.size(); ++i) {
    for (size_t j = i + 1; j < disks.size(); ++j) {
      RealBall d = abs(disks[i].center - disks[j].center);
      Mpfr s(kRadiusBits);
      mpfr_add(s.get(), disks[i].radius.get(), disks[j].radius.get(), MPFR_RNDU);
      if (mpfr_cmp(d.lower().get(), s.get()) <= 0) return std::nullopt;
    }
  }
  return disks;
}

bool disks_disjoint(const IsolatedRoot& a, const IsolatedRoot& b) {
  RealBall d = abs(a.center - b.center);
  Mpfr s(kRadiusBits);
  mpfr_add(s.get(), a.radius.get(), b.radius.get(), MPFR_RNDU);
  return mpfr_cmp(d.lower().get(), s.get()) > 0;
}

bool root_order(const IsolatedRoot& a, const IsolatedRoot& b) {
  int c = cmp(a.center.re().mid(), b.center.re().mid());
  if (c != 0) return c > 0;
  return cmp(a.center.im().mid(), b.center.im().mid()) > 0;
}

}  // namespace

ComplexBall IsolatedRoot::enclosure() const {
  return {RealBall::from_mid_rad(center.re().mid(), radius), RealBall::from_mid_rad(center.im().mid(), radius)};
}

RealBall IsolatedRoot::modulus() const {
  RealBall m = abs(center);
  Mpfr r(kRadiusBits);
  mpfr_add(r.get(), m.rad().get(), radius.get(), MPFR_RNDU);
  return RealBall::from_mid_rad(m.mid(), std::move(r));
}

RootSet isolate_roots(const IntPoly& f, Bits precision) {
  if (f.degree() < 1) throw std::invalid_argument("root isolation needs a non-constant polynomial");
  const auto factors = squarefree_factorization(f);
  const Bits ceiling = precision_ceiling();
  std::vector<std::vector<ComplexBall>> approx(factors.size());
  for (size_t k = 0; k < factors.size(); ++k) {
    for (const Cld& c : aberth_ld(factors[k].first)) {
      approx[k].push_back(point(c.real(), c.imag(), 64));
    }
  }
  for (Bits prec = std::max<Bits>(precision, 64); prec <= ceiling; prec *= 2) {
    RootSet set;
    set.precision = prec;
    bool ok = true;
    for (size_t k = 0; k < factors.size() && ok; ++k) {
      const IntPoly& g = factors[k].first;
      aberth_mp(g, approx[k], prec);
      std::vector<ComplexBall> z = approx[k];
      if (!symmetrize(z, prec)) {
        ok = false;
        break;
      }
      auto disks = certify(g, z, prec);
      if (!disks) {
        ok = false;
        break;
      }
      for (auto& d : *disks) {
        IsolatedRoot r;
        r.real = d.center.im().mid().is_zero();
        r.center = std::move(d.center);
        r.radius = std::move(d.radius);
        r.multiplicity = factors[k].second;
        set.roots.push_back(std::move(r));
      }
    }
    if (!ok) continue;
    for (size_t i = 0; i < set.roots.size() && ok; ++i) {
      for (size_t j = i + 1; j < set.roots.size() && ok; ++j) {
        if (set.roots[i].multiplicity != set.roots[j].multiplicity &&
            !disks_disjoint(set.roots[i], set.roots[j])) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    std::sort(set.roots.begin(), set.roots.end(), root_order);
    for (size_t i = 0; i < set.roots.size(); ++i) {
      IsolatedRoot& r = set.roots[i];
      if (r.real) {
        r.conj_index = static_cast<int>(i);
        continue;
      }
      for (size_t j = 0; j < set.roots.size(); ++j) {
        const IsolatedRoot& s = set.roots[j];
        if (j != i && cmp(s.center.re().mid(), r.center.re().mid()) == 0 &&
            mpfr_cmp(s.center.im().mid().get(), r.center.im().mid().get()) != 0 &&
            mpfr_cmpabs(s.center.im().mid().get(), r.center.im().mid().get()) == 0) {
          r.conj_index = static_cast<int>(j);
        }
      }
      if (r.conj_index < 0) ok = false;
    }
    if (ok) return set;
  }
  throw PrecisionExceeded("root isolation did not certify below the precision ceiling for " + f.to_string());
}

std::optional<int> locate(const RootSet& set, const ComplexBall& z) {
  std::optional<int> found;
  for (size_t i = 0; i < set.roots.size(); ++i) {
    const IsolatedRoot& r = set.roots[i];
    RealBall d = abs(z - r.center);
    if (mpfr_cmp(d.lower().get(), r.radius.get()) <= 0) {
      if (found) return std::nullopt;
      found = static_cast<int>(i);
    }
  }
  return found;
}

std::optional<int> track_root(const RootSet& fresh, const IsolatedRoot& old) {
  auto hit = locate(fresh, old.enclosure());
  if (hit) return hit;
  std::optional<int> inside;
  for (size_t i = 0; i < fresh.roots.size(); ++i) {
    const IsolatedRoot& r = fresh.roots[i];
    RealBall d = abs(r.center - old.center);
    Mpfr reach(kRadiusBits);
    mpfr_add(reach.get(), d.upper().get(), r.radius.get(), MPFR_RNDU);
    if (mpfr_cmp(reach.get(), old.radius.get()) <= 0) {
      if (inside) return std::nullopt;
      inside = static_cast<int>(i);
    }
  }
  return inside;
}

std::string to_string(DominanceKind kind) {
  switch (kind) {
    case DominanceKind::RealDominant:
      return "RealDominant";
    case DominanceKind::ComplexPairDominant:
      return "ComplexPairDominant";
    case DominanceKind::Other:
      return "Other";
  }
  return "Other";
}

namespace {

// Roots of the pairwise-product polynomial; |r|^2 = r * conj(r) is one of them.
struct ProductRoots {
  IntPoly poly;
  RootSet roots;
  std::optional<int> index_of_one;
};

ProductRoots product_roots(const IntPoly& f, Bits prec) {
  ProductRoots pr;
  IntPoly g = squarefree_part(f);
  pr.poly = squarefree_part(product_poly(g, g));
  pr.roots = isolate_roots(pr.poly, prec);
  if (pr.poly.eval(BigInt(1)) == 0) {
    pr.index_of_one = locate(pr.roots, ComplexBall(RealBall(1L, prec)));
  }
  return pr;
}

std::optional<DominanceReport> try_profile(const IntPoly& f, Bits prec) {
  DominanceReport rep;
  rep.poly = f;
  rep.roots = isolate_roots(f, prec);
  const auto& roots = rep.roots.roots;
  const size_t n = roots.size();
  std::vector<RealBall> mods;
  for (const auto& r : roots) mods.push_back(r.modulus());

  Mpfr best_lower = mods[0].lower();
  for (const auto& m : mods) {
    Mpfr lo = m.lower();
    if (mpfr_cmp(lo.get(), best_lower.get()) > 0) best_lower = lo;
  }
  std::vector<int> top;
  for (size_t i = 0; i < n; ++i) {
    if (mpfr_cmp(mods[i].upper().get(), best_lower.get()) >= 0) top.push_back(static_cast<int>(i));
  }

  std::optional<ProductRoots> pr;
  std::vector<std::optional<int>> sq_index(n);
  auto square_index = [&](int i) -> std::optional<int> {
    if (!pr) pr = product_roots(f, prec);
    if (!sq_index[static_cast<size_t>(i)]) {
      RealBall v = sqr(mods[static_cast<size_t>(i)]);
      sq_index[static_cast<size_t>(i)] = locate(pr->roots, ComplexBall(v));
    }
    return sq_index[static_cast<size_t>(i)];
  };

  for (size_t a = 0; a < top.size(); ++a) {
    for (size_t b = a + 1; b < top.size(); ++b) {
      int i = top[a], j = top[b];
      if (roots[static_cast<size_t>(i)].conj_index == j) continue;
      auto si = square_index(i), sj = square_index(j);
      if (!si || !sj || *si != *sj) return std::nullopt;
      rep.modulus_ties.emplace_back(i, j);
    }
  }

  const int lead = top[0];
  rep.dominant_modulus = mods[static_cast<size_t>(lead)];
  rep.dominant_multiplicity = roots[static_cast<size_t>(lead)].multiplicity;

  std::vector<int> rest;
  for (size_t i = 0; i < n; ++i) {
    if (std::find(top.begin(), top.end(), static_cast<int>(i)) == top.end()) rest.push_back(static_cast<int>(i));
  }
  rep.second_modulus = RealBall(0L, prec);
  if (!rest.empty()) {
    int best = rest[0];
    RealBall sec = mods[static_cast<size_t>(best)];
    for (int i : rest) {
      if (mpfr_cmp(mods[static_cast<size_t>(i)].upper().get(), mods[static_cast<size_t>(best)].upper().get()) > 0) best = i;
      sec = max(sec, mods[static_cast<size_t>(i)]);
    }
    rep.subdominant = best;
    rep.second_modulus = sec;
  }

  if (top.size() == 1 && roots[static_cast<size_t>(lead)].real) {
    rep.kind = DominanceKind::RealDominant;
    rep.dominant = {lead};
  } else if (top.size() == 2 && !roots[static_cast<size_t>(lead)].real &&
             roots[static_cast<size_t>(lead)].conj_index == top[1]) {
    rep.kind = DominanceKind::ComplexPairDominant;
    int up = roots[static_cast<size_t>(top[0])].center.im().mid().sign() > 0 ? top[0] : top[1];
    int down = up == top[0] ? top[1] : top[0];
    rep.dominant = {up, down};
  } else {
    rep.kind = DominanceKind::Other;
    rep.dominant = top;
    rep.reason = "maximal modulus shared by " + std::to_string(top.size()) +
                 " distinct roots that are neither one real root nor one conjugate pair";
    return rep;
  }

  RealBall one(1L, prec);
  if (certainly_gt(rep.dominant_modulus, one)) return rep;
  if (certainly_lt(rep.dominant_modulus, one)) {
    rep.kind = DominanceKind::Other;
    rep.reason = "dominant modulus below 1";
    return rep;
  }
  auto si = square_index(lead);
  if (!si) return std::nullopt;
  if (pr->index_of_one && *pr->index_of_one == *si) {
    rep.kind = DominanceKind::Other;
    rep.reason = "dominant modulus equals 1";
    return rep;
  }
  return std::nullopt;
}

}  // namespace

DominanceReport dominance_profile(const IntPoly& f, Bits precision) {
  const Bits ceiling = precision_ceiling();
  for (Bits prec = std::max<Bits>(precision, 64); prec <= ceiling; prec *= 2) {
    auto rep = try_profile(f, prec);
    if (rep) return *rep;
  }
  throw PrecisionExceeded("dominance of " + f.to_string() + " undecided below the precision ceiling");
}

RealBall decay_exponent(const DominanceReport& report) {
  if (report.kind == DominanceKind::Other) {
    throw std::invalid_argument("decay exponent needs a dominant root or pair");
  }
  const Bits prec = report.roots.precision;
  if (!report.subdominant || !report.second_modulus.is_positive()) return RealBall(0L, prec);
  RealBall ratio = log(report.second_modulus) / log(report.dominant_modulus);
  RealBall d = (ratio + 1L) / 2L;
  if (d.upper().sign() <= 0) return RealBall(0L, prec);
  if (d.lower().sign() < 0) return RealBall::from_interval(Mpfr(prec), d.upper(), prec);
  return d;
}

RealBall max_root_size(const IntPoly& p, Bits precision) {
  if (p.is_zero()) throw std::invalid_argument("max root size of the zero polynomial");
  if (p.degree() < 1) return RealBall(0L, precision);
  RootSet set = isolate_roots(p, precision);
  RealBall m = set.roots[0].modulus();
  for (const auto& r : set.roots) m = max(m, r.modulus());
  return m;
}

}  // namespace recur
