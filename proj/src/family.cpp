#include "recur/family.hpp"

#include <numeric>

#include "recur/algebraic.hpp"
#include "recur/errors.hpp"

namespace recur {

std::string to_string(FamilyCase c) {
  switch (c) {
    case FamilyCase::CaseI: return "case-i";
    case FamilyCase::CaseII: return "case-ii";
    case FamilyCase::Bravo: return "bravo";
  }
  return "?";
}

FamilyCase family_case_from_string(const std::string& s) {
  if (s == "case-i") return FamilyCase::CaseI;
  if (s == "case-ii") return FamilyCase::CaseII;
  if (s == "bravo") return FamilyCase::Bravo;
  throw InputError("unknown family " + s + " (expected case-i, case-ii or bravo)");
}

RecurrenceSpec spec_from_char_poly(const IntPoly& g, std::vector<BigInt> initial, std::string name) {
  if (g.degree() < 1 || g.lead() != 1) throw InputError("characteristic polynomial must be monic of degree >= 1");
  RecurrenceSpec s;
  s.order = g.degree();
  for (int i = 0; i < s.order; ++i) s.coeffs.push_back(-g.coeff(i));
  if (initial.empty()) {
    initial.assign(static_cast<size_t>(s.order), BigInt(0));
    initial.back() = 1;
  }
  s.initial = std::move(initial);
  s.name = std::move(name);
  s.validate();
  return s;
}

namespace {

std::string str(long v) { return std::to_string(v); }

void require(bool ok, const std::string& clause, const std::string& detail) {
  if (!ok) throw ConditionFailed(clause, detail);
}

void check_padding(const IntPoly& pad, const std::string& side) {
  require(!pad.is_zero() && pad.lead() == 1, "padding", "P_" + side + " = " + pad.to_string() + " is not monic");
  require(pad.coeff(0) != 0, "padding", "P_" + side + " = " + pad.to_string() + " vanishes at 0");
}

// Strict max_root_size(pad) < bound, certified by ball separation.
void check_size(const IntPoly& pad, const RealBall& bound, const std::string& clause, const std::string& what,
                Bits prec, std::vector<std::string>& checks) {
  RealBall size = max_root_size(pad, prec);
  require(certainly_lt(size, bound), clause,
          "max root size of " + pad.to_string() + " (" + size.mid().to_string(8) + ") is not below " + what + " (" +
              bound.mid().to_string(8) + ")");
  checks.push_back(clause + ": max root size of " + pad.to_string() + " < " + what);
}

// beta_2 / beta_1 for the non-real roots of the factor q (degree 2 or 3
// with exactly one conjugate pair).
void check_pair_ratio(const IntPoly& q, Bits prec, std::vector<std::string>& checks) {
  RootSet roots = isolate_roots(q, prec);
  for (const auto& r : roots.roots) {
    if (r.real || !r.center.im().is_positive()) continue;
    AlgebraicNumber beta = AlgebraicNumber::from_root(q, r.enclosure(), prec);
    AlgebraicNumber ratio = ratio_min_poly(beta.conj(), beta);
    RootOfUnity ru = is_root_of_unity(ratio);
    require(!ru.is_root, "pair_ratio_root_of_unity",
            "conjugate ratio of the roots of " + q.to_string() + " is a root of unity of order " + str(ru.order));
    checks.push_back("pair_ratio_root_of_unity: ratio has minimal polynomial " + ratio.minpoly().to_string());
    return;
  }
  throw ConditionFailed("pair_ratio_root_of_unity", q.to_string() + " has no non-real root");
}

// Modulus of the unique real root of a cubic with negative discriminant,
// required to exceed 1.
RealBall real_root_outside(const IntPoly& q, Bits prec, std::vector<std::string>& checks) {
  BigInt at1 = q.eval(BigInt(1)), atm1 = q.eval(BigInt(-1));
  require(at1 != 0 && atm1 != 0, "outside_unit_circle", q.to_string() + " has a root at +-1");
  RootSet roots = isolate_roots(q, prec);
  for (const auto& r : roots.roots) {
    if (!r.real) continue;
    RealBall m = r.modulus();
    require(certainly_lt(RealBall(1, prec), m), "outside_unit_circle",
            "real root of " + q.to_string() + " has modulus " + m.mid().to_string(8) + " <= 1");
    checks.push_back("outside_unit_circle: real root of " + q.to_string() + " has modulus " + m.mid().to_string(8));
    return m;
  }
  throw ConditionFailed("outside_unit_circle", q.to_string() + " has no real root");
}

bool is_square(const BigInt& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

BigInt ipow(long base, long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(base)), static_cast<unsigned long>(e));
  return base < 0 && (e % 2) ? BigInt(-r) : r;
}

}  // namespace

FamilyPair build_case_i(const FamilyParams& prm, Bits prec) {
  FamilyPair out;
  auto& checks = out.checks;
  require(prm.p >= 1 && prm.q >= 1 && std::gcd(prm.p, prm.q) == 1, "coprime",
          "p = " + str(prm.p) + ", q = " + str(prm.q) + " must be positive and coprime");
  checks.push_back("coprime: gcd(" + str(prm.p) + ", " + str(prm.q) + ") = 1");
  require(prm.sign == 1 || prm.sign == -1, "sign", "sign must be +1 or -1");
  const BigInt bp = ipow(prm.b, prm.p);
  const BigInt disc = BigInt(prm.a) * prm.a - 4 * bp;
  require(disc < 0, "discriminant", "a^2 - 4b^p = " + disc.get_str() + " is not negative");
  checks.push_back("discriminant: a^2 - 4b^p = " + disc.get_str() + " < 0");
  const bool square = is_square(BigInt(prm.b));
  require(square || prm.q % 2 == 0, "parity", "b = " + str(prm.b) + " is not a square and q = " + str(prm.q) + " is odd");
  checks.push_back(square ? "parity: b is a square" : "parity: q even");
  // b^p > 0 here, so b > 0 unless p is even; then q is odd and b must be a square.
  BigInt root_b = square ? BigInt(sqrt(BigInt(prm.b))) : BigInt(0);
  BigInt abs_alpha;
  if (prm.q % 2 == 0) {
    abs_alpha = ipow(prm.b, prm.q / 2);
  } else {
    mpz_pow_ui(abs_alpha.get_mpz_t(), root_b.get_mpz_t(), static_cast<unsigned long>(prm.q));
  }
  require(abs_alpha > 1, "modulus_above_one", "|alpha_1| = b^(q/2) = " + abs_alpha.get_str() + " is not above 1");
  checks.push_back("modulus_above_one: b^(q/2) = " + abs_alpha.get_str());
  check_padding(prm.pad_a, "1");
  check_padding(prm.pad_b, "2");
  const IntPoly quad(std::vector<BigInt>{bp, BigInt(prm.a), BigInt(1)});
  check_size(prm.pad_a, RealBall(abs_alpha, prec), "size_a", "b^(q/2)", prec, checks);
  check_size(prm.pad_b, sqrt(RealBall(bp, prec)), "size_b", "|root of X^2 + aX + b^p|", prec, checks);
  check_pair_ratio(quad, prec, checks);
  const IntPoly lin(std::vector<BigInt>{BigInt(-prm.sign * abs_alpha), BigInt(1)});
  std::string tag = "case-i(a=" + str(prm.a) + ",b=" + str(prm.b) + ",p=" + str(prm.p) + ",q=" + str(prm.q) + ")";
  out.a = spec_from_char_poly(lin * prm.pad_a, prm.initial_a, tag + " A");
  out.b = spec_from_char_poly(quad * prm.pad_b, prm.initial_b, tag + " B");
  return out;
}

FamilyPair build_case_ii(const FamilyParams& prm, Bits prec) {
  FamilyPair out;
  auto& checks = out.checks;
  const long a = prm.a, b = prm.b;
  const BigInt disc = BigInt(-27) + 18 * a * b + a * a * b * b - 4 * a * a * a - 4 * b * b * b;
  require(disc < 0, "discriminant", "-27 + 18ab + a^2b^2 - 4a^3 - 4b^3 = " + disc.get_str() + " is not negative");
  checks.push_back("discriminant: " + disc.get_str() + " < 0");
  const IntPoly q2{1, b, a, 1};
  const IntPoly rq2 = reverse(q2);
  RealBall r = real_root_outside(q2, prec, checks);
  check_padding(prm.pad_a, "1");
  check_padding(prm.pad_b, "2");
  check_size(prm.pad_a, r, "size_a", "max root size of Q_2", prec, checks);
  check_size(prm.pad_b, sqrt(r), "size_b", "max root size of X^3 Q_2(1/X)", prec, checks);
  check_pair_ratio(rq2, prec, checks);
  std::string tag = "case-ii(a=" + str(a) + ",b=" + str(b) + ")";
  out.a = spec_from_char_poly(q2 * prm.pad_a, prm.initial_a, tag + " A");
  out.b = spec_from_char_poly(rq2 * prm.pad_b, prm.initial_b, tag + " B");
  return out;
}

FamilyPair build_bravo_pair(long a, long b, const BigInt& f0, const BigInt& f1, const BigInt& f2, Bits prec) {
  FamilyPair out;
  auto& checks = out.checks;
  const BigInt disc = BigInt(-27) - 18 * a * b + a * a * b * b - 4 * a * a * a + 4 * b * b * b;
  require(disc < 0, "discriminant", "-27 - 18ab + a^2b^2 - 4a^3 + 4b^3 = " + disc.get_str() + " is not negative");
  checks.push_back("discriminant: " + disc.get_str() + " < 0");
  require(f0 != 0 || f1 != 0 || f2 != 0, "initial_nonzero", "(f_0, f_1, f_2) = (0, 0, 0)");
  const IntPoly forward{-1, -b, -a, 1};
  const IntPoly backward{-1, a, b, 1};
  real_root_outside(forward, prec, checks);
  check_pair_ratio(backward, prec, checks);
  std::string tag = "bravo(a=" + str(a) + ",b=" + str(b) + ")";
  out.a = spec_from_char_poly(forward, {f0, f1, f2}, tag + " forward");
  out.b = spec_from_char_poly(backward, {f0, eval_term(out.a, -1), eval_term(out.a, -2)}, tag + " backward");
  return out;
}

FamilyPair build_family(const FamilyParams& prm, Bits prec) {
  switch (prm.family) {
    case FamilyCase::CaseI: return build_case_i(prm, prec);
    case FamilyCase::CaseII: return build_case_ii(prm, prec);
    case FamilyCase::Bravo: {
      std::vector<BigInt> f = prm.initial_a;
      if (f.empty()) f = {BigInt(0), BigInt(1), BigInt(1)};
      if (f.size() != 3) throw InputError("bravo needs three initial terms f_0, f_1, f_2");
      return build_bravo_pair(prm.a, prm.b, f[0], f[1], f[2], prec);
    }
  }
  throw InputError("unknown family");
}

namespace {

BigInt json_int(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) {
    BigInt r;
    if (r.set_str(v.get<std::string>(), 10) != 0) throw InputError(key + ": not an integer");
    return r;
  }
  if (v.is_number_integer()) return BigInt(v.get<long>());
  throw InputError(key + ": expected an integer");
}

long json_long(const nlohmann::json& j, const std::string& key, long dflt) {
  if (!j.contains(key)) return dflt;
  BigInt v = json_int(j.at(key), key);
  if (!v.fits_slong_p()) throw InputError(key + ": out of range");
  return v.get_si();
}

std::vector<BigInt> json_ints(const nlohmann::json& j, const std::string& key) {
  std::vector<BigInt> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw InputError(key + ": expected an array");
  for (const auto& v : j.at(key)) out.push_back(json_int(v, key));
  return out;
}

}  // namespace

FamilyParams family_params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("family parameters must be a JSON object");
  FamilyParams prm;
  prm.family = family_case_from_string(j.value("family", std::string("case-i")));
  prm.a = json_long(j, "a", 0);
  prm.b = json_long(j, "b", 0);
  prm.p = json_long(j, "p", 1);
  prm.q = json_long(j, "q", 1);
  prm.sign = static_cast<int>(json_long(j, "sign", 1));
  if (j.contains("pad_a")) prm.pad_a = IntPoly(json_ints(j, "pad_a"));
  if (j.contains("pad_b")) prm.pad_b = IntPoly(json_ints(j, "pad_b"));
  prm.initial_a = json_ints(j, "initial_a");
  prm.initial_b = json_ints(j, "initial_b");
  return prm;
}

nlohmann::json to_json(const FamilyPair& pair) {
  return {{"a", to_json(pair.a)},
          {"b", to_json(pair.b)},
          {"char_poly_a", char_poly(pair.a).to_string()},
          {"char_poly_b", char_poly(pair.b).to_string()},
          {"checks", pair.checks}};
}

}  // namespace recur
