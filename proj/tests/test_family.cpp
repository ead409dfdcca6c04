#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "recur/baker.hpp"
#include "recur/errors.hpp"
#include "recur/family.hpp"

using namespace recur;

namespace {

FamilyParams case_i(long a, long b, long p, long q) {
  FamilyParams prm;
  prm.family = FamilyCase::CaseI;
  prm.a = a;
  prm.b = b;
  prm.p = p;
  prm.q = q;
  return prm;
}

FamilyParams case_ii(long a, long b) {
  FamilyParams prm;
  prm.family = FamilyCase::CaseII;
  prm.a = a;
  prm.b = b;
  return prm;
}

std::string clause_of(const FamilyParams& prm) {
  try {
    build_family(prm);
  } catch (const ConditionFailed& e) {
    return e.clause();
  }
  return "";
}

}  // namespace

TEST_CASE("max root size") {
  CHECK(max_root_size(IntPoly{4, 0, 1}, 256).mid_double() == doctest::Approx(2.0));
  CHECK(max_root_size(IntPoly{-1, -1, -1, 1}, 256).mid_double() == doctest::Approx(1.839286755214161));
  CHECK(max_root_size(IntPoly{5}, 256).mid().is_zero());
}

TEST_CASE("case I construction") {
  FamilyPair pr = build_case_i(case_i(1, 3, 1, 2));
  CHECK(char_poly(pr.a) == IntPoly{-3, 1});
  CHECK(char_poly(pr.b) == (IntPoly{3, 1, 1}));
  FamilyParams padded = case_i(1, 3, 1, 2);
  padded.pad_a = IntPoly{-1, 1};
  pr = build_case_i(padded);
  CHECK(char_poly(pr.a) == IntPoly{3, -4, 1});
  CHECK(pr.a.initial == std::vector<BigInt>{0, 1});
  BoundCertificate cert = certify(pr.a, pr.b, CertifyConfig{});
  CHECK(cert.delta() == 2);

  CHECK(clause_of(case_i(0, 2, 1, 3)) == "parity");
  CHECK(clause_of(case_i(4, 2, 1, 2)) == "discriminant");
  CHECK(clause_of(case_i(0, 1, 1, 2)) == "modulus_above_one");
  CHECK(clause_of(case_i(0, 4, 2, 2)) == "coprime");
  FamilyParams big = case_i(1, 3, 1, 2);
  big.pad_a = IntPoly{-3, 1};
  CHECK(clause_of(big) == "size_a");
  big = case_i(1, 3, 1, 2);
  big.pad_b = IntPoly{0, 1};
  CHECK(clause_of(big) == "padding");
}

TEST_CASE("case I with a = 0 has beta_2/beta_1 = -1") {
  // The printed example a = 0, b = 2 gives B(X) = X^2 + 2, whose conjugate
  // ratio is -1; the builder refuses it because certify would.
  CHECK(clause_of(case_i(0, 2, 1, 2)) == "pair_ratio_root_of_unity");
  CHECK(clause_of(case_i(2, 2, 1, 2)) == "pair_ratio_root_of_unity");
  FamilyPair pr = build_case_i(case_i(1, 2, 1, 2));
  CHECK(char_poly(pr.a) == IntPoly{-2, 1});
  CHECK(certify(pr.a, pr.b, CertifyConfig{}).delta() == 2);
}

TEST_CASE("case II construction") {
  FamilyPair pr = build_case_ii(case_ii(1, -1));
  CHECK(char_poly(pr.a) == (IntPoly{1, -1, 1, 1}));
  CHECK(char_poly(pr.b) == (IntPoly{1, 1, -1, 1}));
  BoundCertificate cert = certify(pr.a, pr.b, CertifyConfig{});
  CHECK(cert.delta() == 2);
  CHECK(clause_of(case_ii(1, 1)) == "outside_unit_circle");
  CHECK(clause_of(case_ii(-1, -1)) == "discriminant");

  // Roots of the two polynomials are reciprocal.
  RootSet ra = isolate_roots(char_poly(pr.a), 256), rb = isolate_roots(char_poly(pr.b), 256);
  for (const auto& r : ra.roots) {
    ComplexBall inv = ComplexBall(RealBall(1, 256)) / r.enclosure();
    CHECK(locate(rb, inv).has_value());
  }
}

TEST_CASE("bravo pair") {
  FamilyPair pr = build_bravo_pair(1, 1, 0, 1, 1);
  CHECK(char_poly(pr.a) == (IntPoly{-1, -1, -1, 1}));
  CHECK(char_poly(pr.b) == (IntPoly{-1, 1, 1, 1}));
  for (long n = 0; n <= 100; ++n) CHECK(eval_term(pr.a, -n) == eval_term(pr.b, n));
  CHECK(certify(pr.a, pr.b, CertifyConfig{}).delta() == 2);
  CHECK_THROWS_AS(build_bravo_pair(4, -4, 0, 1, 1), ConditionFailed);
  CHECK_THROWS_AS(build_bravo_pair(1, 1, 0, 0, 0), ConditionFailed);
  FamilyPair other = build_bravo_pair(2, -1, 3, -1, 4);
  for (long n = -100; n <= 100; ++n) CHECK(eval_term(other.a, -n) == eval_term(other.b, n));
}

TEST_CASE("non-power b^p breaks certification") {
  // A = X - 2 with X^2 + X + 3 in place of X^2 + X + 2: |beta|^2 = 3 is not a power of 2.
  RecurrenceSpec a = spec_from_char_poly(IntPoly{-2, 1}, {}, "A");
  RecurrenceSpec b = spec_from_char_poly(IntPoly{3, 1, 1}, {}, "B");
  CHECK_THROWS_AS(certify(a, b, CertifyConfig{}), DependenceUnknown);
}

TEST_CASE("emitted pairs on a small grid certify") {
  int emitted = 0;
  for (long a = -2; a <= 2; ++a) {
    for (long b = -2; b <= 2; ++b) {
      std::vector<FamilyParams> points{case_i(a, b, 1, 2), case_i(a, b, 2, 1), case_ii(a, b)};
      FamilyParams bravo;
      bravo.family = FamilyCase::Bravo;
      bravo.a = a;
      bravo.b = b;
      points.push_back(bravo);
      for (const auto& prm : points) {
        FamilyPair pr;
        try {
          pr = build_family(prm);
        } catch (const ConditionFailed& e) {
          CHECK(!e.clause().empty());
          continue;
        }
        ++emitted;
        CHECK_NOTHROW(certify(pr.a, pr.b, CertifyConfig{}));
      }
    }
  }
  CHECK(emitted > 5);
}

TEST_CASE("family parameters from JSON") {
  nlohmann::json j = {{"family", "case-i"}, {"a", 1}, {"b", "3"}, {"p", 1}, {"q", 2}, {"pad_a", {-1, 1}}};
  FamilyParams prm = family_params_from_json(j);
  CHECK(prm.b == 3);
  CHECK(prm.pad_a == IntPoly{-1, 1});
  CHECK_THROWS_AS(family_params_from_json(nlohmann::json{{"family", "case-x"}}), InputError);
  CHECK_THROWS_AS(family_params_from_json(nlohmann::json{{"a", "x"}}), InputError);
  nlohmann::json out = to_json(build_family(prm));
  CHECK(out["checks"].size() > 3);
}
