#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "recur/poly.hpp"

using namespace recur;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(1, max_deg);
  std::uniform_int_distribution<long> coef(-6, 6);
  int d = deg(rng);
  std::vector<BigInt> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
  if (c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

// Euclidean resultant over Q, independent of the Sylvester code.
BigRat euclid_resultant(std::vector<BigRat> f, std::vector<BigRat> g) {
  auto deg = [](const std::vector<BigRat>& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
    return d;
  };
  BigRat acc = 1;
  while (true) {
    int m = deg(f), n = deg(g);
    if (m < 0 || n < 0) return 0;
    if (n == 0) {
      BigRat r = acc;
      for (int i = 0; i < m; ++i) r *= g[0];
      return r;
    }
    if (m < n) {
      if ((m * n) % 2 == 1) acc = -acc;
      std::swap(f, g);
      continue;
    }
    // f mod g
    std::vector<BigRat> r(f.begin(), f.begin() + m + 1);
    for (int i = m; i >= n; --i) {
      BigRat t = r[static_cast<size_t>(i)] / g[static_cast<size_t>(n)];
      for (int j = 0; j <= n; ++j) r[static_cast<size_t>(i - n + j)] -= t * g[static_cast<size_t>(j)];
    }
    int dr = deg(r);
    if (dr < 0) return 0;
    // Res(f,g) = (-1)^{mn} lc(g)^{m-dr} Res(g, r)
    if ((m * n) % 2 == 1) acc = -acc;
    for (int i = 0; i < m - dr; ++i) acc *= g[static_cast<size_t>(n)];
    f = std::vector<BigRat>(g.begin(), g.begin() + n + 1);
    g = std::vector<BigRat>(r.begin(), r.begin() + dr + 1);
  }
}

std::vector<BigRat> as_rat(const IntPoly& p) {
  std::vector<BigRat> out;
  for (const auto& c : p.coeffs()) out.emplace_back(c);
  return out;
}

}  // namespace

TEST_CASE("resultant examples") {
  CHECK(resultant(IntPoly{-2, 1}, IntPoly{-3, 1}) == -1);
  CHECK(resultant(IntPoly{1, 0, 1}, IntPoly{0, 1}) == 1);
  IntPoly f = IntPoly{-1, 1} * IntPoly{-4, 1};
  IntPoly g = IntPoly{-1, 1} * IntPoly{5, 1};
  CHECK(resultant(f, g) == 0);
  CHECK_THROWS_AS(resultant(IntPoly{}, g), std::invalid_argument);
}

TEST_CASE("resultant agrees with Euclidean oracle and is multiplicative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    IntPoly f = random_poly(rng, 5), g = random_poly(rng, 5), h = random_poly(rng, 4);
    CHECK(BigRat(resultant(f, h)) == euclid_resultant(as_rat(f), as_rat(h)));
    CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
  }
}

TEST_CASE("squarefree part examples") {
  IntPoly f = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{2, 1};
  CHECK(squarefree_part(f) == IntPoly{-1, 1} * IntPoly{2, 1});
  IntPoly trib{-1, -1, -1, 1};
  CHECK(squarefree_part(trib) == trib);
  CHECK(squarefree_part(IntPoly{0, 0, 1}) == IntPoly{0, 1});
  CHECK(squarefree_part(IntPoly{0, 0, -3}) == IntPoly{0, -1});
  CHECK_THROWS_AS(squarefree_part(IntPoly{}), std::invalid_argument);
}

TEST_CASE("squarefree part divides and factorization multiplies back") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly a = random_poly(rng, 3), b = random_poly(rng, 2);
    IntPoly f = a * a * b * b * b * a;
    IntPoly s = squarefree_part(f);
    CHECK(divides(s, f));
    CHECK(gcd(s, s.derivative()).degree() == 0);
    IntPoly prod = IntPoly{1};
    for (const auto& [g, e] : squarefree_factorization(f)) {
      for (int i = 0; i < e; ++i) prod = prod * g;
    }
    CHECK(prod.normalized() == f.normalized());
  }
  auto fac = squarefree_factorization(IntPoly{-2, 1} * IntPoly{-2, 1} * IntPoly{1, 1});
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].first == IntPoly{1, 1});
  CHECK(fac[0].second == 1);
  CHECK(fac[1].first == IntPoly{-2, 1});
  CHECK(fac[1].second == 2);
}

TEST_CASE("reverse examples") {
  CHECK(reverse(IntPoly{-1, -1, -1, 1}) == IntPoly{1, -1, -1, -1});
  CHECK(reverse(IntPoly{-2, 1}) == IntPoly{1, -2});
  CHECK(reverse(IntPoly{1, 0, 1}) == IntPoly{1, 0, 1});
  CHECK_THROWS_AS(reverse(IntPoly{0, 1}), std::invalid_argument);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntPoly f = random_poly(rng, 6);
    if (f.coeff(0) == 0) continue;
    IntPoly r = reverse(reverse(f));
    CHECK((r == f || r == -f));
  }
}

TEST_CASE("gcd, division, composition") {
  IntPoly a = IntPoly{-1, 1} * IntPoly{3, 2};
  IntPoly b = IntPoly{-1, 1} * IntPoly{0, 0, 1};
  CHECK(gcd(a, b) == IntPoly{-1, 1});
  CHECK(exact_div(a, IntPoly{3, 2}).value() == IntPoly{-1, 1});
  CHECK_FALSE(exact_div(IntPoly{1, 0, 1}, IntPoly{1, 1}).has_value());
  CHECK(compose(IntPoly{0, 0, 1}, IntPoly{1, 1}) == IntPoly{1, 2, 1});
  CHECK(negate_variable(IntPoly{-1, -1, -1, 1}) == IntPoly{-1, 1, -1, -1});
  CHECK(IntPoly{-1, -1, -1, 1}.to_string() == "X^3 - X^2 - X - 1");
  CHECK(IntPoly{-1, -1, -1, 1}.eval(BigInt(2)) == 1);
}

TEST_CASE("interpolation") {
  std::vector<BigInt> xs{0, 1, 2, 3};
  IntPoly f{5, -3, 0, 2};
  std::vector<BigRat> ys;
  for (const auto& x : xs) ys.emplace_back(f.eval(x));
  CHECK(interpolate(xs, ys) == f);
  CHECK_THROWS(interpolate({0, 1}, {BigRat(0), BigRat(1, 2)}));
}

TEST_CASE("ratio, product and power polynomials") {
  // 2/3 from X-2 and X-3
  CHECK(ratio_poly(IntPoly{-2, 1}, IntPoly{-3, 1}) == IntPoly{-2, 3});
  // (2i)^2 = -4: roots of X^2+4 squared
  IntPoly sq = power_poly(IntPoly{4, 0, 1}, 2);
  CHECK(sq == IntPoly{4, 1} * IntPoly{4, 1});
  // products of roots of X^2+1 with itself: {-1, -1, 1, 1}
  IntPoly pr = product_poly(IntPoly{1, 0, 1}, IntPoly{1, 0, 1});
  CHECK(pr == IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{1, 1} * IntPoly{1, 1});
  // ratio of i and -i gives -1 and 1
  IntPoly rr = ratio_poly(IntPoly{1, 0, 1}, IntPoly{1, 0, 1});
  CHECK(rr.degree() == 4);
  CHECK(rr.eval(BigInt(1)) == 0);
  CHECK(rr.eval(BigInt(-1)) == 0);
  // tribonacci: power 3 charpoly has roots alpha^3; Newton sums check via trace
  IntPoly cube = power_poly(IntPoly{-1, -1, -1, 1}, 3);
  CHECK(cube.degree() == 3);
  CHECK(cube.coeff(0) == -1);  // product of roots stays 1
}

TEST_CASE("log l2 norm") {
  RealBall l = log_l2_norm(IntPoly{-1, -1, -1, 1}, 128);
  CHECK(l.contains_zero() == false);
  CHECK(l.mid_double() == doctest::Approx(std::log(2.0)));
}
