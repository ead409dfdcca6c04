#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "recur/numerics.hpp"

using namespace recur;

namespace {

BigRat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 97);
  BigRat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("exact construction") {
  RealBall a(BigInt(12345), 128);
  CHECK(a.is_exact());
  CHECK(a.contains(BigRat(12345)));
  RealBall third(BigRat(1, 3), 128);
  CHECK_FALSE(third.is_exact());
  CHECK(third.contains(BigRat(1, 3)));
  CHECK_FALSE(third.contains(BigRat(1, 3) + BigRat(1, BigInt(1) << 100)));
}

TEST_CASE("arithmetic contains exact result") {
  std::mt19937_64 rng(7);
  for (Bits prec : {53L, 128L, 256L}) {
    for (int trial = 0; trial < 200; ++trial) {
      BigRat x = random_rat(rng), y = random_rat(rng), z = random_rat(rng);
      if (y == 0) y = 1;
      RealBall bx(x, prec), by(y, prec), bz(z, prec);
      BigRat exact = (x * y - z) / y + x * x;
      RealBall ball = (bx * by - bz) / by + sqr(bx);
      CHECK(ball.contains(exact));
      BigRat e2 = x * x * x * x * x - z;
      CHECK((pow(bx, 5) - bz).contains(e2));
      CHECK(abs(bx - bz).contains(abs(x - z)));
    }
  }
}

TEST_CASE("transcendental enclosures") {
  RealBall two(2L, 256);
  RealBall l = log(two);
  CHECK(l.overlaps(RealBall::log2(256)));
  CHECK(l.relative_radius() < 1e-70);
  RealBall e = exp(l);
  CHECK(e.contains(BigRat(2)));
  RealBall s = sqrt(two);
  CHECK(sqr(s).contains(BigRat(2)));
  CHECK(pow(two, RealBall(BigRat(1, 2), 256)).overlaps(s));
  CHECK_THROWS_AS(log(RealBall(0L, 64)), std::domain_error);
  CHECK(RealBall::pi(256).mid_double() == doctest::Approx(3.141592653589793));
}

TEST_CASE("radius shrinks with precision") {
  BigRat v(22, 7);
  double prev = 1.0;
  for (Bits p : {64L, 128L, 256L, 512L}) {
    RealBall b = log(RealBall(v, p));
    double r = b.rad().to_double(MPFR_RNDU);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("comparisons") {
  RealBall a(BigRat(1, 3), 128), b(BigRat(1, 2), 128);
  CHECK(certainly_lt(a, b));
  CHECK(certainly_gt(b, a));
  CHECK_FALSE(certainly_lt(a, a));
  CHECK(certainly_le(RealBall(1L, 64), RealBall(1L, 64)));
  RealBall h = hull(a, b);
  CHECK(h.contains(BigRat(5, 12)));
  CHECK(max(a, b).contains(BigRat(1, 2)));
  CHECK(min(a, b).contains(BigRat(1, 3)));
  CHECK(upper_ball(a).is_exact());
  CHECK_FALSE(certainly_lt(upper_ball(a), a));
}

TEST_CASE("complex balls") {
  ComplexBall i(RealBall(0L, 128), RealBall(1L, 128));
  ComplexBall m1 = i * i;
  CHECK(m1.re().contains(BigRat(-1)));
  CHECK(m1.im().contains(BigRat(0)));
  CHECK(pow(i, 4).re().contains(BigRat(1)));
  ComplexBall z(RealBall(3L, 128), RealBall(4L, 128));
  CHECK(abs(z).contains(BigRat(5)));
  ComplexBall q = z / z;
  CHECK(q.re().contains(BigRat(1)));
  CHECK(q.im().contains(BigRat(0)));
  CHECK(norm(z.conj()).contains(BigRat(25)));
}

TEST_CASE("decimal rendering") {
  RealBall b(BigRat(1, 3), 64);
  CHECK(to_decimal(b.mid()).substr(0, 6) == "3.3333");
  Mpfr back = Mpfr::from_string(to_decimal(b.mid()), 64);
  CHECK(cmp(back, b.mid()) == 0);
}
