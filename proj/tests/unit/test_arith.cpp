#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"

using namespace gl3gl2;
using namespace gl3gl2::arith;

TEST_CASE("factor and multiplicative functions") {
  const auto f = factor(720);
  CHECK(f.consistent());
  CHECK(f.divisor_count() == 30);
  CHECK(f.euler_phi() == 192);
  CHECK(f.moebius() == 0);
  CHECK(factor(30).moebius() == -1);
  CHECK(f.divisor_count3() == 15 * 6 * 3);
  CHECK_THROWS_AS(factor(0), PreconditionError);
}

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod(-3, 7) == 4);
  CHECK(mod_inverse(5, 1) == 0);
  CHECK_THROWS_AS(mod_inverse(6, 9), PreconditionError);
}

TEST_CASE("Kloosterman sums against enumerated values") {
  // cos-sum enumeration at 30 digits
  CHECK(kloosterman(1, 1, 7) == doctest::Approx(2.04891733952230531).epsilon(1e-14));
  CHECK(kloosterman(3, 5, 12) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(kloosterman(2, 3, 25) == doctest::Approx(-1.87381314585724631).epsilon(1e-14));
  CHECK(kloosterman(5, 9, 1) == 1.0);
  CHECK(kloosterman_crt(2, 3, 25) == doctest::Approx(kloosterman(2, 3, 25)).epsilon(1e-13));
  CHECK(std::abs(kloosterman_exponential(4, 7, 33).imag()) < 1e-12);
}

TEST_CASE("Kloosterman table symmetry and crt agreement") {
  for (i64 c : {1, 2, 9, 60, 97, 128}) {
    const KloostermanTable t(c);
    for (i64 n = -3; n <= 6; ++n) {
      for (i64 m = 0; m <= 6; ++m) {
        CHECK(t(n, m) == t(m, n));
        CHECK(std::abs(t(n, m) - kloosterman_crt(n, m, c)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Ramanujan sums") {
  CHECK(ramanujan_sum(1, 12) == 0);
  CHECK(ramanujan_sum(0, 12) == 4);
  CHECK(ramanujan_sum(6, 12) == -4);
  for (i64 q : {2, 3, 5, 7, 11, 13}) {
    CHECK(ramanujan_sum(q, q) == q - 1);
    CHECK(ramanujan_sum(1, q) == -1);
    CHECK(std::llround(kloosterman(1, 0, q)) == -1);
  }
}

TEST_CASE("reciprocity split") {
  const auto r = reciprocity_split(7, 4, 9);
  CHECK(r.holds);
  CHECK(r.direct == ExactFraction(7, 36));
  CHECK_THROWS_AS(reciprocity_split(1, 6, 9), PreconditionError);
}

TEST_CASE("divisor tables agree") {
  const auto t = multiplicative_tables(5000);
  const auto d3 = ternary_divisor_table(5000);
  for (i64 n = 1; n <= 5000; ++n) CHECK(static_cast<i64>(d3[static_cast<std::size_t>(n)]) == t.d3[static_cast<std::size_t>(n)]);
  CHECK(t.d3[12] == 18);
  CHECK(t.mu[30] == -1);
  CHECK(t.phi[36] == 12);
  const auto big = ternary_divisor_table(1000003);
  CHECK(big[1000003] == 3);  // prime
  CHECK(big[1 << 19] == 20 * 21 / 2);
}
