#include <doctest.h>

#include <cmath>

#include "gl3gl2/afe.hpp"
#include "gl3gl2/amplifier.hpp"
#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/gl3.hpp"
#include "gl3gl2/specfun.hpp"

using namespace gl3gl2;
using namespace gl3gl2::amplifier;

namespace {

std::string fixture(const char* name) { return std::string(GL3GL2_FIXTURE_DIR) + "/" + name; }

const gl2::FormGL2& f11() {
  static const auto f = gl2::load_fixture(fixture("level11_k2.txt"));
  return f;
}

const gl3::CoeffTableGL3& table() {
  static const auto t = gl3::eisenstein_coeffs(130, 10000);
  return t;
}

}  // namespace

TEST_CASE("short amplifiers expand by hand") {
  const auto one = amplifier_coeffs(f11(), 1);
  CHECK(one.support() == 1);
  CHECK(one.x_at(1) == 1.0);
  CHECK(one.x_at(2) == 0.0);

  const auto two = amplifier_coeffs(f11(), 2);
  const double a2 = two.a0[2];
  CHECK(two.x_at(1) == doctest::Approx(1.0 + a2 * a2 / 2.0).epsilon(1e-15));
  CHECK(two.x_at(2) == doctest::Approx(2.0 * a2).epsilon(1e-15));
  CHECK(two.x_at(3) == 0.0);
  CHECK(two.x_at(4) == doctest::Approx(a2 * a2).epsilon(1e-15));
  CHECK_THROWS_AS(two.x_at(0), PreconditionError);
}

TEST_CASE("expanded square reconstructs A(f)^2") {
  const auto spec = amplifier_coeffs(f11(), 20);
  CHECK(reconstruction_check(spec, form_coefficients(f11(), spec.support())).pass);
  const auto synth = synthetic_hecke_vector(11, spec.support(), 7, f11().lambda(11));
  const auto rep = reconstruction_check(spec, synth);
  CHECK(rep.pass);
  CHECK(rep.rel_discrepancy < 1e-13);
}

TEST_CASE("amplifier of length one gives the plain moment") {
  FamilyContext ctx;
  ctx.k = 2;
  ctx.q = 11;
  ctx.family = {f11()};
  ctx.table = &table();
  const auto mom = amplified_moment(ctx, amplifier_coeffs(f11(), 1));
  CHECK(mom.central[0] == doctest::Approx(0.016356475528).epsilon(1e-9));
  CHECK(mom.value == doctest::Approx(mom.central[0] / f11().harmonic_weight).epsilon(1e-12));
  CHECK(mom.nonnegative);
  CHECK_THROWS_AS(prop2_lhs(ctx, 11), PreconditionError);
}

TEST_CASE("main lemma sum against brute force") {
  const std::int64_t q = 11, m = 1;
  const int k = 2;
  Mainlem1Ranges ranges;
  ranges.r_max = 1;
  ranges.c_max = 1;
  const auto got = mainlem1_sum(m, q, k, table(), ranges);

  const auto gf = GammaFactor::rankin_selberg(k, table().nu());
  const double x = std::pow(11.0, 1.5);
  double want = 0.0;
  for (std::int64_t n = 1; n <= got.n_used; ++n) {
    const double arg = 4.0 * M_PI * std::sqrt(static_cast<double>(n)) / 11.0;
    want += table()(1, n) / std::sqrt(static_cast<double>(n)) * afe::v_weight(n / x, gf) *
            arith::kloosterman(n, m, q) / 11.0 * specfun::bessel_j(k - 1, arg);
  }
  CHECK(got.r_used == 1);
  CHECK(got.value == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("main lemma sum settles in c at weight 4") {
  Mainlem1Ranges a, b;
  a.c_max = 400;
  b.c_max = 800;
  const double va = mainlem1_sum(1, 5, 4, table(), a).value;
  const double vb = mainlem1_sum(1, 5, 4, table(), b).value;
  CHECK(std::abs(va - vb) < 1e-8);
  CHECK_THROWS_AS(mainlem1_sum(0, 5, 4, table(), a), PreconditionError);
}

TEST_CASE("amplification constant") {
  CHECK(amplification_constant(f11(), 10000) == doctest::Approx(2.63).epsilon(5e-3));
  CHECK_THROWS_AS(amplification_constant(f11(), 1), PreconditionError);
}
