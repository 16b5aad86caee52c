#include <doctest.h>

#include <cmath>
#include <limits>

#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/trace.hpp"

using namespace gl3gl2;
using namespace gl3gl2::trace;

namespace {
std::string fixture(const char* name) { return std::string(GL3GL2_FIXTURE_DIR) + "/" + name; }
}  // namespace

TEST_CASE("newform dimensions") {
  CHECK(newform_dimension(12, 1) == 1);
  CHECK(newform_dimension(16, 1) == 1);
  CHECK(newform_dimension(10, 1) == 0);
  CHECK(newform_dimension(24, 1) == 2);
  CHECK(newform_dimension(4, 5) == 1);
  CHECK(newform_dimension(2, 11) == 1);
  CHECK(newform_dimension(2, 37) == 2);
}

TEST_CASE("level one Petersson formula at small indices") {
  const std::vector<gl2::FormGL2> forms = {gl2::load_fixture(fixture("level1_k12.txt"))};
  for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {2, 1}, {3, 1}, {2, 3}}) {
    TraceQuery q;
    q.n = n;
    q.m = m;
    const auto rep = verify_trace(q, forms);
    CHECK(rep.pass);
    CHECK(rep.diagnostics.at("tail_certified") == 1.0);
  }
}

TEST_CASE("truncation bound") {
  CHECK(truncation_bound(12, 1, 1, 100) < 1e-10);
  CHECK(truncation_bound(12, 1, 1, 200) < truncation_bound(12, 1, 1, 100));
  CHECK_THROWS_AS(truncation_bound(12, 20, 20, 100), PreconditionError);
}

TEST_CASE("newform formula at level 5") {
  const std::vector<gl2::FormGL2> forms = {gl2::load_fixture(fixture("level5_k4.txt"))};
  TraceQuery q;
  q.k = 4;
  q.q = 5;
  q.c_max = 1000;
  q.tol = 1e-5;
  for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {5, 2}, {6, 3}, {10, 7}}) {
    q.n = n;
    q.m = m;
    CHECK(verify_trace(q, forms).pass);
  }
  q.n = 25;
  CHECK_THROWS_AS(verify_trace(q, forms), PreconditionError);
  q.n = 1;
  q.m = 5;
  CHECK_THROWS_AS(verify_trace(q, forms), PreconditionError);
}

TEST_CASE("spectral side rejects a partial family") {
  TraceQuery q;
  q.k = 2;
  q.q = 37;
  const std::vector<gl2::FormGL2> forms = {gl2::load_fixture(fixture("level37_k2.txt"))};
  CHECK_THROWS_AS(delta_spectral(q, forms), PreconditionError);
}

TEST_CASE("geometric Gram matrix is positive semidefinite") {
  TraceQuery q;
  q.c_max = 200;
  CHECK(geometric_gram_min_eigenvalue(q, {1, 2, 3, 4, 5}) > -1e-10);
}
