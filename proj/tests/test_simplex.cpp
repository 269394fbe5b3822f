#include <doctest.h>

#include "netlocal/errors.hpp"
#include "netlocal/simplex.hpp"

using namespace netlocal;
using lp::Dense;

TEST_CASE("small LP with a known optimum") {
  // min -x - y  s.t.  x + s1 = 2, y + s2 = 3, x + y + s3 = 4
  Dense A(3, 5);
  A(0, 0) = 1; A(0, 2) = 1;
  A(1, 1) = 1; A(1, 3) = 1;
  A(2, 0) = 1; A(2, 1) = 1; A(2, 4) = 1;
  const auto sol = lp::solve(A, {2, 3, 4}, {-1, -1, 0, 0, 0});
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(-4.0));
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(4.0));
}

TEST_CASE("infeasible system") {
  // x + y = 1 and x + y = 2
  Dense A(2, 2);
  A(0, 0) = A(0, 1) = A(1, 0) = A(1, 1) = 1;
  const auto sol = lp::feasible_point(A, {1, 2});
  CHECK(sol.status == lp::Status::Infeasible);
  CHECK(sol.phase1_objective == doctest::Approx(1.0));
}

TEST_CASE("negative right-hand side and redundant rows") {
  // -x = -1, x = 1, 2x = 2
  Dense A(3, 1);
  A(0, 0) = -1;
  A(1, 0) = 1;
  A(2, 0) = 2;
  const auto sol = lp::feasible_point(A, {-1, 1, 2});
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("unbounded objective") {
  // x - y = 0, minimize -x
  Dense A(1, 2);
  A(0, 0) = 1;
  A(0, 1) = -1;
  const auto sol = lp::solve(A, {0}, {-1, 0});
  CHECK(sol.status == lp::Status::Unbounded);
}

TEST_CASE("degenerate cycling example terminates") {
  // Beale's example in equality form with slacks
  Dense A(3, 7);
  const double rows[3][4] = {{0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) A(i, j) = rows[i][j];
    A(i, 4 + i) = 1;
  }
  const auto sol = lp::solve(A, {0, 0, 1}, {-0.75, 150, -0.02, 6, 0, 0, 0});
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(-0.05));
}

TEST_CASE("dimension errors") {
  Dense A(2, 2);
  CHECK_THROWS_AS(lp::solve(A, {1}, {}), Error);
  CHECK_THROWS_AS(lp::solve(A, {1, 1}, {1}), Error);
}
