#include <vector>

#include "doctest.h"
#include "group.hpp"
#include "polynomial.hpp"

using namespace frk;

TEST_CASE("parse and evaluate over Z_N") {
  const auto g = Group::cyclic(9, 1);
  const auto h = Polynomial::parse("x0^2 + 3*x0 - 2");
  CHECK(h.arity() == 1);
  for (std::int64_t w = 0; w < 9; ++w) {
    const std::int64_t expect = ((w * w + 3 * w - 2) % 9 + 9) % 9;
    CHECK(h.eval(*g, std::vector<std::int64_t>{w}) == expect);
  }
}

TEST_CASE("multivariate terms and repeated factors") {
  const auto g = Group::cyclic(7, 1);
  const auto h = Polynomial::parse("x0*x1*x0 - 2*x1^3");
  CHECK(h.arity() == 2);
  // x0^2 x1 - 2 x1^3 at (3, 2): 9*2 - 2*8 = 2 mod 7.
  CHECK(h.eval(*g, std::vector<std::int64_t>{3, 2}) == 2);
}

TEST_CASE("evaluation in an extension field uses field arithmetic") {
  const auto g = Group::finite_field(3, 2, {1, 0, 1}, 1);  // F_9, x^2 = -1
  const auto h = Polynomial::parse("x0^2");
  // Element with index 3 is X, whose square is -1 = 2.
  CHECK(h.eval(*g, std::vector<std::int64_t>{3}) == 2);
  // Integer coefficients land in the prime subfield: 2*X = index 6.
  const auto two_x = Polynomial::parse("2*x0");
  CHECK(two_x.eval(*g, std::vector<std::int64_t>{3}) == 6);
}

TEST_CASE("constants and leading minus") {
  const auto g = Group::cyclic(5, 1);
  CHECK(Polynomial::parse("7").eval(*g, {}) == 2);
  CHECK(Polynomial::parse("-x0").eval(*g, std::vector<std::int64_t>{2}) == 3);
  CHECK(Polynomial::parse("- 3 + x0 ^ 2").arity() == 1);
}

TEST_CASE("malformed polynomials are rejected") {
  CHECK_THROWS_AS(Polynomial::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::parse("x0 +"), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::parse("y0"), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::parse("x0^"), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::parse("x0 x1"), std::invalid_argument);
}
