#include <cmath>
#include <complex>

#include "doctest.h"
#include "gauss_sum.hpp"
#include "gfunction.hpp"
#include "group.hpp"
#include "measure.hpp"

using namespace frk;

TEST_CASE("closed form matches brute force for every residue pair") {
  for (const auto& [p, alpha] : {std::pair<std::int64_t, int>{3, 1},
                                {3, 2},
                                {3, 3},
                                {5, 1},
                                {5, 2},
                                {7, 1},
                                {7, 2}}) {
    std::int64_t m = 1;
    for (int i = 0; i < alpha; ++i) m *= p;
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b) {
        const QuadSumInput in{p, alpha, a, b};
        const auto closed = quad_sum_closed(in);
        const auto brute = quad_sum_bruteforce(in);
        INFO("p=" << p << " alpha=" << alpha << " a=" << a << " b=" << b);
        REQUIRE(std::abs(closed - brute) < 1e-9 * static_cast<double>(m));
      }
  }
}

TEST_CASE("magnitude dichotomy") {
  // |S(a,b)| = p^alpha / sqrt(||b||) when ||a|| <= ||b||, else 0.
  CHECK(quad_sum_magnitude({3, 2, 1, 1}) == doctest::Approx(3.0));   // |S(1,1)| mod 9
  CHECK(quad_sum_magnitude({3, 2, 1, 3}) == 0.0);                    // ||1|| = 9 > ||3|| = 3
  CHECK(quad_sum_magnitude({3, 2, 3, 3}) == doctest::Approx(9.0 / std::sqrt(3.0)));
  CHECK(quad_sum_magnitude({3, 2, 0, 0}) == doctest::Approx(9.0));
  CHECK(quad_sum_magnitude({3, 2, 1, 0}) == 0.0);

  for (std::int64_t a = 0; a < 27; ++a)
    for (std::int64_t b = 0; b < 27; ++b) {
      const QuadSumInput in{3, 3, a, b};
      CHECK(std::abs(quad_sum_bruteforce(in)) ==
            doctest::Approx(quad_sum_magnitude(in)).epsilon(1e-9));
    }
}

TEST_CASE("quadratic sum inputs are validated") {
  CHECK_THROWS_AS(quad_sum_closed({2, 1, 0, 1}), std::domain_error);   // even p
  CHECK_THROWS_AS(quad_sum_closed({9, 1, 0, 1}), std::domain_error);   // composite p
  CHECK_THROWS_AS(quad_sum_closed({3, 0, 0, 1}), std::domain_error);   // alpha < 1
}

TEST_CASE("Legendre symbol via Euler's criterion") {
  CHECK(legendre_symbol(1, 7) == 1);
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(3, 7) == -1);
  CHECK(legendre_symbol(0, 7) == 0);
  CHECK(legendre_symbol(10, 5) == 0);
  CHECK(legendre_symbol(2, 3) == -1);
}

TEST_CASE("closed paraboloid transform equals the Fourier definition") {
  for (const auto& g : {Group::cyclic(9, 2), Group::cyclic(27, 2), Group::cyclic(5, 3)}) {
    const DualMeasure mu = DualMeasure::paraboloid(g);
    const GFunction mc = inverse_transform_measure(mu);
    for (std::uint64_t x = 0; x < g->size(); ++x) {
      INFO(g->label() << " x=" << x);
      REQUIRE(std::abs(mc[x] - paraboloid_transform_closed(*g, x)) < 1e-9);
    }
  }
}

TEST_CASE("closed paraboloid transform rejects unsupported groups") {
  CHECK_THROWS_AS(paraboloid_transform_closed(*Group::cyclic(6, 2), 0), std::domain_error);
  CHECK_THROWS_AS(paraboloid_transform_closed(*Group::prime_field(3, 2), 0),
                  std::domain_error);
}
