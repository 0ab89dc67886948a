#pragma once

#include <complex>
#include <cstdint>

#include "group.hpp"

namespace frk {

/// S(a, b) = sum_{t mod p^alpha} e((a t + b t^2) / p^alpha), p an odd prime.
struct QuadSumInput {
  std::int64_t p = 3;
  int alpha = 1;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

/// Direct summation; O(p^alpha).
std::complex<double> quad_sum_bruteforce(const QuadSumInput& in);

/// Closed form. Writing b = p^beta u with u a unit (b != 0): the sum vanishes
/// unless p^beta | a, and otherwise, with M' = p^{alpha-beta} and a = p^beta a',
///   S = p^beta e(-a'^2 (4u)^{-1} / M') (u|M') eps_{M'} sqrt(M'),
/// where (.|.) is the Jacobi symbol and eps_m is 1 or i as m = 1, 3 mod 4.
/// For b = 0 the sum is p^alpha [a = 0 mod p^alpha]. O(log) arithmetic.
std::complex<double> quad_sum_closed(const QuadSumInput& in);

/// |S(a,b)|: p^alpha ||b||^{-1/2} when ||a|| <= ||b||, else 0, with
/// ||c|| = p^alpha / gcd(c, p^alpha). Exact rational data, for dichotomy checks.
double quad_sum_magnitude(const QuadSumInput& in);

/// mu-check of the paraboloid measure over [Z/p^alpha Z]^n via the closed
/// form: p^{-(n-1) alpha} prod_j S(x_j, x_n). Requires an odd prime power
/// modulus; `x` is a flat point index.
std::complex<double> paraboloid_transform_closed(const Group& g, std::uint64_t x);

/// Legendre symbol (u|p) in {-1, 0, 1} for odd prime p.
int legendre_symbol(std::int64_t u, std::int64_t p);

}  // namespace frk
