#include "gauss_sum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace frk {

namespace {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t acc = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return acc;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = ((a % m) + m) % m;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1) throw std::domain_error("mod_inv: not invertible");
  return ((t0 % m) + m) % m;
}

void validate(const QuadSumInput& in) {
  if (in.p < 3 || in.p % 2 == 0 || !is_prime(in.p))
    throw std::domain_error("quadratic sums need an odd prime p");
  if (in.alpha < 1) throw std::domain_error("quadratic sums need alpha >= 1");
}

std::int64_t modulus_of(const QuadSumInput& in) {
  std::int64_t m = 1;
  for (int i = 0; i < in.alpha; ++i) m *= in.p;
  return m;
}

}  // namespace

int legendre_symbol(std::int64_t u, std::int64_t p) {
  u = ((u % p) + p) % p;
  if (u == 0) return 0;
  // Euler's criterion.
  return mod_pow(u, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::complex<double> quad_sum_bruteforce(const QuadSumInput& in) {
  validate(in);
  const std::int64_t m = modulus_of(in);
  const std::int64_t a = ((in.a % m) + m) % m;
  const std::int64_t b = ((in.b % m) + m) % m;
  std::complex<double> acc = 0;
  for (std::int64_t t = 0; t < m; ++t) {
    const std::int64_t phase = (a * t % m + b * t % m * t % m) % m;
    acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) /
                               static_cast<double>(m));
  }
  return acc;
}

std::complex<double> quad_sum_closed(const QuadSumInput& in) {
  validate(in);
  const std::int64_t m = modulus_of(in);
  const std::int64_t a = ((in.a % m) + m) % m;
  const std::int64_t b = ((in.b % m) + m) % m;
  if (b == 0) return a == 0 ? std::complex<double>(static_cast<double>(m)) : 0.0;

  std::int64_t beta = 0, u = b;
  while (u % in.p == 0) {
    u /= in.p;
    ++beta;
  }
  std::int64_t pbeta = 1;
  for (int i = 0; i < beta; ++i) pbeta *= in.p;
  if (a % pbeta != 0) return 0.0;  // the linear character kills the sum

  // Complete the square at level M' = p^{alpha - beta}:
  //   S = p^beta e(-a'^2 (4u)^{-1}/M') g(u; M'),  a' = a / p^beta,
  // where g is the pure quadratic Gauss sum, g = (u|M') eps_{M'} sqrt(M').
  const std::int64_t mprime = m / pbeta;
  const std::int64_t aprime = (a / pbeta) % mprime;
  const std::int64_t inv4u = mod_inv(4, mprime) * mod_inv(u, mprime) % mprime;
  const std::int64_t c = aprime * aprime % mprime * inv4u % mprime;
  const std::complex<double> phase =
      std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(c) /
                          static_cast<double>(mprime));
  const int lambda = in.alpha - static_cast<int>(beta);
  const int jacobi = lambda % 2 == 0 ? 1 : legendre_symbol(u, in.p);
  const std::complex<double> eps =
      mprime % 4 == 1 ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
  return static_cast<double>(pbeta) * phase * static_cast<double>(jacobi) * eps *
         std::sqrt(static_cast<double>(mprime));
}

double quad_sum_magnitude(const QuadSumInput& in) {
  validate(in);
  const std::int64_t m = modulus_of(in);
  const std::int64_t a = ((in.a % m) + m) % m;
  const std::int64_t b = ((in.b % m) + m) % m;
  const std::int64_t norm_a = m / std::gcd(a, m);
  const std::int64_t norm_b = m / std::gcd(b, m);
  if (norm_a > norm_b) return 0.0;
  return static_cast<double>(m) / std::sqrt(static_cast<double>(norm_b));
}

std::complex<double> paraboloid_transform_closed(const Group& g, std::uint64_t x) {
  if (g.kind() != GroupKind::CyclicModule)
    throw std::domain_error("closed paraboloid transform needs a cyclic group");
  const auto pp = as_prime_power(g.alphabet());
  if (!pp || pp->p == 2)
    throw std::domain_error("closed paraboloid transform needs an odd prime power modulus");
  const int n = g.rank();
  if (n < 2) throw std::domain_error("the paraboloid needs rank >= 2");

  const auto coords = g.point(x);
  const std::int64_t last = coords[n - 1];
  std::complex<double> acc = 1.0;
  for (int j = 0; j + 1 < n; ++j)
    acc *= quad_sum_closed({pp->p, pp->alpha, coords[j], last});
  double scale = 1.0;
  for (int j = 0; j + 1 < n; ++j) scale /= static_cast<double>(g.alphabet());
  return acc * scale;
}

}  // namespace frk
