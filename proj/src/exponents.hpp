#pragma once

#include <cstdint>
#include <span>

#include "rational.hpp"

namespace frk {

/// Exact exponent arithmetic for the restriction and convolution statements
/// attached to a rank-n system with measure parameters (a, b), 0 < b <= a < n.
struct ExponentProfile {
  int rank = 0;
  Rational a, b;

  Rational r0;       // (4(n-a) + 2b) / (4(n-a) + b)
  Rational theta;    // 2(n-a) / (2(n-a) + b): interpolation weight
  Rational sigma;    // Lorentz improvement target below r0
  Rational tau;      // 2(n-a+b)/b: moment exponent
  Rational conv_r0;  // (2(n-a)+b)/(n-a+b)
  Rational conv_s0;  // (2(n-a)+b)/(n-a)

  Rational r0_conj, sigma_conj, tau_conj, conv_r0_conj, conv_s0_conj;
};

ExponentProfile exponent_profile(int rank, const Rational& a, const Rational& b);

struct SystemConstants {
  double c1 = 1, c2 = 1, c3 = 1;
  double A = 1, B = 1;

  /// K1 = 2^n (C1 + C2 / (2^{n-a} - 1)) A: the low-frequency sup coefficient.
  double k1(int rank, const Rational& a) const;
};

/// C-bar = C_nab (C1 + C2)^{1-theta} C3^{(1-theta)/(2-theta)} A^{1-theta} B^theta.
double cbar_constant(const ExponentProfile& prof, const SystemConstants& sc, double c_nab);

struct EnvelopeValue {
  double bound = 0;
  std::int64_t scale = 0;  // minimizing rho; smallest on ties
};

/// min over scales of K1 mE rho^{n-a} + 2B mE^2 rho^{-b/2}.
EnvelopeValue envelope_weak(double m_e, const SystemConstants& sc, const ExponentProfile& prof,
                            std::span<const std::int64_t> scales);
/// min over scales of K1 mE mF rho^{n-a} + 2B sqrt(mE mF) rho^{-b/2}.
EnvelopeValue envelope_conv(double m_e, double m_f, const SystemConstants& sc,
                            const ExponentProfile& prof, std::span<const std::int64_t> scales);

/// Unconstrained minimum of alpha rho^{n-a} + beta rho^{-b/2} over rho > 0.
double envelope_continuous_inf(double alpha, double beta, const ExponentProfile& prof);

}  // namespace frk
