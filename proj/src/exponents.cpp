#include "exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace frk {

ExponentProfile exponent_profile(int rank, const Rational& a, const Rational& b) {
  if (rank < 1) throw std::domain_error("exponent profile needs rank >= 1");
  const Rational n(rank);
  if (!(Rational(0) < b)) throw std::domain_error("need b > 0");
  if (!(b <= a)) throw std::domain_error("need b <= a");
  if (!(a < n)) throw std::domain_error("need a < rank");

  ExponentProfile prof;
  prof.rank = rank;
  prof.a = a;
  prof.b = b;
  const Rational gap = n - a;  // n - a > 0

  prof.r0 = (4 * gap + 2 * b) / (4 * gap + b);
  prof.theta = 2 * gap / (2 * gap + b);
  const Rational s = 2 * (gap + b) * (2 * gap + b);
  prof.sigma = s / (s - b * b);
  prof.tau = 2 * (gap + b) / b;
  prof.conv_r0 = (2 * gap + b) / (gap + b);
  prof.conv_s0 = (2 * gap + b) / gap;

  prof.r0_conj = conjugate(prof.r0);
  prof.sigma_conj = conjugate(prof.sigma);
  prof.tau_conj = conjugate(prof.tau);
  prof.conv_r0_conj = conjugate(prof.conv_r0);
  prof.conv_s0_conj = conjugate(prof.conv_s0);
  return prof;
}

double SystemConstants::k1(int rank, const Rational& a) const {
  const double gap = static_cast<double>(rank) - to_double(a);
  return std::pow(2.0, rank) * (c1 + c2 / (std::pow(2.0, gap) - 1.0)) * A;
}

double cbar_constant(const ExponentProfile& prof, const SystemConstants& sc, double c_nab) {
  const double theta = to_double(prof.theta);
  return c_nab * std::pow(sc.c1 + sc.c2, 1.0 - theta) *
         std::pow(sc.c3, (1.0 - theta) / (2.0 - theta)) * std::pow(sc.A, 1.0 - theta) *
         std::pow(sc.B, theta);
}

namespace {

EnvelopeValue envelope_min(double alpha, double beta, const ExponentProfile& prof,
                           std::span<const std::int64_t> scales) {
  if (scales.empty()) throw std::invalid_argument("envelope needs a nonempty scale set");
  const Rational gap = Rational(prof.rank) - prof.a;
  EnvelopeValue best{0, 0};
  for (std::int64_t rho : scales) {
    if (rho <= 0) throw std::invalid_argument("scales must be positive");
    const double r = static_cast<double>(rho);
    const double value = alpha * rpow(r, gap) + beta / rpow(r, prof.b / 2);
    if (best.scale == 0 || value < best.bound) {
      best = {value, rho};
    }
  }
  return best;
}

}  // namespace

EnvelopeValue envelope_weak(double m_e, const SystemConstants& sc, const ExponentProfile& prof,
                            std::span<const std::int64_t> scales) {
  if (m_e < 0) throw std::domain_error("envelope needs m(E) >= 0");
  return envelope_min(sc.k1(prof.rank, prof.a) * m_e, 2.0 * sc.B * m_e * m_e, prof, scales);
}

EnvelopeValue envelope_conv(double m_e, double m_f, const SystemConstants& sc,
                            const ExponentProfile& prof, std::span<const std::int64_t> scales) {
  if (m_e < 0 || m_f < 0) throw std::domain_error("envelope needs nonnegative masses");
  return envelope_min(sc.k1(prof.rank, prof.a) * m_e * m_f,
                      2.0 * sc.B * std::sqrt(m_e * m_f), prof, scales);
}

double envelope_continuous_inf(double alpha, double beta, const ExponentProfile& prof) {
  // d/drho [alpha rho^g + beta rho^{-b/2}] = 0 at rho* = (b beta / (2 g alpha))^{1/(g + b/2)}.
  const double g = static_cast<double>(prof.rank) - to_double(prof.a);
  const double bh = to_double(prof.b) / 2.0;
  if (alpha <= 0) return 0;
  if (beta <= 0) return 0;
  const double rho_star = std::pow(bh * beta / (g * alpha), 1.0 / (g + bh));
  return alpha * std::pow(rho_star, g) + beta * std::pow(rho_star, -bh);
}

}  // namespace frk
