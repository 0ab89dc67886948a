#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exponents.hpp"
#include "measure.hpp"
#include "report.hpp"

namespace frk {

struct ScanStrategy {
  enum class Mode { Auto, Exhaustive, Random };
  Mode mode = Mode::Auto;
  std::uint64_t seed = 0;
  /// Random-mode sample count (subsets, or pairs for the convolution scan).
  std::uint64_t samples = 10'000;
  /// Exhaustive subset enumeration only when the pool has at most this many
  /// points (2^size subsets).
  std::uint64_t exhaustive_cap = 16;
  /// Exhaustive pair enumeration additionally requires (2^size - 1)^2 pairs
  /// within this budget.
  std::uint64_t pair_budget = std::uint64_t{1} << 20;
  /// Restrict the scan to subsets of these points (empty = whole domain).
  std::vector<std::uint64_t> pool;
  std::uint64_t singleton_cap = 256;  // structured singleton sets per scan
  std::uint64_t coset_cap = 64;       // structured coset sets per subgroup ball
  /// Per-set records are emitted only when the scanned family is at most this
  /// large; the summary, structured and violation records always are.
  std::uint64_t max_set_records = 4096;
  std::uint64_t lorentz_samples = 32;
};

/// mu-check split at scale rho: returns densities (mu1, mu2) on the dual with
/// mu1 = (phi_rho mu-check)^ and mu2 = ((1 - phi_rho) mu-check)^, so that
/// mu1 + mu2 = |G| w pointwise. rho below the smallest breakpoint gives
/// phi = 0 and puts everything in mu2.
std::pair<GFunction, GFunction> decompose_measure(const DualMeasure& mu, const LPSystem& sys,
                                                  double rho);

/// At every breakpoint rho: the reassembly identity, the low-piece sup bound
/// ||mu1||_inf <= K1 rho^{n-a}, and the high-piece bound
/// ||(1-phi_rho) mu-check||_inf <= 2B rho^{-b/2}.
Report check_decomposition_bounds(const DualMeasure& mu, const LPSystem& sys,
                                  const ExponentProfile& prof, const SystemConstants& sc,
                                  double tolerance = 1e-9);

/// ||f-hat||_{L^2(mu)} / ||f||_{L^r(G)}.
double restriction_ratio(const GFunction& f, const DualMeasure& mu, double r);

struct OperatorNormResult {
  double closed_form = 0;     // |G| max_xi mu({xi})
  double power_estimate = 0;  // dominant eigenvalue of R*R by power iteration
  int iterations = 0;
  bool converged = false;
};
OperatorNormResult l2_operator_norm(const DualMeasure& mu, std::uint64_t seed);

/// Scans subsets E of G: ||chi_E-hat||^2_{L^2(mu)} against the two-term
/// envelope over the primal scales, plus the reference ratio against
/// m(E)^{2/r0}.
Report restricted_weak_type_scan(const DualMeasure& mu, const LPSystem& sys,
                                 const ExponentProfile& prof, const SystemConstants& sc,
                                 const ScanStrategy& st);

/// Scans pairs (E, F) of dual subsets: <mu * chi_E, chi_F> against the
/// convolution envelope, plus the reference ratio against
/// m(E)^{1/conv_r0} m(F)^{1/conv_s0'} (normalized masses).
Report convolution_rwt_scan(const DualMeasure& mu, const LPSystem& sys,
                            const ExponentProfile& prof, const SystemConstants& sc,
                            const ScanStrategy& st);

/// ||f * mu-check||_{L^{q,s}(G)} / ||f||_{L^{p,s}(G)}; s may be infinity.
double lorentz_convolution_ratio(const GFunction& f, const DualMeasure& mu, double p, double q,
                                 double s);

/// Full verification pass: decomposition bounds, both scans, operator norm
/// agreement, Lorentz ratio sampling, and transform duality spot checks.
Report verify_measure(const DualMeasure& mu, const LPSystem& sys, const Rational& a,
                      const Rational& b, const ScanStrategy& st);

}  // namespace frk
