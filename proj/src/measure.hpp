#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ball_system.hpp"
#include "gfunction.hpp"
#include "group.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "report.hpp"

namespace frk {

/// A nonnegative atomic measure on the dual group, stored sparsely. Graph
/// measures put weight 1/q^{n-1} on each point (omega, h(omega)); arbitrary
/// nonnegative weight maps are accepted through from_weights.
class DualMeasure {
 public:
  struct Atom {
    std::uint64_t point;
    double weight;
  };

  static DualMeasure graph(GroupPtr group, const Polynomial& h);
  /// Graph of h(omega) = omega_1^2 + ... + omega_{n-1}^2. Requires odd
  /// characteristic (and odd modulus for cyclic groups).
  static DualMeasure paraboloid(GroupPtr group);
  static DualMeasure from_weights(GroupPtr group, std::vector<Atom> atoms);

  const GroupPtr& group() const { return group_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double mass() const { return mass_; }
  double weight_at(std::uint64_t point) const;
  /// Weights as a dense function on the dual group.
  GFunction weight_function() const;
  const std::string& kind() const { return kind_; }

  nlohmann::ordered_json to_json() const;
  static DualMeasure from_json(const nlohmann::json& j, std::uint64_t size_cap = kDefaultSizeCap);

 private:
  DualMeasure(GroupPtr group, std::vector<Atom> atoms, std::string kind);

  GroupPtr group_;
  std::vector<Atom> atoms_;  // sorted by point, weights > 0
  double mass_ = 0;
  std::string kind_;
};

/// mu-check(x) = sum_xi w(xi) <x, xi>: the inverse transform without the
/// 1/|G| factor, returned as a function on G.
GFunction inverse_transform_measure(const DualMeasure& mu);

/// mu(B_s(xi)) for every center xi at dual breakpoint j, as one dense vector.
std::vector<double> ball_masses(const DualMeasure& mu, const LPSystem& sys, std::size_t j);

/// A = sup mu(B_s(xi)) / s^a over dual breakpoints and all centers.
double regularity_constant(const DualMeasure& mu, const LPSystem& sys, const Rational& a);
/// B = sup |mu-check(x)| ||x||^{b/2} over x != 0.
double decay_constant(const DualMeasure& mu, const LPSystem& sys, const Rational& b);

struct MeasureProfile {
  Rational a;
  double A = 0;
  Rational b;
  double B = 0;
};

/// Computes (A, B) and re-verifies the defining inequalities at every
/// breakpoint (regularity over all centers, decay over all points), plus
/// paraboloid-specific cross-checks where applicable.
Report measure_analyze(const DualMeasure& mu, const LPSystem& sys, const Rational& a,
                       const Rational& b, double tolerance = 1e-9);

MeasureProfile measure_profile(const DualMeasure& mu, const LPSystem& sys, const Rational& a,
                               const Rational& b);

}  // namespace frk
