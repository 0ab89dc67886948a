#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gfunction.hpp"
#include "group.hpp"
#include "rational.hpp"
#include "report.hpp"

namespace frk {

/// Breakpoints of the two ball families: radii where the ball at the origin
/// changes. Primal scales are divisors of the diameter D ({1, q} over F_q);
/// dual scales are {d/D : d primal scale}, listed ascending.
struct ScaleSet {
  std::vector<std::int64_t> primal;
  std::vector<Rational> dual;
};

/// A translation-parameterized family of candidate balls, indexed by
/// breakpoint. Kept abstract so deliberately corrupted families can be run
/// through the same axiom checker as the canonical ones.
class BallFamily {
 public:
  virtual ~BallFamily() = default;
  virtual std::size_t scale_count() const = 0;
  virtual bool contains(std::size_t scale_idx, std::uint64_t center, std::uint64_t point) const = 0;
};

/// Canonical family on both sides: B_i(c) = {x : ||x - c|| <= threshold_i}.
/// With thresholds = divisors of D this is the divisor-union construction on
/// the primal side, and (via s = d/D) the reversed-index family on the dual.
class NormBallFamily final : public BallFamily {
 public:
  NormBallFamily(GroupPtr group, std::vector<std::int64_t> thresholds);
  std::size_t scale_count() const override { return thresholds_.size(); }
  bool contains(std::size_t scale_idx, std::uint64_t center, std::uint64_t point) const override;
  std::int64_t threshold(std::size_t i) const { return thresholds_[i]; }

 private:
  GroupPtr group_;
  std::vector<std::int64_t> thresholds_;
};

struct LPConstants {
  double c1 = 0;  // sup m(B_rho(0)) / rho^n over scales
  double c2 = 0;  // sup |phi_rho-hat(xi)| s^n over admissible (rho, s, xi)
  double c3 = 0;  // sup of the averaged |phi_rho-hat| mass over scales
};

/// The Littlewood-Paley data of a group: both ball families at their
/// breakpoints, the cutoffs phi_rho = indicator of B_rho(0), and the computed
/// structure constants. Immutable once built.
class LPSystem {
 public:
  static LPSystem build(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const ScaleSet& scales() const { return scales_; }
  std::size_t scale_count() const { return scales_.primal.size(); }
  std::int64_t primal_scale(std::size_t i) const { return scales_.primal[i]; }
  const Rational& dual_scale(std::size_t i) const { return scales_.dual[i]; }
  const BallFamily& primal_family() const { return *primal_; }
  const BallFamily& dual_family() const { return *dual_; }

  /// Counting measure of the primal ball at breakpoint i (both families share
  /// ball sets at matching indices; the dual mass divides by |G|).
  std::uint64_t ball_size(std::size_t i) const { return ball_sizes_[i]; }
  double dual_ball_mass(std::size_t i) const {
    return static_cast<double>(ball_sizes_[i]) / static_cast<double>(group_->size());
  }
  /// Balls here are subgroups iff the lcm of the admitted divisors is itself
  /// admitted; then ball i = {x : ||x|| divides subgroup_index(i)}.
  bool ball_is_subgroup(std::size_t i) const { return subgroup_index_[i] != 0; }
  std::int64_t subgroup_index(std::size_t i) const { return subgroup_index_[i]; }

  /// Largest breakpoint index with primal scale <= rho; -1 when rho is below
  /// the smallest breakpoint (empty ball).
  std::ptrdiff_t primal_index_for(double rho) const;
  /// First primal breakpoint whose origin ball contains x: equals ||x||.
  std::int64_t primal_entry_scale(std::uint64_t x) const { return group_->norm_of(x); }
  /// First dual breakpoint whose origin ball contains xi: ||xi|| / D.
  Rational dual_entry_scale(std::uint64_t xi) const {
    return Rational(group_->norm_of(xi), group_->diameter());
  }

  /// phi at breakpoint i as a function on G (indicator of the origin ball).
  GFunction projection(std::size_t i) const;
  /// Its Fourier transform, computed on demand.
  GFunction projection_hat(std::size_t i) const;

  const LPConstants& constants() const { return constants_; }

 private:
  GroupPtr group_;
  ScaleSet scales_;
  std::shared_ptr<NormBallFamily> primal_;
  std::shared_ptr<NormBallFamily> dual_;
  std::vector<std::uint64_t> ball_sizes_;
  std::vector<std::int64_t> subgroup_index_;
  LPConstants constants_;
};

/// Independent recomputation of the three structure constants.
LPConstants compute_system_constants(const LPSystem& sys);

struct AxiomCheckOptions {
  std::uint64_t seed = 0;
  /// Exhaustive translation check when #scales * |G|^2 stays below this;
  /// otherwise unit-vector and seeded random centers are used.
  std::uint64_t translation_budget = 100'000'000;
};

/// Checks the four ball axioms (nesting, symmetry, covering at the top scale,
/// translation invariance) for both families of `sys`.
Report verify_axioms(const LPSystem& sys, const AxiomCheckOptions& opts = {});
/// Same, for an arbitrary candidate family against a group and side label.
void verify_family_axioms(Report& rep, const Group& g, const BallFamily& fam,
                          const std::string& side, const AxiomCheckOptions& opts);

/// Re-derives the defining inequalities of the three constants at every
/// breakpoint pair (plus off-breakpoint spot checks) against stored values.
Report verify_conditions(const LPSystem& sys, double tolerance = 1e-9);

}  // namespace frk
