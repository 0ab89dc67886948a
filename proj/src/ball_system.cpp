#include "ball_system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace frk {

NormBallFamily::NormBallFamily(GroupPtr group, std::vector<std::int64_t> thresholds)
    : group_(std::move(group)), thresholds_(std::move(thresholds)) {
  if (thresholds_.empty()) throw std::invalid_argument("ball family needs at least one scale");
}

bool NormBallFamily::contains(std::size_t scale_idx, std::uint64_t center,
                              std::uint64_t point) const {
  return group_->norm_of(group_->sub(point, center)) <= thresholds_[scale_idx];
}

LPSystem LPSystem::build(GroupPtr group) {
  LPSystem sys;
  sys.group_ = group;
  const std::int64_t D = group->diameter();
  std::vector<std::int64_t> thresholds = group->kind() == GroupKind::CyclicModule
                                             ? divisors_of(D)
                                             : std::vector<std::int64_t>{1, D};
  sys.scales_.primal = thresholds;
  for (std::int64_t d : thresholds) sys.scales_.dual.emplace_back(d, D);
  sys.primal_ = std::make_shared<NormBallFamily>(group, thresholds);
  sys.dual_ = std::make_shared<NormBallFamily>(group, thresholds);

  // Ball measures by norm histogram: ball i = {x : ||x|| <= d_i} and every
  // norm value is a threshold, so a prefix sum over the histogram suffices.
  std::vector<std::uint64_t> hist(thresholds.size(), 0);
  for (std::uint64_t x = 0; x < group->size(); ++x) {
    const std::int64_t nm = group->norm_of(x);
    const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), nm);
    ++hist[static_cast<std::size_t>(it - thresholds.begin())];
  }
  sys.ball_sizes_.resize(thresholds.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    acc += hist[i];
    sys.ball_sizes_[i] = acc;
  }

  // Ball i is the union of the subgroups {||x|| divides d} over admitted d;
  // it is itself a subgroup iff the lcm of those d is admitted.
  sys.subgroup_index_.resize(thresholds.size());
  std::int64_t running_lcm = 1;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    running_lcm = std::lcm(running_lcm, thresholds[i]);
    sys.subgroup_index_[i] = running_lcm <= thresholds[i] ? running_lcm : 0;
  }

  sys.constants_ = compute_system_constants(sys);
  return sys;
}

std::ptrdiff_t LPSystem::primal_index_for(double rho) const {
  std::ptrdiff_t idx = -1;
  for (std::size_t i = 0; i < scales_.primal.size(); ++i)
    if (static_cast<double>(scales_.primal[i]) <= rho) idx = static_cast<std::ptrdiff_t>(i);
  return idx;
}

GFunction LPSystem::projection(std::size_t i) const {
  GFunction phi(group_, Domain::Group);
  const std::int64_t d = scales_.primal[i];
  for (std::uint64_t x = 0; x < group_->size(); ++x)
    if (group_->norm_of(x) <= d) phi[x] = 1.0;
  return phi;
}

GFunction LPSystem::projection_hat(std::size_t i) const { return fourier_forward(projection(i)); }

LPConstants compute_system_constants(const LPSystem& sys) {
  const Group& g = *sys.group();
  const int n = g.rank();
  const std::int64_t D = g.diameter();
  LPConstants out;

  // C1: ball measures vs rho^n. Between breakpoints the ball is frozen while
  // rho^n grows, so breakpoints (left endpoints) realize the sup.
  for (std::size_t i = 0; i < sys.scale_count(); ++i) {
    const double rho_n = std::pow(static_cast<double>(sys.primal_scale(i)), n);
    out.c1 = std::max(out.c1, static_cast<double>(sys.ball_size(i)) / rho_n);
  }

  // C2: sup |phi_rho-hat(xi)| s^n over scales rho, s >= 1/rho, and xi outside
  // B_s(0). For fixed xi the sup over admissible s sits at the entry scale
  // s_exit(xi) = ||xi||/D (closure convention), and xi = 0 never qualifies.
  // C3: the averaged |phi_rho-hat| mass, sup over rho.
  for (std::size_t i = 0; i < sys.scale_count(); ++i) {
    const GFunction phat = sys.projection_hat(i);
    const std::int64_t rho = sys.primal_scale(i);
    double total = 0;
    for (std::uint64_t xi = 0; xi < g.size(); ++xi) {
      const double mag = std::abs(phat[xi]);
      total += mag;
      if (xi == 0) continue;
      const std::int64_t nm = g.norm_of(xi);
      // s_exit >= 1/rho  <=>  nm * rho >= D.
      if (nm * rho < D) continue;
      const double s_exit_n = std::pow(static_cast<double>(nm) / static_cast<double>(D), n);
      out.c2 = std::max(out.c2, mag * s_exit_n);
    }
    out.c3 = std::max(out.c3, total / static_cast<double>(g.size()));
  }
  return out;
}

namespace {

void check_exhaustive_predicate(Report& rep, const std::string& check, const std::string& scale,
                                const std::string& params, const Group& g,
                                const std::function<bool(std::uint64_t)>& ok) {
  std::uint64_t violations = 0;
  std::string witness;
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    if (!ok(x)) {
      if (violations == 0) witness = "point=" + std::to_string(x);
      ++violations;
    }
  }
  rep.ineq(check, scale, params, 0.0, static_cast<double>(violations), 0.0, witness);
}

}  // namespace

void verify_family_axioms(Report& rep, const Group& g, const BallFamily& fam,
                          const std::string& side, const AxiomCheckOptions& opts) {
  const std::size_t k = fam.scale_count();

  for (std::size_t i = 0; i + 1 < k; ++i) {
    check_exhaustive_predicate(
        rep, "axiom.nesting", std::to_string(i) + "->" + std::to_string(i + 1), "side=" + side, g,
        [&](std::uint64_t x) { return !fam.contains(i, 0, x) || fam.contains(i + 1, 0, x); });
  }
  for (std::size_t i = 0; i < k; ++i) {
    check_exhaustive_predicate(
        rep, "axiom.symmetry", std::to_string(i), "side=" + side, g,
        [&](std::uint64_t x) { return fam.contains(i, 0, x) == fam.contains(i, 0, g.neg(x)); });
  }
  check_exhaustive_predicate(rep, "axiom.covering", std::to_string(k - 1), "side=" + side, g,
                             [&](std::uint64_t x) { return fam.contains(k - 1, 0, x); });

  // Translation invariance: B(c) must equal c + B(0) pointwise.
  const std::uint64_t exhaustive_cost =
      g.size() * g.size() * static_cast<std::uint64_t>(k);
  std::vector<std::uint64_t> centers;
  std::string mode;
  if (exhaustive_cost <= opts.translation_budget) {
    mode = "exhaustive";
    centers.resize(g.size());
    std::iota(centers.begin(), centers.end(), 0);
  } else {
    mode = "sampled";
    // Unit-vector multiples probe every coordinate direction; random centers
    // probe mixed ones. Duplicates are harmless.
    const std::int64_t q = g.alphabet();
    std::vector<std::int64_t> coords(g.rank(), 0);
    for (int axis = 0; axis < g.rank(); ++axis) {
      for (std::int64_t c = 1; c < q && c <= 64; ++c) {
        std::fill(coords.begin(), coords.end(), 0);
        coords[axis] = c;
        centers.push_back(g.encode(coords));
      }
    }
    CounterRng rng(opts.seed);
    for (std::uint64_t i = 0; i < 64; ++i) centers.push_back(rng.below(0x7472616e73ull, i, g.size()));
  }
  std::uint64_t violations = 0;
  std::string witness;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::uint64_t c : centers) {
      for (std::uint64_t y = 0; y < g.size(); ++y) {
        if (fam.contains(i, c, y) != fam.contains(i, 0, g.sub(y, c))) {
          if (violations == 0)
            witness = "scale=" + std::to_string(i) + " center=" + std::to_string(c) +
                      " point=" + std::to_string(y);
          ++violations;
        }
      }
    }
  }
  rep.ineq("axiom.translation", "", "side=" + side + " mode=" + mode, 0.0,
           static_cast<double>(violations), 0.0, witness);
}

Report verify_axioms(const LPSystem& sys, const AxiomCheckOptions& opts) {
  Report rep(sys.group()->label(), sys.group()->rank(), opts.seed);
  verify_family_axioms(rep, *sys.group(), sys.primal_family(), "primal", opts);
  verify_family_axioms(rep, *sys.group(), sys.dual_family(), "dual", opts);
  return rep;
}

Report verify_conditions(const LPSystem& sys, double tolerance) {
  const Group& g = *sys.group();
  const int n = g.rank();
  const std::int64_t D = g.diameter();
  const LPConstants& c = sys.constants();
  Report rep(g.label(), n, 0);

  // Regularity of the primal balls: m(B_rho(0)) <= C1 rho^n at breakpoints
  // and at midpoints between them (where the ball is the left one).
  for (std::size_t i = 0; i < sys.scale_count(); ++i) {
    const auto rho = static_cast<double>(sys.primal_scale(i));
    rep.ineq("system.regularity", std::to_string(sys.primal_scale(i)), "",
             c.c1 * std::pow(rho, n), static_cast<double>(sys.ball_size(i)), tolerance);
    if (i + 1 < sys.scale_count()) {
      const double mid = (rho + static_cast<double>(sys.primal_scale(i + 1))) / 2.0;
      rep.ineq("system.regularity", format_double(mid), "offbreak=true",
               c.c1 * std::pow(mid, n), static_cast<double>(sys.ball_size(i)), tolerance);
    }
  }

  // Cutoff decay: |phi_rho-hat(xi)| <= C2 s^{-n} whenever s >= 1/rho and
  // -xi lies outside B_s(0); entry points (||xi|| = D s) are included per the
  // closure convention. One record per (rho, s) pair.
  for (std::size_t i = 0; i < sys.scale_count(); ++i) {
    const GFunction phat = sys.projection_hat(i);
    const std::int64_t rho = sys.primal_scale(i);
    double total = 0;
    for (std::uint64_t xi = 0; xi < g.size(); ++xi) total += std::abs(phat[xi]);

    for (std::size_t j = 0; j < sys.scale_count(); ++j) {
      const Rational s = sys.dual_scale(j);
      if (Rational(1, rho) > s) continue;  // s >= 1/rho required
      const std::int64_t ds = s.numerator() * (D / s.denominator());  // D*s, integral here
      double worst = 0;
      std::uint64_t worst_xi = 0;
      for (std::uint64_t xi = 1; xi < g.size(); ++xi) {
        if (g.norm_of(g.neg(xi)) < ds) continue;
        const double mag = std::abs(phat[xi]);
        if (mag > worst) {
          worst = mag;
          worst_xi = xi;
        }
      }
      const double bound = c.c2 / std::pow(to_double(s), n);
      rep.ineq("system.cutoff_decay", std::to_string(rho), "s=" + to_string(s), bound, worst,
               tolerance, "xi=" + std::to_string(worst_xi));
    }
    rep.ineq("system.cutoff_mass", std::to_string(rho), "", c.c3,
             total / static_cast<double>(g.size()), tolerance);
  }
  return rep;
}

}  // namespace frk
