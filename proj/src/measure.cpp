#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gauss_sum.hpp"

namespace frk {

DualMeasure::DualMeasure(GroupPtr group, std::vector<Atom> atoms, std::string kind)
    : group_(std::move(group)), atoms_(std::move(atoms)), kind_(std::move(kind)) {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    if (a.weight < 0) throw std::invalid_argument("measure weights must be nonnegative");
    if (a.point >= group_->size()) throw std::invalid_argument("atom outside the group");
    if (a.weight == 0) continue;
    if (!merged.empty() && merged.back().point == a.point)
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);
  for (const auto& a : atoms_) mass_ += a.weight;
}

DualMeasure DualMeasure::graph(GroupPtr group, const Polynomial& h) {
  const int n = group->rank();
  if (n < 2) throw std::domain_error("graph measures need rank >= 2");
  if (h.arity() > n - 1)
    throw std::invalid_argument("graph polynomial uses more than rank-1 variables");
  const std::int64_t q = group->alphabet();
  std::uint64_t base = 1;
  for (int i = 0; i + 1 < n; ++i) base *= static_cast<std::uint64_t>(q);
  const double w = 1.0 / static_cast<double>(base);

  std::vector<Atom> atoms;
  atoms.reserve(base);
  std::vector<std::int64_t> coords(n, 0);
  for (std::uint64_t idx = 0; idx < base; ++idx) {
    std::uint64_t rest = idx;
    for (int i = n - 2; i >= 0; --i) {
      coords[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(q));
      rest /= static_cast<std::uint64_t>(q);
    }
    coords[n - 1] = h.eval(*group, std::span<const std::int64_t>(coords.data(), n - 1));
    atoms.push_back({group->encode(coords), w});
  }
  return DualMeasure(std::move(group), std::move(atoms), "graph:" + h.text());
}

DualMeasure DualMeasure::paraboloid(GroupPtr group) {
  const int n = group->rank();
  if (n < 2) throw std::domain_error("the paraboloid needs rank >= 2");
  if (group->characteristic() % 2 == 0)
    throw std::domain_error("the paraboloid needs odd characteristic");
  std::string text;
  for (int i = 0; i + 1 < n; ++i) {
    if (i) text += " + ";
    text += "x" + std::to_string(i) + "^2";
  }
  auto mu = graph(std::move(group), Polynomial::parse(text));
  mu.kind_ = "paraboloid";
  return mu;
}

DualMeasure DualMeasure::from_weights(GroupPtr group, std::vector<Atom> atoms) {
  return DualMeasure(std::move(group), std::move(atoms), "weights");
}

double DualMeasure::weight_at(std::uint64_t point) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                             [](const Atom& a, std::uint64_t p) { return a.point < p; });
  return it != atoms_.end() && it->point == point ? it->weight : 0.0;
}

GFunction DualMeasure::weight_function() const {
  GFunction w(group_, Domain::Dual);
  for (const auto& a : atoms_) w[a.point] = a.weight;
  return w;
}

nlohmann::ordered_json DualMeasure::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = group_->spec_json();
  j["kind"] = kind_;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& a : atoms_) w[std::to_string(a.point)] = a.weight;
  j["weights"] = std::move(w);
  return j;
}

DualMeasure DualMeasure::from_json(const nlohmann::json& j, std::uint64_t size_cap) {
  auto group = Group::from_spec_json(j.at("spec"), size_cap);
  std::vector<Atom> atoms;
  for (const auto& [key, value] : j.at("weights").items()) {
    std::size_t pos = 0;
    const std::uint64_t point = std::stoull(key, &pos);
    if (pos != key.size()) throw std::invalid_argument("bad weight key: " + key);
    atoms.push_back({point, value.get<double>()});
  }
  auto mu = DualMeasure(std::move(group), std::move(atoms), "weights");
  if (j.contains("kind")) mu.kind_ = j.at("kind").get<std::string>();
  return mu;
}

GFunction inverse_transform_measure(const DualMeasure& mu) {
  return synthesis_sum(mu.weight_function());
}

std::vector<double> ball_masses(const DualMeasure& mu, const LPSystem& sys, std::size_t j) {
  const Group& g = *mu.group();
  std::vector<double> masses(g.size(), 0.0);
  if (sys.ball_is_subgroup(j)) {
    // Ball = subgroup H of index (D/m)^n; mass of xi + H depends only on the
    // coset, keyed by coordinates mod D/m.
    const std::int64_t m = sys.subgroup_index(j);
    const std::int64_t qmod = g.diameter() / m;
    const int n = g.rank();
    auto coset_key = [&](std::uint64_t idx) {
      if (qmod == 1) return std::uint64_t{0};
      const auto q = static_cast<std::uint64_t>(g.alphabet());
      std::uint64_t key = 0, place = 1;
      for (int i = 0; i < n; ++i) {
        key += ((idx % q) % static_cast<std::uint64_t>(qmod)) * place;
        place *= static_cast<std::uint64_t>(qmod);
        idx /= q;
      }
      return key;
    };
    std::uint64_t buckets = 1;
    for (int i = 0; i < n; ++i) buckets *= static_cast<std::uint64_t>(qmod);
    std::vector<double> coset_mass(buckets, 0.0);
    for (const auto& a : mu.atoms()) coset_mass[coset_key(a.point)] += a.weight;
    for (std::uint64_t xi = 0; xi < g.size(); ++xi) masses[xi] = coset_mass[coset_key(xi)];
    return masses;
  }
  // General union-of-subgroups ball: scatter each atom over the negated ball
  // offsets. Symmetry makes negation a no-op, but keep the faithful form.
  const std::int64_t d = sys.primal_scale(j);
  std::vector<std::uint64_t> offsets;
  for (std::uint64_t y = 0; y < g.size(); ++y)
    if (g.norm_of(y) <= d) offsets.push_back(y);
  for (const auto& a : mu.atoms())
    for (std::uint64_t y : offsets) masses[g.sub(a.point, y)] += a.weight;
  return masses;
}

double regularity_constant(const DualMeasure& mu, const LPSystem& sys, const Rational& a) {
  double best = 0;
  for (std::size_t j = 0; j < sys.scale_count(); ++j) {
    const auto masses = ball_masses(mu, sys, j);
    const double top = *std::max_element(masses.begin(), masses.end());
    best = std::max(best, top / rpow(to_double(sys.dual_scale(j)), a));
  }
  return best;
}

double decay_constant(const DualMeasure& mu, const LPSystem& sys, const Rational& b) {
  const GFunction mu_check = inverse_transform_measure(mu);
  const Group& g = *mu.group();
  double best = 0;
  for (std::uint64_t x = 1; x < g.size(); ++x) {
    const auto nm = static_cast<double>(sys.primal_entry_scale(x));
    best = std::max(best, std::abs(mu_check[x]) * rpow(nm, b / 2));
  }
  return best;
}

MeasureProfile measure_profile(const DualMeasure& mu, const LPSystem& sys, const Rational& a,
                               const Rational& b) {
  return MeasureProfile{a, regularity_constant(mu, sys, a), b, decay_constant(mu, sys, b)};
}

Report measure_analyze(const DualMeasure& mu, const LPSystem& sys, const Rational& a,
                       const Rational& b, double tolerance) {
  const Group& g = *mu.group();
  if (!(*sys.group() == g)) throw std::invalid_argument("measure and system group mismatch");
  Report rep(g.label(), g.rank(), 0);

  const double A = regularity_constant(mu, sys, a);
  const double B = decay_constant(mu, sys, b);
  rep.ineq("measure.regularity_constant", "", "a=" + to_string(a), A, A, 0.0);
  rep.ineq("measure.decay_constant", "", "b=" + to_string(b), B, B, 0.0);

  const GFunction mu_check = inverse_transform_measure(mu);
  rep.ineq("measure.mu_check_at_zero", "", "", 1e-12 * std::max(1.0, mu.mass()),
           std::abs(mu_check[0] - mu.mass()), 0.0);

  // Regularity at every (center, breakpoint) pair against A s^a.
  for (std::size_t j = 0; j < sys.scale_count(); ++j) {
    const auto masses = ball_masses(mu, sys, j);
    double worst = 0;
    std::uint64_t worst_xi = 0;
    for (std::uint64_t xi = 0; xi < g.size(); ++xi) {
      if (masses[xi] > worst) {
        worst = masses[xi];
        worst_xi = xi;
      }
    }
    const Rational s = sys.dual_scale(j);
    rep.ineq("measure.regularity", to_string(s), "", A * rpow(to_double(s), a), worst, tolerance,
             "xi=" + std::to_string(worst_xi));
  }

  // Decay at every (point, breakpoint) pair with x outside-or-entering
  // B_rho(0): |mu-check(x)| <= B rho^{-b/2}. x = 0 sits in every ball.
  for (std::size_t i = 0; i < sys.scale_count(); ++i) {
    const std::int64_t rho = sys.primal_scale(i);
    double worst = 0;
    std::uint64_t worst_x = 0;
    for (std::uint64_t x = 1; x < g.size(); ++x) {
      if (g.norm_of(x) < rho) continue;
      const double mag = std::abs(mu_check[x]);
      if (mag > worst) {
        worst = mag;
        worst_x = x;
      }
    }
    rep.ineq("measure.decay", std::to_string(rho), "",
             B / rpow(static_cast<double>(rho), b / 2), worst, tolerance,
             "x=" + std::to_string(worst_x));
  }

  if (mu.kind() == "paraboloid") {
    // |mu-check(x)| <= ||x||^{-(n-1)/2} exhaustively; for cyclic prime powers
    // also match the closed Gauss-sum form pointwise.
    const Rational half_dim(g.rank() - 1, 2);
    double worst = 0;
    std::uint64_t worst_x = 0;
    for (std::uint64_t x = 1; x < g.size(); ++x) {
      const double r =
          std::abs(mu_check[x]) * rpow(static_cast<double>(g.norm_of(x)), half_dim);
      if (r > worst) {
        worst = r;
        worst_x = x;
      }
    }
    rep.ineq("measure.paraboloid_decay_law", "", "", 1.0, worst, tolerance,
             "x=" + std::to_string(worst_x));

    if (g.kind() == GroupKind::CyclicModule && as_prime_power(g.alphabet())) {
      double diff = 0;
      std::uint64_t diff_x = 0;
      for (std::uint64_t x = 0; x < g.size(); ++x) {
        const double d = std::abs(mu_check[x] - paraboloid_transform_closed(g, x));
        if (d > diff) {
          diff = d;
          diff_x = x;
        }
      }
      rep.ineq("measure.closed_form_agreement", "", "", 1e-9, diff, 0.0,
               "x=" + std::to_string(diff_x));
    }
  }
  return rep;
}

}  // namespace frk
