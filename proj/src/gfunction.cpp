#include "gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frk {

GFunction::GFunction(GroupPtr group, Domain domain)
    : group_(std::move(group)), domain_(domain), values_(group_->size()) {}

GFunction::GFunction(GroupPtr group, Domain domain, std::vector<std::complex<double>> values)
    : group_(std::move(group)), domain_(domain), values_(std::move(values)) {
  if (values_.size() != group_->size())
    throw std::invalid_argument("value count does not match the group size");
}

nlohmann::ordered_json GFunction::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = group_->spec_json();
  j["domain"] = domain_ == Domain::Group ? "G" : "dual";
  auto vals = nlohmann::ordered_json::array();
  for (const auto& v : values_) vals.push_back({v.real(), v.imag()});
  j["values"] = std::move(vals);
  return j;
}

GFunction GFunction::from_json(const nlohmann::json& j, std::uint64_t size_cap) {
  auto group = Group::from_spec_json(j.at("spec"), size_cap);
  const std::string dom = j.at("domain").get<std::string>();
  if (dom != "G" && dom != "dual") throw std::invalid_argument("domain must be \"G\" or \"dual\"");
  const auto& vals = j.at("values");
  if (vals.size() != group->size())
    throw std::invalid_argument("value count does not match the group size");
  std::vector<std::complex<double>> values;
  values.reserve(vals.size());
  for (const auto& v : vals) values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  return GFunction(std::move(group), dom == "G" ? Domain::Group : Domain::Dual,
                   std::move(values));
}

void require_same_group(const GFunction& a, const GFunction& b) {
  if (!(*a.group() == *b.group()))
    throw std::invalid_argument("functions live on different groups");
}

namespace {

using cd = std::complex<double>;

// In-place DFT along every coordinate axis. sign=-1 pairs against <x,-xi>
// (forward), sign=+1 against <x,xi> (inverse direction, unscaled).
void axis_dft(std::vector<cd>& v, const Group& g, int sign) {
  const std::int64_t q = g.alphabet();
  const std::uint64_t uq = static_cast<std::uint64_t>(q);
  const std::int64_t m = g.root_modulus();
  std::vector<cd> fiber(uq), out(uq);

  // For fields, one q x q character matrix is reused across fibers and axes.
  std::vector<cd> mat;
  const bool use_matrix = g.kind() == GroupKind::FiniteField;
  if (use_matrix) {
    if (uq * uq > (std::uint64_t{1} << 24))
      throw std::length_error("field alphabet too large for the dense axis transform");
    mat.resize(uq * uq);
    for (std::int64_t t = 0; t < q; ++t)
      for (std::int64_t s = 0; s < q; ++s) {
        std::int64_t r = g.axis_char_index(t, s);
        if (sign < 0) r = (m - r) % m;
        mat[static_cast<std::size_t>(t) * uq + static_cast<std::size_t>(s)] = g.root(r);
      }
  }

  std::uint64_t stride = g.size() / uq;
  for (int axis = 0; axis < g.rank(); ++axis) {
    const std::uint64_t block = stride * uq;
    for (std::uint64_t outer = 0; outer < g.size(); outer += block) {
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        const std::uint64_t base = outer + inner;
        for (std::uint64_t t = 0; t < uq; ++t) fiber[t] = v[base + t * stride];
        if (use_matrix) {
          for (std::uint64_t t = 0; t < uq; ++t) {
            cd acc = 0;
            const cd* row = &mat[t * uq];
            for (std::uint64_t s = 0; s < uq; ++s) acc += row[s] * fiber[s];
            out[t] = acc;
          }
        } else {
          // Cyclic: root index walks by t (mod N) along the fiber.
          for (std::int64_t t = 0; t < q; ++t) {
            const std::int64_t step = sign > 0 ? t : (m - t) % m;
            std::int64_t r = 0;
            cd acc = 0;
            for (std::int64_t s = 0; s < q; ++s) {
              acc += g.root(r) * fiber[static_cast<std::size_t>(s)];
              r += step;
              if (r >= m) r -= m;
            }
            out[static_cast<std::size_t>(t)] = acc;
          }
        }
        for (std::uint64_t t = 0; t < uq; ++t) v[base + t * stride] = out[t];
      }
    }
    stride /= uq;
  }
}

}  // namespace

GFunction fourier_forward(const GFunction& f) {
  if (f.domain() != Domain::Group)
    throw std::invalid_argument("fourier_forward expects a function on G");
  std::vector<cd> v = f.values();
  axis_dft(v, *f.group(), -1);
  return GFunction(f.group(), Domain::Dual, std::move(v));
}

GFunction fourier_inverse(const GFunction& g) {
  if (g.domain() != Domain::Dual)
    throw std::invalid_argument("fourier_inverse expects a function on the dual group");
  std::vector<cd> v = g.values();
  axis_dft(v, *g.group(), +1);
  const double scale = 1.0 / static_cast<double>(g.group()->size());
  for (auto& x : v) x *= scale;
  return GFunction(g.group(), Domain::Group, std::move(v));
}

GFunction synthesis_sum(const GFunction& g) {
  if (g.domain() != Domain::Dual)
    throw std::invalid_argument("synthesis_sum expects a function on the dual group");
  std::vector<cd> v = g.values();
  axis_dft(v, *g.group(), +1);
  return GFunction(g.group(), Domain::Group, std::move(v));
}

double lp_norm(const GFunction& f, double p) {
  if (!(p > 0)) throw std::domain_error("lp_norm needs p > 0");
  if (std::isinf(p)) return linf_norm(f);
  const double w = f.atom_weight();
  double acc = 0;
  for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
  return std::pow(acc * w, 1.0 / p);
}

double linf_norm(const GFunction& f) {
  double m = 0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

std::complex<double> inner_product(const GFunction& f, const GFunction& g) {
  require_same_group(f, g);
  if (f.domain() != g.domain())
    throw std::invalid_argument("inner_product needs matching domains");
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return acc * f.atom_weight();
}

double lorentz_norm(const GFunction& f, double p, double s) {
  if (!(p > 0)) throw std::domain_error("lorentz_norm needs p > 0");
  if (!(s > 0)) throw std::domain_error("lorentz_norm needs s > 0");
  std::vector<double> mags;
  mags.reserve(f.size());
  for (const auto& v : f.values()) {
    const double a = std::abs(v);
    if (a > 0) mags.push_back(a);
  }
  if (mags.empty()) return 0;
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double w = f.atom_weight();
  // The decreasing rearrangement is a step function with steps of width w:
  // f*(t) = mags[i] on [i w, (i+1) w).
  if (std::isinf(s)) {
    double best = 0;
    for (std::size_t i = 0; i < mags.size(); ++i)
      best = std::max(best, mags[i] * std::pow(static_cast<double>(i + 1) * w, 1.0 / p));
    return best;
  }
  double acc = 0;
  double prev = 0;  // t_i^{s/p}
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double next = std::pow(static_cast<double>(i + 1) * w, s / p);
    acc += std::pow(mags[i], s) * (p / s) * (next - prev);
    prev = next;
  }
  return std::pow(acc, 1.0 / s);
}

}  // namespace frk
