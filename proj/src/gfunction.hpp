#pragma once

#include <complex>
#include <vector>

#include "group.hpp"
#include "json.hpp"

namespace frk {

/// Which measure space a function lives on. The group side G carries counting
/// measure (weight 1 per point); the dual side carries normalized counting
/// measure (weight 1/|G| per point, total mass 1).
enum class Domain { Group, Dual };

class GFunction {
 public:
  GFunction(GroupPtr group, Domain domain);
  GFunction(GroupPtr group, Domain domain, std::vector<std::complex<double>> values);

  const GroupPtr& group() const { return group_; }
  Domain domain() const { return domain_; }
  double atom_weight() const {
    return domain_ == Domain::Group ? 1.0 : 1.0 / static_cast<double>(group_->size());
  }
  std::size_t size() const { return values_.size(); }
  std::complex<double>& operator[](std::size_t i) { return values_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return values_[i]; }
  std::vector<std::complex<double>>& values() { return values_; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  nlohmann::ordered_json to_json() const;
  static GFunction from_json(const nlohmann::json& j, std::uint64_t size_cap = kDefaultSizeCap);

 private:
  GroupPtr group_;
  Domain domain_;
  std::vector<std::complex<double>> values_;
};

/// f-hat(xi) = sum_x f(x) <x, -xi>. Input on G, output on the dual.
GFunction fourier_forward(const GFunction& f);
/// f(x) = |G|^{-1} sum_xi g(xi) <x, xi>. Input on the dual, output on G.
GFunction fourier_inverse(const GFunction& g);
/// sum_xi g(xi) <x, xi> without the 1/|G| factor (synthesis against raw
/// weights; the measure inverse transform and multiplier operators use this).
GFunction synthesis_sum(const GFunction& g);

double lp_norm(const GFunction& f, double p);
double linf_norm(const GFunction& f);
/// L^2 pairing <f, g> = sum f conj(g) against the domain measure.
std::complex<double> inner_product(const GFunction& f, const GFunction& g);

/// Lorentz quasi-norm ||f||_{p,s} over the atomic measure space of f's domain.
/// s may be infinity. ||f||_{p,p} agrees with lp_norm(f, p).
double lorentz_norm(const GFunction& f, double p, double s);

void require_same_group(const GFunction& a, const GFunction& b);

}  // namespace frk
