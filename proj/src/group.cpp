#include "group.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace frk {

namespace {

// Dense polynomial arithmetic over F_p, coefficients in [0, p), used for the
// field tables. Degrees stay tiny (the extension degree), so schoolbook is fine.
using Poly = std::vector<std::int64_t>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::int64_t p) {
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  // mod is monic of degree k: reduce from the top.
  const std::size_t k = mod.size() - 1;
  for (std::size_t d = prod.size(); d-- > k;) {
    std::int64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t j = 0; j < k; ++j) {
      prod[d - k + j] = ((prod[d - k + j] - c * mod[j]) % p + p) % p;
    }
  }
  prod.resize(k);
  return prod;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
}

// Trial division by every monic polynomial of degree <= deg(mod)/2.
bool poly_irreducible(const Poly& mod, std::int64_t p) {
  const int k = static_cast<int>(mod.size()) - 1;
  if (k == 1) return true;
  for (int d = 1; 2 * d <= k; ++d) {
    // Enumerate monic degree-d candidates by their d lower coefficients.
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      Poly cand(d + 1, 0);
      std::int64_t c = code;
      for (int i = 0; i < d; ++i) {
        cand[i] = c % p;
        c /= p;
      }
      cand[d] = 1;
      // Remainder of mod by cand.
      Poly rem = mod;
      for (std::size_t t = rem.size(); t-- > static_cast<std::size_t>(d);) {
        std::int64_t lead = rem[t];
        if (lead == 0) continue;
        rem[t] = 0;
        for (int j = 0; j < d; ++j)
          rem[t - d + j] = ((rem[t - d + j] - lead * cand[j]) % p + p) % p;
      }
      rem.resize(d);
      if (poly_is_zero(rem)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<PrimePower> as_prime_power(std::int64_t n) {
  if (n < 2) return std::nullopt;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{n, 1};
  int alpha = 0;
  std::int64_t m = n;
  while (m % p == 0) {
    m /= p;
    ++alpha;
  }
  if (m != 1) return std::nullopt;
  return PrimePower{p, alpha};
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const Group> Group::cyclic(std::int64_t modulus, int rank,
                                           std::uint64_t size_cap) {
  if (modulus < 2) throw std::invalid_argument("cyclic modulus must be >= 2");
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::CyclicModule;
  g->alphabet_ = modulus;
  g->characteristic_ = modulus;
  g->degree_ = 1;
  g->rank_ = rank;
  g->root_modulus_ = modulus;
  std::uint64_t size = 1;
  for (int i = 0; i < rank; ++i) {
    if (size > size_cap / static_cast<std::uint64_t>(modulus))
      throw std::length_error("group size exceeds the size cap");
    size *= static_cast<std::uint64_t>(modulus);
  }
  g->size_ = size;
  g->roots_.resize(modulus);
  for (std::int64_t k = 0; k < modulus; ++k)
    g->roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(modulus));
  return g;
}

std::shared_ptr<const Group> Group::prime_field(std::int64_t p, int rank,
                                                std::uint64_t size_cap) {
  return finite_field(p, 1, {0, 1}, rank, size_cap);
}

std::shared_ptr<const Group> Group::finite_field(std::int64_t characteristic, int degree,
                                                 std::vector<std::int64_t> modulus_poly,
                                                 int rank, std::uint64_t size_cap) {
  if (!is_prime(characteristic)) throw std::invalid_argument("field characteristic must be prime");
  if (degree < 1) throw std::invalid_argument("field degree must be >= 1");
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (modulus_poly.size() != static_cast<std::size_t>(degree) + 1)
    throw std::invalid_argument("modulus polynomial must have degree+1 coefficients");
  for (auto& c : modulus_poly) c = ((c % characteristic) + characteristic) % characteristic;
  if (modulus_poly.back() != 1)
    throw std::invalid_argument("modulus polynomial must be monic");
  if (!poly_irreducible(modulus_poly, characteristic))
    throw std::invalid_argument("modulus polynomial is reducible");

  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteField;
  g->characteristic_ = characteristic;
  g->degree_ = degree;
  g->modulus_poly_ = std::move(modulus_poly);
  g->rank_ = rank;
  std::int64_t q = 1;
  for (int i = 0; i < degree; ++i) {
    if (q > static_cast<std::int64_t>(size_cap) / characteristic)
      throw std::length_error("field size exceeds the size cap");
    q *= characteristic;
  }
  g->alphabet_ = q;
  g->root_modulus_ = characteristic;
  std::uint64_t size = 1;
  for (int i = 0; i < rank; ++i) {
    if (size > size_cap / static_cast<std::uint64_t>(q))
      throw std::length_error("group size exceeds the size cap");
    size *= static_cast<std::uint64_t>(q);
  }
  g->size_ = size;
  g->roots_.resize(characteristic);
  for (std::int64_t k = 0; k < characteristic; ++k)
    g->roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(characteristic));
  g->build_trace_table();
  return g;
}

void Group::build_trace_table() {
  const std::int64_t q = alphabet_;
  const std::int64_t p = characteristic_;
  trace_.assign(q, 0);
  for (std::int64_t e = 0; e < q; ++e) {
    // Tr(u) = u + u^p + ... + u^{p^{k-1}}, computed with repeated Frobenius.
    std::int64_t frob = e;
    std::int64_t acc = e;  // accumulate as field element; result lies in F_p
    for (int i = 1; i < degree_; ++i) {
      frob = scalar_pow(frob, static_cast<std::uint64_t>(p));
      acc = scalar_add(acc, frob);
    }
    if (acc >= p) throw std::logic_error("trace left the prime subfield");
    trace_[e] = acc;
  }
}

bool Group::operator==(const Group& o) const {
  return kind_ == o.kind_ && alphabet_ == o.alphabet_ && characteristic_ == o.characteristic_ &&
         degree_ == o.degree_ && modulus_poly_ == o.modulus_poly_ && rank_ == o.rank_;
}

std::string Group::label() const {
  std::string base = kind_ == GroupKind::CyclicModule ? "Z_" : "F_";
  return base + std::to_string(alphabet_) + "^" + std::to_string(rank_);
}

nlohmann::ordered_json Group::spec_json() const {
  nlohmann::ordered_json j;
  if (kind_ == GroupKind::CyclicModule) {
    j["kind"] = "cyclic_module";
    j["modulus"] = alphabet_;
  } else {
    j["kind"] = "finite_field";
    j["characteristic"] = characteristic_;
    j["degree"] = degree_;
    j["modulus_poly"] = modulus_poly_;
  }
  j["rank"] = rank_;
  return j;
}

std::shared_ptr<const Group> Group::from_spec_json(const nlohmann::json& j,
                                                   std::uint64_t size_cap) {
  const std::string kind = j.at("kind").get<std::string>();
  const int rank = j.at("rank").get<int>();
  if (kind == "cyclic_module")
    return cyclic(j.at("modulus").get<std::int64_t>(), rank, size_cap);
  if (kind == "finite_field")
    return finite_field(j.at("characteristic").get<std::int64_t>(), j.at("degree").get<int>(),
                        j.at("modulus_poly").get<std::vector<std::int64_t>>(), rank, size_cap);
  throw std::invalid_argument("unknown group kind: " + kind);
}

void Group::decode(std::uint64_t index, std::span<std::int64_t> coords) const {
  const auto q = static_cast<std::uint64_t>(alphabet_);
  for (int i = rank_; i-- > 0;) {
    coords[i] = static_cast<std::int64_t>(index % q);
    index /= q;
  }
}

std::vector<std::int64_t> Group::point(std::uint64_t index) const {
  std::vector<std::int64_t> c(rank_);
  decode(index, c);
  return c;
}

std::uint64_t Group::encode(std::span<const std::int64_t> coords) const {
  if (coords.size() != static_cast<std::size_t>(rank_))
    throw std::invalid_argument("coordinate count does not match the rank");
  const std::int64_t q = alphabet_;
  std::uint64_t idx = 0;
  for (std::int64_t c : coords) {
    c = ((c % q) + q) % q;
    idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(c);
  }
  return idx;
}

std::uint64_t Group::add(std::uint64_t x, std::uint64_t y) const {
  const auto q = static_cast<std::uint64_t>(alphabet_);
  std::uint64_t out = 0;
  std::uint64_t place = size_ / q;
  for (int i = 0; i < rank_; ++i) {
    const std::int64_t a = static_cast<std::int64_t>((x / place) % q);
    const std::int64_t b = static_cast<std::int64_t>((y / place) % q);
    out += static_cast<std::uint64_t>(scalar_add(a, b)) * place;
    place /= q;
  }
  return out;
}

std::uint64_t Group::sub(std::uint64_t x, std::uint64_t y) const { return add(x, neg(y)); }

std::uint64_t Group::neg(std::uint64_t x) const {
  const auto q = static_cast<std::uint64_t>(alphabet_);
  std::uint64_t out = 0;
  std::uint64_t place = size_ / q;
  for (int i = 0; i < rank_; ++i) {
    const std::int64_t a = static_cast<std::int64_t>((x / place) % q);
    out += static_cast<std::uint64_t>(scalar_neg(a)) * place;
    place /= q;
  }
  return out;
}

std::int64_t Group::norm_of(std::uint64_t index) const {
  if (kind_ == GroupKind::FiniteField) return index == 0 ? 1 : alphabet_;
  const auto n = static_cast<std::uint64_t>(alphabet_);
  std::int64_t g = alphabet_;
  for (int i = 0; i < rank_ && g > 1; ++i) {
    g = std::gcd(g, static_cast<std::int64_t>(index % n));
    index /= n;
  }
  return alphabet_ / g;
}

std::int64_t Group::scalar_add(std::int64_t a, std::int64_t b) const {
  if (kind_ == GroupKind::CyclicModule || degree_ == 1) {
    std::int64_t s = a + b;
    return s >= alphabet_ ? s - alphabet_ : s;
  }
  // Digit-wise addition mod p.
  const std::int64_t p = characteristic_;
  std::int64_t out = 0, place = 1;
  while (a != 0 || b != 0) {
    std::int64_t s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * place;
    place *= p;
    a /= p;
    b /= p;
  }
  return out;
}

std::int64_t Group::scalar_neg(std::int64_t a) const {
  if (kind_ == GroupKind::CyclicModule || degree_ == 1) return a == 0 ? 0 : alphabet_ - a;
  const std::int64_t p = characteristic_;
  std::int64_t out = 0, place = 1;
  while (a != 0) {
    std::int64_t d = a % p;
    out += (d == 0 ? 0 : p - d) * place;
    place *= p;
    a /= p;
  }
  return out;
}

std::int64_t Group::field_mul(std::int64_t a, std::int64_t b) const {
  const std::int64_t p = characteristic_;
  Poly pa(degree_, 0), pb(degree_, 0);
  for (int i = 0; i < degree_; ++i) {
    pa[i] = a % p;
    a /= p;
    pb[i] = b % p;
    b /= p;
  }
  Poly prod = poly_mul_mod(pa, pb, modulus_poly_, p);
  std::int64_t out = 0;
  for (int i = degree_; i-- > 0;) out = out * p + prod[i];
  return out;
}

std::int64_t Group::scalar_mul(std::int64_t a, std::int64_t b) const {
  if (kind_ == GroupKind::CyclicModule) return (a * b) % alphabet_;
  if (degree_ == 1) return (a * b) % characteristic_;
  return field_mul(a, b);
}

std::int64_t Group::scalar_pow(std::int64_t a, std::uint64_t e) const {
  std::int64_t base = a;
  std::int64_t acc = scalar_from_int(1);
  while (e > 0) {
    if (e & 1) acc = scalar_mul(acc, base);
    base = scalar_mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::int64_t Group::scalar_from_int(std::int64_t c) const {
  const std::int64_t m = kind_ == GroupKind::CyclicModule ? alphabet_ : characteristic_;
  return ((c % m) + m) % m;
}

std::int64_t Group::axis_char_index(std::int64_t s, std::int64_t t) const {
  if (kind_ == GroupKind::CyclicModule) return (s * t) % alphabet_;
  const std::int64_t prod = degree_ == 1 ? (s * t) % characteristic_ : field_mul(s, t);
  return degree_ == 1 ? prod : trace_[prod];
}

std::complex<double> Group::pairing(std::uint64_t x, std::uint64_t xi) const {
  const auto q = static_cast<std::uint64_t>(alphabet_);
  std::int64_t acc = 0;
  for (int i = 0; i < rank_; ++i) {
    acc += axis_char_index(static_cast<std::int64_t>(x % q), static_cast<std::int64_t>(xi % q));
    x /= q;
    xi /= q;
  }
  return root(acc);
}

}  // namespace frk
