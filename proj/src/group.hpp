#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace frk {

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 20;

enum class GroupKind { CyclicModule, FiniteField };

/// A finite abelian group G = A^n where A is either Z/NZ or the additive
/// group of F_q (q = p^k), self-dual through an explicit character pairing:
///   cyclic:  <x, xi> = e(x.xi / N)
///   field:   <x, xi> = e(Tr(x.xi) / p),  Tr = absolute trace to F_p
/// Points are handled as flat indices in [0, |G|); coordinate 0 is the most
/// significant digit. Field elements are indexed by their coefficient vector
/// in base p against the chosen monic irreducible modulus polynomial.
class Group {
 public:
  static std::shared_ptr<const Group> cyclic(std::int64_t modulus, int rank,
                                             std::uint64_t size_cap = kDefaultSizeCap);
  /// modulus_poly: coefficients c[0] + c[1] X + ... + c[degree] X^degree, monic,
  /// irreducible over F_p. Prime fields (degree 1) may pass {0, 1}.
  static std::shared_ptr<const Group> finite_field(std::int64_t characteristic, int degree,
                                                   std::vector<std::int64_t> modulus_poly,
                                                   int rank,
                                                   std::uint64_t size_cap = kDefaultSizeCap);
  static std::shared_ptr<const Group> prime_field(std::int64_t p, int rank,
                                                  std::uint64_t size_cap = kDefaultSizeCap);

  GroupKind kind() const { return kind_; }
  /// Coordinate alphabet size: N for Z/NZ, q for F_q.
  std::int64_t alphabet() const { return alphabet_; }
  std::int64_t characteristic() const { return characteristic_; }
  int degree() const { return degree_; }
  const std::vector<std::int64_t>& modulus_poly() const { return modulus_poly_; }
  int rank() const { return rank_; }
  std::uint64_t size() const { return size_; }
  /// Largest point norm (equals the alphabet for both kinds).
  std::int64_t diameter() const { return alphabet_; }
  bool operator==(const Group& o) const;
  std::string label() const;

  nlohmann::ordered_json spec_json() const;
  static std::shared_ptr<const Group> from_spec_json(const nlohmann::json& j,
                                                     std::uint64_t size_cap = kDefaultSizeCap);

  void decode(std::uint64_t index, std::span<std::int64_t> coords) const;
  std::vector<std::int64_t> point(std::uint64_t index) const;
  /// Coordinates are reduced into canonical range, so any integers are accepted.
  std::uint64_t encode(std::span<const std::int64_t> coords) const;

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t neg(std::uint64_t x) const;

  /// ||x|| = N / gcd(x_1, ..., x_n, N) for cyclic groups; 1 for 0 and q
  /// otherwise over F_q. Always a divisor of the diameter, and 1 iff x = 0.
  std::int64_t norm_of(std::uint64_t index) const;

  // Scalar (single-coordinate) arithmetic. Scalars live in [0, alphabet).
  std::int64_t scalar_add(std::int64_t a, std::int64_t b) const;
  std::int64_t scalar_neg(std::int64_t a) const;
  std::int64_t scalar_mul(std::int64_t a, std::int64_t b) const;
  std::int64_t scalar_pow(std::int64_t a, std::uint64_t e) const;
  std::int64_t scalar_from_int(std::int64_t c) const;

  /// e(2 pi i k / M) with M = root_modulus(); index k taken mod M.
  std::complex<double> root(std::int64_t k) const {
    return roots_[static_cast<std::size_t>(k % root_modulus_)];
  }
  /// N for cyclic groups, p for fields: the order of the character image.
  std::int64_t root_modulus() const { return root_modulus_; }
  /// Root index of the one-coordinate pairing <s, t>: s.t mod N, or Tr(s.t).
  std::int64_t axis_char_index(std::int64_t s, std::int64_t t) const;

  std::complex<double> pairing(std::uint64_t x, std::uint64_t xi) const;

 private:
  Group() = default;

  GroupKind kind_ = GroupKind::CyclicModule;
  std::int64_t alphabet_ = 0;
  std::int64_t characteristic_ = 0;
  int degree_ = 1;
  std::vector<std::int64_t> modulus_poly_;
  int rank_ = 1;
  std::uint64_t size_ = 0;
  std::int64_t root_modulus_ = 0;
  std::vector<std::complex<double>> roots_;
  std::vector<std::int64_t> trace_;  // fields: Tr(elem) in [0, p), indexed by element

  std::int64_t field_mul(std::int64_t a, std::int64_t b) const;
  void build_trace_table();
};

using GroupPtr = std::shared_ptr<const Group>;

/// Divisors of n in ascending order.
std::vector<std::int64_t> divisors_of(std::int64_t n);

bool is_prime(std::int64_t n);

/// n = p^alpha with p prime? Returns {p, alpha} if so.
struct PrimePower {
  std::int64_t p = 0;
  int alpha = 0;
};
std::optional<PrimePower> as_prime_power(std::int64_t n);

}  // namespace frk
