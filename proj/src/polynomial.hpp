#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "group.hpp"

namespace frk {

/// Sparse integer polynomial in variables x0, x1, ..., evaluated coordinatewise
/// in a group's scalar ring (Z/NZ or F_q; integer coefficients embed through
/// the canonical map). Grammar, whitespace-insensitive:
///   poly := ['-'] term (('+'|'-') term)*
///   term := factor ('*' factor)*
///   factor := integer | var ['^' integer]
///   var := 'x' integer
/// Examples: "x0^2 + x1^2", "3*x0*x1 - 2", "x0^3".
class Polynomial {
 public:
  struct Monomial {
    std::int64_t coeff = 1;
    std::vector<std::uint32_t> exps;  // exps[i] = power of x_i
  };

  static Polynomial parse(const std::string& text);

  int arity() const { return arity_; }  // 1 + max variable index (0 for constants)
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::string& text() const { return text_; }

  /// Evaluate at scalars args[0..], each in [0, group.alphabet()).
  std::int64_t eval(const Group& g, std::span<const std::int64_t> args) const;

 private:
  int arity_ = 0;
  std::vector<Monomial> monomials_;
  std::string text_;
};

}  // namespace frk
