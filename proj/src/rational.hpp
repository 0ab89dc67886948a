#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace frk {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// x^e for rational e (numeric, not exact).
inline double rpow(double x, const Rational& e) {
  return std::pow(x, to_double(e));
}

/// Hoelder conjugate p/(p-1); requires p > 1.
inline Rational conjugate(const Rational& p) {
  if (p <= Rational(1)) throw std::domain_error("conjugate exponent needs p > 1");
  return p / (p - Rational(1));
}

/// Accepts "3", "-2", "3/4", and terminating decimals like "1.5".
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto parse_int = [](const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
      out = std::stoll(s, &pos);
    } catch (const std::exception&) {
      return false;
    }
    return pos == s.size();
  };
  std::int64_t num = 0;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::int64_t den = 0;
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den) ||
        den == 0)
      return std::nullopt;
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0 || frac_len > 9) return std::nullopt;
    if (!parse_int(digits, num)) return std::nullopt;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
  }
  if (!parse_int(text, num)) return std::nullopt;
  return Rational(num);
}

}  // namespace frk
