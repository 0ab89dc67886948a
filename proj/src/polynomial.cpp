#include "polynomial.hpp"

#include <cctype>
#include <stdexcept>

namespace frk {

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw std::invalid_argument("polynomial: expected an integer at offset " +
                                                std::to_string(start));
    return std::stoll(s.substr(start, i - start));
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  Polynomial poly;
  poly.text_ = text;
  Lexer lx{text};

  bool first = true;
  while (true) {
    lx.skip_ws();
    if (lx.i >= text.size()) {
      if (first) throw std::invalid_argument("polynomial: empty input");
      break;
    }
    std::int64_t sign = 1;
    if (lx.eat('-')) {
      sign = -1;
    } else if (!lx.eat('+') && !first) {
      throw std::invalid_argument("polynomial: expected '+' or '-' at offset " +
                                  std::to_string(lx.i));
    }
    Monomial m;
    m.coeff = sign;
    bool more = true;
    while (more) {
      char c = lx.peek();
      if (c == 'x') {
        ++lx.i;
        const std::int64_t var = lx.integer();
        if (var < 0 || var > 63) throw std::invalid_argument("polynomial: variable index out of range");
        std::uint32_t exp = 1;
        if (lx.eat('^')) {
          const std::int64_t e = lx.integer();
          if (e < 0 || e > 1'000'000) throw std::invalid_argument("polynomial: bad exponent");
          exp = static_cast<std::uint32_t>(e);
        }
        if (m.exps.size() <= static_cast<std::size_t>(var)) m.exps.resize(var + 1, 0);
        m.exps[var] += exp;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        m.coeff *= lx.integer();
      } else {
        throw std::invalid_argument("polynomial: unexpected character at offset " +
                                    std::to_string(lx.i));
      }
      more = lx.eat('*');
    }
    poly.arity_ = std::max(poly.arity_, static_cast<int>(m.exps.size()));
    poly.monomials_.push_back(std::move(m));
    first = false;
  }
  return poly;
}

std::int64_t Polynomial::eval(const Group& g, std::span<const std::int64_t> args) const {
  if (args.size() < static_cast<std::size_t>(arity_))
    throw std::invalid_argument("polynomial: not enough arguments");
  std::int64_t acc = g.scalar_from_int(0);
  for (const auto& m : monomials_) {
    std::int64_t term = g.scalar_from_int(m.coeff);
    for (std::size_t v = 0; v < m.exps.size(); ++v)
      if (m.exps[v] > 0) term = g.scalar_mul(term, g.scalar_pow(args[v], m.exps[v]));
    acc = g.scalar_add(acc, term);
  }
  return acc;
}

}  // namespace frk
