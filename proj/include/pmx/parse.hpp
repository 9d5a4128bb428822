#pragma once

// Text formats: polynomials, ideal files and matrix literals.
//
// Polynomial grammar (whitespace insignificant):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*      division only by nonzero constants
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | name ('[' integer ',' integer ']')? | '(' expr ')'

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmx/field.hpp"
#include "pmx/polynomial.hpp"

namespace pmx {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
class PolyParser {
 public:
  PolyParser(RingPtr<F> ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

  Polynomial<F> parse() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial<F> expr() {
    auto p = term();
    for (;;) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else return p;
    }
  }
  Polynomial<F> term() {
    auto p = unary();
    for (;;) {
      if (eat('*')) {
        p *= unary();
      } else if (eat('/')) {
        auto d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        p = p.scaled(ring_->field().inv(d.leading_coeff()));
      } else {
        return p;
      }
    }
  }
  Polynomial<F> unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Polynomial<F> power() {
    auto base = atom();
    if (eat('^')) {
      auto e = digits();
      if (e.size() > 5 || std::stoul(e) > kMaxExponent) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }
  Polynomial<F> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v(digits());
      return Polynomial<F>::constant(ring_, ring_->field().from_mpz(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (eat('[')) {
        auto i = digits();
        expect(',');
        auto j = digits();
        expect(']');
        name += "[" + std::to_string(std::stoul(i)) + "," + std::to_string(std::stoul(j)) + "]";
      }
      auto idx = ring_->index_of(name);
      if (!idx) fail("unknown variable " + name);
      return Polynomial<F>::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  RingPtr<F> ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace detail

template <class F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, std::string_view text) {
  return detail::PolyParser<F>(ring, text).parse();
}

/// Contents of an ideal file before the field is instantiated.
struct IdealText {
  std::size_t n = 0;
  FieldSpec field;
  std::vector<std::string> generators;
};

/// Ideal file: header `ring n=<n> field=<Q|Fp:p>`, then one generator per
/// line. `#` starts a comment.
inline IdealText parse_ideal_text(const std::string& text) {
  IdealText out;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      std::istringstream hs(line);
      std::string word, nfield, ffield;
      hs >> word >> nfield >> ffield;
      std::string extra;
      if (word != "ring" || nfield.rfind("n=", 0) != 0 || ffield.rfind("field=", 0) != 0 || (hs >> extra))
        throw ParseError("ideal file line " + std::to_string(lineno) + ": expected 'ring n=<n> field=<Q|Fp:p>'");
      try {
        out.n = std::stoul(nfield.substr(2));
      } catch (const std::exception&) {
        throw ParseError("ideal file: bad matrix size '" + nfield + "'");
      }
      if (out.n == 0 || out.n > 5) throw ParseError("ideal file: matrix size must be between 1 and 5");
      out.field = FieldSpec::parse(ffield.substr(6));
      have_header = true;
      continue;
    }
    out.generators.push_back(line);
  }
  if (!have_header) throw ParseError("ideal file: missing ring header");
  return out;
}

template <class F>
std::vector<Polynomial<F>> parse_generators(const RingPtr<F>& ring, const std::vector<std::string>& lines) {
  std::vector<Polynomial<F>> gens;
  for (const auto& l : lines) gens.push_back(parse_polynomial(ring, l));
  return gens;
}

template <class F>
std::string format_ideal_file(std::size_t n, const std::vector<Polynomial<F>>& gens) {
  std::string out = "ring n=" + std::to_string(n) + " field=";
  out += gens.empty() ? std::string("Fp:32003") : gens.front().field().name();
  out += "\n";
  for (const auto& g : gens) out += g.to_string() + "\n";
  return out;
}

/// Integer grid; rows split by ';' or newline, entries by whitespace or ','.
inline std::vector<std::vector<long long>> parse_matrix_literal(const std::string& text) {
  std::vector<std::vector<long long>> rows;
  std::string row;
  auto flush = [&] {
    std::string r = detail::trim(row);
    row.clear();
    if (r.empty()) return;
    for (auto& ch : r)
      if (ch == ',') ch = ' ';
    std::istringstream rs(r);
    std::vector<long long> vals;
    std::string tok;
    while (rs >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("matrix literal: bad entry '" + tok + "'");
      vals.push_back(v);
    }
    rows.push_back(std::move(vals));
  };
  for (char c : text) {
    if (c == ';' || c == '\n') flush();
    else row += c;
  }
  flush();
  if (rows.empty()) throw ParseError("matrix literal: empty");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("matrix literal: not square");
  return rows;
}

}  // namespace pmx
