#pragma once

// Coefficient fields: the prime field F_p and the rationals.
//
// Both types expose the same small interface so polynomial code can be
// written once against either:
//
//   Element zero(), one(), from_int(long), add, sub, neg, mul, inv, div,
//   is_zero, is_one, equal, to_string, characteristic()

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace pmx {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_mpz(const mpz_class& v) const {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r.get_ui());
  }
  /// Rational literal num/den; throws when den vanishes mod p.
  Element from_ratio(const mpz_class& num, const mpz_class& den) const {
    return div(from_mpz(num), from_mpz(den));
  }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  /// Symmetric representative in (-p/2, p/2].
  long long to_signed(Element a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }
  std::string to_string(Element a) const { return std::to_string(to_signed(a)); }
  std::string name() const { return "Fp:" + std::to_string(p_); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

class Rationals {
 public:
  using Element = mpq_class;

  std::uint32_t characteristic() const { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(mpz_class(std::to_string(v))); }
  Element from_mpz(const mpz_class& v) const { return Element(v); }
  Element from_ratio(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::domain_error("Rationals: zero denominator");
    Element r(num, den);
    r.canonicalize();
    return r;
  }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (a == 0) throw std::domain_error("Rationals: inverse of zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (b == 0) throw std::domain_error("Rationals: division by zero");
    return a / b;
  }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }

  bool operator==(const Rationals&) const { return true; }
};

/// Runtime field choice, parsed from "Q" or "Fp:<p>".
struct FieldSpec {
  std::uint32_t p = 32003;  // 0 means the rationals

  bool rational() const { return p == 0; }
  std::string name() const { return p == 0 ? "Q" : "Fp:" + std::to_string(p); }

  static FieldSpec parse(const std::string& s) {
    if (s == "Q" || s == "QQ") return FieldSpec{0};
    if (s.rfind("Fp:", 0) == 0) {
      std::uint64_t p = 0;
      try {
        std::size_t used = 0;
        p = std::stoull(s.substr(3), &used);
        if (used != s.size() - 3) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad field spec '" + s + "'");
      }
      if (p >= (1ull << 31) || !is_prime(p)) throw std::invalid_argument("field characteristic " + s.substr(3) + " is not a prime below 2^31");
      return FieldSpec{static_cast<std::uint32_t>(p)};
    }
    throw std::invalid_argument("bad field spec '" + s + "' (expected Q or Fp:<p>)");
  }

  bool operator==(const FieldSpec&) const = default;
};

/// Calls fn(field) with the concrete field type selected by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.rational()) return fn(Rationals{});
  return fn(PrimeField{spec.p});
}

}  // namespace pmx
