#pragma once

// Exponent vectors and term orders.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmx {

/// Upper bound on ring size. n = 5 needs 25 matrix variables plus a couple of
/// auxiliary ones.
inline constexpr std::size_t kMaxVars = 32;
inline constexpr std::uint32_t kMaxExponent = 0xffff;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(check_size(nvars)) {}
  Monomial(std::initializer_list<unsigned> exps) : Monomial(std::vector<unsigned>(exps)) {}
  explicit Monomial(std::span<const unsigned> exps) : n_(check_size(exps.size())) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }
  explicit Monomial(const std::vector<unsigned>& exps)
      : Monomial(std::span<const unsigned>(exps.data(), exps.size())) {}

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.set(index, power);
    return m;
  }

  std::size_t size() const { return n_; }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t degree() const { return deg_; }
  /// Bit i set iff variable i occurs.
  std::uint32_t support() const { return support_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned e) {
    if (i >= n_) throw std::out_of_range("Monomial::set: variable index out of range");
    if (e > kMaxExponent) throw std::overflow_error("Monomial: exponent exceeds 2^16-1");
    deg_ = deg_ - e_[i] + e;
    e_[i] = static_cast<std::uint16_t>(e);
    if (e) support_ |= (1u << i);
    else support_ &= ~(1u << i);
  }

  /// True iff this divides other.
  bool divides(const Monomial& other) const {
    if ((support_ & ~other.support_) != 0 || deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      std::uint32_t s = std::uint32_t(a.e_[i]) + b.e_[i];
      if (s > kMaxExponent) throw std::overflow_error("Monomial: exponent exceeds 2^16-1");
      r.e_[i] = static_cast<std::uint16_t>(s);
    }
    r.deg_ = a.deg_ + b.deg_;
    r.support_ = a.support_ | b.support_;
    return r;
  }

  /// Exact quotient a / b; b must divide a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      if (b.e_[i] > a.e_[i]) throw std::domain_error("Monomial: inexact division");
      r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
      if (r.e_[i]) r.support_ |= (1u << i);
    }
    r.deg_ = a.deg_ - b.deg_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      r.e_[i] = std::max(a.e_[i], b.e_[i]);
      r.deg_ += r.e_[i];
    }
    r.support_ = a.support_ | b.support_;
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      r.e_[i] = std::min(a.e_[i], b.e_[i]);
      r.deg_ += r.e_[i];
    }
    r.support_ = a.support_ & b.support_;
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) { return (a.support_ & b.support_) == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.n_ == b.n_ && a.deg_ == b.deg_ && a.support_ == b.support_ &&
           std::memcmp(a.e_.data(), b.e_.data(), sizeof(std::uint16_t) * a.n_) == 0;
  }

  std::size_t hash() const noexcept {
    std::size_t h = n_;
    for (std::size_t i = 0; i < n_; ++i) h = h * 1000003u ^ e_[i];
    return h;
  }

  std::vector<unsigned> exponents() const { return {e_.begin(), e_.begin() + n_}; }

 private:
  static std::uint8_t check_size(std::size_t n) {
    if (n > kMaxVars) throw std::length_error("Monomial: more than " + std::to_string(kMaxVars) + " variables");
    return static_cast<std::uint8_t>(n);
  }
  static void check_same(const Monomial& a, const Monomial& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Monomial: length mismatch");
  }

  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
  std::uint32_t support_ = 0;
  std::uint8_t n_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

enum class OrderKind { lex, grevlex, block };

/// Total multiplicative well-order on monomials. Variable 0 is the largest
/// variable in every order.
///
/// grevlex may carry positive integer weights; they change the degree used for
/// the first comparison and define the grading seen by sugar selection. A block
/// order ranks monomials first by (degree, revlex) restricted to the eliminated
/// variables and then by weighted grevlex on the rest, so any monomial touching
/// the eliminated set is above every monomial free of it. Weights on eliminated
/// variables only affect the grading and may be zero.
class TermOrder {
 public:
  static TermOrder lex() { return TermOrder(OrderKind::lex, 0, {}); }
  static TermOrder grevlex() { return TermOrder(OrderKind::grevlex, 0, {}); }
  static TermOrder weighted_grevlex(std::vector<std::uint32_t> weights) {
    for (auto w : weights)
      if (w == 0) throw std::invalid_argument("TermOrder: grevlex weights must be positive");
    return TermOrder(OrderKind::grevlex, 0, std::move(weights));
  }
  static TermOrder block(std::uint32_t eliminated, std::vector<std::uint32_t> weights = {}) {
    return TermOrder(OrderKind::block, eliminated, std::move(weights));
  }

  OrderKind kind() const { return kind_; }
  std::uint32_t eliminated() const { return eliminated_; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }

  /// Grading degree: the weighted total degree (standard degree when unweighted).
  std::uint64_t weighted_degree(const Monomial& m) const {
    if (weights_.empty()) return m.degree();
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += std::uint64_t(weight(i)) * m[i];
    return d;
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    const std::size_t n = a.size();
    switch (kind_) {
      case OrderKind::lex:
        for (std::size_t i = 0; i < n; ++i)
          if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
      case OrderKind::grevlex: {
        if (auto c = weighted_degree(a) <=> weighted_degree(b); c != 0) return c;
        for (std::size_t i = n; i-- > 0;)
          if (a[i] != b[i]) return b[i] <=> a[i];
        return std::strong_ordering::equal;
      }
      case OrderKind::block: {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (eliminated_ >> i & 1u) {
            da += a[i];
            db += b[i];
          }
        if (auto c = da <=> db; c != 0) return c;
        for (std::size_t i = n; i-- > 0;)
          if ((eliminated_ >> i & 1u) && a[i] != b[i]) return b[i] <=> a[i];
        da = db = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (!(eliminated_ >> i & 1u)) {
            da += std::uint64_t(weight(i)) * a[i];
            db += std::uint64_t(weight(i)) * b[i];
          }
        if (auto c = da <=> db; c != 0) return c;
        for (std::size_t i = n; i-- > 0;)
          if (!(eliminated_ >> i & 1u) && a[i] != b[i]) return b[i] <=> a[i];
        return std::strong_ordering::equal;
      }
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  /// Stable text key, used to index Groebner basis caches.
  std::string key() const {
    std::string k = kind_ == OrderKind::lex ? "lex" : kind_ == OrderKind::grevlex ? "grevlex" : "block";
    if (kind_ == OrderKind::block) k += ":" + std::to_string(eliminated_);
    if (!weights_.empty()) {
      k += ":w";
      for (auto w : weights_) k += "," + std::to_string(w);
    }
    return k;
  }

  bool operator==(const TermOrder&) const = default;

 private:
  TermOrder(OrderKind k, std::uint32_t elim, std::vector<std::uint32_t> w)
      : kind_(k), eliminated_(elim), weights_(std::move(w)) {}

  std::uint32_t weight(std::size_t i) const { return weights_.empty() ? 1u : weights_[i]; }

  OrderKind kind_;
  std::uint32_t eliminated_;
  std::vector<std::uint32_t> weights_;
};

inline std::strong_ordering cmp_monomials(const Monomial& a, const Monomial& b, const TermOrder& ord) {
  if (a.size() != b.size()) throw std::invalid_argument("cmp_monomials: length mismatch");
  return ord.compare(a, b);
}

}  // namespace pmx
