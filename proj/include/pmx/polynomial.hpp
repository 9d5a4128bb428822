#pragma once

// Ring contexts and sparse multivariate polynomials over a coefficient field.

#include <algorithm>
#include <concepts>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmx/field.hpp"
#include "pmx/monomial.hpp"

namespace pmx {

/// Variables, coefficient field and ambient term order shared by a family of
/// polynomials. Rings built by matrix_ring() carry the matrix size, and their
/// variables are x[i,j] in row-major order.
template <class F>
class Ring {
 public:
  Ring(F field, std::vector<std::string> names, TermOrder order, std::size_t matrix_size = 0)
      : field_(std::move(field)), names_(std::move(names)), order_(std::move(order)), matrix_size_(matrix_size) {
    if (names_.size() > kMaxVars)
      throw std::length_error("Ring: at most " + std::to_string(kMaxVars) + " variables");
    if (!order_.weights().empty() && order_.weights().size() != names_.size())
      throw std::invalid_argument("Ring: weight vector length differs from variable count");
    if (order_.kind() == OrderKind::block && (order_.eliminated() >> names_.size()) != 0)
      throw std::invalid_argument("Ring: block order eliminates a variable outside the ring");
  }

  const F& field() const { return field_; }
  const TermOrder& order() const { return order_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t matrix_size() const { return matrix_size_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  /// Same variables and field, different order.
  std::shared_ptr<const Ring> with_order(TermOrder ord) const {
    return std::make_shared<const Ring>(field_, names_, std::move(ord), matrix_size_);
  }

  /// Appends variables after the existing ones.
  std::shared_ptr<const Ring> extended(const std::vector<std::string>& extra, TermOrder ord) const {
    auto names = names_;
    for (const auto& e : extra) {
      if (index_of(e)) throw std::invalid_argument("Ring: duplicate variable " + e);
      names.push_back(e);
    }
    return std::make_shared<const Ring>(field_, std::move(names), std::move(ord), 0);
  }

  /// Equal variables and field; the order may differ.
  bool same_variables(const Ring& o) const { return field_ == o.field_ && names_ == o.names_; }
  bool operator==(const Ring& o) const { return same_variables(o) && order_ == o.order_; }

 private:
  F field_;
  std::vector<std::string> names_;
  TermOrder order_;
  std::size_t matrix_size_;
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

inline std::string matrix_variable_name(std::size_t i, std::size_t j) {
  return "x[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

/// K[x11..xnn] with row-major variable order x11 > x12 > ... > xnn.
template <class F>
RingPtr<F> matrix_ring(F field, std::size_t n, TermOrder order = TermOrder::grevlex()) {
  if (n == 0) throw std::invalid_argument("matrix_ring: n must be positive");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) names.push_back(matrix_variable_name(i, j));
  return std::make_shared<const Ring<F>>(std::move(field), std::move(names), std::move(order), n);
}

template <class F>
class Polynomial {
 public:
  using Elem = typename F::Element;
  struct Term {
    Elem coeff;
    Monomial mono;
  };

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }
  /// Terms already strictly descending with nonzero coefficients.
  static Polynomial from_sorted_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }
  static Polynomial constant(RingPtr<F> ring, Elem c) {
    Polynomial p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({std::move(c), Monomial(ring->nvars())});
    return p;
  }
  template <std::integral I>
    requires(!std::same_as<I, Elem>)
  static Polynomial constant(RingPtr<F> ring, I c) {
    auto e = ring->field().from_int(static_cast<long long>(c));
    return constant(std::move(ring), std::move(e));
  }
  static Polynomial variable(RingPtr<F> ring, std::size_t index) {
    if (index >= ring->nvars()) throw std::out_of_range("Polynomial::variable: index out of range");
    Polynomial p(ring);
    p.terms_.push_back({ring->field().one(), Monomial::variable(ring->nvars(), index)});
    return p;
  }
  static Polynomial monomial(RingPtr<F> ring, Monomial m, Elem c) {
    if (m.size() != ring->nvars()) throw std::invalid_argument("Polynomial::monomial: length mismatch");
    Polynomial p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({std::move(c), std::move(m)});
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& lead() const {
    if (terms_.empty()) throw std::domain_error("Polynomial: zero has no leading term");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return lead().mono; }
  const Elem& leading_coeff() const { return lead().coeff; }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  /// Homogeneous for the grading of the given order (standard grading by default).
  bool is_homogeneous(const TermOrder& grading = TermOrder::grevlex()) const {
    if (terms_.empty()) return true;
    auto d = grading.weighted_degree(terms_.front().mono);
    for (const auto& t : terms_)
      if (grading.weighted_degree(t.mono) != d) return false;
    return true;
  }

  /// Variables occurring, as a bitmask.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (const auto& t : terms_) s |= t.mono.support();
    return s;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].mono);
    if (b.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].mono);
    const F& k = a.field();
    std::unordered_map<Monomial, Elem, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto prod = k.mul(s.coeff, t.coeff);
        auto [it, fresh] = acc.try_emplace(s.mono * t.mono, prod);
        if (!fresh) it->second = k.add(it->second, prod);
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!k.is_zero(c)) terms.push_back({std::move(c), m});
    Polynomial r(a.ring_);
    r.terms_ = std::move(terms);
    r.sort_terms();
    return r;
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  /// c * m * this.
  Polynomial mul_term(const Elem& c, const Monomial& m) const {
    Polynomial r(ring_);
    if (field().is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({field().mul(c, t.coeff), t.mono * m});
    return r;
  }
  Polynomial scaled(const Elem& c) const { return mul_term(c, Monomial(ring_->nvars())); }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const {
    if (terms_.empty() || field().is_one(terms_[0].coeff)) return *this;
    return scaled(field().inv(terms_[0].coeff));
  }

  /// Value at a full assignment (one scalar per ring variable).
  Elem evaluate(std::span<const Elem> point) const {
    if (point.size() != ring_->nvars()) throw std::invalid_argument("evaluate: point has wrong length");
    const F& k = field();
    Elem total = k.zero();
    for (const auto& t : terms_) {
      Elem v = t.coeff;
      for (std::size_t i = 0; i < t.mono.size(); ++i)
        for (unsigned e = 0; e < t.mono[i]; ++e) v = k.mul(v, point[i]);
      total = k.add(total, v);
    }
    return total;
  }

  /// Value at a partial assignment; throws if an occurring variable is unassigned.
  Elem evaluate(const std::map<std::size_t, Elem>& point) const {
    std::vector<Elem> full(ring_->nvars(), field().zero());
    std::uint32_t assigned = 0;
    for (const auto& [i, v] : point) {
      if (i >= ring_->nvars()) throw std::out_of_range("evaluate: variable index out of range");
      full[i] = v;
      assigned |= 1u << i;
    }
    if (auto missing = support() & ~assigned) {
      std::size_t i = 0;
      while (!(missing >> i & 1u)) ++i;
      throw std::invalid_argument("evaluate: variable " + ring_->name(i) + " is unassigned");
    }
    return evaluate(std::span<const Elem>(full));
  }

  /// Replaces variable `index` by g.
  Polynomial substitute(std::size_t index, const Polynomial& g) const {
    check_ring(*this, g);
    std::map<unsigned, Polynomial> by_power;
    for (const auto& t : terms_) {
      unsigned e = t.mono[index];
      Monomial rest = t.mono;
      rest.set(index, 0);
      auto [it, fresh] = by_power.try_emplace(e, ring_);
      it->second.terms_.push_back({t.coeff, rest});
    }
    Polynomial result(ring_);
    Polynomial power = constant(ring_, 1);
    unsigned at = 0;
    for (auto& [e, part] : by_power) {
      part.canonicalize();
      while (at < e) {
        power *= g;
        ++at;
      }
      result += part * power;
    }
    return result;
  }

  /// Re-expresses this polynomial in `target`. var_map[i] is the target index of
  /// source variable i, or -1 for a variable that must not occur.
  Polynomial map_to(RingPtr<F> target, std::span<const int> var_map) const {
    if (var_map.size() != ring_->nvars()) throw std::invalid_argument("map_to: variable map has wrong length");
    if (!(target->field() == field())) throw std::invalid_argument("map_to: field mismatch");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->nvars());
      for (std::size_t i = 0; i < var_map.size(); ++i) {
        if (!t.mono[i]) continue;
        if (var_map[i] < 0) throw std::domain_error("map_to: dropped variable " + ring_->name(i) + " occurs");
        m.set(static_cast<std::size_t>(var_map[i]), t.mono[i]);
      }
      out.push_back({t.coeff, m});
    }
    return from_terms(std::move(target), std::move(out));
  }

  /// Same variables, possibly another order.
  Polynomial in_ring(RingPtr<F> target) const {
    if (!ring_->same_variables(*target)) throw std::invalid_argument("in_ring: ring mismatch");
    if (ring_ == target || ring_->order() == target->order()) {
      Polynomial r(std::move(target));
      r.terms_ = terms_;
      return r;
    }
    Polynomial r(std::move(target));
    r.terms_ = terms_;
    r.sort_terms();
    return r;
  }

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.terms_.empty()) return true;
    check_ring(a, b);
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !a.field().equal(a.terms_[i].coeff, b.terms_[i].coeff))
        return false;
    return true;
  }

  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (!a.ring_ || !b.ring_) throw std::invalid_argument("Polynomial: missing ring context");
    if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) throw std::invalid_argument("Polynomial: ring mismatch");
  }

 private:
  void sort_terms() {
    const TermOrder& ord = ring_->order();
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& x, const Term& y) { return ord.compare(x.mono, y.mono) > 0; });
  }

  void canonicalize() {
    sort_terms();
    const F& k = field();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = k.add(out.back().coeff, t.coeff);
        if (k.is_zero(out.back().coeff)) out.pop_back();
      } else if (!k.is_zero(t.coeff)) {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_ring(a, b);
    const F& k = a.field();
    const TermOrder& ord = a.ring_->order();
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size()) {
        r.terms_.push_back(a.terms_[i++]);
        continue;
      }
      if (i == a.size()) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({subtract ? k.neg(t.coeff) : t.coeff, t.mono});
        continue;
      }
      auto c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({subtract ? k.neg(t.coeff) : t.coeff, t.mono});
      } else {
        auto s = subtract ? k.sub(a.terms_[i].coeff, b.terms_[j].coeff) : k.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!k.is_zero(s)) r.terms_.push_back({std::move(s), a.terms_[i].mono});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<F> ring_;
  std::vector<Term> terms_;
};

/// Canonical text: terms in descending order, `c*x[i,j]^e` factors.
template <class F>
std::string Polynomial<F>::to_string() const {
  if (terms_.empty()) return "0";
  const F& k = field();
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = k.to_string(t.coeff);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (!t.mono[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
    }
    if (mono.empty()) out += c;
    else if (c == "1") out += mono;
    else out += c + "*" + mono;
  }
  return out;
}

/// Exact quotient f / g. Throws std::domain_error when g does not divide f.
template <class F>
Polynomial<F> exact_divide(const Polynomial<F>& f, const Polynomial<F>& g) {
  Polynomial<F>::check_ring(f, g);
  if (g.is_zero()) throw std::domain_error("exact_divide: division by zero");
  const F& k = f.field();
  auto inv_lc = k.inv(g.leading_coeff());
  std::vector<typename Polynomial<F>::Term> quotient;
  Polynomial<F> rest = f;
  while (!rest.is_zero()) {
    const auto& lt = rest.lead();
    if (!g.leading_monomial().divides(lt.mono)) throw std::domain_error("exact_divide: not divisible");
    auto c = k.mul(lt.coeff, inv_lc);
    auto m = lt.mono / g.leading_monomial();
    quotient.push_back({c, m});
    rest -= g.mul_term(c, m);
  }
  return Polynomial<F>::from_sorted_terms(f.ring(), std::move(quotient));
}

/// Row and column degree vectors under deg x[i,j] = (e_i; e_j).
struct Multidegree {
  std::vector<unsigned> rows;
  std::vector<unsigned> cols;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "," : "") + std::to_string(rows[i]);
    s += ";";
    for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + std::to_string(cols[i]);
    return s + ")";
  }
  bool operator==(const Multidegree&) const = default;
};

/// Multidegree in the N^{2n} grading of a matrix ring, or nullopt when f is not
/// multihomogeneous. Variables past n*n (auxiliaries) are not allowed.
template <class F>
std::optional<Multidegree> multidegree(const Polynomial<F>& f) {
  if (f.is_zero()) throw std::domain_error("multidegree: zero polynomial");
  std::size_t n = f.ring()->matrix_size();
  if (n == 0 || f.ring()->nvars() != n * n) throw std::invalid_argument("multidegree: not a matrix ring");
  std::optional<Multidegree> result;
  for (const auto& t : f.terms()) {
    Multidegree d{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
    for (std::size_t v = 0; v < n * n; ++v) {
      d.rows[v / n] += t.mono[v];
      d.cols[v % n] += t.mono[v];
    }
    if (!result) result = d;
    else if (!(*result == d)) return std::nullopt;
  }
  return result;
}

}  // namespace pmx
