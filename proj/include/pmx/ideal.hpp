#pragma once

// Ideals with cached Groebner bases, and the ideal-theoretic operations built on
// them: membership, elimination, intersection, colon, saturation, codimension,
// radical membership and singular loci.

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pmx/groebner.hpp"
#include "pmx/matrix.hpp"

namespace pmx {

/// How colon, saturation and radical membership reduce to a Groebner basis.
///
///  elimination   adjoin t; colon via intersect with (f), saturation via
///                I + (t*f - 1), both eliminating t under a block order.
///  last_variable adjoin y = f as the last grevlex variable (weight deg f);
///                a single grevlex basis of I + (y - f) yields I : f (divide
///                once by y) and I : f^inf (divide out all y). Needs I and f
///                homogeneous.
///  automatic     last_variable when applicable, elimination otherwise.
enum class Method { automatic, elimination, last_variable };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::elimination: return "elimination";
    case Method::last_variable: return "last_variable";
    default: return "automatic";
  }
}

template <class F>
class Ideal {
 public:
  using Poly = Polynomial<F>;
  using BasisPtr = std::shared_ptr<const GroebnerBasis<F>>;

  Ideal() = default;
  Ideal(RingPtr<F> ring, std::vector<Poly> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      if (!g.ring()->same_variables(*ring_)) throw std::invalid_argument("Ideal: generator from another ring");
      gens_.push_back(g.ring() == ring_ ? std::move(g) : g.in_ring(ring_));
    }
  }

  static Ideal unit(RingPtr<F> ring) {
    auto one = Poly::constant(ring, 1);
    return Ideal(std::move(ring), {one});
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  bool is_homogeneous() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Poly& g) { return g.is_homogeneous(); });
  }

  /// Reduced basis in the given order, computed once and cached.
  BasisPtr groebner(const TermOrder& order, const Budget& budget = {}) const {
    const std::string key = order.key();
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->bases.find(key); it != cache_->bases.end()) return it->second;
    }
    auto ring = ring_->order() == order ? ring_ : ring_->with_order(order);
    auto gb = std::make_shared<const GroebnerBasis<F>>(pmx::groebner(ring, gens_, budget));
    std::lock_guard lock(cache_->mutex);
    return cache_->bases.emplace(key, std::move(gb)).first->second;
  }
  BasisPtr groebner(const Budget& budget = {}) const { return groebner(ring_->order(), budget); }

  /// Stores a basis known to be the reduced basis of this ideal.
  void seed(BasisPtr basis) const {
    std::lock_guard lock(cache_->mutex);
    cache_->bases.emplace(basis->order().key(), std::move(basis));
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, BasisPtr> bases;
  };

  RingPtr<F> ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Ideal whose generators are its own reduced basis in ring's order.
template <class F>
Ideal<F> ideal_from_basis(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& gens, const Budget& budget) {
  auto gb = std::make_shared<const GroebnerBasis<F>>(groebner(ring, gens, budget));
  Ideal<F> out(ring, gb->elements());
  out.seed(gb);
  return out;
}

template <class F>
bool ideal_member(const Polynomial<F>& f, const Ideal<F>& ideal, const Budget& budget = {}) {
  return ideal.groebner(budget)->contains(f, budget);
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& gb, const Budget& budget = {}) {
  return gb.normal_form(f, budget);
}

/// J is contained in I.
template <class F>
bool contains(const Ideal<F>& big, const Ideal<F>& small, const Budget& budget = {}) {
  auto gb = big.groebner(budget);
  return std::all_of(small.generators().begin(), small.generators().end(),
                     [&](const Polynomial<F>& g) { return gb->contains(g, budget); });
}

/// Equal as ideals: identical reduced grevlex bases.
template <class F>
bool equal(const Ideal<F>& a, const Ideal<F>& b, const Budget& budget = {}) {
  return *a.groebner(TermOrder::grevlex(), budget) == *b.groebner(TermOrder::grevlex(), budget);
}

template <class F>
bool is_unit(const Ideal<F>& ideal, const Budget& budget = {}) {
  return ideal.groebner(budget)->is_unit();
}

namespace detail {

inline std::vector<std::uint32_t> unit_weights(std::size_t n) { return std::vector<std::uint32_t>(n, 1); }

template <class F>
std::vector<int> identity_map(std::size_t n) {
  std::vector<int> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(i);
  return m;
}

/// Ring with one extra variable `name` appended, ordered by `order`.
template <class F>
struct Extension {
  RingPtr<F> base;
  RingPtr<F> ring;
  std::size_t aux;  // index of the new variable

  Polynomial<F> up(const Polynomial<F>& f) const {
    auto m = identity_map<F>(base->nvars());
    return f.map_to(ring, m);
  }
  Polynomial<F> down(const Polynomial<F>& f) const {
    auto m = identity_map<F>(ring->nvars());
    m[aux] = -1;
    return f.map_to(base, m);
  }
  Polynomial<F> aux_var() const { return Polynomial<F>::variable(ring, aux); }
  bool free_of_aux(const Polynomial<F>& f) const { return !(f.support() >> aux & 1u); }
};

template <class F>
Extension<F> extend_block(const RingPtr<F>& base, std::uint32_t aux_weight) {
  const std::size_t n = base->nvars();
  auto w = unit_weights(n + 1);
  w[n] = aux_weight;
  auto ring = base->extended({"_t"}, TermOrder::block(1u << n, std::move(w)));
  return {base, ring, n};
}

template <class F>
Extension<F> extend_last(const RingPtr<F>& base, std::uint32_t aux_weight) {
  const std::size_t n = base->nvars();
  auto w = unit_weights(n + 1);
  w[n] = aux_weight;
  auto ring = base->extended({"_y"}, TermOrder::weighted_grevlex(std::move(w)));
  return {base, ring, n};
}

/// Reduced grevlex basis of I + (y - f) with y last, weight deg f.
template <class F>
std::pair<Extension<F>, GroebnerBasis<F>> last_variable_basis(const Ideal<F>& ideal, const Polynomial<F>& f,
                                                              const Budget& budget) {
  if (!ideal.is_homogeneous() || !f.is_homogeneous())
    throw std::invalid_argument("last-variable method needs homogeneous input");
  auto ext = extend_last<F>(ideal.ring(), f.total_degree());
  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(ext.up(g));
  gens.push_back(ext.aux_var() - ext.up(f));
  auto gb = groebner(ext.ring, gens, budget);
  return {ext, std::move(gb)};
}

/// Divides g by y^min(k, largest power dividing g), then substitutes y = f.
template <class F>
Polynomial<F> strip_aux(const Extension<F>& ext, const Polynomial<F>& g, const Polynomial<F>& f_up, unsigned k) {
  unsigned common = k;
  for (const auto& t : g.terms()) common = std::min(common, t.mono[ext.aux]);
  auto h = g;
  if (common) {
    auto ym = Monomial::variable(ext.ring->nvars(), ext.aux, common);
    std::vector<typename Polynomial<F>::Term> terms;
    for (const auto& t : g.terms()) terms.push_back({t.coeff, t.mono / ym});
    h = Polynomial<F>::from_sorted_terms(ext.ring, std::move(terms));
  }
  if (!ext.free_of_aux(h)) h = h.substitute(ext.aux, f_up);
  return ext.down(h);
}

/// Minimum number of variables meeting every support (a minimum hitting set).
inline std::size_t min_hitting_set(std::vector<std::uint32_t> sets, std::size_t bound) {
  if (sets.empty()) return 0;
  // keep inclusion-minimal sets
  std::sort(sets.begin(), sets.end(), [](auto a, auto b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::uint32_t> minimal;
  for (auto s : sets)
    if (std::none_of(minimal.begin(), minimal.end(), [&](auto m) { return (m & ~s) == 0; })) minimal.push_back(s);
  std::size_t best = bound;
  auto search = [&](auto&& self, std::uint32_t chosen, std::size_t size) -> void {
    if (size >= best) return;
    for (auto s : minimal) {
      if (s & chosen) continue;
      for (std::uint32_t rest = s; rest; rest &= rest - 1) self(self, chosen | (rest & -rest), size + 1);
      return;
    }
    best = size;
  };
  search(search, 0u, 0);
  return best;
}

}  // namespace detail

/// I ∩ K[variables not in `vars`], as an ideal of the same ring.
template <class F>
Ideal<F> eliminate(const Ideal<F>& ideal, std::uint32_t vars, const Budget& budget = {}) {
  const auto& ring = ideal.ring();
  if (ring->nvars() < 32 && (vars >> ring->nvars()) != 0)
    throw std::invalid_argument("eliminate: variable outside the ring");
  if (vars == 0) return ideal;
  auto block = ring->with_order(TermOrder::block(vars));
  auto gb = ideal.groebner(block->order(), budget);
  std::vector<Polynomial<F>> kept;
  for (const auto& g : gb->elements())
    if (!(g.support() & vars)) kept.push_back(g.in_ring(ring));
  return ideal_from_basis(ring, kept, budget);
}

/// I ∩ J, by eliminating t from t*I + (1 - t)*J.
template <class F>
Ideal<F> intersect(const Ideal<F>& a, const Ideal<F>& b, const Budget& budget = {}) {
  if (!a.ring()->same_variables(*b.ring())) throw std::invalid_argument("intersect: ring mismatch");
  if (contains(b, a, budget)) return a;
  if (contains(a, b, budget)) return b;
  // t has weight 0 in the grading so both parts stay homogeneous
  auto ext = detail::extend_block<F>(a.ring(), 0);
  auto t = ext.aux_var();
  auto one_minus_t = Polynomial<F>::constant(ext.ring, 1) - t;
  std::vector<Polynomial<F>> gens;
  for (const auto& g : a.generators()) gens.push_back(t * ext.up(g));
  for (const auto& h : b.generators()) gens.push_back(one_minus_t * ext.up(h));
  auto gb = groebner(ext.ring, gens, budget);
  std::vector<Polynomial<F>> kept;
  for (const auto& g : gb.elements())
    if (ext.free_of_aux(g)) kept.push_back(ext.down(g));
  return ideal_from_basis(a.ring(), kept, budget);
}

/// I : f = { g : g*f in I }.
template <class F>
Ideal<F> colon(const Ideal<F>& ideal, const Polynomial<F>& f, const Budget& budget = {},
               Method method = Method::automatic) {
  if (f.is_zero()) throw std::invalid_argument("colon: f must be nonzero");
  const auto& ring = ideal.ring();
  if (ideal_member(f, ideal, budget)) return Ideal<F>::unit(ring);
  if (f.is_constant()) return ideal_from_basis(ring, ideal.generators(), budget);
  if (method == Method::automatic)
    method = ideal.is_homogeneous() && f.is_homogeneous() ? Method::last_variable : Method::elimination;
  std::vector<Polynomial<F>> gens;
  if (method == Method::last_variable) {
    auto [ext, gb] = detail::last_variable_basis(ideal, f, budget);
    auto f_up = ext.up(f);
    for (const auto& g : gb.elements()) gens.push_back(detail::strip_aux(ext, g, f_up, 1));
  } else {
    Ideal<F> principal(ring, {f});
    auto meet = intersect(ideal, principal, budget);
    for (const auto& g : meet.generators()) gens.push_back(exact_divide(g, f));
  }
  return ideal_from_basis(ring, gens, budget);
}

/// I : J = ∩_j (I : g_j).
template <class F>
Ideal<F> colon_ideal(const Ideal<F>& ideal, const Ideal<F>& other, const Budget& budget = {},
                     Method method = Method::automatic) {
  auto result = Ideal<F>::unit(ideal.ring());
  for (const auto& g : other.generators()) {
    auto part = colon(ideal, g, budget, method);
    result = is_unit(result, budget) ? part : intersect(result, part, budget);
  }
  return result;
}

/// I : f^inf.
template <class F>
Ideal<F> saturate(const Ideal<F>& ideal, const Polynomial<F>& f, const Budget& budget = {},
                  Method method = Method::automatic) {
  if (f.is_zero()) throw std::invalid_argument("saturate: f must be nonzero");
  const auto& ring = ideal.ring();
  if (f.is_constant()) return ideal_from_basis(ring, ideal.generators(), budget);
  if (method == Method::automatic)
    method = ideal.is_homogeneous() && f.is_homogeneous() ? Method::last_variable : Method::elimination;
  std::vector<Polynomial<F>> gens;
  if (method == Method::last_variable) {
    auto [ext, gb] = detail::last_variable_basis(ideal, f, budget);
    auto f_up = ext.up(f);
    for (const auto& g : gb.elements()) gens.push_back(detail::strip_aux(ext, g, f_up, kMaxExponent));
  } else {
    auto ext = detail::extend_block<F>(ring, 1);
    std::vector<Polynomial<F>> aug;
    for (const auto& g : ideal.generators()) aug.push_back(ext.up(g));
    aug.push_back(ext.aux_var() * ext.up(f) - Polynomial<F>::constant(ext.ring, 1));
    auto gb = groebner(ext.ring, aug, budget);
    for (const auto& g : gb.elements())
      if (ext.free_of_aux(g)) gens.push_back(ext.down(g));
  }
  return ideal_from_basis(ring, gens, budget);
}

/// Codimension of an ideal generated by monomials with the given supports, in
/// nvars variables: the fewest variables meeting every support.
inline std::size_t monomial_codim(const std::vector<std::uint32_t>& supports, std::size_t nvars) {
  for (auto s : supports)
    if (s == 0) throw std::domain_error("codim: improper ideal");
  return detail::min_hitting_set(supports, nvars + 1);
}

/// nvars - dim K[X]/I, from the leading monomials of a grevlex basis.
template <class F>
std::size_t codim(const Ideal<F>& ideal, const Budget& budget = {}) {
  auto gb = ideal.groebner(TermOrder::grevlex(), budget);
  if (gb->is_unit()) throw std::domain_error("codim: improper ideal");
  std::vector<std::uint32_t> supports;
  for (const auto& m : gb->leading_monomials()) supports.push_back(m.support());
  return monomial_codim(supports, ideal.ring()->nvars());
}

/// f vanishes on V(I).
template <class F>
bool radical_member(const Polynomial<F>& f, const Ideal<F>& ideal, const Budget& budget = {},
                    Method method = Method::automatic) {
  if (f.is_zero()) throw std::invalid_argument("radical_member: f must be nonzero");
  if (method == Method::automatic)
    method = ideal.is_homogeneous() && f.is_homogeneous() ? Method::last_variable : Method::elimination;
  if (method == Method::last_variable) return is_unit(saturate(ideal, f, budget, method), budget);
  auto ext = detail::extend_block<F>(ideal.ring(), 1);
  std::vector<Polynomial<F>> aug;
  for (const auto& g : ideal.generators()) aug.push_back(ext.up(g));
  aug.push_back(ext.aux_var() * ext.up(f) - Polynomial<F>::constant(ext.ring, 1));
  return groebner(ext.ring, aug, budget).is_unit();
}

/// Height equals the number of generators supplied.
template <class F>
bool is_complete_intersection(const Ideal<F>& ideal, const Budget& budget = {}) {
  if (!ideal.is_homogeneous()) throw std::invalid_argument("is_complete_intersection: ideal must be homogeneous");
  return codim(ideal, budget) == ideal.size();
}

template <class F>
Polynomial<F> derivative(const Polynomial<F>& f, std::size_t var) {
  const F& k = f.field();
  std::vector<typename Polynomial<F>::Term> terms;
  for (const auto& t : f.terms()) {
    unsigned e = t.mono[var];
    if (!e) continue;
    auto c = k.mul(t.coeff, k.from_int(e));
    if (k.is_zero(c)) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    terms.push_back({c, m});
  }
  return Polynomial<F>::from_terms(f.ring(), std::move(terms));
}

/// Codimension of the singular locus of K[X]/I: I plus the c x c minors of the
/// Jacobian of its generators, c = codim I. nullopt when that ideal is the unit
/// ideal (no singular points). The minor count is capped by max_minors.
template <class F>
std::optional<std::size_t> singular_locus_codim(const Ideal<F>& ideal, const Budget& budget = {},
                                                std::uint64_t max_minors = 20000) {
  const auto& ring = ideal.ring();
  const std::size_t c = codim(ideal, budget);
  const auto& gens = ideal.generators();
  const std::size_t m = gens.size(), nv = ring->nvars();
  auto choose = [](std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  if (c == 0 || c > m) throw std::domain_error("singular_locus_codim: codim exceeds generator count");
  if (choose(m, c) * choose(nv, c) > max_minors) throw BudgetExceeded("jacobian minors", max_minors);
  PolyMatrix<F> jac(m, std::vector<Polynomial<F>>(nv));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < nv; ++j) jac[i][j] = derivative(gens[i], j);
  std::vector<Polynomial<F>> all = gens;
  auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  };
  for (const auto& rows : subsets(m, c))
    for (const auto& cols : subsets(nv, c)) {
      PolyMatrix<F> sub(c, std::vector<Polynomial<F>>(c));
      for (std::size_t a = 0; a < c; ++a)
        for (std::size_t b = 0; b < c; ++b) sub[a][b] = jac[rows[a]][cols[b]];
      auto d = poly_det(sub, ring);
      if (!d.is_zero()) all.push_back(d);
    }
  Ideal<F> sing(ring, all);
  if (is_unit(sing, budget)) return std::nullopt;
  return codim(sing, budget);
}

/// A minimal homogeneous generating set, chosen greedily from the given
/// generators by ascending degree.
template <class F>
std::vector<Polynomial<F>> minimal_generators(const Ideal<F>& ideal, const Budget& budget = {}) {
  if (!ideal.is_homogeneous()) throw std::invalid_argument("minimal_generators: ideal must be homogeneous");
  auto gens = ideal.generators();
  std::stable_sort(gens.begin(), gens.end(),
                   [](const auto& a, const auto& b) { return a.total_degree() < b.total_degree(); });
  std::vector<Polynomial<F>> kept;
  std::optional<GroebnerBasis<F>> gb;
  for (const auto& g : gens) {
    if (gb && gb->contains(g, budget)) continue;
    kept.push_back(g);
    gb = groebner(ideal.ring(), kept, budget);
  }
  return kept;
}

}  // namespace pmx
