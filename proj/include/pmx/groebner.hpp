#pragma once

// Buchberger's algorithm with the Gebauer-Moeller pair criteria and sugar-degree
// pair selection, producing reduced Groebner bases.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmx/polynomial.hpp"

namespace pmx {

/// Deterministic resource caps. Exceeding one aborts the computation with
/// BudgetExceeded rather than returning a partial answer.
struct Budget {
  std::uint64_t max_pairs = 1'000'000;
  std::uint64_t max_terms = 1'000'000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string resource, std::uint64_t limit)
      : std::runtime_error("budget exceeded: " + resource + " > " + std::to_string(limit)),
        resource_(std::move(resource)),
        limit_(limit) {}
  const std::string& resource() const { return resource_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::string resource_;
  std::uint64_t limit_;
};

struct GroebnerStats {
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t max_degree = 0;
};

namespace detail {

/// A sum of sorted term runs of geometrically growing length, so adding a
/// short polynomial to a long one costs about the short length times a log.
/// Each run is stored ascending; its leading term is at the back.
template <class F>
class GeoBucket {
 public:
  using Term = typename Polynomial<F>::Term;

  GeoBucket(const F& k, const TermOrder& ord) : k_(k), ord_(ord) {}

  /// Adds terms given in descending order.
  void add(std::vector<Term> terms) {
    if (terms.empty()) return;
    std::reverse(terms.begin(), terms.end());
    std::size_t i = 0;
    while (capacity(i) < terms.size()) ++i;
    for (;;) {
      if (i >= runs_.size()) runs_.resize(i + 1);
      if (!runs_[i].empty()) terms = merge(std::move(runs_[i]), std::move(terms));
      runs_[i].clear();
      if (terms.size() <= capacity(i)) {
        runs_[i] = std::move(terms);
        return;
      }
      ++i;
    }
  }

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& r : runs_) s += r.size();
    return s;
  }

  /// Removes and returns the leading term of the sum, if nonzero.
  std::optional<Term> pop_leading() {
    for (;;) {
      long best = -1;
      for (std::size_t i = 0; i < runs_.size(); ++i) {
        if (runs_[i].empty()) continue;
        if (best < 0 || ord_.compare(runs_[i].back().mono, runs_[static_cast<std::size_t>(best)].back().mono) > 0)
          best = static_cast<long>(i);
      }
      if (best < 0) return std::nullopt;
      Term lead = std::move(runs_[static_cast<std::size_t>(best)].back());
      runs_[static_cast<std::size_t>(best)].pop_back();
      for (auto& r : runs_) {
        if (!r.empty() && r.back().mono == lead.mono) {
          lead.coeff = k_.add(lead.coeff, r.back().coeff);
          r.pop_back();
        }
      }
      if (!k_.is_zero(lead.coeff)) return lead;
    }
  }

  /// Appends the remaining sum, in descending order.
  void drain_into(std::vector<Term>& out) {
    std::vector<Term> all;
    for (auto& r : runs_) {
      if (!r.empty()) all = all.empty() ? std::move(r) : merge(std::move(all), std::move(r));
      r.clear();
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) out.push_back(std::move(*it));
  }

 private:
  static std::size_t capacity(std::size_t i) { return std::size_t{4} << (2 * i); }

  std::vector<Term> merge(std::vector<Term> a, std::vector<Term> b) const {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      auto c = ord_.compare(a[i].mono, b[j].mono);
      if (c < 0) {
        out.push_back(std::move(a[i++]));
      } else if (c > 0) {
        out.push_back(std::move(b[j++]));
      } else {
        auto s = k_.add(a[i].coeff, b[j].coeff);
        if (!k_.is_zero(s)) out.push_back({std::move(s), std::move(a[i].mono)});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
    return out;
  }

  const F& k_;
  const TermOrder& ord_;
  std::vector<std::vector<Term>> runs_;
};

/// Full or top reduction of `h` against `basis` (indices in `active`). Every
/// reducer is monic.
template <class F>
class Reducer {
 public:
  using Poly = Polynomial<F>;
  using Term = typename Poly::Term;

  Reducer(const std::vector<Poly>& basis, const Budget& budget) : basis_(basis), budget_(budget) {}

  /// Index of the shortest basis element whose leading monomial divides m, or -1.
  template <class Indices>
  long find(const Monomial& m, const Indices& candidates) const {
    long best = -1;
    for (auto i : candidates) {
      const auto& g = basis_[i];
      if (g.leading_monomial().divides(m) && (best < 0 || g.size() < basis_[best].size())) best = static_cast<long>(i);
    }
    return best;
  }

  template <class Indices>
  Poly reduce(const Poly& h, const Indices& candidates, bool full) const {
    const auto& ring = h.ring();
    const F& k = ring->field();
    GeoBucket work(k, ring->order());
    work.add(std::vector<Term>(h.terms().begin(), h.terms().end()));
    std::vector<Term> done;
    std::vector<Term> addend;
    while (auto lead = work.pop_leading()) {
      long r = find(lead->mono, candidates);
      if (r < 0) {
        done.push_back(std::move(*lead));
        if (!full) {
          // keep the unreduced tail
          work.drain_into(done);
          break;
        }
        continue;
      }
      const auto& g = basis_[static_cast<std::size_t>(r)].terms();
      const Monomial shift = lead->mono / g[0].mono;
      const auto c = k.neg(lead->coeff);
      addend.clear();
      addend.reserve(g.size() - 1);
      for (std::size_t j = 1; j < g.size(); ++j) addend.push_back({k.mul(c, g[j].coeff), g[j].mono * shift});
      work.add(std::move(addend));
      addend = {};
      if (work.size() + done.size() > budget_.max_terms) throw BudgetExceeded("terms", budget_.max_terms);
    }
    return Poly::from_sorted_terms(ring, std::move(done));
  }

 private:
  const std::vector<Poly>& basis_;
  const Budget& budget_;
};

}  // namespace detail

/// A reduced Groebner basis: monic, pairwise non-dividing leading monomials,
/// fully tail-reduced, sorted by ascending leading monomial. Unique for a given
/// ideal and order.
template <class F>
class GroebnerBasis {
 public:
  using Poly = Polynomial<F>;

  GroebnerBasis(RingPtr<F> ring, std::vector<Poly> elements, GroebnerStats stats = {})
      : ring_(std::move(ring)), elements_(std::move(elements)), stats_(stats) {}

  const RingPtr<F>& ring() const { return ring_; }
  const TermOrder& order() const { return ring_->order(); }
  const std::vector<Poly>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const GroebnerStats& stats() const { return stats_; }
  bool is_unit() const { return elements_.size() == 1 && elements_[0].is_constant(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : elements_) out.push_back(g.leading_monomial());
    return out;
  }

  /// Remainder of f: no term divisible by a leading monomial of the basis, and
  /// f minus the remainder lies in the ideal. Expressed in the basis ring.
  Poly normal_form(const Poly& f, const Budget& budget = {}) const {
    Poly g = f.ring() == ring_ ? f : f.in_ring(ring_);
    std::vector<std::size_t> all(elements_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return detail::Reducer<F>(elements_, budget).reduce(g, all, true);
  }

  bool contains(const Poly& f, const Budget& budget = {}) const { return normal_form(f, budget).is_zero(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    if (!(a.ring_->order() == b.ring_->order()) || a.elements_.size() != b.elements_.size()) return false;
    for (std::size_t i = 0; i < a.elements_.size(); ++i)
      if (!(a.elements_[i] == b.elements_[i].in_ring(a.ring_))) return false;
    return true;
  }

 private:
  RingPtr<F> ring_;
  std::vector<Poly> elements_;
  GroebnerStats stats_;
};

namespace detail {

template <class F>
class Buchberger {
 public:
  using Poly = Polynomial<F>;

  Buchberger(RingPtr<F> ring, const Budget& budget) : ring_(std::move(ring)), budget_(budget), reducer_(basis_, budget_) {}

  GroebnerBasis<F> run(const std::vector<Poly>& input) {
    const TermOrder& ord = ring_->order();
    // Reduce the input one generator at a time so the initial set is already
    // pairwise top-reduced.
    std::vector<Poly> gens;
    for (const auto& g : input) {
      if (g.is_zero()) continue;
      gens.push_back(g.ring() == ring_ ? g : g.in_ring(ring_));
    }
    std::sort(gens.begin(), gens.end(), [&](const Poly& a, const Poly& b) {
      return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    for (const auto& g : gens) {
      auto h = reducer_.reduce(g, active_, true);
      if (h.is_zero()) continue;
      if (add(h.monic(), sugar_of(h))) return unit();
    }
    while (!pairs_.empty()) {
      Pair p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      if (++stats_.pairs_reduced > budget_.max_pairs) throw BudgetExceeded("pairs", budget_.max_pairs);
      auto s = spoly(p);
      auto h = reducer_.reduce(s, active_, true);
      if (h.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      if (add(h.monic(), p.sugar)) return unit();
    }
    return finish();
  }

 private:
  struct Pair {
    std::uint64_t sugar;
    Monomial lcm;
    std::size_t i, j;
  };
  struct PairLess {
    const TermOrder* ord;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (auto c = ord->compare(a.lcm, b.lcm); c != 0) return c < 0;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    }
  };

  std::uint64_t sugar_of(const Poly& p) const {
    std::uint64_t s = 0;
    for (const auto& t : p.terms()) s = std::max(s, ring_->order().weighted_degree(t.mono));
    return s;
  }

  Poly spoly(const Pair& p) const {
    const auto& a = basis_[p.i];
    const auto& b = basis_[p.j];
    const F& k = ring_->field();
    auto left = a.mul_term(k.one(), p.lcm / a.leading_monomial());
    auto right = b.mul_term(k.one(), p.lcm / b.leading_monomial());
    return left - right;
  }

  GroebnerBasis<F> unit() {
    std::vector<Poly> one{Poly::constant(ring_, 1)};
    return GroebnerBasis<F>(ring_, std::move(one), stats_);
  }

  /// Inserts h and applies the Gebauer-Moeller update. Returns true when h is a
  /// nonzero constant.
  bool add(Poly h, std::uint64_t sugar) {
    if (h.is_constant()) return true;
    const TermOrder& ord = ring_->order();
    const std::size_t hi = basis_.size();
    const Monomial hm = h.leading_monomial();
    stats_.max_degree = std::max<std::uint64_t>(stats_.max_degree, hm.degree());
    basis_.push_back(std::move(h));
    sugars_.push_back(sugar);

    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> c;
    for (auto g : active_) {
      const Monomial& gm = basis_[g].leading_monomial();
      c.push_back({g, lcm(hm, gm), coprime(hm, gm)});
    }
    // chain criterion among the new pairs
    std::vector<Cand> d;
    for (std::size_t x = 0; x < c.size(); ++x) {
      bool keep = c[x].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t y = x + 1; y < c.size() && keep; ++y)
          if (c[y].lcm.divides(c[x].lcm)) keep = false;
        for (std::size_t y = 0; y < d.size() && keep; ++y)
          if (d[y].lcm.divides(c[x].lcm)) keep = false;
      }
      if (keep) d.push_back(c[x]);
    }
    // old pairs made redundant by h
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      if (hm.divides(it->lcm) && !(lcm(basis_[it->i].leading_monomial(), hm) == it->lcm) &&
          !(lcm(basis_[it->j].leading_monomial(), hm) == it->lcm))
        it = pairs_.erase(it);
      else
        ++it;
    }
    // product criterion
    for (const auto& e : d) {
      if (e.coprime) continue;
      const auto& g = basis_[e.g];
      std::uint64_t dl = ord.weighted_degree(e.lcm);
      std::uint64_t s = std::max(sugars_[e.g] + dl - ord.weighted_degree(g.leading_monomial()),
                                 sugar + dl - ord.weighted_degree(hm));
      pairs_.insert(Pair{s, e.lcm, e.g, hi});
    }
    std::vector<std::size_t> still;
    for (auto g : active_)
      if (!hm.divides(basis_[g].leading_monomial())) still.push_back(g);
    still.push_back(hi);
    active_ = std::move(still);
    return false;
  }

  GroebnerBasis<F> finish() {
    const TermOrder& ord = ring_->order();
    std::vector<std::size_t> idx = active_;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return ord.compare(basis_[a].leading_monomial(), basis_[b].leading_monomial()) < 0;
    });
    std::vector<Poly> out;
    for (std::size_t x = 0; x < idx.size(); ++x) {
      std::vector<std::size_t> others;
      for (std::size_t y = 0; y < idx.size(); ++y)
        if (y != x) others.push_back(idx[y]);
      const auto& g = basis_[idx[x]];
      // leading term is irreducible by the others; reduce the tail only
      auto tail = Poly::from_sorted_terms(ring_, std::vector<typename Poly::Term>(g.terms().begin() + 1, g.terms().end()));
      auto reduced = reducer_.reduce(tail, others, true);
      out.push_back(Poly::from_sorted_terms(ring_, std::vector<typename Poly::Term>{g.terms().front()}) + reduced);
    }
    return GroebnerBasis<F>(ring_, std::move(out), stats_);
  }

  RingPtr<F> ring_;
  Budget budget_;
  std::vector<Poly> basis_;
  std::vector<std::uint64_t> sugars_;
  std::vector<std::size_t> active_;
  std::set<Pair, PairLess> pairs_{PairLess{&ring_->order()}};
  GroebnerStats stats_;
  Reducer<F> reducer_;
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens`, in `ring`'s order.
/// Generators from a ring with the same variables but another order are
/// re-sorted first.
template <class F>
GroebnerBasis<F> groebner(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& gens, const Budget& budget = {}) {
  return detail::Buchberger<F>(ring, budget).run(gens);
}

}  // namespace pmx
