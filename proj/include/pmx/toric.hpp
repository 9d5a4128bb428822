#pragma once

// Binomial ideals, their exponent lattices, and the toric primality
// certificate for the ideal of principal 2-minors.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmx/ideal.hpp"
#include "pmx/minors.hpp"

namespace pmx {

/// Integer lattice given by spanning rows in Z^dim.
class IntegerLattice {
 public:
  using Row = std::vector<mpz_class>;

  IntegerLattice() = default;
  IntegerLattice(std::size_t dim, std::vector<Row> rows) : dim_(dim), rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != dim_) throw std::invalid_argument("IntegerLattice: row length differs from dimension");
  }
  static IntegerLattice from_ints(const std::vector<std::vector<long long>>& rows) {
    if (rows.empty()) throw std::invalid_argument("IntegerLattice: no rows");
    std::vector<Row> out;
    for (const auto& r : rows) {
      Row row;
      for (auto v : r) row.emplace_back(static_cast<long>(v));
      out.push_back(std::move(row));
    }
    return IntegerLattice(rows[0].size(), std::move(out));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Row>& rows() const { return rows_; }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(),
                       [](const Row& r) { return std::all_of(r.begin(), r.end(), [](const mpz_class& v) { return v == 0; }); });
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < dim_; ++j) s += (j ? "," : "") + rows_[i][j].get_str();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Row> rows_;
};

/// Nonzero invariant factors d_1 | d_2 | ... of the row span, by Smith
/// normal form over Z.
inline std::vector<mpz_class> invariant_factors(const IntegerLattice& lattice) {
  auto a = lattice.rows();
  const std::size_t rows = a.size(), cols = lattice.dim();
  std::vector<mpz_class> diag;
  std::size_t k = 0;
  while (k < rows && k < cols) {
    // smallest nonzero entry of the remaining block becomes the pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {{i, j}};
    if (!best) break;
    std::swap(a[k], a[best->first]);
    for (auto& row : a) std::swap(row[k], row[best->second]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
        if (a[i][k] != 0) {
          std::swap(a[i], a[k]);
          clean = false;
        }
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
        if (a[k][j] != 0) {
          for (auto& row : a) std::swap(row[k], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      for (std::size_t i = k + 1; i < rows && clean; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (a[i][j] % a[k][k] != 0) {
            for (std::size_t jj = k; jj < cols; ++jj) a[k][jj] += a[i][jj];
            clean = false;
            break;
          }
    }
    diag.push_back(abs(a[k][k]));
    ++k;
  }
  return diag;
}

/// Z^dim / L is torsion-free on the span: every nonzero invariant factor is 1.
inline bool lattice_is_saturated(const IntegerLattice& lattice) {
  if (lattice.rows().empty() || lattice.is_zero()) throw std::invalid_argument("lattice_is_saturated: zero lattice");
  auto d = invariant_factors(lattice);
  return std::all_of(d.begin(), d.end(), [](const mpz_class& v) { return v == 1; });
}

inline std::size_t lattice_rank(const IntegerLattice& lattice) { return invariant_factors(lattice).size(); }

class NotBinomial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// For c*(x^u - x^v) with c = ±1, returns u - v (u the leading exponent).
template <class F>
std::optional<IntegerLattice::Row> binomial_exponent(const Polynomial<F>& g) {
  if (g.terms().size() != 2) return std::nullopt;
  const F& k = g.field();
  const auto& [c0, m0] = g.terms()[0];
  const auto& [c1, m1] = g.terms()[1];
  if (!k.is_zero(k.add(c0, c1))) return std::nullopt;
  if (!k.is_one(c0) && !k.is_one(k.neg(c0))) return std::nullopt;
  IntegerLattice::Row row;
  for (std::size_t v = 0; v < m0.size(); ++v) row.emplace_back(static_cast<long>(m0[v]) - static_cast<long>(m1[v]));
  return row;
}

/// One row u - v per generator x^u - x^v.
template <class F>
IntegerLattice binomial_exponent_lattice(const Ideal<F>& ideal) {
  std::vector<IntegerLattice::Row> rows;
  for (const auto& g : ideal.generators()) {
    auto row = binomial_exponent(g);
    if (!row) throw NotBinomial("binomial_exponent_lattice: not a binomial: " + g.to_string());
    rows.push_back(std::move(*row));
  }
  return IntegerLattice(ideal.ring()->nvars(), std::move(rows));
}

/// x^{u+} - x^{u-} for a lattice vector u.
template <class F>
Polynomial<F> lattice_binomial(const RingPtr<F>& ring, const IntegerLattice::Row& u) {
  Monomial plus(ring->nvars()), minus(ring->nvars());
  for (std::size_t v = 0; v < u.size(); ++v) {
    if (!u[v].fits_sint_p() || abs(u[v]) > kMaxExponent) throw std::overflow_error("lattice_binomial: exponent too large");
    long e = u[v].get_si();
    if (e > 0) plus.set(v, static_cast<unsigned>(e));
    else if (e < 0) minus.set(v, static_cast<unsigned>(-e));
  }
  return Polynomial<F>::monomial(ring, plus, ring->field().one()) - Polynomial<F>::monomial(ring, minus, ring->field().one());
}

/// (x^{u+} - x^{u-} : u in basis) : (x_1 ... x_m)^inf, saturating one
/// variable at a time.
template <class F>
Ideal<F> lattice_ideal(const RingPtr<F>& ring, const IntegerLattice& lattice, const Budget& budget = {}) {
  if (lattice.rows().empty() || lattice.is_zero()) throw std::invalid_argument("lattice_ideal: zero lattice");
  if (lattice.dim() != ring->nvars()) throw std::invalid_argument("lattice_ideal: dimension differs from ring");
  std::vector<Polynomial<F>> gens;
  for (const auto& u : lattice.rows()) {
    auto b = lattice_binomial(ring, u);
    if (!b.is_zero()) gens.push_back(std::move(b));
  }
  Ideal<F> current(ring, gens);
  for (std::size_t v = 0; v < ring->nvars(); ++v) current = saturate(current, Polynomial<F>::variable(ring, v), budget);
  return current;
}

/// Outcome of the three-step primality certificate.
struct PrimeCertificate {
  bool binomial = false;
  bool saturated = false;
  bool ideal_matches = false;
  std::size_t lattice_rank = 0;
  std::vector<std::string> invariant_factors;
  std::string witness;  // first failing detail, if any

  bool holds() const { return binomial && saturated && ideal_matches; }
};

/// P_2 is the lattice ideal of a saturated lattice, hence prime.
template <class F>
PrimeCertificate p2_prime_certificate(const RingPtr<F>& ring, const Budget& budget = {}) {
  const std::size_t n = ring->matrix_size();
  if (n < 2 || n > 4) throw std::out_of_range("p2_prime_certificate: n must lie in 2..4");
  PrimeCertificate cert;
  auto p2 = principal_minor_ideal(ring, 2);
  IntegerLattice lattice;
  try {
    lattice = binomial_exponent_lattice(p2);
  } catch (const NotBinomial& e) {
    cert.witness = e.what();
    return cert;
  }
  cert.binomial = true;
  auto d = invariant_factors(lattice);
  cert.lattice_rank = d.size();
  for (const auto& v : d) cert.invariant_factors.push_back(v.get_str());
  cert.saturated = lattice_is_saturated(lattice);
  if (!cert.saturated) {
    cert.witness = "invariant factor greater than 1";
    return cert;
  }
  auto lat = lattice_ideal(ring, lattice, budget);
  auto gb = p2.groebner(ring->order(), budget);
  for (const auto& g : lat.generators())
    if (!gb->contains(g, budget)) {
      cert.witness = "lattice ideal element outside P2: " + g.to_string();
      return cert;
    }
  cert.ideal_matches = true;
  return cert;
}

}  // namespace pmx
