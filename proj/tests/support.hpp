#pragma once

#include <random>
#include <string>
#include <vector>

#include "pmx/pmx.hpp"

namespace pmx::testing {

template <class F>
RingPtr<F> named_ring(F field, std::vector<std::string> names, TermOrder order = TermOrder::grevlex()) {
  return std::make_shared<const Ring<F>>(std::move(field), std::move(names), std::move(order));
}

template <class F>
Polynomial<F> P(const RingPtr<F>& ring, const std::string& text) {
  return parse_polynomial(ring, text);
}

template <class F>
Ideal<F> ideal_of(const RingPtr<F>& ring, const std::vector<std::string>& gens) {
  std::vector<Polynomial<F>> out;
  for (const auto& g : gens) out.push_back(parse_polynomial(ring, g));
  return Ideal<F>(ring, out);
}

/// Random polynomial with small integer coefficients and bounded degree.
template <class F>
Polynomial<F> random_poly(const RingPtr<F>& ring, std::mt19937_64& rng, int terms = 4, unsigned max_exp = 2) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::vector<typename Polynomial<F>::Term> out;
  for (int i = 0; i < terms; ++i) {
    Monomial m(ring->nvars());
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      if (rng() % 3 == 0) m.set(v, exp(rng));
    out.push_back({ring->field().from_int(coeff(rng)), m});
  }
  return Polynomial<F>::from_terms(ring, std::move(out));
}

inline std::vector<std::vector<long long>> random_int_matrix(std::size_t n, std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
  for (auto& row : m)
    for (auto& v : row) v = d(rng);
  return m;
}

}  // namespace pmx::testing
