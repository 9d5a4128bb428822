#pragma once

// Dense matrices of polynomials and of field scalars.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pmx/polynomial.hpp"

namespace pmx {

template <class F>
using PolyMatrix = std::vector<std::vector<Polynomial<F>>>;

template <class F>
using ScalarMatrix = std::vector<std::vector<typename F::Element>>;

template <class M>
std::size_t square_size(const M& m, const char* who) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  return m.size();
}

/// Determinant by Laplace expansion along rows, memoized over column subsets:
/// the minor on rows k..n-1 and column set S is computed once for each S.
template <class F>
Polynomial<F> poly_det(const PolyMatrix<F>& m, const RingPtr<F>& ring) {
  const std::size_t n = square_size(m, "poly_det");
  if (n == 0) return Polynomial<F>::constant(ring, 1);
  if (n > 20) throw std::length_error("poly_det: matrix too large");
  // minors[S] for |S| = n - k, rows k..n-1
  std::unordered_map<std::uint32_t, Polynomial<F>> prev, cur;
  for (std::size_t c = 0; c < n; ++c) prev.emplace(1u << c, m[n - 1][c]);
  for (std::size_t k = n - 1; k-- > 0;) {
    cur.clear();
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) != n - k) continue;
      Polynomial<F> acc(ring);
      int position = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(s >> c & 1u)) continue;
        const auto& entry = m[k][c];
        if (!entry.is_zero()) {
          const auto& sub = prev.at(s & ~(1u << c));
          if (!sub.is_zero()) {
            auto term = entry * sub;
            if (position % 2) acc -= term;
            else acc += term;
          }
        }
        ++position;
      }
      cur.emplace(s, std::move(acc));
    }
    std::swap(prev, cur);
  }
  return prev.at((1u << n) - 1);
}

template <class F>
Polynomial<F> poly_det(const PolyMatrix<F>& m) {
  if (m.empty()) throw std::invalid_argument("poly_det: empty matrix needs an explicit ring");
  return poly_det(m, m[0][0].ring());
}

/// Reference determinant by the Leibniz permutation sum (tests only; O(n!)).
template <class F>
Polynomial<F> leibniz_det(const PolyMatrix<F>& m, const RingPtr<F>& ring) {
  const std::size_t n = square_size(m, "leibniz_det");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Polynomial<F> total(ring);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    auto prod = Polynomial<F>::constant(ring, 1);
    for (std::size_t i = 0; i < n; ++i) prod *= m[i][perm[i]];
    if (inversions % 2) total -= prod;
    else total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Row echelon form in place; returns (rank, determinant when square).
template <class F>
std::pair<std::size_t, typename F::Element> echelon(const F& k, ScalarMatrix<F>& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  auto det = k.one();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && k.is_zero(a[pivot][c])) ++pivot;
    if (pivot == rows) {
      det = k.zero();
      continue;
    }
    if (pivot != rank) {
      std::swap(a[pivot], a[rank]);
      det = k.neg(det);
    }
    det = k.mul(det, a[rank][c]);
    auto inv = k.inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (k.is_zero(a[r][c])) continue;
      auto factor = k.mul(a[r][c], inv);
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] = k.sub(a[r][cc], k.mul(factor, a[rank][cc]));
    }
    ++rank;
  }
  if (rank < rows || rows != cols) det = k.zero();
  return {rank, det};
}

template <class F>
typename F::Element numeric_det(const F& k, ScalarMatrix<F> a) {
  square_size(a, "numeric_det");
  if (a.empty()) return k.one();
  return echelon(k, a).second;
}

template <class F>
std::size_t numeric_rank(const F& k, ScalarMatrix<F> a) {
  return echelon(k, a).first;
}

template <class F>
ScalarMatrix<F> numeric_mul(const F& k, const ScalarMatrix<F>& a, const ScalarMatrix<F>& b) {
  const std::size_t n = a.size(), inner = b.size(), m = inner ? b[0].size() : 0;
  ScalarMatrix<F> c(n, std::vector<typename F::Element>(m, k.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("numeric_mul: shape mismatch");
    for (std::size_t l = 0; l < inner; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] = k.add(c[i][j], k.mul(a[i][l], b[l][j]));
  }
  return c;
}

template <class F>
ScalarMatrix<F> scalar_matrix(const F& k, const std::vector<std::vector<long long>>& ints) {
  ScalarMatrix<F> m;
  for (const auto& row : ints) {
    m.emplace_back();
    for (auto v : row) m.back().push_back(k.from_int(v));
  }
  return m;
}

/// Flattens row-major into a point of the matrix ring.
template <class F>
std::vector<typename F::Element> flatten(const ScalarMatrix<F>& m) {
  std::vector<typename F::Element> out;
  for (const auto& row : m)
    for (const auto& v : row) out.push_back(v);
  return out;
}

}  // namespace pmx
