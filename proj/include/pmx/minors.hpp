#pragma once

// Generic matrices, minors, cofactors and the principal-minor ideals.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmx/ideal.hpp"
#include "pmx/matrix.hpp"
#include "pmx/parse.hpp"

namespace pmx {

/// Row and column index sets of a minor, 1-based and strictly increasing.
struct IndexPair {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  std::size_t size() const { return rows.size(); }

  void validate(std::size_t n) const {
    if (rows.size() != cols.size()) throw std::invalid_argument("IndexPair: row and column sets differ in size");
    auto check = [n](const std::vector<std::size_t>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1 || v[i] > n) throw std::out_of_range("IndexPair: index " + std::to_string(v[i]) + " outside 1.." + std::to_string(n));
        if (i && v[i] <= v[i - 1]) throw std::invalid_argument("IndexPair: indices must be strictly increasing");
      }
    };
    check(rows);
    check(cols);
  }

  std::string to_string() const {
    auto list = [](const std::vector<std::size_t>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    return list(rows) + ";" + list(cols);
  }

  bool operator==(const IndexPair&) const = default;
};

/// All size-t subsets of {1..n} in lexicographic order.
inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  if (t > n) return out;
  std::vector<std::size_t> cur(t);
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    out.push_back(cur);
    std::size_t i = t;
    while (i > 0 && cur[i - 1] == n - t + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < t; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline std::vector<std::size_t> complement(const std::vector<std::size_t>& s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

/// X = (x[i,j]) over a matrix ring.
template <class F>
PolyMatrix<F> generic_matrix(const RingPtr<F>& ring) {
  const std::size_t n = ring->matrix_size();
  if (n == 0) throw std::invalid_argument("generic_matrix: not a matrix ring");
  PolyMatrix<F> x(n, std::vector<Polynomial<F>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i][j] = Polynomial<F>::variable(ring, i * n + j);
  return x;
}

template <class F>
PolyMatrix<F> submatrix(const PolyMatrix<F>& m, const IndexPair& p) {
  p.validate(m.size());
  PolyMatrix<F> sub(p.size(), std::vector<Polynomial<F>>(p.size()));
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) sub[a][b] = m[p.rows[a] - 1][p.cols[b] - 1];
  return sub;
}

template <class F>
Polynomial<F> minor(const PolyMatrix<F>& m, const IndexPair& p, const RingPtr<F>& ring) {
  return poly_det(submatrix(m, p), ring);
}

/// (-1)^(sum of rows + sum of cols) times the complementary minor.
template <class F>
Polynomial<F> cofactor(const PolyMatrix<F>& m, const IndexPair& p, const RingPtr<F>& ring) {
  const std::size_t n = square_size(m, "cofactor");
  p.validate(n);
  std::size_t sigma = std::accumulate(p.rows.begin(), p.rows.end(), std::size_t{0}) +
                      std::accumulate(p.cols.begin(), p.cols.end(), std::size_t{0});
  auto d = minor(m, IndexPair{complement(p.rows, n), complement(p.cols, n)}, ring);
  return sigma % 2 ? -d : d;
}

/// Transpose of the cofactor matrix.
template <class F>
PolyMatrix<F> adjugate(const PolyMatrix<F>& m, const RingPtr<F>& ring) {
  const std::size_t n = square_size(m, "adjugate");
  PolyMatrix<F> adj(n, std::vector<Polynomial<F>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj[j][i] = cofactor(m, IndexPair{{i + 1}, {j + 1}}, ring);
  return adj;
}

template <class F>
PolyMatrix<F> poly_matmul(const PolyMatrix<F>& a, const PolyMatrix<F>& b, const RingPtr<F>& ring) {
  const std::size_t n = a.size(), inner = b.size(), m = inner ? b[0].size() : 0;
  PolyMatrix<F> c(n, std::vector<Polynomial<F>>(m, Polynomial<F>(ring)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

template <class F>
Polynomial<F> determinant_of_generic(const RingPtr<F>& ring) {
  return poly_det(generic_matrix(ring), ring);
}

/// The size-t principal minors, one per t-subset (rows = columns).
template <class F>
std::vector<Polynomial<F>> principal_minors(const RingPtr<F>& ring, std::size_t t) {
  const std::size_t n = ring->matrix_size();
  if (t < 1 || t > n) throw std::out_of_range("principal minors: t must lie in 1..n");
  auto x = generic_matrix(ring);
  std::vector<Polynomial<F>> gens;
  for (const auto& s : index_subsets(n, t)) gens.push_back(minor(x, IndexPair{s, s}, ring));
  return gens;
}

/// P_t: ideal of the size-t principal minors.
template <class F>
Ideal<F> principal_minor_ideal(const RingPtr<F>& ring, std::size_t t) {
  return Ideal<F>(ring, principal_minors(ring, t));
}

/// I_t: ideal of all size-t minors.
template <class F>
Ideal<F> determinantal_ideal(const RingPtr<F>& ring, std::size_t t) {
  const std::size_t n = ring->matrix_size();
  if (t < 1 || t > n) throw std::out_of_range("determinantal_ideal: t must lie in 1..n");
  auto x = generic_matrix(ring);
  std::vector<Polynomial<F>> gens;
  for (const auto& r : index_subsets(n, t))
    for (const auto& c : index_subsets(n, t)) gens.push_back(minor(x, IndexPair{r, c}, ring));
  return Ideal<F>(ring, gens);
}

/// Outcome of checking a polynomial identity over every index pair.
struct IdentityCheck {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<IndexPair> failing;
  std::string residual;  // nonzero difference at the failing pair

  explicit operator bool() const { return holds; }
};

/// Jacobi's complementary-minor identity for the adjugate: for every pair of
/// t-subsets, the (I;J) minor of Adj X equals Δ^(t-1) times the cofactor of X
/// at (J;I). The swap accounts for Adj being the transposed cofactor matrix.
template <class F>
IdentityCheck muir_verify(const RingPtr<F>& ring, std::size_t t) {
  const std::size_t n = ring->matrix_size();
  if (t < 1 || t > n) throw std::out_of_range("muir_verify: t must lie in 1..n");
  if (n > 4) throw BudgetExceeded("matrix size", 4);
  auto x = generic_matrix(ring);
  auto adj = adjugate(x, ring);
  auto delta_power = poly_det(x, ring).pow(static_cast<unsigned>(t - 1));
  IdentityCheck out;
  for (const auto& r : index_subsets(n, t))
    for (const auto& c : index_subsets(n, t)) {
      auto lhs = minor(adj, IndexPair{r, c}, ring);
      auto rhs = delta_power * cofactor(x, IndexPair{c, r}, ring);
      ++out.checked;
      auto diff = lhs - rhs;
      if (!diff.is_zero()) {
        out.holds = false;
        out.failing = IndexPair{r, c};
        out.residual = diff.to_string();
        return out;
      }
    }
  return out;
}

/// For each principal t-subset S: minor(Adj X, S;S) = Δ^(t-1) * μ_{S^c}, the
/// Δ-cleared statement that inversion sends P_t into P_{n-t} after inverting Δ.
template <class F>
IdentityCheck inversion_duality_verify(const RingPtr<F>& ring, std::size_t t) {
  const std::size_t n = ring->matrix_size();
  if (t < 1 || t >= n) throw std::out_of_range("inversion_duality_verify: t must lie in 1..n-1");
  if (n > 4) throw BudgetExceeded("matrix size", 4);
  auto x = generic_matrix(ring);
  auto adj = adjugate(x, ring);
  auto delta_power = poly_det(x, ring).pow(static_cast<unsigned>(t - 1));
  IdentityCheck out;
  for (const auto& s : index_subsets(n, t)) {
    auto comp = complement(s, n);
    auto lhs = minor(adj, IndexPair{s, s}, ring);
    auto rhs = delta_power * minor(x, IndexPair{comp, comp}, ring);
    ++out.checked;
    auto diff = lhs - rhs;
    if (!diff.is_zero()) {
      out.holds = false;
      out.failing = IndexPair{s, s};
      out.residual = diff.to_string();
      return out;
    }
  }
  return out;
}

/// The degree-4 polynomial f in K[X_4x4] with Q_3 = P_3 + (f).
inline constexpr const char* kFPolynomialText =
    "-x[1,4]*x[2,1]*x[3,3]*x[4,2] + x[1,1]*x[2,3]*x[3,4]*x[4,2] + x[1,4]*x[2,2]*x[3,1]*x[4,3]"
    " - x[1,1]*x[2,2]*x[3,4]*x[4,3] - x[1,2]*x[2,3]*x[3,1]*x[4,4] + x[1,2]*x[2,1]*x[3,3]*x[4,4]";

template <class F>
Polynomial<F> f_polynomial(const RingPtr<F>& ring) {
  if (ring->matrix_size() != 4 || ring->nvars() != 16) throw std::invalid_argument("f_polynomial: ring must be 4x4");
  return parse_polynomial(ring, kFPolynomialText);
}

/// Q_{n-1} = P_{n-1} : Δ^inf, generated minimally.
template <class F>
Ideal<F> q_ideal(const RingPtr<F>& ring, const Budget& budget = {}, Method method = Method::automatic) {
  const std::size_t n = ring->matrix_size();
  if (n < 2) throw std::out_of_range("q_ideal: n must be at least 2");
  if (n > 4) throw BudgetExceeded("matrix size", 4);
  auto sat = saturate(principal_minor_ideal(ring, n - 1), determinant_of_generic(ring), budget, method);
  // Greedy choice over P's generators first, then the saturation basis.
  std::vector<Polynomial<F>> candidates = principal_minors(ring, n - 1);
  for (const auto& g : sat.generators()) candidates.push_back(g);
  Ideal<F> pool(ring, candidates);
  Ideal<F> out(ring, minimal_generators(pool, budget));
  out.seed(sat.groebner(budget));
  return out;
}

/// A matrix with entries in the active field.
template <class F>
using WitnessMatrix = ScalarMatrix<F>;

struct PermutationInfo {
  std::vector<std::size_t> images;  // 1-based: images[i-1] = tau(i)
  bool derangement = false;
};

inline PermutationInfo check_permutation(const std::vector<std::size_t>& images) {
  const std::size_t n = images.size();
  std::vector<bool> seen(n + 1, false);
  bool fixed = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (images[i] < 1 || images[i] > n || seen[images[i]]) throw std::invalid_argument("not a permutation");
    seen[images[i]] = true;
    if (images[i] == i + 1) fixed = true;
  }
  return {images, !fixed};
}

/// 0/1 matrix with a one at (i, tau(i)).
template <class F>
WitnessMatrix<F> permutation_witness(const F& k, const std::vector<std::size_t>& images) {
  check_permutation(images);
  const std::size_t n = images.size();
  WitnessMatrix<F> m(n, std::vector<typename F::Element>(n, k.zero()));
  for (std::size_t i = 0; i < n; ++i) m[i][images[i] - 1] = k.one();
  return m;
}

/// All permutations of {1..n} without fixed points, in lexicographic order.
inline std::vector<std::vector<std::size_t>> derangements(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<std::size_t>> out;
  do {
    if (check_permutation(p).derangement) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Full-rank 4x4 matrix whose principal 3-minors vanish.
inline std::vector<std::vector<long long>> example_rank4_witness() {
  return {{0, 0, 0, 1}, {1, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}};
}

template <class F>
bool vanishes_at(const std::vector<Polynomial<F>>& gens, const WitnessMatrix<F>& m) {
  auto point = flatten<F>(m);
  return std::all_of(gens.begin(), gens.end(), [&](const auto& g) {
    return g.field().is_zero(g.evaluate(std::span<const typename F::Element>(point)));
  });
}

/// Relabels x[i,j] -> x[tau(i),tau(j)], i.e. f(P X P^T) for the permutation matrix P.
template <class F>
Polynomial<F> conjugate_by_permutation(const Polynomial<F>& f, const std::vector<std::size_t>& images) {
  const std::size_t n = f.ring()->matrix_size();
  if (images.size() != n) throw std::invalid_argument("conjugate_by_permutation: size mismatch");
  check_permutation(images);
  std::vector<int> map(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) map[i * n + j] = static_cast<int>((images[i] - 1) * n + (images[j] - 1));
  return f.map_to(f.ring(), map);
}

}  // namespace pmx
