#pragma once

// Finite-field sampling of the rank strata of V(P_t): random and
// rank-constrained matrices, Monte Carlo codimension estimates and exhaustive
// census tables for tiny (n, q).
//
// Estimators. `naive` counts sampled matrices that satisfy every generator
// (and Δ != 0 when asked). `fiber` samples every entry except x[n,n] and then
// counts exactly how many of the q values of x[n,n] complete a hit; the sum
// over N samples divided by N*q estimates the same frequency with far lower
// variance for thin strata.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pmx/field.hpp"
#include "pmx/matrix.hpp"
#include "pmx/minors.hpp"

namespace pmx {

enum class Estimator { naive, fiber };

inline std::string to_string(Estimator e) { return e == Estimator::naive ? "naive" : "fiber"; }

inline Estimator parse_estimator(const std::string& s) {
  if (s == "naive") return Estimator::naive;
  if (s == "fiber") return Estimator::fiber;
  throw std::invalid_argument("unknown estimator '" + s + "' (expected naive or fiber)");
}

struct SampleConfig {
  std::size_t n = 2;
  std::size_t t = 1;
  std::uint32_t q = 101;
  std::uint64_t samples = 1;
  std::optional<std::size_t> rank;
  bool invertible = false;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::fiber;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n < 1 || n > 5) throw std::invalid_argument("sample config: n must lie in 1..5");
    if (t < 1 || t > n) throw std::invalid_argument("sample config: t must lie in 1..n");
    if (!is_prime(q) || q >= (1u << 31)) throw std::invalid_argument("sample config: q must be a prime below 2^31");
    if (samples < 1) throw std::invalid_argument("sample config: sample count must be positive");
    if (rank && *rank > n) throw std::invalid_argument("sample config: rank exceeds n");
    if (rank && invertible && *rank != n) throw std::invalid_argument("sample config: invertible needs rank n");
    if (rank && estimator == Estimator::fiber)
      throw std::invalid_argument("sample config: the fiber estimator needs unconstrained sampling");
  }
};

struct CodimEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;  // N for naive, N*q for fiber
  std::uint64_t samples = 0;
  std::uint32_t q = 0;
  double frequency = 0;
  std::optional<double> estimate;  // -log_q(frequency), absent without hits
  std::optional<double> ci_low;    // 95% Wilson interval mapped through -log_q
  std::optional<double> ci_high;   // absent when the interval reaches frequency 0
  bool wide_ci = false;            // interval wider than ±0.5

  std::string status() const { return estimate ? "ok" : "insufficient samples"; }
};

class SamplerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  for (a %= q; e; e >>= 1, a = a * a % q)
    if (e & 1) r = r * a % q;
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t q) { return powmod(a, q - 2, q); }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in [0, q) by rejection, identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t q) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % q + 1) % q;
  for (;;) {
    std::uint64_t r = rng();
    if (r <= limit) return r % q;
  }
}

/// Rank of a small dense matrix over F_q; destroys `a`.
inline std::size_t rank_mod(std::uint64_t* a, std::size_t rows, std::size_t cols, std::uint64_t q) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    std::uint64_t inv = invmod(a[rank * cols + c], q);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t factor = a[r * cols + c] * inv % q;
      if (!factor) continue;
      for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = (a[r * cols + j] + (q - factor) * a[rank * cols + j]) % q;
    }
    ++rank;
  }
  return rank;
}

/// Straight-line evaluator for a polynomial over F_q at points given as
/// residues; one variable may be excluded.
class CompiledPoly {
 public:
  CompiledPoly() = default;

  /// Terms of f whose exponent of `var` equals `power`, with `var` removed.
  /// var < 0 keeps every term.
  CompiledPoly(const Polynomial<PrimeField>& f, int var = -1, unsigned power = 0) : q_(f.field().characteristic()) {
    for (const auto& [c, m] : f.terms()) {
      if (var >= 0 && m[static_cast<std::size_t>(var)] != power) continue;
      coeffs_.push_back(c);
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (static_cast<int>(v) == var || !m[v]) continue;
        for (unsigned e = 0; e < m[v]; ++e) vars_.push_back(static_cast<std::uint16_t>(v));
      }
      ends_.push_back(static_cast<std::uint32_t>(vars_.size()));
    }
  }

  bool empty() const { return coeffs_.empty(); }

  std::uint64_t operator()(const std::uint64_t* x) const {
    std::uint64_t total = 0;
    std::uint32_t start = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      std::uint64_t term = coeffs_[i];
      for (std::uint32_t k = start; k < ends_[i]; ++k) term = term * x[vars_[k]] % q_;
      total += term;
      start = ends_[i];
    }
    return total % q_;
  }

 private:
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> coeffs_;
  std::vector<std::uint32_t> ends_;
  std::vector<std::uint16_t> vars_;
};

/// f as a polynomial in one variable with compiled coefficients.
class CompiledUnivariate {
 public:
  CompiledUnivariate(const Polynomial<PrimeField>& f, std::size_t var) {
    unsigned deg = 0;
    for (const auto& term : f.terms()) deg = std::max<unsigned>(deg, term.mono[var]);
    for (unsigned e = 0; e <= deg; ++e) coeffs_.emplace_back(f, static_cast<int>(var), e);
  }

  std::size_t degree_bound() const { return coeffs_.size() - 1; }

  /// Coefficients (constant first) with trailing zeros trimmed.
  void image(const std::uint64_t* x, std::vector<std::uint64_t>& out) const {
    out.resize(coeffs_.size());
    for (std::size_t e = 0; e < coeffs_.size(); ++e) out[e] = coeffs_[e].empty() ? 0 : coeffs_[e](x);
    while (!out.empty() && out.back() == 0) out.pop_back();
  }

 private:
  std::vector<CompiledPoly> coeffs_;
};

using Uni = std::vector<std::uint64_t>;

inline std::uint64_t uni_eval(const Uni& f, std::uint64_t v, std::uint64_t q) {
  std::uint64_t r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = (r * v + f[i]) % q;
  return r;
}

/// a mod b, both trimmed, b nonzero.
inline void uni_rem(Uni& a, const Uni& b, std::uint64_t q) {
  const std::uint64_t inv = invmod(b.back(), q);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = a.back() * inv % q;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (q - factor) * b[i]) % q;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
}

inline Uni uni_gcd(Uni a, Uni b, std::uint64_t q) {
  while (!b.empty()) {
    uni_rem(a, b, q);
    std::swap(a, b);
  }
  return a;
}

/// Roots in F_q of a nonzero polynomial of positive degree.
inline std::vector<std::uint64_t> uni_roots(const Uni& f, std::uint64_t q) {
  if (f.size() == 2) return {(q - f[0]) % q * invmod(f[1], q) % q};
  if (q > (1u << 20)) throw std::length_error("root enumeration over a large field");
  std::vector<std::uint64_t> roots;
  for (std::uint64_t v = 0; v < q; ++v)
    if (uni_eval(f, v, q) == 0) roots.push_back(v);
  return roots;
}

/// Membership test for one stratum, shared by both estimators.
class StratumProbe {
 public:
  StratumProbe(const std::vector<Polynomial<PrimeField>>& gens, const Polynomial<PrimeField>& det, bool invertible,
               std::size_t fiber_var)
      : invertible_(invertible), fiber_var_(fiber_var), det_(det) {
    for (const auto& g : gens) {
      whole_.emplace_back(g);
      fiber_.emplace_back(g, fiber_var);
    }
    // generators free of the fiber variable first: they reject early
    std::stable_sort(fiber_.begin(), fiber_.end(),
                     [](const auto& a, const auto& b) { return a.degree_bound() < b.degree_bound(); });
    det_fiber_.emplace(det, fiber_var);
    q_ = det.field().characteristic();
  }

  bool hit(const std::uint64_t* x) const {
    for (const auto& g : whole_)
      if (g(x)) return false;
    return !invertible_ || det_(x) != 0;
  }

  /// Number of values of the fiber variable completing x to a hit.
  std::uint64_t fiber_count(const std::uint64_t* x, Uni& scratch, Uni& acc) const {
    acc.clear();
    for (const auto& g : fiber_) {
      g.image(x, scratch);
      if (scratch.empty()) continue;
      acc = acc.empty() ? scratch : uni_gcd(acc, scratch, q_);
      if (acc.size() == 1) return 0;
    }
    Uni d;
    if (invertible_) {
      det_fiber_->image(x, d);
      if (d.empty()) return 0;
    }
    if (acc.empty()) {
      if (!invertible_ || d.size() == 1) return q_;
      auto common = uni_roots(d, q_);
      return q_ - common.size();
    }
    std::uint64_t count = 0;
    for (auto v : uni_roots(acc, q_))
      if (!invertible_ || uni_eval(d, v, q_) != 0) ++count;
    return count;
  }

  std::size_t fiber_var() const { return fiber_var_; }

 private:
  bool invertible_;
  std::size_t fiber_var_;
  std::uint64_t q_ = 2;
  std::vector<CompiledPoly> whole_;
  std::vector<CompiledUnivariate> fiber_;
  CompiledPoly det_;
  std::optional<CompiledUnivariate> det_fiber_;
};

inline constexpr std::uint64_t kChunk = 1 << 14;
inline constexpr int kMaxResample = 1000;

inline std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(chunk)));
}

/// Runs body(chunk_index, count) over ceil(total / kChunk) chunks and returns
/// the per-chunk results in chunk order.
template <class R, class Body>
std::vector<R> run_chunks(std::uint64_t total, unsigned threads, Body body) {
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<R> results(chunks);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;)
      results[c] = body(c, std::min(kChunk, total - c * kChunk));
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace detail

/// Fills out[0..n*n) with a sample in row-major order. Invertibility is part
/// of the membership test, not of sampling.
inline void sample_into(const SampleConfig& cfg, std::mt19937_64& rng, std::uint64_t* out) {
  const std::size_t n = cfg.n;
  const std::uint64_t q = cfg.q;
  if (!cfg.rank) {
    for (std::size_t i = 0; i < n * n; ++i) out[i] = detail::uniform_below(rng, q);
    return;
  }
  const std::size_t r = *cfg.rank;
  std::uint64_t a[25], b[25], tmp[25];
  for (int attempt = 0; attempt < detail::kMaxResample; ++attempt) {
    for (std::size_t i = 0; i < n * r; ++i) a[i] = detail::uniform_below(rng, q);
    for (std::size_t i = 0; i < r * n; ++i) b[i] = detail::uniform_below(rng, q);
    std::copy(a, a + n * r, tmp);
    if (detail::rank_mod(tmp, n, r, q) != r) continue;
    std::copy(b, b + r * n, tmp);
    if (detail::rank_mod(tmp, r, n, q) != r) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t l = 0; l < r; ++l) s = (s + a[i * r + l] * b[l * n + j]) % q;
        out[i * n + j] = s;
      }
    return;
  }
  throw SamplerFailure("rank-constrained sampler failed after " + std::to_string(detail::kMaxResample) + " attempts");
}

/// The first sample of chunk 0 for this configuration's seed.
inline ScalarMatrix<PrimeField> sample_matrix(const SampleConfig& cfg, std::uint64_t index = 0) {
  cfg.validate();
  auto rng = detail::chunk_rng(cfg.seed, index / detail::kChunk);
  std::uint64_t x[25];
  for (std::uint64_t i = 0; i <= index % detail::kChunk; ++i) sample_into(cfg, rng, x);
  ScalarMatrix<PrimeField> m(cfg.n, std::vector<std::uint32_t>(cfg.n));
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = 0; j < cfg.n; ++j) m[i][j] = static_cast<std::uint32_t>(x[i * cfg.n + j]);
  return m;
}

inline CodimEstimate make_estimate(std::uint64_t hits, std::uint64_t trials, std::uint64_t samples, std::uint32_t q) {
  CodimEstimate e;
  e.hits = hits;
  e.trials = trials;
  e.samples = samples;
  e.q = q;
  e.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  const double lq = std::log(static_cast<double>(q));
  auto to_codim = [lq](double p) { return -std::log(p) / lq; };
  if (hits > 0) e.estimate = to_codim(e.frequency);
  // Wilson score interval, z = 1.96
  const double z = 1.96, nn = static_cast<double>(trials), p = e.frequency;
  const double centre = (p + z * z / (2 * nn)) / (1 + z * z / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / (1 + z * z / nn);
  const double lo = std::max(0.0, centre - half), hi = std::min(1.0, centre + half);
  e.ci_low = to_codim(hi);
  if (lo > 0) e.ci_high = to_codim(lo);
  e.wide_ci = !e.ci_high || *e.ci_high - *e.ci_low > 1.0;
  return e;
}

/// Frequency of samples in the stratum cut out by `gens` (with Δ != 0 when
/// cfg.invertible), and the codimension it implies.
inline CodimEstimate estimate_codim(const SampleConfig& cfg, const std::vector<Polynomial<PrimeField>>& gens) {
  cfg.validate();
  if (gens.empty()) throw std::invalid_argument("estimate_codim: no generators");
  auto ring = gens.front().ring();
  if (ring->matrix_size() != cfg.n || ring->field().characteristic() != cfg.q)
    throw std::invalid_argument("estimate_codim: generators live in a different ring");
  const std::size_t fiber_var = cfg.n * cfg.n - 1;
  detail::StratumProbe probe(gens, determinant_of_generic(ring), cfg.invertible, fiber_var);

  std::vector<std::uint64_t> counts;
  if (cfg.estimator == Estimator::naive) {
    counts = detail::run_chunks<std::uint64_t>(cfg.samples, cfg.threads, [&](std::uint64_t c, std::uint64_t count) {
      auto rng = detail::chunk_rng(cfg.seed, c);
      std::uint64_t x[25], hits = 0;
      for (std::uint64_t i = 0; i < count; ++i) {
        sample_into(cfg, rng, x);
        hits += probe.hit(x);
      }
      return hits;
    });
  } else {
    counts = detail::run_chunks<std::uint64_t>(cfg.samples, cfg.threads, [&](std::uint64_t c, std::uint64_t count) {
      auto rng = detail::chunk_rng(cfg.seed, c);
      std::uint64_t x[25], hits = 0;
      detail::Uni scratch, acc;
      for (std::uint64_t i = 0; i < count; ++i) {
        sample_into(cfg, rng, x);
        x[fiber_var] = 0;
        hits += probe.fiber_count(x, scratch, acc);
      }
      return hits;
    });
  }
  std::uint64_t hits = 0;
  for (auto c : counts) hits += c;
  const std::uint64_t trials = cfg.estimator == Estimator::naive ? cfg.samples : cfg.samples * cfg.q;
  return make_estimate(hits, trials, cfg.samples, cfg.q);
}

/// Stratum of V(P_t), optionally restricted to invertible matrices.
inline CodimEstimate estimate_codim(const SampleConfig& cfg) {
  cfg.validate();
  auto ring = matrix_ring(PrimeField(cfg.q), cfg.n);
  return estimate_codim(cfg, principal_minors(ring, cfg.t));
}

/// Codimension of Y_{n,n,t} where it is known: n for t in {1, n-1}, and
/// C(n,2) for t in {2, n-2}.
inline std::optional<std::size_t> expected_stratum_codim(std::size_t n, std::size_t t) {
  if (t < 1 || t >= n) return std::nullopt;
  if (t == 1 || t == n - 1) return n;
  if (t == 2 || t == n - 2) return n * (n - 1) / 2;
  return std::nullopt;
}

/// |V(P_t)(F_q)| split by matrix rank, next to the number of all matrices of
/// each rank.
struct CensusTable {
  std::size_t n = 0, t = 0;
  std::uint32_t q = 0;
  std::vector<std::uint64_t> in_variety;  // index = rank
  std::vector<std::uint64_t> all;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto v : all) s += v;
    return s;
  }
  std::uint64_t variety_total() const {
    std::uint64_t s = 0;
    for (auto v : in_variety) s += v;
    return s;
  }

  std::string csv() const {
    std::ostringstream out;
    out << "n,q,t,rank,count\n";
    for (std::size_t r = 0; r < in_variety.size(); ++r) out << n << ',' << q << ',' << t << ',' << r << ',' << in_variety[r] << '\n';
    return out.str();
  }
};

inline constexpr std::uint64_t kCensusLimit = std::uint64_t{1} << 24;

inline CensusTable exhaustive_count(std::size_t n, std::uint32_t q, std::size_t t) {
  if (n < 1 || n > 5 || t < 1 || t > n) throw std::invalid_argument("exhaustive_count: need 1 <= t <= n <= 5");
  if (!is_prime(q)) throw std::invalid_argument("exhaustive_count: q must be prime");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    size *= q;
    if (size > kCensusLimit) throw BudgetExceeded("census size q^(n^2)", kCensusLimit);
  }
  auto ring = matrix_ring(PrimeField(q), n);
  std::vector<detail::CompiledPoly> gens;
  for (const auto& g : principal_minors(ring, t)) gens.emplace_back(g);
  CensusTable table{n, t, q, std::vector<std::uint64_t>(n + 1), std::vector<std::uint64_t>(n + 1)};
  std::uint64_t x[25] = {}, tmp[25];
  for (std::uint64_t k = 0; k < size; ++k) {
    if (k) {
      for (std::size_t i = 0; ++x[i] == q; ++i) x[i] = 0;
    }
    std::copy(x, x + n * n, tmp);
    const std::size_t r = detail::rank_mod(tmp, n, n, q);
    ++table.all[r];
    bool member = true;
    for (const auto& g : gens)
      if (g(x)) {
        member = false;
        break;
      }
    if (member) ++table.in_variety[r];
  }
  return table;
}

/// Naive uniform sampling tallied like a census: hits in V(P_t) by rank.
inline std::vector<std::uint64_t> sample_census(std::size_t n, std::uint32_t q, std::size_t t, std::uint64_t samples,
                                                std::uint64_t seed, unsigned threads = 0) {
  SampleConfig cfg{n, t, q, samples, std::nullopt, false, seed, Estimator::naive, threads};
  cfg.validate();
  auto ring = matrix_ring(PrimeField(q), n);
  std::vector<detail::CompiledPoly> gens;
  for (const auto& g : principal_minors(ring, t)) gens.emplace_back(g);
  auto parts = detail::run_chunks<std::vector<std::uint64_t>>(samples, threads, [&](std::uint64_t c, std::uint64_t count) {
    auto rng = detail::chunk_rng(seed, c);
    std::vector<std::uint64_t> by_rank(n + 1);
    std::uint64_t x[25], tmp[25];
    for (std::uint64_t i = 0; i < count; ++i) {
      sample_into(cfg, rng, x);
      bool member = true;
      for (const auto& g : gens)
        if (g(x)) {
          member = false;
          break;
        }
      if (!member) continue;
      std::copy(x, x + n * n, tmp);
      ++by_rank[detail::rank_mod(tmp, n, n, q)];
    }
    return by_rank;
  });
  std::vector<std::uint64_t> total(n + 1);
  for (const auto& p : parts)
    for (std::size_t r = 0; r <= n; ++r) total[r] += p[r];
  return total;
}

}  // namespace pmx
