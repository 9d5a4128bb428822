#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support.hpp"

using namespace pmx;

namespace {

using IntMatrix = std::vector<std::vector<long long>>;

// Sum over permutations, reduced mod q at the end.
long long perm_det(const IntMatrix& m, const std::vector<std::size_t>& idx, long long q) {
  std::vector<std::size_t> p(idx.size());
  std::iota(p.begin(), p.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      term *= m[idx[i]][idx[p[i]]];
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    }
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return ((total % q) + q) % q;
}

std::size_t rank_mod_q(IntMatrix m, long long q) {
  const std::size_t n = m.size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < n; ++c) {
    std::size_t p = rank;
    while (p < n && m[p][c] % q == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[rank]);
    long long inv = 1;
    while ((m[rank][c] % q * inv) % q != 1) ++inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank) continue;
      long long f = (m[r][c] % q) * inv % q;
      for (std::size_t k = 0; k < n; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

// Census by rank of V(P_t)(F_q), enumerating all q^(n^2) matrices directly.
std::vector<std::uint64_t> oracle_census(std::size_t n, long long q, std::size_t t) {
  std::vector<std::uint64_t> by_rank(n + 1);
  const auto subsets = index_subsets(n, t);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= static_cast<std::uint64_t>(q);
  IntMatrix m(n, std::vector<long long>(n));
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t v = k;
    for (std::size_t i = 0; i < n * n; ++i, v /= q) m[i / n][i % n] = static_cast<long long>(v % q);
    bool member = true;
    for (const auto& s : subsets) {
      std::vector<std::size_t> idx;
      for (auto i : s) idx.push_back(i - 1);
      if (perm_det(m, idx, q) != 0) {
        member = false;
        break;
      }
    }
    if (member) ++by_rank[rank_mod_q(m, q)];
  }
  return by_rank;
}

double sigma(double p, double n) { return std::sqrt(n * p * (1 - p)); }

SampleConfig naive(std::size_t n, std::size_t t, std::uint32_t q, std::uint64_t samples) {
  SampleConfig c;
  c.n = n;
  c.t = t;
  c.q = q;
  c.samples = samples;
  c.estimator = Estimator::naive;
  return c;
}

}  // namespace

TEST(Sampler, ConfigValidation) {
  auto c = naive(3, 2, 101, 10);
  EXPECT_NO_THROW(c.validate());
  auto bad = c;
  bad.q = 100;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.samples = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.rank = 4;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.rank = 2;
  bad.estimator = Estimator::fiber;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_EQ(parse_estimator("naive"), Estimator::naive);
  EXPECT_THROW(parse_estimator("exact"), std::invalid_argument);
}

TEST(Sampler, FullRankConstraintIsAlwaysInvertible) {
  PrimeField k(5);
  auto c = naive(3, 1, 5, 1);
  c.rank = 3;
  for (std::uint64_t i = 0; i < 300; ++i) EXPECT_NE(numeric_det(k, sample_matrix(c, i)), 0u);
}

TEST(Sampler, RankConstraintIsExact) {
  for (std::size_t n = 2; n <= 4; ++n) {
    PrimeField k(7);
    auto ring = matrix_ring(k, n);
    for (std::size_t r = 0; r <= n; ++r) {
      auto c = naive(n, 1, 7, 1);
      c.rank = r;
      c.seed = 10 * n + r;
      for (std::uint64_t i = 0; i < 100; ++i) {
        auto m = sample_matrix(c, i);
        EXPECT_EQ(numeric_rank(k, m), r);
        if (r < n) {
          auto minors = determinantal_ideal(ring, r + 1).generators();
          EXPECT_TRUE(vanishes_at(minors, m));
        }
      }
    }
  }
}

TEST(Sampler, RankOneTwoByTwoHasZeroDeterminant) {
  auto c = naive(2, 1, 11, 1);
  c.rank = 1;
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(numeric_det(PrimeField(11), sample_matrix(c, i)), 0u);
}

TEST(Sampler, InvertibleFrequencyOverF2) {
  // exactly 6 of the 16 2x2 matrices over F_2 are invertible
  std::uint64_t oracle = 0;
  for (int k = 0; k < 16; ++k) oracle += rank_mod_q({{k & 1, k >> 1 & 1}, {k >> 2 & 1, k >> 3 & 1}}, 2) == 2;
  EXPECT_EQ(oracle, 6u);
  auto table = exhaustive_count(2, 2, 1);
  EXPECT_EQ(table.all[2], 6u);
  auto c = naive(2, 1, 2, 1);
  const std::uint64_t n = 20000;
  std::uint64_t invertible = 0, x[25];
  auto rng = detail::chunk_rng(c.seed, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    sample_into(c, rng, x);
    invertible += (x[0] * x[3] + x[1] * x[2]) % 2;
  }
  EXPECT_NEAR(static_cast<double>(invertible), n * 6.0 / 16, 4 * sigma(6.0 / 16, n));
}

TEST(Sampler, ReproducibleAndThreadIndependent) {
  auto c = naive(3, 2, 5, 50000);
  c.seed = 99;
  c.threads = 1;
  auto a = estimate_codim(c);
  c.threads = 3;
  auto b = estimate_codim(c);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(estimate_codim(c).hits, b.hits);
  c.seed = 100;
  EXPECT_NE(estimate_codim(c).hits, b.hits);
  auto m1 = sample_matrix(c, 12345), m2 = sample_matrix(c, 12345);
  EXPECT_EQ(m1, m2);
}

TEST(Estimate, DiagonalZeroFrequencyIsExact) {
  // V(P_1) for n = 2 has frequency exactly q^-2
  const double q = 11, p = 1 / (q * q);
  auto c = naive(2, 1, 11, 200000);
  auto e = estimate_codim(c);
  EXPECT_NEAR(static_cast<double>(e.hits), p * c.samples, 4 * sigma(p, c.samples));
  ASSERT_TRUE(e.estimate);
  EXPECT_NEAR(*e.estimate, 2.0, 0.1);
  ASSERT_TRUE(e.ci_low && e.ci_high);
  EXPECT_LE(*e.ci_low, *e.estimate);
  EXPECT_GE(*e.ci_high, *e.estimate);
  c.estimator = Estimator::fiber;
  auto f = estimate_codim(c);
  EXPECT_EQ(f.trials, c.samples * 11);
  EXPECT_NEAR(static_cast<double>(f.hits), p * f.trials, 4 * sigma(p, f.trials) * std::sqrt(11.0));
}

TEST(Estimate, FiberAndNaiveAgree) {
  auto c = naive(3, 2, 5, 400000);
  c.invertible = true;
  auto a = estimate_codim(c);
  c.estimator = Estimator::fiber;
  auto b = estimate_codim(c);
  ASSERT_TRUE(a.estimate && b.estimate);
  EXPECT_NEAR(a.frequency, b.frequency, 5 * sigma(a.frequency, c.samples) / c.samples);
}

TEST(Estimate, ThreeByThreeStratumHasCodimThree) {
  SampleConfig c;
  c.n = 3;
  c.t = 2;
  c.q = 101;
  c.samples = 1'000'000;
  c.invertible = true;
  auto e = estimate_codim(c);
  ASSERT_TRUE(e.estimate);
  EXPECT_NEAR(*e.estimate, 3.0, 0.5);
  EXPECT_EQ(expected_stratum_codim(3, 2), std::optional<std::size_t>(3));
}

TEST(Estimate, NoHitsIsInsufficient) {
  auto c = naive(4, 3, 101, 1000);
  c.invertible = true;
  auto e = estimate_codim(c);
  EXPECT_EQ(e.hits, 0u);
  EXPECT_FALSE(e.estimate);
  EXPECT_EQ(e.status(), "insufficient samples");
  EXPECT_TRUE(e.wide_ci);
}

TEST(Estimate, ExpectedCodims) {
  EXPECT_EQ(expected_stratum_codim(4, 3), std::optional<std::size_t>(4));
  EXPECT_EQ(expected_stratum_codim(4, 2), std::optional<std::size_t>(6));
  EXPECT_EQ(expected_stratum_codim(4, 1), std::optional<std::size_t>(4));
  EXPECT_EQ(expected_stratum_codim(4, 4), std::nullopt);
  EXPECT_EQ(expected_stratum_codim(7, 3), std::nullopt);
}

TEST(Census, SmallExamples) {
  auto a = exhaustive_count(2, 2, 1);
  EXPECT_EQ(a.variety_total(), 4u);
  auto b = exhaustive_count(2, 2, 2);
  EXPECT_EQ(b.variety_total(), 10u);
  for (const auto& t : {a, b}) EXPECT_EQ(t.total(), 16u);
  EXPECT_EQ(exhaustive_count(2, 3, 2).total(), 81u);
  EXPECT_EQ(a.csv().substr(0, 17), "n,q,t,rank,count\n");
  EXPECT_THROW(exhaustive_count(3, 7, 1), BudgetExceeded);
  EXPECT_THROW(exhaustive_count(2, 4, 1), std::invalid_argument);
}

TEST(Census, MatchesIndependentEnumeration) {
  for (auto [n, q, t] : {std::tuple{2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {2, 3, 2}, {3, 2, 2}, {3, 3, 2}})
    EXPECT_EQ(exhaustive_count(n, q, t).in_variety, oracle_census(n, q, t)) << n << " " << q << " " << t;
}

TEST(Census, FourByFourOverF2) {
  auto table = exhaustive_count(4, 2, 3);
  EXPECT_EQ(table.total(), 65536u);
  EXPECT_EQ(table.in_variety, oracle_census(4, 2, 3));
  EXPECT_GT(table.in_variety[4], 0u);
}

TEST(Census, SamplerFrequenciesWithinThreeSigma) {
  auto table = exhaustive_count(4, 2, 3);
  const std::uint64_t n = 200000;
  auto sampled = sample_census(4, 2, 3, n, 7);
  for (std::size_t r = 0; r <= 4; ++r) {
    double p = static_cast<double>(table.in_variety[r]) / 65536.0;
    EXPECT_NEAR(static_cast<double>(sampled[r]), p * n, 3 * sigma(p, n) + 1) << "rank " << r;
  }
}
